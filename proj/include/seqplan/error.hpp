#pragma once

#include <stdexcept>
#include <string>

namespace seqplan {

enum class errc {
    // geometry / scene
    not_axis_parallel,
    zero_displacement,
    invalid_scene,
    // decoding
    empty_plan,
    unknown_action,
    unknown_object,
    ambiguous_step,
    missing_target,
    no_segments_found,
    malformed_coordinate,
    // matching
    no_match,
    ambiguous_match,
    unknown_label,
    no_base_defined,
    // planning
    duplicate_size,
    unreachable,
    invalid_task,
    // execution
    convergence_timeout,
    object_missing,
    target_occupied,
    // perception
    empty_cluster,
    // harness
    unknown_task_family,
    timeout,
    http_error,
    empty_completion,
    backend_unavailable,
    io_error,
    parse_error,
};

const char* errc_name(errc code);

/// Domain exception carrying a machine-checkable code alongside the message.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
    throw error(code, message);
}

} // namespace seqplan
