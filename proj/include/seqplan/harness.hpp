#pragma once

#include <seqplan/decoder.hpp>
#include <seqplan/planners.hpp>
#include <seqplan/validators.hpp>
#include <seqplan/world.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace seqplan {

// --- task specs --------------------------------------------------------------

struct StackingTask {
    Scene scene; // parts to stack plus a base marker
};

struct HanoiTask {
    int disks = 5;
    std::vector<std::string> pegs{"a", "b", "c"};
    std::string from = "a";
    std::string to = "b";

    std::string aux() const; // the remaining peg
};

struct TaskSpec {
    std::string id;
    std::variant<StackingTask, HanoiTask, PipeTaskSpec> body;

    const PipeTaskSpec* pipe() const { return std::get_if<PipeTaskSpec>(&body); }
    const StackingTask* stacking() const { return std::get_if<StackingTask>(&body); }
    const HanoiTask* hanoi() const { return std::get_if<HanoiTask>(&body); }
};

/// Task JSON: {"family": "stacking"|"hanoi"|"pipe", ...}. A file with
/// start/end/lengths keys and no family tag is read as a pipe task.
TaskSpec parse_task(const std::string& json_text, const std::string& fallback_id = "task");
TaskSpec load_task(const std::string& path);

/// Synthetic pegs-and-disks scene for simulating a Hanoi task.
Scene make_hanoi_scene(const HanoiTask& task);

// --- prompts -------------------------------------------------------------

struct PromptBundle {
    std::string system_text; // the three reply-shaping principles
    std::string user_text;   // task template with bound parameters
};

PromptBundle build_prompt(const TaskSpec& task);

// --- remote planner ------------------------------------------------------

struct LlmConfig {
    std::string base_url = "http://127.0.0.1:8080";
    std::string path = "/v1/chat/completions";
    std::string model = "gpt-4";
    double temperature = 0.7;
    std::string api_key; // empty sends no Authorization header
    int max_retries = 3;
    double timeout_seconds = 30.0;
    double backoff_initial_ms = 250.0;
    double backoff_factor = 2.0;

    /// Reads LLM_API_KEY from the environment.
    static LlmConfig from_env();
};

LlmConfig llm_config_from_json(const std::string& json_text);

struct LlmCallStats {
    int attempts = 0;
    std::vector<std::string> notes; // one entry per attempt
};

/// Chat-completion request {model, messages:[{role:"system"},{role:"user"}]};
/// returns the first choice's message content verbatim. Transient transport
/// failures (connect errors, 5xx, 429) are retried with exponential backoff.
/// Throws timeout / http_error / empty_completion.
std::string llm_complete(const PromptBundle& bundle, const LlmConfig& cfg,
                         LlmCallStats* stats = nullptr);

// --- planner backends -----------------------------------------------------

struct OracleBackend {};

struct TranscriptCorpusBackend {
    std::string path; // a transcript file, or a directory of *.txt cycled per trial
};

struct RemoteLlmBackend {
    LlmConfig config;
};

enum class MutationKind { DeleteStep, JitterEndpoint, InsertDetour };

/// Oracle plan corrupted per trial with probability error_rate; the seed makes
/// every trial's mutation deterministic.
struct NoisyOracleBackend {
    double error_rate = 1.0;
    std::uint64_t seed = 0;
    MutationKind mutation = MutationKind::DeleteStep;
};

using PlannerBackend =
    std::variant<OracleBackend, TranscriptCorpusBackend, RemoteLlmBackend, NoisyOracleBackend>;

/// CLI syntax: oracle | corpus:PATH | llm | noisy:RATE:SEED[:delete|jitter|detour]
PlannerBackend parse_backend(const std::string& text, const LlmConfig& llm_config);
std::string describe_backend(const PlannerBackend& backend);

/// The transcript the given backend produces for one trial of the task.
std::string backend_transcript(const PlannerBackend& backend, const TaskSpec& task,
                               int trial_index);

/// Oracle reply text for the task (rendered plan or pipe list).
std::string oracle_transcript(const TaskSpec& task);

/// Decode a reply and classify it against the task: pipe replies go through
/// the pipe validator; object-task replies are matched and executed in
/// simulation, then classified by the stacking/Hanoi validator. Decode
/// failures become Fail verdicts rather than exceptions.
Verdict classify_transcript(const TaskSpec& task, const std::string& transcript);

/// Layout mutators used by the noisy backend and failure-mode fixtures.
PipeLayout mutate_layout(const PipeLayout& layout, const PipeTaskSpec& spec, MutationKind kind,
                         std::uint64_t rng_seed);

// --- trial running ---------------------------------------------------------

struct TrialReport {
    std::string task_id;
    std::string backend;
    int requested = 0;
    int completed = 0;
    int success_optimal = 0;
    int success_suboptimal = 0;
    int fail = 0;
    bool complete = true;     // false when the backend became unavailable
    std::string abort_reason; // set when incomplete
    std::vector<Verdict> verdicts;

    int total() const { return completed; }
    double optimal_ratio() const { return completed ? double(success_optimal) / completed : 0.0; }
    double success_ratio() const {
        return completed ? double(success_optimal + success_suboptimal) / completed : 0.0;
    }
    double failed_ratio() const { return completed ? double(fail) / completed : 0.0; }
};

/// Run n independent trials; trials may execute concurrently and are merged by
/// trial index. A backend transport failure aborts the run and flags the
/// report incomplete.
TrialReport run_trials(const TaskSpec& task, const PlannerBackend& backend, int n);

std::string report_to_json(const TrialReport& report);
std::string report_to_text(const TrialReport& report);

// --- layout export -----------------------------------------------------------

/// Layout file: the task fields plus segments [{from, to, length, axis}].
std::string layout_to_json(const PipeLayout& layout, const PipeTaskSpec& spec);
std::pair<PipeLayout, PipeTaskSpec> layout_from_json(const std::string& json_text);

/// Three orthographic projections (XY, XZ, YZ); obstacles drawn as filled
/// squares, mandatory points as rings, open joints highlighted as gap markers.
std::string render_layout_svg(const PipeLayout& layout, const PipeTaskSpec& spec);

/// Writes the layout JSON and SVG next to each other. Throws io_error.
void export_layout(const PipeLayout& layout, const PipeTaskSpec& spec,
                   const std::string& json_path, const std::string& svg_path);

} // namespace seqplan
