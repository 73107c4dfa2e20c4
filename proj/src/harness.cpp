#include <seqplan/harness.hpp>

#include <seqplan/executor.hpp>
#include <seqplan/matcher.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <random>
#include <sstream>

namespace seqplan {

using json = nlohmann::json;
namespace fs = std::filesystem;

// --- tasks ---------------------------------------------------------------

std::string HanoiTask::aux() const {
    for (const auto& p : pegs)
        if (normalize_label(p) != normalize_label(from) && normalize_label(p) != normalize_label(to))
            return p;
    raise(errc::invalid_task, "hanoi task needs a free auxiliary peg");
}

TaskSpec parse_task(const std::string& json_text, const std::string& fallback_id) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("task JSON: ") + e.what());
    }

    std::string family = j.value("family", "");
    if (family.empty()) {
        if (j.contains("start") && j.contains("end")) {
            family = "pipe";
        } else if (j.contains("scene")) {
            family = "stacking";
        } else if (j.contains("disks")) {
            family = "hanoi";
        }
    }

    TaskSpec task;
    task.id = j.value("id", fallback_id);
    if (family == "pipe") {
        task.body = pipe_spec_from_json(json_text);
    } else if (family == "stacking") {
        StackingTask st;
        st.scene = parse_scene(j.at("scene").dump());
        task.body = std::move(st);
    } else if (family == "hanoi") {
        HanoiTask h;
        h.disks = j.value("disks", 5);
        if (j.contains("pegs")) {
            h.pegs.clear();
            for (const auto& p : j["pegs"]) h.pegs.push_back(p.get<std::string>());
        }
        if (h.pegs.size() != 3) raise(errc::invalid_task, "hanoi task needs exactly 3 pegs");
        h.from = j.value("from", h.pegs.front());
        h.to = j.value("to", h.pegs[1]);
        task.body = std::move(h);
    } else {
        raise(errc::unknown_task_family, "cannot tell the task family of " + fallback_id);
    }
    return task;
}

TaskSpec load_task(const std::string& path) {
    return parse_task(read_text_file(path), fs::path(path).stem().string());
}

Scene make_hanoi_scene(const HanoiTask& task) {
    Scene scene;
    const double spacing = 0.4;
    for (std::size_t i = 0; i < task.pegs.size(); ++i) {
        SceneObject peg;
        peg.name = task.pegs[i];
        peg.kind = ObjectKind::Peg;
        peg.size = {0.02, 0.02, 0.0};
        peg.position = {spacing * double(i), 0.0, 0.0};
        scene.objects.push_back(peg);
    }
    const SceneObject* from_peg = nullptr;
    for (const auto& obj : scene.objects)
        if (normalize_label(obj.name) == normalize_label(task.from)) from_peg = &obj;
    if (!from_peg) raise(errc::invalid_task, "hanoi 'from' peg not among pegs");

    const double disk_height = 0.1;
    double stack = 0.0;
    for (int rank = task.disks; rank >= 1; --rank) { // largest at the bottom
        SceneObject disk;
        disk.name = hanoi_disk_label(rank);
        disk.kind = ObjectKind::Disk;
        const double width = 0.1 + 0.04 * rank;
        disk.size = {width, width, disk_height};
        disk.position = {from_peg->position.x, from_peg->position.y, stack + disk_height / 2.0};
        stack += disk_height;
        scene.objects.push_back(disk);
    }
    return scene;
}

// --- prompts ---------------------------------------------------------------

namespace {

const char* kPrinciples[3] = {
    "The ChatGPT will generate the reply step by step in an execution order.",
    "For each step, there is only one motion and one object to be moved or operated. There is "
    "only one target location.",
    "The related words about action, object and target position, must be quoted by brackets.",
};

std::string number_word(int n) {
    static const char* words[] = {"zero", "one", "two",   "three", "four",  "five",  "six",
                                  "seven", "eight", "nine", "ten",   "eleven", "twelve"};
    if (n >= 0 && n <= 12) return words[n];
    return std::to_string(n);
}

std::string ordinal_word(int n) {
    static const char* words[] = {"",      "first", "second", "third", "fourth",
                                  "fifth", "sixth", "seventh", "eighth", "ninth", "tenth"};
    if (n >= 1 && n <= 10) return words[n];
    return "#" + std::to_string(n);
}

std::string coord_text(const GridPoint& p) { return to_string(p); }

std::string coord_text_ft(const GridPoint& p) {
    std::ostringstream os;
    os << "(" << p.x << "ft, " << p.y << "ft, " << p.z << "ft)";
    return os.str();
}

std::string axis_phrase(const Axis& a) {
    std::string s = a.sign >= 0 ? "positive " : "negative ";
    s.push_back(static_cast<char>(std::toupper(axis_letter(a.name))));
    return s + " axis";
}

std::string bracket_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += (i + 1 == items.size()) ? " and " : ", ";
        out += "[" + items[i] + "]";
    }
    return out;
}

std::vector<const SceneObject*> movable_parts(const Scene& scene) {
    std::vector<const SceneObject*> parts;
    for (const auto& obj : scene.objects)
        if (is_movable(obj.kind)) parts.push_back(&obj);
    return parts;
}

std::string stacking_prompt(const StackingTask& task) {
    auto parts = movable_parts(task.scene);
    if (parts.empty()) raise(errc::invalid_task, "stacking task has no parts");
    std::sort(parts.begin(), parts.end(), [](const SceneObject* a, const SceneObject* b) {
        return a->footprint_area() > b->footprint_area();
    });
    std::ostringstream os;
    os << "I have " << number_word(static_cast<int>(parts.size())) << " cubes with the names ["
       << parts.front()->name << "] to [" << parts.back()->name
       << "]. The cubes' lengths are in a descending order from [" << parts.front()->name
       << "] to [" << parts.back()->name
       << "]. So I want to teach a robot arm to use the cubes to create a tower with the most "
          "stable design. Could you tell me which cube to operate step by step and use \"move\" "
          "to refer the operations?";
    return os.str();
}

std::string hanoi_prompt(const HanoiTask& task) {
    std::vector<std::string> disks;
    for (int r = 1; r <= task.disks; ++r) disks.push_back(hanoi_disk_label(r));
    std::ostringstream os;
    os << "I have a tower of Hanoi with " << number_word(task.disks) << " disks "
       << bracket_list(disks) << " from smallest to biggest. The towers names are "
       << bracket_list(task.pegs)
       << ". Describe the sequence of completing the puzzle and control the robot arm to finish "
          "it.";
    return os.str();
}

// Three-pipe example walk appended to the pipe prompts: two pipes along the
// start axis, then one sideways, using the first, last and middle allowed
// lengths.
std::string pipe_example(const PipeTaskSpec& spec) {
    const std::vector<int>& lens = spec.lengths;
    const int l1 = lens.front();
    const int l2 = lens.back();
    const int l3 = lens.size() >= 3 ? lens[1] : lens.front();

    const Axis first = spec.start_axis;
    const Axis side{first.name == AxisName::Y ? AxisName::X : AxisName::Y, +1};

    std::map<int, int> counters;
    std::ostringstream os;
    GridPoint head = spec.start;
    const auto lay = [&](int len, const Axis& axis, bool last) {
        const GridPoint off = direction_offset(direction_from_axis(axis));
        head = head + GridPoint{off.x * len, off.y * len, off.z * len};
        os << "pipe " << len << "ft #" << ++counters[len] << " " << coord_text(head) << " "
           << axis_letter(axis.name) << " axis" << (last ? "" : ", ");
    };
    lay(l1, first, false);
    lay(l2, first, false);
    lay(l3, side, true);
    return os.str();
}

std::string pipe_prompt(const PipeTaskSpec& spec) {
    const std::vector<int>& stock = spec.inventory.empty() ? spec.lengths : spec.inventory;
    std::ostringstream os;
    os << "Can you help me with pipe connection? We have several ";
    for (std::size_t i = 0; i < stock.size(); ++i) {
        if (i) os << ", ";
        os << stock[i] << "ft length straight pipes (pipe " << stock[i] << "ft)";
    }
    os << ". The start position is " << coord_text_ft(spec.start) << " direction is the "
       << axis_phrase(spec.start_axis) << ", ";
    if (!spec.mandatory.empty()) {
        for (std::size_t i = 0; i < spec.mandatory.size(); ++i) {
            os << (i == 0 ? "the pipe connection must pass the " : "then pass the ")
               << ordinal_word(static_cast<int>(i + 1)) << " mandatory point "
               << coord_text(spec.mandatory[i]) << ", ";
        }
        os << "finally to the end position " << coord_text(spec.end) << " direction is the "
           << axis_phrase(spec.end_axis) << ". ";
    } else {
        os << "the end position " << coord_text(spec.end) << " direction is the "
           << axis_phrase(spec.end_axis) << ". ";
    }
    os << "We assume that each straight pipe can be connect to each other directly. You can just "
          "tell me the position of each pipe, such as '"
       << pipe_example(spec)
       << "'. To be noted, each pipe must maintain parallelism to the X, Y, and Z axes.";
    if (!spec.obstacles.empty()) {
        os << " There " << (spec.obstacles.size() == 1 ? "is " : "are ")
           << number_word(static_cast<int>(spec.obstacles.size()))
           << (spec.obstacles.size() == 1 ? " obstacle at " : " obstacles at ");
        for (std::size_t i = 0; i < spec.obstacles.size(); ++i) {
            if (i) os << " and ";
            os << "point " << coord_text(spec.obstacles[i]);
        }
        os << ", the pipe cannot pass through this point from neither X, Y nor Z axes.";
    }
    if (!spec.mandatory.empty()) {
        os << " The pipe must pass each mandatory point ";
        for (std::size_t i = 0; i < spec.mandatory.size(); ++i) {
            if (i) os << " and ";
            os << coord_text(spec.mandatory[i]);
        }
        os << ".";
    }
    return os.str();
}

} // namespace

PromptBundle build_prompt(const TaskSpec& task) {
    PromptBundle bundle;
    std::ostringstream sys;
    for (int i = 0; i < 3; ++i) sys << (i + 1) << ") " << kPrinciples[i] << "\n";
    bundle.system_text = sys.str();

    if (const auto* st = task.stacking()) {
        bundle.user_text = stacking_prompt(*st);
    } else if (const auto* h = task.hanoi()) {
        bundle.user_text = hanoi_prompt(*h);
    } else if (const auto* p = task.pipe()) {
        bundle.user_text = pipe_prompt(*p);
    } else {
        raise(errc::unknown_task_family, "task " + task.id);
    }
    return bundle;
}

// --- backends ----------------------------------------------------------------

PlannerBackend parse_backend(const std::string& text, const LlmConfig& llm_config) {
    if (text == "oracle") return OracleBackend{};
    if (text == "llm") return RemoteLlmBackend{llm_config};
    if (text.rfind("corpus:", 0) == 0) return TranscriptCorpusBackend{text.substr(7)};
    if (text.rfind("noisy:", 0) == 0) {
        std::istringstream is(text.substr(6));
        std::string rate, seed, kind;
        std::getline(is, rate, ':');
        std::getline(is, seed, ':');
        std::getline(is, kind, ':');
        NoisyOracleBackend noisy;
        try {
            noisy.error_rate = std::stod(rate);
            noisy.seed = seed.empty() ? 0 : std::stoull(seed);
        } catch (const std::exception&) {
            raise(errc::parse_error, "bad noisy backend spec: " + text);
        }
        if (noisy.error_rate < 0.0 || noisy.error_rate > 1.0)
            raise(errc::parse_error, "error rate must be within [0,1]: " + text);
        if (kind.empty() || kind == "delete") {
            noisy.mutation = MutationKind::DeleteStep;
        } else if (kind == "jitter") {
            noisy.mutation = MutationKind::JitterEndpoint;
        } else if (kind == "detour") {
            noisy.mutation = MutationKind::InsertDetour;
        } else {
            raise(errc::parse_error, "unknown mutation kind: " + kind);
        }
        return noisy;
    }
    raise(errc::parse_error, "unknown backend: " + text);
}

std::string describe_backend(const PlannerBackend& backend) {
    if (std::holds_alternative<OracleBackend>(backend)) return "oracle";
    if (const auto* c = std::get_if<TranscriptCorpusBackend>(&backend))
        return "corpus:" + c->path;
    if (std::holds_alternative<RemoteLlmBackend>(backend)) return "llm";
    const auto& n = std::get<NoisyOracleBackend>(backend);
    std::ostringstream os;
    os << "noisy:" << n.error_rate << ":" << n.seed << ":"
       << (n.mutation == MutationKind::DeleteStep
               ? "delete"
               : n.mutation == MutationKind::JitterEndpoint ? "jitter" : "detour");
    return os.str();
}

std::string oracle_transcript(const TaskSpec& task) {
    if (const auto* st = task.stacking()) {
        std::vector<SceneObject> parts;
        for (const auto* p : movable_parts(st->scene)) parts.push_back(*p);
        return render_plan(plan_stacking(parts));
    }
    if (const auto* h = task.hanoi()) {
        return render_plan(plan_hanoi(h->disks, h->from, h->to, h->aux()));
    }
    const auto* spec = task.pipe();
    if (!spec) raise(errc::unknown_task_family, "task " + task.id);
    return render_pipe_plan(layout_to_specs(route_pipes(*spec)));
}

// --- mutations ---------------------------------------------------------------

PipeLayout mutate_layout(const PipeLayout& layout, const PipeTaskSpec& spec, MutationKind kind,
                         std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    PipeLayout out = layout;
    if (out.segments.empty()) return out;

    const auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };

    switch (kind) {
        case MutationKind::DeleteStep: {
            out.segments.erase(out.segments.begin() + pick(out.segments.size()));
            return out;
        }
        case MutationKind::JitterEndpoint: {
            // Translate one segment sideways by one unit: both of its joints
            // then agree with their neighbors in exactly two coordinates.
            const std::size_t k = pick(out.segments.size());
            Segment seg = out.segments[k].segment;
            const AxisName own = seg.axis();
            const AxisName shift_axis = own == AxisName::X ? AxisName::Y : AxisName::X;
            GridPoint off = direction_offset(direction_from_axis({shift_axis, +1}));
            const auto apply = [&](const GridPoint& p) { return p + off; };
            const auto max_coord = [&](const GridPoint& p) {
                return std::max({p.x, p.y, p.z});
            };
            if (max_coord(apply(seg.from)) > spec.room || max_coord(apply(seg.to)) > spec.room)
                off = GridPoint{-off.x, -off.y, -off.z};
            out.segments[k].segment = Segment(seg.from + off, seg.to + off);
            return out;
        }
        case MutationKind::InsertDetour: {
            // A one-unit out-and-back spliced into an interior joint keeps the
            // layout connected and valid but lengthens it.
            if (out.segments.size() < 2) return out;
            const int len = spec.lengths.front();
            for (std::size_t tries = 0; tries < 64; ++tries) {
                const std::size_t joint = 1 + pick(out.segments.size() - 1);
                const GridPoint at = out.segments[joint - 1].segment.to;
                const Direction dir = static_cast<Direction>(pick(6));
                const GridPoint off = direction_offset(dir);
                const GridPoint outp =
                    at + GridPoint{off.x * len, off.y * len, off.z * len};
                if (outp.x < 0 || outp.y < 0 || outp.z < 0 || outp.x > spec.room ||
                    outp.y > spec.room || outp.z > spec.room)
                    continue;
                const bool blocked = std::any_of(
                    spec.obstacles.begin(), spec.obstacles.end(), [&](const GridPoint& obs) {
                        return segment_contains_point(Segment(at, outp), obs);
                    });
                if (blocked) continue;
                out.segments.insert(out.segments.begin() + joint,
                                    {Segment(outp, at), len});
                out.segments.insert(out.segments.begin() + joint,
                                    {Segment(at, outp), len});
                return out;
            }
            return out;
        }
    }
    return out;
}

namespace {

Plan mutate_object_plan(const Plan& plan, const TaskSpec& task, MutationKind kind,
                        std::mt19937_64& rng) {
    Plan out = plan;
    if (out.steps.empty()) return out;
    const auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    switch (kind) {
        case MutationKind::DeleteStep:
            out.steps.erase(out.steps.begin() + pick(out.steps.size()));
            break;
        case MutationKind::JitterEndpoint: {
            // Retarget one step to a location outside the task, breaking the build.
            auto& step = out.steps[pick(out.steps.size())];
            step.target = NamedLocation{"elsewhere"};
            step.source.reset();
            break;
        }
        case MutationKind::InsertDetour: {
            if (const auto* h = task.hanoi()) {
                // Park the smallest disk on the auxiliary peg and bring it back.
                PlanStep park;
                park.action = "move";
                park.object = hanoi_disk_label(1);
                park.source = h->to;
                park.target = NamedLocation{h->aux()};
                PlanStep back = park;
                back.source = h->aux();
                back.target = NamedLocation{h->to};
                out.steps.push_back(park);
                out.steps.push_back(back);
            } else {
                out.steps.push_back(out.steps.back()); // re-place the top part
            }
            break;
        }
    }
    for (std::size_t i = 0; i < out.steps.size(); ++i)
        out.steps[i].index = static_cast<int>(i + 1);
    return out;
}

std::string noisy_transcript(const NoisyOracleBackend& backend, const TaskSpec& task,
                             int trial_index) {
    std::mt19937_64 rng(backend.seed * 0x9e3779b97f4a7c15ULL + std::uint64_t(trial_index) + 1);
    const bool corrupt = std::bernoulli_distribution(backend.error_rate)(rng);
    if (!corrupt) return oracle_transcript(task);

    if (const auto* spec = task.pipe()) {
        const PipeLayout mutated =
            mutate_layout(route_pipes(*spec), *spec, backend.mutation, rng());
        return render_pipe_plan(layout_to_specs(mutated));
    }
    Plan plan;
    if (const auto* st = task.stacking()) {
        std::vector<SceneObject> parts;
        for (const auto* p : movable_parts(st->scene)) parts.push_back(*p);
        plan = plan_stacking(parts);
    } else if (const auto* h = task.hanoi()) {
        plan = plan_hanoi(h->disks, h->from, h->to, h->aux());
    } else {
        raise(errc::unknown_task_family, "task " + task.id);
    }
    return render_plan(mutate_object_plan(plan, task, backend.mutation, rng));
}

std::vector<std::string> corpus_files(const std::string& path) {
    if (fs::is_directory(path)) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file() && entry.path().extension() == ".txt")
                files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
        if (files.empty()) raise(errc::backend_unavailable, "no .txt transcripts in " + path);
        return files;
    }
    if (!fs::exists(path)) raise(errc::backend_unavailable, "no such corpus: " + path);
    return {path};
}

} // namespace

std::string backend_transcript(const PlannerBackend& backend, const TaskSpec& task,
                               int trial_index) {
    if (std::holds_alternative<OracleBackend>(backend)) return oracle_transcript(task);
    if (const auto* corpus = std::get_if<TranscriptCorpusBackend>(&backend)) {
        const auto files = corpus_files(corpus->path);
        return read_text_file(files[std::size_t(trial_index) % files.size()]);
    }
    if (const auto* remote = std::get_if<RemoteLlmBackend>(&backend))
        return llm_complete(build_prompt(task), remote->config);
    return noisy_transcript(std::get<NoisyOracleBackend>(backend), task, trial_index);
}

// --- classification ------------------------------------------------------

namespace {

Verdict fail_verdict(ReasonCode code, const std::string& detail) {
    Verdict v;
    v.outcome = Outcome::Fail;
    v.reasons.push_back({code, detail});
    return v;
}

Verdict classify_object_task(const TaskSpec& task, const Plan& plan, const Scene& scene,
                             const Dictionary& dict) {
    Verdict verdict;
    if (const auto* h = task.hanoi()) {
        verdict = validate_hanoi(plan, h->disks, h->pegs, h->from, h->to);
    } else {
        verdict = validate_stacking(plan, scene);
    }

    // Drive the simulated arm through the plan as well; a plan the executor
    // cannot physically run is a failure even if the replay-level checks pass.
    try {
        const auto ops = match_objects(plan, scene, dict);
        execute_plan(ops, scene, ImpedanceParams{});
    } catch (const error& e) {
        if (verdict.success()) {
            const ReasonCode code =
                e.code() == errc::no_match ? ReasonCode::NoMatch : ReasonCode::ExecutionError;
            verdict = fail_verdict(code, e.what());
        }
    }
    return verdict;
}

} // namespace

Verdict classify_transcript(const TaskSpec& task, const std::string& transcript) {
    try {
        if (const auto* spec = task.pipe())
            return validate_pipe_layout(parse_pipe_plan(transcript), *spec);

        if (const auto* st = task.stacking()) {
            std::vector<std::string> labels;
            for (const auto* p : movable_parts(st->scene)) labels.push_back(p->name);
            const Dictionary dict = Dictionary::with_default_actions(labels);
            return classify_object_task(task, decode_plan(transcript, dict), st->scene, dict);
        }

        const auto* h = task.hanoi();
        if (!h) raise(errc::unknown_task_family, "task " + task.id);
        std::vector<std::string> labels;
        for (int r = 1; r <= h->disks; ++r) labels.push_back(hanoi_disk_label(r));
        const Dictionary dict = Dictionary::with_default_actions(labels);
        return classify_object_task(task, decode_plan(transcript, dict), make_hanoi_scene(*h),
                                    dict);
    } catch (const error& e) {
        return fail_verdict(ReasonCode::DecodeError, e.what());
    }
}

// --- trials --------------------------------------------------------------

TrialReport run_trials(const TaskSpec& task, const PlannerBackend& backend, int n) {
    if (n < 1) raise(errc::invalid_task, "trial count must be at least 1");

    TrialReport report;
    report.task_id = task.id;
    report.backend = describe_backend(backend);
    report.requested = n;

    std::vector<std::optional<Verdict>> verdicts(n);
    std::atomic<bool> aborted{false};
    std::string abort_reason;

    // Trials are independent; the aggregation below is ordered by trial index,
    // so the schedule cannot change the report.
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        if (aborted.load(std::memory_order_relaxed)) continue;
        try {
            const std::string transcript = backend_transcript(backend, task, i);
            verdicts[i] = classify_transcript(task, transcript);
        } catch (const error& e) {
            switch (e.code()) {
                case errc::timeout:
                case errc::http_error:
                case errc::backend_unavailable:
                case errc::io_error:
#pragma omp critical
                    {
                        if (!aborted.load()) abort_reason = e.what();
                    }
                    aborted.store(true, std::memory_order_relaxed);
                    break;
                default:
                    verdicts[i] = fail_verdict(ReasonCode::DecodeError, e.what());
            }
        }
    }

    for (const auto& v : verdicts) {
        if (!v) continue;
        report.verdicts.push_back(*v);
        ++report.completed;
        switch (v->outcome) {
            case Outcome::SuccessOptimal: ++report.success_optimal; break;
            case Outcome::SuccessSubOptimal: ++report.success_suboptimal; break;
            case Outcome::Fail: ++report.fail; break;
        }
    }
    report.complete = !aborted.load();
    report.abort_reason = abort_reason;
    return report;
}

std::string report_to_json(const TrialReport& report) {
    json j;
    j["task"] = report.task_id;
    j["backend"] = report.backend;
    j["requested"] = report.requested;
    j["total"] = report.total();
    j["success_optimal"] = report.success_optimal;
    j["success_suboptimal"] = report.success_suboptimal;
    j["fail"] = report.fail;
    j["ratios"] = {{"optimal_total", report.optimal_ratio()},
                   {"success_total", report.success_ratio()},
                   {"failed_total", report.failed_ratio()}};
    j["complete"] = report.complete;
    if (!report.complete) j["abort_reason"] = report.abort_reason;
    j["verdicts"] = json::array();
    for (const auto& v : report.verdicts) j["verdicts"].push_back(json::parse(verdict_to_json(v)));
    return j.dump(2);
}

std::string report_to_text(const TrialReport& report) {
    std::ostringstream os;
    os << "task " << report.task_id << "  backend " << report.backend << "  trials "
       << report.total() << (report.complete ? "" : "  [INCOMPLETE: " + report.abort_reason + "]")
       << "\n";
    os << "  optimal " << report.success_optimal << "  sub-optimal " << report.success_suboptimal
       << "  fail " << report.fail << "\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "  optimal/total %.2f  success/total %.2f  failed/total %.2f",
                  report.optimal_ratio(), report.success_ratio(), report.failed_ratio());
    os << buf << "\n";
    return os.str();
}

} // namespace seqplan
