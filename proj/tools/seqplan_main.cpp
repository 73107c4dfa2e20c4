#include <seqplan/decoder.hpp>
#include <seqplan/executor.hpp>
#include <seqplan/harness.hpp>
#include <seqplan/matcher.hpp>
#include <seqplan/perception.hpp>
#include <seqplan/planners.hpp>
#include <seqplan/validators.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace seqplan;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    return read_text_file(path);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        write_text_file(out_path, text);
        std::cerr << "wrote " << out_path << "\n";
    }
}

Dictionary dictionary_for(const std::string& objects_csv, const std::string& task_path) {
    std::vector<std::string> labels;
    if (!objects_csv.empty()) {
        std::istringstream is(objects_csv);
        std::string label;
        while (std::getline(is, label, ',')) labels.push_back(label);
    } else if (!task_path.empty()) {
        const TaskSpec task = load_task(task_path);
        if (const auto* st = task.stacking()) {
            for (const auto& obj : st->scene.objects)
                if (is_movable(obj.kind)) labels.push_back(obj.name);
        } else if (const auto* h = task.hanoi()) {
            for (int r = 1; r <= h->disks; ++r) labels.push_back(hanoi_disk_label(r));
        }
    }
    return Dictionary::with_default_actions(labels);
}

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '[' || c == '{';
    }
    return false;
}

/// Decoded plan from either a plan JSON file or a raw transcript.
Plan plan_from_file(const std::string& text, const Dictionary& dict) {
    if (looks_like_json(text)) return plan_from_json(text);
    return decode_plan(text, dict);
}

int cmd_decode(const std::string& input, const std::string& objects_csv,
               const std::string& task_path, const std::string& out) {
    const std::string text = read_input(input);
    const Dictionary dict = dictionary_for(objects_csv, task_path);

    // Prefer the step grammar; fall back to the pipe grammar.
    try {
        emit(plan_to_json(decode_plan(text, dict)), out);
        return 0;
    } catch (const error& step_err) {
        try {
            const auto specs = parse_pipe_plan(text);
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& s : specs)
                arr.push_back({{"length", s.length},
                               {"pipe_index", s.pipe_index},
                               {"head", {s.head.x, s.head.y, s.head.z}},
                               {"axis", std::string(1, axis_letter(s.axis))}});
            emit(arr.dump(2), out);
            return 0;
        } catch (const error&) {
            throw step_err; // neither grammar matched; report the step error
        }
    }
}

int cmd_plan(const std::string& task_path, bool as_json, const std::string& out) {
    const TaskSpec task = load_task(task_path);
    if (const auto* spec = task.pipe()) {
        const PipeLayout layout = route_pipes(*spec);
        emit(as_json ? layout_to_json(layout, *spec)
                     : render_pipe_plan(layout_to_specs(layout)),
             out);
        return 0;
    }
    const std::string transcript = oracle_transcript(task);
    if (as_json) {
        const Dictionary dict = dictionary_for("", task_path);
        emit(plan_to_json(decode_plan(transcript, dict)), out);
    } else {
        emit(transcript, out);
    }
    return 0;
}

int cmd_validate(const std::string& input, const std::string& task_path, const std::string& out) {
    const TaskSpec task = load_task(task_path);
    const std::string text = read_input(input);

    Verdict verdict;
    if (const auto* spec = task.pipe()) {
        if (looks_like_json(text) && text.find("\"segments\"") != std::string::npos) {
            verdict = validate_pipe_layout(layout_from_json(text).first, *spec);
        } else {
            verdict = validate_pipe_layout(parse_pipe_plan(text), *spec);
        }
    } else {
        verdict = classify_transcript(task, looks_like_json(text)
                                                ? render_plan(plan_from_json(text))
                                                : text);
    }
    emit(verdict_to_json(verdict), out);
    return verdict.success() ? 0 : 1;
}

int cmd_simulate(const std::string& plan_path, const std::string& scene_path,
                 const std::string& traj_path, const std::string& final_scene_path) {
    const Scene scene = load_scene(scene_path);
    std::vector<std::string> labels;
    for (const auto& obj : scene.objects)
        if (is_movable(obj.kind)) labels.push_back(obj.name);
    const Dictionary dict = Dictionary::with_default_actions(labels);

    const Plan plan = plan_from_file(read_input(plan_path), dict);
    const auto ops = match_objects(plan, scene, dict);
    const auto result = execute_plan(ops, scene, ImpedanceParams{});

    std::cerr << "executed " << ops.size() << " operation(s), " << result.trajectory.samples.size()
              << " samples at dt=" << result.trajectory.dt << "\n";
    if (!traj_path.empty()) {
        std::ofstream out(traj_path);
        write_trajectory_csv(result.trajectory, out);
        std::cerr << "wrote " << traj_path << "\n";
    }
    emit(scene_to_json(result.scene), final_scene_path);
    return 0;
}

int cmd_trials(const std::string& task_path, const std::string& backend_text, int n,
               bool as_json, const std::string& llm_config_path, const std::string& llm_url,
               const std::string& llm_model, double temperature, const std::string& out) {
    LlmConfig llm = llm_config_path.empty() ? LlmConfig::from_env()
                                            : llm_config_from_json(read_text_file(llm_config_path));
    if (!llm_url.empty()) llm.base_url = llm_url;
    if (!llm_model.empty()) llm.model = llm_model;
    if (temperature >= 0.0) llm.temperature = temperature;

    const TaskSpec task = load_task(task_path);
    const PlannerBackend backend = parse_backend(backend_text, llm);
    const TrialReport report = run_trials(task, backend, n);
    emit(as_json ? report_to_json(report) : report_to_text(report), out);
    return report.complete ? 0 : 2;
}

int cmd_render(const std::string& layout_path, const std::string& out) {
    const auto [layout, spec] = layout_from_json(read_input(layout_path));
    const std::string svg = render_layout_svg(layout, spec);
    emit(svg, out.empty() ? "layout.svg" : out);
    return 0;
}

int cmd_perceive(const std::string& cloud_path, const PerceptionConfig& cfg,
                 const std::string& out) {
    const LabeledCloud cloud = parse_cloud(read_input(cloud_path));
    emit(boxes_to_json(detect_objects(cloud, cfg)), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequence planning toolkit for robot assembly tasks"};
    app.require_subcommand(1);

    std::string input, task_path, out, objects_csv;
    std::string scene_path, traj_path;
    std::string backend_text = "oracle", llm_config_path, llm_url, llm_model;
    int trials_n = 20;
    double temperature = -1.0;
    bool as_json = false;
    PerceptionConfig pcfg;

    auto* decode = app.add_subcommand("decode", "parse a planner reply into a structured plan");
    decode->add_option("transcript", input, "reply text file, or - for stdin")->required();
    decode->add_option("--objects", objects_csv, "comma-separated object dictionary");
    decode->add_option("--task", task_path, "task file supplying the object dictionary");
    decode->add_option("-o,--out", out, "output file (default stdout)");

    auto* plan = app.add_subcommand("plan", "run the oracle planner for a task");
    plan->add_option("task", task_path, "task JSON file")->required();
    plan->add_flag("--json", as_json, "emit structured JSON instead of reply text");
    plan->add_option("-o,--out", out, "output file (default stdout)");

    auto* validate = app.add_subcommand("validate", "classify a plan or layout against a task");
    validate->add_option("plan", input, "plan JSON, layout JSON, or reply text; - for stdin")
        ->required();
    validate->add_option("task", task_path, "task JSON file")->required();
    validate->add_option("-o,--out", out, "output file (default stdout)");

    auto* simulate = app.add_subcommand("simulate", "execute a plan in a simulated scene");
    simulate->add_option("plan", input, "plan JSON or reply text; - for stdin")->required();
    simulate->add_option("scene", scene_path, "scene JSON file")->required();
    simulate->add_option("--traj", traj_path, "trajectory CSV output path");
    simulate->add_option("-o,--out", out, "final scene JSON output (default stdout)");

    auto* trials = app.add_subcommand("trials", "run repeated trials against a planner backend");
    trials->add_option("task", task_path, "task JSON file")->required();
    trials->add_option("--backend", backend_text,
                       "oracle | corpus:PATH | llm | noisy:RATE:SEED[:delete|jitter|detour]");
    trials->add_option("-n", trials_n, "trial count")->check(CLI::PositiveNumber);
    trials->add_flag("--json", as_json, "emit the report as JSON");
    trials->add_option("--llm-config", llm_config_path, "LLM endpoint config JSON");
    trials->add_option("--llm-url", llm_url, "LLM endpoint base URL");
    trials->add_option("--llm-model", llm_model, "model name");
    trials->add_option("--temperature", temperature, "sampling temperature");
    trials->add_option("-o,--out", out, "output file (default stdout)");

    auto* render = app.add_subcommand("render", "render a layout file as SVG projections");
    render->add_option("layout", input, "layout JSON file; - for stdin")->required();
    render->add_option("-o,--out", out, "SVG output path (default layout.svg)");

    auto* perceive = app.add_subcommand("perceive", "detect labeled boxes in a point cloud");
    perceive->add_option("cloud", input, "point cloud text file; - for stdin")->required();
    perceive->add_option("--bandwidth", pcfg.bandwidth, "mean-shift window radius");
    perceive->add_option("--iterations", pcfg.shift_iterations, "mean-shift iterations");
    perceive->add_option("--radius", pcfg.cluster_radius, "clustering connectivity radius");
    perceive->add_option("--min-points", pcfg.min_points, "minimum cluster size");
    perceive->add_option("-o,--out", out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(decode)) return cmd_decode(input, objects_csv, task_path, out);
        if (app.got_subcommand(plan)) return cmd_plan(task_path, as_json, out);
        if (app.got_subcommand(validate)) return cmd_validate(input, task_path, out);
        if (app.got_subcommand(simulate)) return cmd_simulate(input, scene_path, traj_path, out);
        if (app.got_subcommand(trials))
            return cmd_trials(task_path, backend_text, trials_n, as_json, llm_config_path,
                              llm_url, llm_model, temperature, out);
        if (app.got_subcommand(render)) return cmd_render(input, out);
        if (app.got_subcommand(perceive)) return cmd_perceive(input, pcfg, out);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
