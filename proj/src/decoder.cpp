#include <seqplan/decoder.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <regex>
#include <sstream>

namespace seqplan {

using json = nlohmann::json;

Dictionary Dictionary::with_default_actions(const std::vector<std::string>& object_labels) {
    Dictionary d;
    d.actions = {"move", "place", "pick", "put", "stack", "connect"};
    for (const auto& label : object_labels) d.objects.insert(normalize_label(label));
    return d;
}

std::string target_to_string(const TargetSpec& t) {
    if (const auto* n = std::get_if<NamedLocation>(&t)) return "[" + n->label + "]";
    if (const auto* o = std::get_if<OnTopOf>(&t)) return "the top of [" + o->label + "]";
    if (const auto* c = std::get_if<Coordinate>(&t)) {
        const auto fmt = [](double v) {
            std::ostringstream os;
            if (v == std::floor(v)) {
                os << static_cast<long long>(v);
            } else {
                os << v;
            }
            return os.str();
        };
        return "(" + fmt(c->value.x) + ", " + fmt(c->value.y) + ", " + fmt(c->value.z) + ")";
    }
    return "the base location";
}

std::vector<std::string> split_steps(const std::string& transcript) {
    static const std::regex step_line(R"(^\s*(?:step\s+)?(\d+)\s*\.\s*(.*?)\s*$)",
                                      std::regex::icase);
    std::vector<std::string> steps;
    std::istringstream is(transcript);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::smatch m;
        if (std::regex_match(line, m, step_line) && m[2].length() > 0) steps.push_back(m[2]);
    }
    if (steps.empty()) raise(errc::empty_plan, "no numbered step lines in transcript");
    return steps;
}

namespace {

struct BracketToken {
    std::string text;
    std::size_t begin = 0; // offset of '['
    std::size_t end = 0;   // offset one past ']'
};

std::vector<BracketToken> bracket_tokens(const std::string& raw) {
    std::vector<BracketToken> tokens;
    std::size_t pos = 0;
    while (true) {
        const std::size_t open = raw.find('[', pos);
        if (open == std::string::npos) break;
        const std::size_t close = raw.find(']', open + 1);
        if (close == std::string::npos) break;
        tokens.push_back({raw.substr(open + 1, close - open - 1), open, close + 1});
        pos = close + 1;
    }
    return tokens;
}

bool contains_ci(const std::string& haystack, const std::string& needle) {
    const auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                                [](char a, char b) {
                                    return std::tolower(static_cast<unsigned char>(a)) ==
                                           std::tolower(static_cast<unsigned char>(b));
                                });
    return it != haystack.end();
}

} // namespace

PlanStep parse_step(const std::string& raw, const Dictionary& dict, int index) {
    PlanStep step;
    step.index = index;

    const auto tokens = bracket_tokens(raw);

    // Action: a bracketed token in the action dictionary wins; the replies in
    // practice leave the verb unbracketed, so fall back to the leading word.
    std::vector<std::size_t> action_hits;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        if (dict.has_action(tokens[i].text)) action_hits.push_back(i);
    if (action_hits.size() > 1)
        raise(errc::ambiguous_step, "more than one bracketed action in: " + raw);

    std::vector<bool> consumed(tokens.size(), false);
    if (action_hits.size() == 1) {
        step.action = normalize_label(tokens[action_hits[0]].text);
        consumed[action_hits[0]] = true;
    } else {
        static const std::regex leading_word(R"(^\s*([A-Za-z]+))");
        std::smatch m;
        if (!std::regex_search(raw, m, leading_word))
            raise(errc::unknown_action, "no action verb found in: " + raw);
        if (!dict.has_action(m[1].str()))
            raise(errc::unknown_action, "verb '" + m[1].str() + "' not in action dictionary");
        step.action = normalize_label(m[1].str());
    }

    const auto consume_at = [&](std::size_t offset) {
        for (std::size_t i = 0; i < tokens.size(); ++i)
            if (tokens[i].begin == offset) consumed[i] = true;
    };

    // Stated source: "from [a]".
    static const std::regex from_bracket(R"(from\s*\[([^\]]*)\])", std::regex::icase);
    std::smatch sm;
    if (std::regex_search(raw, sm, from_bracket)) {
        step.source = sm[1].str();
        consume_at(static_cast<std::size_t>(sm.position(0)) + sm[0].str().find('['));
    }

    // Target grammar, most specific form first.
    static const std::regex top_of(R"(top\s+of\s+(?:the\s+)?(?:[A-Za-z]+\s+)?\[([^\]]*)\])",
                                   std::regex::icase);
    static const std::regex coord(
        R"(\(\s*(-?\d+(?:\.\d+)?)\s*,\s*(-?\d+(?:\.\d+)?)\s*,\s*(-?\d+(?:\.\d+)?)\s*\))");
    static const std::regex to_bracket(R"(\bto\s+(?:the\s+)?\[([^\]]*)\])", std::regex::icase);

    std::smatch tm;
    if (contains_ci(raw, "base location")) {
        step.target = BaseLocation{};
    } else if (std::regex_search(raw, tm, top_of)) {
        step.target = OnTopOf{tm[1].str()};
        consume_at(static_cast<std::size_t>(tm.position(0)) + tm[0].str().find('['));
    } else if (std::regex_search(raw, tm, coord)) {
        // Last coordinate in the step is the target.
        auto it = std::sregex_iterator(raw.begin(), raw.end(), coord);
        std::smatch last = *it;
        for (; it != std::sregex_iterator(); ++it) last = *it;
        step.target = Coordinate{{std::stod(last[1].str()), std::stod(last[2].str()),
                                  std::stod(last[3].str())}};
    } else {
        auto it = std::sregex_iterator(raw.begin(), raw.end(), to_bracket);
        if (it == std::sregex_iterator())
            raise(errc::missing_target, "no recognizable target in: " + raw);
        std::smatch last = *it;
        for (; it != std::sregex_iterator(); ++it) last = *it;
        step.target = NamedLocation{last[1].str()};
        consume_at(static_cast<std::size_t>(last.position(0)) + last[0].str().find('['));
    }

    // Moved object: the first unconsumed bracketed token in the object dictionary.
    std::vector<std::size_t> object_hits;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        if (!consumed[i] && dict.has_object(tokens[i].text)) object_hits.push_back(i);
    if (object_hits.empty())
        raise(errc::unknown_object, "no bracketed token in object dictionary in: " + raw);
    if (object_hits.size() > 1)
        raise(errc::ambiguous_step, "more than one candidate moved object in: " + raw);
    step.object = tokens[object_hits[0]].text;

    return step;
}

Plan decode_plan(const std::string& transcript, const Dictionary& dict) {
    Plan plan;
    const auto raws = split_steps(transcript);
    for (std::size_t i = 0; i < raws.size(); ++i)
        plan.steps.push_back(parse_step(raws[i], dict, static_cast<int>(i + 1)));
    return plan;
}

std::string render_plan(const Plan& plan) {
    std::ostringstream os;
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const auto& s = plan.steps[i];
        if (i) os << "\n";
        os << "Step " << s.index << ". [" << s.action << "] [" << s.object << "]";
        if (s.source) os << " from [" << *s.source << "]";
        os << " to " << target_to_string(s.target) << ".";
    }
    return os.str();
}

std::vector<PipeSegmentSpec> parse_pipe_plan(const std::string& transcript) {
    static const std::regex pipe_re(
        R"(pipe\s*(\d+)\s*ft\s*#\s*(\d+)\s*\(([^)]*)\)\s*([xyzXYZ])\s+axis)", std::regex::icase);
    static const std::regex int_re(R"(^-?\d+$)");

    std::vector<PipeSegmentSpec> specs;
    for (auto it = std::sregex_iterator(transcript.begin(), transcript.end(), pipe_re);
         it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        PipeSegmentSpec spec;
        spec.length = std::stoi(m[1].str());
        spec.pipe_index = std::stoi(m[2].str());
        spec.axis = axis_from_letter(m[4].str()[0]);

        std::vector<int> coords;
        std::istringstream body(m[3].str());
        std::string field;
        while (std::getline(body, field, ',')) {
            const std::string t = normalize_label(field);
            if (!std::regex_match(t, int_re))
                raise(errc::malformed_coordinate, "non-integer coordinate in: " + m[0].str());
            coords.push_back(std::stoi(t));
        }
        if (coords.size() != 3)
            raise(errc::malformed_coordinate, "expected 3 coordinates in: " + m[0].str());
        spec.head = {coords[0], coords[1], coords[2]};
        specs.push_back(spec);
    }
    if (specs.empty()) raise(errc::no_segments_found, "no pipe placements in transcript");
    return specs;
}

std::string render_pipe_plan(const std::vector<PipeSegmentSpec>& specs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& s = specs[i];
        if (i) os << ", ";
        os << "pipe " << s.length << "ft #" << s.pipe_index << " " << to_string(s.head) << " "
           << axis_letter(s.axis) << " axis";
    }
    return os.str();
}

namespace {

json target_to_json(const TargetSpec& t) {
    if (const auto* n = std::get_if<NamedLocation>(&t))
        return {{"kind", "named_location"}, {"value", n->label}};
    if (const auto* o = std::get_if<OnTopOf>(&t)) return {{"kind", "on_top_of"}, {"value", o->label}};
    if (const auto* c = std::get_if<Coordinate>(&t))
        return {{"kind", "coordinate"}, {"value", {c->value.x, c->value.y, c->value.z}}};
    return {{"kind", "base_location"}};
}

TargetSpec target_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "named_location") return NamedLocation{j.at("value").get<std::string>()};
    if (kind == "on_top_of") return OnTopOf{j.at("value").get<std::string>()};
    if (kind == "coordinate") {
        const auto& v = j.at("value");
        return Coordinate{{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()}};
    }
    if (kind == "base_location") return BaseLocation{};
    raise(errc::parse_error, "unknown target kind: " + kind);
}

} // namespace

std::string plan_to_json(const Plan& plan) {
    json arr = json::array();
    for (const auto& s : plan.steps) {
        json js = {{"index", s.index},
                   {"action", s.action},
                   {"object", s.object},
                   {"target", target_to_json(s.target)}};
        if (s.source) js["source"] = *s.source;
        arr.push_back(js);
    }
    return arr.dump(2);
}

Plan plan_from_json(const std::string& json_text) {
    json arr;
    try {
        arr = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("plan JSON: ") + e.what());
    }
    if (!arr.is_array()) raise(errc::parse_error, "plan JSON must be an array of steps");
    Plan plan;
    int last_index = 0;
    for (const auto& js : arr) {
        PlanStep s;
        s.index = js.at("index").get<int>();
        s.action = js.at("action").get<std::string>();
        s.object = js.at("object").get<std::string>();
        s.target = target_from_json(js.at("target"));
        if (js.contains("source")) s.source = js["source"].get<std::string>();
        if (s.index <= last_index)
            raise(errc::parse_error, "step indices must be strictly increasing");
        last_index = s.index;
        plan.steps.push_back(std::move(s));
    }
    return plan;
}

} // namespace seqplan
