#include <seqplan/harness.hpp>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdlib>
#include <thread>

namespace seqplan {

using json = nlohmann::json;

LlmConfig LlmConfig::from_env() {
    LlmConfig cfg;
    if (const char* key = std::getenv("LLM_API_KEY")) cfg.api_key = key;
    return cfg;
}

LlmConfig llm_config_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("llm config JSON: ") + e.what());
    }
    LlmConfig cfg = LlmConfig::from_env();
    cfg.base_url = j.value("base_url", cfg.base_url);
    cfg.path = j.value("path", cfg.path);
    cfg.model = j.value("model", cfg.model);
    cfg.temperature = j.value("temperature", cfg.temperature);
    cfg.max_retries = j.value("max_retries", cfg.max_retries);
    cfg.timeout_seconds = j.value("timeout_seconds", cfg.timeout_seconds);
    cfg.backoff_initial_ms = j.value("backoff_initial_ms", cfg.backoff_initial_ms);
    cfg.backoff_factor = j.value("backoff_factor", cfg.backoff_factor);
    if (j.contains("api_key")) cfg.api_key = j["api_key"].get<std::string>();
    return cfg;
}

namespace {

bool retryable_status(int status) { return status >= 500 || status == 429; }

} // namespace

std::string llm_complete(const PromptBundle& bundle, const LlmConfig& cfg, LlmCallStats* stats) {
    const json body = {
        {"model", cfg.model},
        {"messages",
         {{{"role", "system"}, {"content", bundle.system_text}},
          {{"role", "user"}, {"content", bundle.user_text}}}},
        {"temperature", cfg.temperature},
    };
    const std::string payload = body.dump();

    httplib::Client client(cfg.base_url);
    client.set_connection_timeout(std::chrono::milliseconds(
        static_cast<int>(cfg.timeout_seconds * 1000)));
    client.set_read_timeout(std::chrono::milliseconds(
        static_cast<int>(cfg.timeout_seconds * 1000)));

    httplib::Headers headers;
    if (!cfg.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg.api_key);

    double backoff_ms = cfg.backoff_initial_ms;
    int last_status = 0;
    bool transport_failure = false;

    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(static_cast<int>(backoff_ms)));
            backoff_ms *= cfg.backoff_factor;
        }
        auto res = client.Post(cfg.path, headers, payload, "application/json");
        if (stats) {
            ++stats->attempts;
            stats->notes.push_back(res ? "status " + std::to_string(res->status)
                                       : "transport error");
        }
        if (!res) {
            transport_failure = true;
            continue;
        }
        transport_failure = false;
        last_status = res->status;
        if (retryable_status(res->status)) continue;
        if (res->status != 200)
            raise(errc::http_error,
                  "status " + std::to_string(res->status) + " from " + cfg.base_url + cfg.path);

        json reply;
        try {
            reply = json::parse(res->body);
        } catch (const json::exception& e) {
            raise(errc::http_error, std::string("unparseable completion body: ") + e.what());
        }
        std::string content;
        if (reply.contains("choices") && !reply["choices"].empty()) {
            const auto& choice = reply["choices"][0];
            if (choice.contains("message"))
                content = choice["message"].value("content", "");
        }
        if (content.empty())
            raise(errc::empty_completion, "completion carries no message content");
        return content;
    }

    if (transport_failure)
        raise(errc::timeout, cfg.base_url + " unreachable after " +
                                 std::to_string(cfg.max_retries + 1) + " attempts");
    raise(errc::http_error, "status " + std::to_string(last_status) + " persisted after " +
                                std::to_string(cfg.max_retries + 1) + " attempts");
}

} // namespace seqplan
