#include "foundry/judge.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>

#include "foundry/errors.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace foundry {

using json = nlohmann::json;

const std::vector<RubricDimension>& judge_rubric() {
    static const std::vector<RubricDimension> dims = {
        {"data_element", 20}, {"layout", 20}, {"text", 15},
        {"image", 15},        {"color", 10}, {"validity", 20},
    };
    return dims;
}

std::string judge_prompt() {
    std::string p =
        "You are grading how faithfully a generated infographic reproduces a reference "
        "infographic. The first image is the reference, the second is the candidate.\n\n"
        "Score the candidate on six dimensions. Each dimension has a maximum score; award "
        "points for closeness to the reference, not for absolute beauty.\n";
    for (const auto& d : judge_rubric()) {
        p += "- " + d.name + " (0-" + std::to_string(d.weight) + "): ";
        if (d.name == "data_element")
            p += "marks, values and data encodings agree with the reference.\n";
        else if (d.name == "layout")
            p += "arrangement, alignment and relative placement of blocks match.\n";
        else if (d.name == "text")
            p += "titles, labels and annotations carry the same wording.\n";
        else if (d.name == "image")
            p += "pictorial elements and icons correspond to the reference ones.\n";
        else if (d.name == "color")
            p += "palette, fills and emphasis colors are preserved.\n";
        else
            p += "the candidate is a coherent, readable infographic free of artifacts.\n";
    }
    p += "\nReply with JSON only, no prose around it, shaped as:\n"
         "{";
    bool first = true;
    for (const auto& d : judge_rubric()) {
        if (!first) p += ", ";
        first = false;
        p += "\"" + d.name + "\": {\"score\": <number>, \"comment\": <string>}";
    }
    p += ", \"total_score\": <number>}\n"
         "total_score must equal the sum of the six scores.";
    return p;
}

namespace {

std::string strip_fences(const std::string& s) {
    std::size_t b = s.find("```");
    if (b == std::string::npos) return s;
    std::size_t start = s.find('\n', b);
    if (start == std::string::npos) return s;
    ++start;
    std::size_t end = s.find("```", start);
    if (end == std::string::npos) return s;
    return s.substr(start, end - start);
}

[[noreturn]] void bad_reply(const std::string& why) {
    throw Error(ErrorCode::MalformedJudgeReply, "judge", why);
}

} // namespace

double parse_judge_reply(const std::string& content) {
    json j;
    try {
        j = json::parse(strip_fences(content));
    } catch (const json::exception& e) {
        bad_reply(std::string("reply is not JSON: ") + e.what());
    }
    if (!j.is_object()) bad_reply("reply is not a JSON object");

    double sum = 0;
    for (const auto& d : judge_rubric()) {
        if (!j.contains(d.name)) bad_reply("missing dimension " + d.name);
        const json& dim = j[d.name];
        if (!dim.is_object() || !dim.contains("score") || !dim["score"].is_number())
            bad_reply("dimension " + d.name + " lacks a numeric score");
        double s = dim["score"].get<double>();
        if (s < 0 || s > d.weight + 1e-9)
            bad_reply("dimension " + d.name + " score out of range");
        sum += s;
    }
    if (!j.contains("total_score") || !j["total_score"].is_number())
        bad_reply("missing numeric total_score");
    double total = j["total_score"].get<double>();
    if (std::fabs(total - sum) > 1e-6) bad_reply("total_score does not equal the dimension sum");
    return total;
}

std::string base64_encode(const std::string& bytes) {
    static const char* tbl = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 3 <= bytes.size()) {
        std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                          (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                          static_cast<unsigned char>(bytes[i + 2]);
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += tbl[(v >> 6) & 63];
        out += tbl[v & 63];
        i += 3;
    }
    std::size_t rem = bytes.size() - i;
    if (rem == 1) {
        std::uint32_t v = static_cast<unsigned char>(bytes[i]) << 16;
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += "==";
    } else if (rem == 2) {
        std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                          (static_cast<unsigned char>(bytes[i + 1]) << 8);
        out += tbl[(v >> 18) & 63];
        out += tbl[(v >> 12) & 63];
        out += tbl[(v >> 6) & 63];
        out += '=';
    }
    return out;
}

std::string build_judge_request(const std::string& gt_png, const std::string& pr_png,
                                const JudgeConfig& cfg) {
    auto image_part = [&cfg](const std::string& png) {
        return json{
            {"type", "image_url"},
            {"image_url", {{"url", "data:" + cfg.image_mime + ";base64," + base64_encode(png)}}}};
    };
    json req = {
        {"model", cfg.model},
        {"temperature", 0},
        {"messages",
         json::array({json{{"role", "user"},
                           {"content", json::array({json{{"type", "text"}, {"text", judge_prompt()}},
                                                    image_part(gt_png), image_part(pr_png)})}}})},
    };
    return req.dump();
}

namespace {

struct ParsedUrl {
    std::string host;
    int port = 80;
    std::string path = "/";
};

ParsedUrl parse_http_url(const std::string& url) {
    const std::string http = "http://";
    if (url.rfind("https://", 0) == 0)
        throw Error(ErrorCode::JudgeUnavailable, "judge",
                    "https endpoints are not supported; use a plain-http proxy");
    if (url.rfind(http, 0) != 0)
        throw Error(ErrorCode::JudgeUnavailable, "judge", "endpoint must start with http://");
    ParsedUrl u;
    std::string rest = url.substr(http.size());
    std::size_t slash = rest.find('/');
    std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
    if (slash != std::string::npos) u.path = rest.substr(slash);
    std::size_t colon = authority.find(':');
    if (colon == std::string::npos) {
        u.host = authority;
    } else {
        u.host = authority.substr(0, colon);
        u.port = std::atoi(authority.c_str() + colon + 1);
    }
    if (u.host.empty() || u.port <= 0)
        throw Error(ErrorCode::JudgeUnavailable, "judge", "endpoint has no usable host/port");
    return u;
}

} // namespace

double judge_high_level(const std::string& gt_png, const std::string& pr_png,
                        const JudgeConfig& cfg) {
    ParsedUrl u = parse_http_url(cfg.endpoint);
    httplib::Client cli(u.host, u.port);
    auto timeout = std::chrono::milliseconds(static_cast<long long>(cfg.timeout_seconds * 1000));
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);

    std::string token = cfg.auth_token;
    if (token.empty()) {
        const char* env = std::getenv("JUDGE_TOKEN");
        if (env) token = env;
    }
    httplib::Headers headers;
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);

    auto res = cli.Post(u.path, headers, build_judge_request(gt_png, pr_png, cfg),
                        "application/json");
    if (!res)
        throw Error(ErrorCode::JudgeUnavailable, "judge",
                    "no response from " + cfg.endpoint);
    if (res->status != 200)
        throw Error(ErrorCode::JudgeUnavailable, "judge",
                    "endpoint returned status " + std::to_string(res->status));

    json body;
    try {
        body = json::parse(res->body);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedJudgeReply, "judge",
                    std::string("response body is not JSON: ") + e.what());
    }
    if (!body.contains("choices") || !body["choices"].is_array() || body["choices"].empty())
        throw Error(ErrorCode::MalformedJudgeReply, "judge", "response has no choices");
    const json& msg = body["choices"][0];
    if (!msg.contains("message") || !msg["message"].contains("content") ||
        !msg["message"]["content"].is_string())
        throw Error(ErrorCode::MalformedJudgeReply, "judge", "choice carries no text content");
    return parse_judge_reply(msg["message"]["content"].get<std::string>());
}

} // namespace foundry
