#pragma once

#include <string>
#include <vector>

namespace foundry {

// Remote vision-model judge for the high-level score.
struct JudgeConfig {
    std::string endpoint; // http://host:port/v1/chat/completions
    std::string model = "gpt-4o";
    std::string auth_token; // falls back to $JUDGE_TOKEN when empty
    double timeout_seconds = 60.0;
    std::string image_mime = "image/png"; // mime of the bytes handed over
};

struct RubricDimension {
    std::string name;
    int weight; // max score for this dimension
};

// Six dimensions, weights sum to 100.
const std::vector<RubricDimension>& judge_rubric();

// Prompt sent to the judge model (for inspection/tests).
std::string judge_prompt();

// Parse + validate a judge reply body (the model message content).
// Returns total score in [0,100]. Throws MalformedJudgeReply.
double parse_judge_reply(const std::string& content);

// Build the request JSON for a pair of PNGs (raw bytes, base64-encoded here).
std::string build_judge_request(const std::string& gt_png, const std::string& pr_png,
                                const JudgeConfig& cfg);

// Full round trip: POST both renders, return validated total score.
// Throws JudgeUnavailable on transport problems, MalformedJudgeReply on bad replies.
double judge_high_level(const std::string& gt_png, const std::string& pr_png,
                        const JudgeConfig& cfg);

std::string base64_encode(const std::string& bytes);

} // namespace foundry
