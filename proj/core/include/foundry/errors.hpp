#pragma once

#include <stdexcept>
#include <string>

namespace foundry {

enum class ErrorCode {
    MalformedInput,
    EmptyTable,
    RaggedRows,
    NoCompatibleChart,
    NoRenderedCandidate,
    UnsupportedChartType,
    EncodingMismatch,
    NoFeasibleTemplate,
    EmptyLayout,
    InfeasibleLayout,
    MalformedSvg,
    JudgeUnavailable,
    MalformedJudgeReply,
    ExternalScorerFailure,
    UnsupportedKindForData,
    IoError,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a stable error code plus the pipeline stage that raised it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string stage, const std::string& detail)
        : std::runtime_error(detail), code_(code), stage_(std::move(stage)) {}

    ErrorCode code() const { return code_; }
    const std::string& stage() const { return stage_; }

private:
    ErrorCode code_;
    std::string stage_;
};

} // namespace foundry
