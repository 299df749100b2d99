#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eg {

/// Machine-readable failure categories, surfaced verbatim by the CLI.
enum class ErrorCode {
    syntax,
    invariant,
    missing_edge,
    identical_labels,
    unknown_label,
    unknown_state,
    unknown_treatment,
    unknown_covariate,
    incomplete_graph,
    invalid_epsilon,
    degenerate_stratum,
    zero_cell,
    zero_propensity,
    size_cap,
    usage,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace eg
