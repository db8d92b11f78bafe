#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qseries {

/// Where a check first went wrong: coefficient index n, the argument it
/// denotes (A*n + B for claims, the exponent itself for identities), and
/// the two values that disagreed, rendered as strings.
struct counterexample {
    std::int64_t index = 0;
    std::int64_t argument = 0;
    std::string lhs;
    std::string rhs;
};

/// Outcome of one identity or congruence check. insufficient_precision is
/// a third state, distinct from failure: the question exceeded the data.
struct verification_report {
    enum class status_t { pass, fail, insufficient_precision };

    std::string id;
    status_t status = status_t::pass;
    std::int64_t n_checked = 0; // coefficients compared / progression indices checked
    std::int64_t depth = 0;     // truncation or table depth backing the check
    std::optional<counterexample> witness;
    double elapsed_ms = 0.0;

    bool passed() const { return status == status_t::pass; }
};

inline const char* to_string(verification_report::status_t s) {
    switch (s) {
    case verification_report::status_t::pass: return "pass";
    case verification_report::status_t::fail: return "fail";
    default: return "insufficient-precision";
    }
}

} // namespace qseries
