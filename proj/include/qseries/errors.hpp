#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qseries {

/// Base class for everything this library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two operands live in different coefficient rings.
struct ring_mismatch_error : error {
    using error::error;
};

/// Constant term is not a unit of the ring.
struct not_invertible_error : error {
    using error::error;
};

/// Residue r out of range for an m-dissection (r >= m).
struct bad_residue_error : error {
    using error::error;
};

/// A comparison or lookup was requested beyond the valid order of a series
/// or the range of a table. Distinct from failure: the data ran out before
/// the question could be answered.
struct insufficient_precision_error : error {
    using error::error;
};

/// A prime-valued parameter failed its primality or residue-class condition.
struct bad_prime_error : error {
    using error::error;
};

/// Legendre symbol argument shares a factor with the modulus.
struct not_coprime_error : error {
    using error::error;
};

/// Input exceeds a guard bound (e.g. enumeration size).
struct too_large_error : error {
    using error::error;
};

/// DSL syntax error, carries 1-based line/column of the offending token.
struct parse_error : error {
    std::int64_t line;
    std::int64_t column;
    parse_error(const std::string& msg, std::int64_t line_, std::int64_t column_)
        : error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_), column(column_) {}
};

/// DSL atom that is not part of the grammar.
struct unknown_symbol_error : parse_error {
    using parse_error::parse_error;
};

} // namespace qseries
