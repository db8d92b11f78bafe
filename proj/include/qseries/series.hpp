#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/rings.hpp"

namespace qseries {

/// Dense truncated power series in q over a coefficient ring.
///
/// A series of order N stores exactly the coefficients of q^0 .. q^{N-1} and
/// represents its value modulo q^N only. Every operation computes the largest
/// order its inputs justify and sizes its output accordingly; nothing here
/// ever compares or reads coefficients past the stored order.
template <coefficient_ring R>
class series {
public:
    using ring_type = R;
    using value_type = typename R::value_type;

    /// Zero series of the given order (order >= 1).
    series(R ring, std::int64_t order)
        : ring_(std::move(ring)), coeffs_(checked_size(order), ring_.zero()) {}

    series(R ring, std::vector<value_type> coeffs)
        : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
        checked_size(static_cast<std::int64_t>(coeffs_.size()));
    }

    const R& ring() const { return ring_; }
    std::int64_t order() const { return static_cast<std::int64_t>(coeffs_.size()); }

    const value_type& operator[](std::int64_t e) const {
        if (e < 0 || e >= order())
            throw insufficient_precision_error(
                "coefficient of q^" + std::to_string(e) +
                " requested from a series of order " + std::to_string(order()));
        return coeffs_[static_cast<std::size_t>(e)];
    }
    value_type& coeff_ref(std::int64_t e) {
        if (e < 0 || e >= order())
            throw insufficient_precision_error(
                "coefficient of q^" + std::to_string(e) +
                " requested from a series of order " + std::to_string(order()));
        return coeffs_[static_cast<std::size_t>(e)];
    }

    const std::vector<value_type>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!ring_.is_zero(c)) return false;
        return true;
    }

    std::int64_t nonzero_count() const {
        std::int64_t n = 0;
        for (const auto& c : coeffs_)
            if (!ring_.is_zero(c)) ++n;
        return n;
    }

    /// Prefix of the first n coefficients (n <= order).
    series truncated(std::int64_t n) const {
        if (n > order())
            throw insufficient_precision_error(
                "cannot extend a series of order " + std::to_string(order()) +
                " to order " + std::to_string(n));
        checked_size(n);
        return series(ring_, std::vector<value_type>(coeffs_.begin(),
                                                     coeffs_.begin() + n));
    }

private:
    static std::int64_t checked_size(std::int64_t order) {
        if (order < 1)
            throw insufficient_precision_error(
                "series order must be >= 1, got " + std::to_string(order));
        return order;
    }

    R ring_;
    std::vector<value_type> coeffs_;
};

namespace detail {

template <coefficient_ring R>
void require_same_ring(const series<R>& a, const series<R>& b, const char* op) {
    if (!a.ring().same_ring(b.ring()))
        throw ring_mismatch_error(std::string(op) + ": operands live in " +
                                  a.ring().describe() + " and " +
                                  b.ring().describe());
}

} // namespace detail

/// c*q^e truncated at the given order; the monomial is exact, so any order
/// is valid (e >= order just drops the term).
template <coefficient_ring R>
series<R> monomial(const R& ring, std::int64_t coeff, std::int64_t exponent,
                   std::int64_t order) {
    series<R> out(ring, order);
    if (exponent < 0)
        throw error("negative exponent q^" + std::to_string(exponent) +
                    ": Laurent series are not supported");
    if (exponent < order)
        out.coeff_ref(exponent) = ring.from_int(coeff);
    return out;
}

template <coefficient_ring R>
series<R> constant_series(const R& ring, std::int64_t value, std::int64_t order) {
    return monomial(ring, value, 0, order);
}

template <coefficient_ring R>
series<R> one_series(const R& ring, std::int64_t order) {
    return constant_series(ring, 1, order);
}

/// Coefficientwise sum; output order = min of the input orders.
template <coefficient_ring R>
series<R> add(const series<R>& a, const series<R>& b) {
    detail::require_same_ring(a, b, "add");
    const R& ring = a.ring();
    std::int64_t n = std::min(a.order(), b.order());
    series<R> out(ring, n);
    for (std::int64_t i = 0; i < n; ++i)
        out.coeff_ref(i) = ring.add(a[i], b[i]);
    return out;
}

template <coefficient_ring R>
series<R> negate(const series<R>& a) {
    const R& ring = a.ring();
    series<R> out(ring, a.order());
    for (std::int64_t i = 0; i < a.order(); ++i)
        out.coeff_ref(i) = ring.neg(a[i]);
    return out;
}

/// Subtraction is add with negation.
template <coefficient_ring R>
series<R> sub(const series<R>& a, const series<R>& b) {
    detail::require_same_ring(a, b, "sub");
    const R& ring = a.ring();
    std::int64_t n = std::min(a.order(), b.order());
    series<R> out(ring, n);
    for (std::int64_t i = 0; i < n; ++i)
        out.coeff_ref(i) = ring.sub(a[i], b[i]);
    return out;
}

/// Truncated Cauchy product; output order = min of the input orders.
/// Iterates over the operand with fewer nonzero coefficients, which makes
/// products against theta/eta series (O(sqrt N) terms) effectively linear.
template <coefficient_ring R>
series<R> mul(const series<R>& a, const series<R>& b) {
    detail::require_same_ring(a, b, "mul");
    const R& ring = a.ring();
    std::int64_t n = std::min(a.order(), b.order());
    const series<R>& outer = a.nonzero_count() <= b.nonzero_count() ? a : b;
    const series<R>& inner = (&outer == &a) ? b : a;
    series<R> out(ring, n);
    for (std::int64_t i = 0; i < std::min(outer.order(), n); ++i) {
        const auto& oc = outer[i];
        if (ring.is_zero(oc)) continue;
        std::int64_t jmax = std::min(inner.order(), n - i);
        for (std::int64_t j = 0; j < jmax; ++j)
            ring.addmul(out.coeff_ref(i + j), oc, inner[j]);
    }
    return out;
}

/// Multiplicative inverse: mul(s, invert(s)) = 1 + O(q^N). Requires the
/// constant term to be a unit of the ring; every eta quotient and theta
/// series in this library has constant term 1.
template <coefficient_ring R>
series<R> invert(const series<R>& a) {
    const R& ring = a.ring();
    std::int64_t n = a.order();
    auto c0_inv = ring.inv_unit(a[0]); // throws not_invertible_error
    series<R> out(ring, n);
    out.coeff_ref(0) = c0_inv;
    for (std::int64_t k = 1; k < n; ++k) {
        auto acc = ring.zero();
        for (std::int64_t j = 1; j <= k; ++j) {
            if (ring.is_zero(a[j])) continue;
            ring.addmul(acc, a[j], out[k - j]);
        }
        out.coeff_ref(k) = ring.neg(ring.mul(c0_inv, acc));
    }
    return out;
}

/// Integer power by repeated squaring; pow(s, 0) = 1 and negative exponents
/// go through invert.
template <coefficient_ring R>
series<R> pow(const series<R>& a, std::int64_t e) {
    if (e == 0) return one_series(a.ring(), a.order());
    if (e < 0) return pow(invert(a), -e);
    series<R> base = a;
    std::optional<series<R>> acc;
    while (e > 0) {
        if (e & 1) acc = acc ? mul(*acc, base) : base;
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return *acc;
}

/// q -> q^k. Output order equals the input order; all coefficients below it
/// are determined (non-multiples of k are exactly zero).
template <coefficient_ring R>
series<R> substitute_power(const series<R>& a, std::int64_t k) {
    if (k < 1)
        throw error("substitute_power: k must be >= 1, got " + std::to_string(k));
    std::int64_t n = a.order();
    series<R> out(a.ring(), n);
    for (std::int64_t j = 0; j * k < n; ++j)
        out.coeff_ref(j * k) = a[j];
    return out;
}

/// Arithmetic-progression extraction: coefficient n of the output is
/// coefficient m*n + r of the input. This is the single dissection
/// primitive: "extract the terms q^{mn+r}, divide by q^r, set q^m -> q".
/// Output order = ceil((order - r) / m).
template <coefficient_ring R>
series<R> extract_progression(const series<R>& a, std::int64_t m, std::int64_t r) {
    if (m < 1)
        throw error("extract_progression: modulus must be >= 1, got " +
                    std::to_string(m));
    if (r < 0 || r >= m)
        throw bad_residue_error("extract_progression: residue " + std::to_string(r) +
                                " out of range for modulus " + std::to_string(m));
    std::int64_t n = (a.order() - r + m - 1) / m;
    if (n < 1)
        throw insufficient_precision_error(
            "extract_progression: series of order " + std::to_string(a.order()) +
            " has no coefficient in the class " + std::to_string(m) + "n+" +
            std::to_string(r));
    series<R> out(a.ring(), n);
    for (std::int64_t i = 0; i < n; ++i)
        out.coeff_ref(i) = a[m * i + r];
    return out;
}

/// Map an exact series into Z/m coefficientwise.
inline series<mod_ring> reduce_mod(const series<exact_ring>& a, std::uint64_t m) {
    mod_ring ring(m);
    series<mod_ring> out(ring, a.order());
    for (std::int64_t i = 0; i < a.order(); ++i)
        out.coeff_ref(i) = ring.from_mpz(a[i]);
    return out;
}

/// Result of comparing two series over a coefficient prefix.
struct eq_result {
    bool equal = true;
    std::int64_t mismatch_index = -1;
    std::string lhs_value;
    std::string rhs_value;
};

/// Coefficientwise equality for all exponents < n. Asking past either valid
/// order is an error, never a silent truth.
template <coefficient_ring R>
eq_result eq_up_to(const series<R>& a, const series<R>& b, std::int64_t n) {
    detail::require_same_ring(a, b, "eq_up_to");
    if (n < 1)
        throw error("eq_up_to: comparison depth must be >= 1");
    if (n > a.order() || n > b.order())
        throw insufficient_precision_error(
            "eq_up_to: requested " + std::to_string(n) + " coefficients but valid orders are " +
            std::to_string(a.order()) + " and " + std::to_string(b.order()));
    const R& ring = a.ring();
    for (std::int64_t i = 0; i < n; ++i) {
        if (!ring.equal(a[i], b[i]))
            return {false, i, ring.to_string(a[i]), ring.to_string(b[i])};
    }
    return {};
}

template <coefficient_ring R>
series<R> operator+(const series<R>& a, const series<R>& b) { return add(a, b); }
template <coefficient_ring R>
series<R> operator-(const series<R>& a, const series<R>& b) { return sub(a, b); }
template <coefficient_ring R>
series<R> operator*(const series<R>& a, const series<R>& b) { return mul(a, b); }
template <coefficient_ring R>
series<R> operator-(const series<R>& a) { return negate(a); }

} // namespace qseries
