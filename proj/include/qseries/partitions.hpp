#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/rings.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// Membership constraint: ell-regular (no part divisible by ell) and/or
/// t-distinct (every multiplicity < t). At least one must be present.
struct partition_constraint {
    std::optional<std::int64_t> ell;
    std::optional<std::int64_t> t;
};

/// counts[n] = number of partitions of n obeying the constraint, for
/// 0 <= n <= nmax. Exact ring gives true counts, modular ring reduced ones.
template <coefficient_ring R>
struct count_table {
    partition_constraint constraint;
    std::int64_t nmax = 0;
    R ring;
    std::vector<typename R::value_type> counts;

    const typename R::value_type& operator[](std::int64_t n) const {
        if (n < 0 || n > nmax)
            throw insufficient_precision_error(
                "count table covers 0.." + std::to_string(nmax) +
                ", asked for " + std::to_string(n));
        return counts[static_cast<std::size_t>(n)];
    }
};

/// One partition, stored as (part, multiplicity) pairs with parts strictly
/// decreasing — the lambda^alpha shape.
using partition = std::vector<std::pair<std::int64_t, std::int64_t>>;

namespace detail {

// Multiply the count vector by (1 - q^{t i}) / (1 - q^i) in place: adds one
// allowed part i of multiplicity < t. Two linear passes; with t == 0 the
// multiplicity is unbounded and only the geometric pass runs.
template <coefficient_ring R>
void fold_part(const R& ring, std::vector<typename R::value_type>& c,
               std::int64_t i, std::int64_t t) {
    const std::int64_t nmax = static_cast<std::int64_t>(c.size()) - 1;
    for (std::int64_t n = i; n <= nmax; ++n)
        ring.add_assign(c[n], c[n - i]);
    if (t > 0) {
        for (std::int64_t n = nmax; n >= t * i; --n)
            ring.sub_assign(c[n], c[n - t * i]);
    }
}

template <coefficient_ring R>
count_table<R> count_constrained(partition_constraint constraint,
                                 std::int64_t nmax, const R& ring) {
    if (!constraint.ell && !constraint.t)
        throw error("a partition constraint needs regularity or distinctness");
    if (nmax < 0)
        throw error("count table size must be >= 0, got " + std::to_string(nmax));
    std::vector<typename R::value_type> c(static_cast<std::size_t>(nmax) + 1,
                                          ring.zero());
    c[0] = ring.one(); // the empty partition
    const std::int64_t bound = constraint.t ? *constraint.t : 0;
    for (std::int64_t i = 1; i <= nmax; ++i) {
        if (constraint.ell && i % *constraint.ell == 0) continue;
        fold_part(ring, c, i, bound);
    }
    return {constraint, nmax, ring, std::move(c)};
}

} // namespace detail

/// Partitions that are simultaneously ell-regular and t-distinct.
template <coefficient_ring R>
count_table<R> count_rd(std::int64_t ell, std::int64_t t, std::int64_t nmax,
                        const R& ring) {
    if (ell < 2 || t < 2)
        throw error("count_rd: need ell >= 2 and t >= 2");
    return detail::count_constrained({ell, t}, nmax, ring);
}

/// ell-regular partitions (unbounded multiplicity).
template <coefficient_ring R>
count_table<R> count_regular(std::int64_t ell, std::int64_t nmax, const R& ring) {
    if (ell < 2)
        throw error("count_regular: need ell >= 2");
    return detail::count_constrained({ell, std::nullopt}, nmax, ring);
}

/// t-distinct partitions: every part appears fewer than t times.
template <coefficient_ring R>
count_table<R> count_distinct(std::int64_t t, std::int64_t nmax, const R& ring) {
    if (t < 2)
        throw error("count_distinct: need t >= 2");
    return detail::count_constrained({std::nullopt, t}, nmax, ring);
}

/// Wrap series coefficients as a count table. This is the secondary,
/// generating-function-backed route for claim checks; the DP tables above
/// are the primary one, so bugs in either cannot mask the other.
template <coefficient_ring R>
count_table<R> table_from_series(partition_constraint constraint,
                                 const series<R>& s) {
    return {constraint, s.order() - 1, s.ring(), s.coeffs()};
}

namespace detail {

inline void enumerate_rec(std::int64_t ell, std::int64_t t, std::int64_t remaining,
                          std::int64_t max_part, partition& stack,
                          std::vector<partition>& out) {
    if (remaining == 0) {
        out.push_back(stack);
        return;
    }
    for (std::int64_t part = std::min(max_part, remaining); part >= 1; --part) {
        if (part % ell == 0) continue;
        std::int64_t max_mult = std::min(t - 1, remaining / part);
        for (std::int64_t mult = max_mult; mult >= 1; --mult) {
            stack.emplace_back(part, mult);
            enumerate_rec(ell, t, remaining - part * mult, part - 1, stack, out);
            stack.pop_back();
        }
    }
}

} // namespace detail

/// Complete list of the ell-regular, t-distinct partitions of n, in
/// lexicographically decreasing order of parts. Guarded: n <= 40.
inline std::vector<partition> enumerate_rd(std::int64_t ell, std::int64_t t,
                                           std::int64_t n) {
    if (ell < 2 || t < 2)
        throw error("enumerate_rd: need ell >= 2 and t >= 2");
    if (n < 0 || n > 40)
        throw too_large_error("enumerate_rd: n must be in 0..40, got " +
                              std::to_string(n));
    std::vector<partition> out;
    partition stack;
    detail::enumerate_rec(ell, t, n, n, stack, out);
    return out;
}

/// Render a partition the way the counts are spoken: (3, 1^3).
inline std::string partition_to_string(const partition& p) {
    if (p.empty()) return "()";
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(p[i].first);
        if (p[i].second > 1) s += "^" + std::to_string(p[i].second);
    }
    return s + ")";
}

} // namespace qseries
