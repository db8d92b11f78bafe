#pragma once

#include <algorithm>
#include <cstdint>

#include "qseries/errors.hpp"
#include "qseries/expr.hpp"
#include "qseries/partitions.hpp"
#include "qseries/series.hpp"
#include "qseries/special.hpp"

namespace qseries {

namespace detail {

/// Leaf truncation needed so the node's output carries >= target valid
/// coefficients. Only RD extraction consumes depth: its base generating
/// function must reach m*target + r.
inline std::int64_t required_leaf_depth(const expr& e, std::int64_t target) {
    std::int64_t need = target;
    if (e.kind == expr::kind_t::rd_extract)
        need = e.c * target + e.d;
    if (e.lhs) need = std::max(need, required_leaf_depth(*e.lhs, target));
    if (e.rhs) need = std::max(need, required_leaf_depth(*e.rhs, target));
    return need;
}

/// Largest comparison depth reachable when every leaf series is truncated
/// at `budget`: extraction by step m divides the budget by m.
inline std::int64_t achievable_target(const expr& e, std::int64_t budget) {
    std::int64_t best = budget;
    if (e.kind == expr::kind_t::rd_extract)
        best = (budget - e.d + e.c - 1) / e.c;
    if (e.lhs) best = std::min(best, achievable_target(*e.lhs, budget));
    if (e.rhs) best = std::min(best, achievable_target(*e.rhs, budget));
    return best;
}

} // namespace detail

/// Generating function of RD^(ell,t): f_t f_ell / (f_1 f_{ell t}).
template <coefficient_ring R>
series<R> rd_generating_function(std::int64_t ell, std::int64_t t,
                                 std::int64_t order, const R& ring) {
    eta_quotient_spec spec{{{t, 1}, {ell, 1}, {1, -1}, {ell * t, -1}}};
    return eta_quotient(spec, order, ring);
}

/// Compositional evaluation to (at least) `order` valid coefficients.
/// Every atom is built to whatever depth makes that true; errors from
/// inversion or precision shortfalls are rethrown with the offending
/// subexpression spelled out.
template <coefficient_ring R>
series<R> evaluate(const expr& e, std::int64_t order, const R& ring) {
    using k = expr::kind_t;
    switch (e.kind) {
    case k::int_lit:
        return constant_series(ring, e.a, order);
    case k::q_pow:
        return monomial(ring, 1, e.a, order);
    case k::eta:
        return eta_f(e.a, order, ring);
    case k::psi_k:
        return substitute_power(psi(order, ring), e.a);
    case k::theta: {
        theta_spec t;
        t.a_sign = static_cast<int>(e.a);
        t.a_exp = e.b;
        t.b_sign = static_cast<int>(e.c);
        t.b_exp = e.d;
        return theta_f(t, order, ring);
    }
    case k::dissect_a:
        return five_dissection_a(order, ring);
    case k::rd_extract: {
        auto base = rd_generating_function(e.a, e.b, e.c * order + e.d, ring);
        return extract_progression(base, e.c, e.d).truncated(order);
    }
    case k::aux_a: {
        auto f1 = eta_f(1, order, ring);
        return mul(f1, f1);
    }
    case k::aux_b: {
        auto p = psi(order, ring);
        return mul(p, substitute_power(p, 3));
    }
    case k::add:
        return add(evaluate(*e.lhs, order, ring), evaluate(*e.rhs, order, ring));
    case k::sub:
        return sub(evaluate(*e.lhs, order, ring), evaluate(*e.rhs, order, ring));
    case k::mul:
        return mul(evaluate(*e.lhs, order, ring), evaluate(*e.rhs, order, ring));
    case k::div: {
        auto num = evaluate(*e.lhs, order, ring);
        auto den = evaluate(*e.rhs, order, ring);
        try {
            return mul(num, invert(den));
        } catch (const not_invertible_error& err) {
            throw not_invertible_error(std::string(err.what()) +
                                       " in denominator " + to_text(*e.rhs));
        }
    }
    case k::pow_: {
        auto base = evaluate(*e.lhs, order, ring);
        try {
            return pow(base, e.a);
        } catch (const not_invertible_error& err) {
            throw not_invertible_error(std::string(err.what()) + " in " +
                                       to_text(*e.lhs) + "^" + std::to_string(e.a));
        }
    }
    }
    throw error("evaluate: unhandled node kind");
}

} // namespace qseries
