#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// Multiset of (k, e) pairs denoting the eta quotient prod f_k^{e}.
/// Repeated k values multiply exponents.
struct eta_quotient_spec {
    std::vector<std::pair<std::int64_t, std::int64_t>> factors;
};

/// f(a, b) with a = a_sign * q^{a_exp}, b = b_sign * q^{b_exp}.
struct theta_spec {
    int a_sign = 1;
    std::int64_t a_exp = 0;
    int b_sign = 1;
    std::int64_t b_exp = 0;
};

namespace detail {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    unsigned __int128 acc = 1;
    unsigned __int128 b = static_cast<unsigned __int128>(((base % m) + m) % m);
    while (exp > 0) {
        if (exp & 1) acc = acc * b % static_cast<unsigned __int128>(m);
        b = b * b % static_cast<unsigned __int128>(m);
        exp >>= 1;
    }
    return static_cast<std::int64_t>(acc);
}

} // namespace detail

/// (q^r; q^s)_inf truncated at order N: the finite product over factors
/// (1 - q^{r+js}) with r + js < N, each applied as an in-place two-term
/// multiply. Exact truncation, O(N^2 / s) total.
template <coefficient_ring R>
series<R> pochhammer_inf(std::int64_t r, std::int64_t s, std::int64_t order,
                         const R& ring) {
    if (r < 1 || s < 1)
        throw error("pochhammer_inf: exponents must be >= 1");
    series<R> out = one_series(ring, order);
    for (std::int64_t e = r; e < order; e += s) {
        for (std::int64_t n = order - 1; n >= e; --n)
            ring.sub_assign(out.coeff_ref(n), out[n - e]);
    }
    return out;
}

/// f_k = prod_{n>=1} (1 - q^{nk}), built from the sparse bilateral pentagonal
/// sum sum_n (-1)^n q^{k n(3n+1)/2} rather than the O(N) partial product.
template <coefficient_ring R>
series<R> eta_f(std::int64_t k, std::int64_t order, const R& ring) {
    if (k < 1)
        throw error("eta_f: k must be >= 1, got " + std::to_string(k));
    series<R> out(ring, order);
    auto place = [&](std::int64_t n) {
        std::int64_t e = k * (n * (3 * n + 1) / 2);
        if (e >= order) return false;
        auto v = (n % 2 == 0) ? ring.one() : ring.from_int(-1);
        ring.add_assign(out.coeff_ref(e), v);
        return true;
    };
    place(0);
    for (std::int64_t n = 1;; ++n) {
        bool a = place(n);
        bool b = place(-n);
        if (!a && !b) break;
    }
    return out;
}

/// prod f_k^{e_k} with valid-order tracking inherited from pow/invert/mul.
template <coefficient_ring R>
series<R> eta_quotient(const eta_quotient_spec& spec, std::int64_t order,
                       const R& ring) {
    series<R> out = one_series(ring, order);
    for (const auto& [k, e] : spec.factors) {
        if (e == 0) continue;
        out = mul(out, pow(eta_f(k, order, ring), e));
    }
    return out;
}

/// psi(q) = f(q, q^3) = sum_{n>=0} q^{n(n+1)/2}: indicator of the
/// triangular numbers.
template <coefficient_ring R>
series<R> psi(std::int64_t order, const R& ring) {
    series<R> out(ring, order);
    for (std::int64_t n = 0;; ++n) {
        std::int64_t e = n * (n + 1) / 2;
        if (e >= order) break;
        out.coeff_ref(e) = ring.one();
    }
    return out;
}

/// Ramanujan's general theta function
///   f(a, b) = sum_{n in Z} a^{n(n+1)/2} b^{n(n-1)/2}
/// as a bilateral sum over all n whose exponent lands below the order.
/// Colliding exponents accumulate (e.g. f(q, q) = 1 + 2q + 2q^4 + ...).
template <coefficient_ring R>
series<R> theta_f(const theta_spec& spec, std::int64_t order, const R& ring) {
    if (spec.a_exp < 0 || spec.b_exp < 0)
        throw error("theta_f: exponents must be nonnegative");
    if (spec.a_exp + spec.b_exp < 1)
        throw error("theta_f: need a_exp + b_exp >= 1 for convergence");
    if ((spec.a_sign != 1 && spec.a_sign != -1) ||
        (spec.b_sign != 1 && spec.b_sign != -1))
        throw error("theta_f: signs must be +1 or -1");
    series<R> out(ring, order);
    auto place = [&](std::int64_t n) {
        std::int64_t ta = n * (n + 1) / 2; // always >= 0
        std::int64_t tb = n * (n - 1) / 2;
        std::int64_t e = spec.a_exp * ta + spec.b_exp * tb;
        if (e >= order) return false;
        int sign = 1;
        if (spec.a_sign < 0 && (ta & 1)) sign = -sign;
        if (spec.b_sign < 0 && (tb & 1)) sign = -sign;
        ring.add_assign(out.coeff_ref(e), ring.from_int(sign));
        return true;
    };
    place(0);
    // exponents are eventually monotone in |n| on each side; stop a side
    // only when it first overshoots
    for (std::int64_t n = 1;; ++n) {
        bool a = place(n);
        bool b = place(-n);
        if (!a && !b) break;
    }
    return out;
}

/// The 5-dissection factor `a` in f_1 = f_25 (a - q - q^2/a):
///   a = (q^10; q^25) (q^15; q^25) / ( (q^5; q^25) (q^20; q^25) ).
/// All factor exponents are multiples of 5 and the constant term is 1.
template <coefficient_ring R>
series<R> five_dissection_a(std::int64_t order, const R& ring) {
    auto num = mul(pochhammer_inf(10, 25, order, ring),
                   pochhammer_inf(15, 25, order, ring));
    auto den = mul(pochhammer_inf(5, 25, order, ring),
                   pochhammer_inf(20, 25, order, ring));
    return mul(num, invert(den));
}

/// Right-hand side of the p-dissection of psi, for odd prime p:
///   sum_{k=0}^{(p-3)/2} q^{k(k+1)/2} f(q^{(p^2+(2k+1)p)/2}, q^{(p^2-(2k+1)p)/2})
///   + q^{(p^2-1)/8} psi(q^{p^2}).
template <coefficient_ring R>
series<R> psi_p_dissection_rhs(std::int64_t p, std::int64_t order, const R& ring) {
    if (p < 3 || p % 2 == 0 || !detail::is_prime(p))
        throw bad_prime_error("psi_p_dissection_rhs: p must be an odd prime, got " +
                              std::to_string(p));
    series<R> out(ring, order);
    for (std::int64_t k = 0; k <= (p - 3) / 2; ++k) {
        theta_spec t;
        t.a_exp = (p * p + (2 * k + 1) * p) / 2;
        t.b_exp = (p * p - (2 * k + 1) * p) / 2;
        auto term = mul(monomial(ring, 1, k * (k + 1) / 2, order),
                        theta_f(t, order, ring));
        out = add(out, term);
    }
    auto tail = mul(monomial(ring, 1, (p * p - 1) / 8, order),
                    substitute_power(psi(order, ring), p * p));
    return add(out, tail);
}

/// Right-hand side of the p-dissection of f_1, for prime p >= 5:
///   sum over (1-p)/2 <= k <= (p-1)/2, k != (+-p-1)/6, of
///     (-1)^k q^{k(3k+1)/2} f(-q^{(3p^2+(6k+1)p)/2}, -q^{(3p^2-(6k+1)p)/2}),
///   plus (-1)^{(+-p-1)/6} q^{(p^2-1)/24} f_{p^2},
/// where (+-p-1)/6 = (p-1)/6 if p = 1 (mod 6) and (-p-1)/6 otherwise.
template <coefficient_ring R>
series<R> f1_p_dissection_rhs(std::int64_t p, std::int64_t order, const R& ring) {
    if (p < 5 || !detail::is_prime(p))
        throw bad_prime_error("f1_p_dissection_rhs: p must be a prime >= 5, got " +
                              std::to_string(p));
    const std::int64_t skipped = (p % 6 == 1) ? (p - 1) / 6 : (-p - 1) / 6;
    series<R> out(ring, order);
    for (std::int64_t k = (1 - p) / 2; k <= (p - 1) / 2; ++k) {
        if (k == skipped) continue;
        theta_spec t;
        t.a_sign = -1;
        t.b_sign = -1;
        t.a_exp = (3 * p * p + (6 * k + 1) * p) / 2;
        t.b_exp = (3 * p * p - (6 * k + 1) * p) / 2;
        std::int64_t sign = (k % 2 == 0) ? 1 : -1;
        auto term = mul(monomial(ring, sign, k * (3 * k + 1) / 2, order),
                        theta_f(t, order, ring));
        out = add(out, term);
    }
    std::int64_t tail_sign = (skipped % 2 == 0) ? 1 : -1;
    auto tail = mul(monomial(ring, tail_sign, (p * p - 1) / 24, order),
                    eta_f(p * p, order, ring));
    return add(out, tail);
}

/// Legendre symbol (delta / p) by Euler's criterion delta^{(p-1)/2} mod p.
inline int legendre(std::int64_t delta, std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !detail::is_prime(p))
        throw bad_prime_error("legendre: p must be an odd prime, got " +
                              std::to_string(p));
    std::int64_t d = ((delta % p) + p) % p;
    if (d == 0)
        throw not_coprime_error("legendre: " + std::to_string(delta) +
                                " is divisible by " + std::to_string(p));
    std::int64_t e = detail::powmod(d, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

} // namespace qseries
