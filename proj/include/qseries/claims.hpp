#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/partitions.hpp"
#include "qseries/report.hpp"
#include "qseries/rings.hpp"
#include "qseries/series.hpp"
#include "qseries/special.hpp"

namespace qseries {

/// "coefficient(step*n + offset) == 0 mod modulus, for all n >= 0", over the
/// RD^(ell,t) counting sequence.
struct congruence_claim {
    std::int64_t ell = 4;
    std::int64_t t = 9;
    std::int64_t step = 1;      // A
    std::int64_t offset = 0;    // B
    std::int64_t modulus = 2;   // M
    std::string provenance;

    std::string describe() const {
        return "RD(" + std::to_string(ell) + "," + std::to_string(t) + ")(" +
               std::to_string(step) + "n+" + std::to_string(offset) +
               ") == 0 mod " + std::to_string(modulus);
    }
};

/// Which auxiliary coefficient sequence a series-side check runs on:
/// a(n) from f_1^2 or b(n) from psi(q) psi(q^3).
enum class aux_source { aux_a, aux_b };

namespace detail {

inline std::uint64_t residue_mod(const exact_ring&, const mpz_class& v,
                                 std::int64_t m) {
    return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m));
}

inline std::uint64_t residue_mod(const mod_ring& ring, std::uint64_t v,
                                 std::int64_t m) {
    if (ring.modulus() % static_cast<std::uint64_t>(m) != 0)
        throw ring_mismatch_error("table over " + ring.describe() +
                                  " cannot answer congruences mod " +
                                  std::to_string(m));
    return v % static_cast<std::uint64_t>(m);
}

inline void validate_claim(const congruence_claim& c) {
    if (c.step < 1)
        throw error("claim step must be >= 1: " + c.describe());
    if (c.offset < 0)
        throw error("claim offset must be >= 0: " + c.describe());
    if (c.modulus < 2)
        throw error("claim modulus must be >= 2: " + c.describe());
}

// argument sizes grow as p^{2 alpha + 2}; past these bounds the tables stop
// being desk-scale
inline void check_family_scale(std::int64_t p, std::int64_t alpha) {
    if (p > 31)
        throw too_large_error("primes above 31 exceed the supported range");
    if (alpha > 2)
        throw too_large_error("alpha above 2 exceeds the supported range");
}

} // namespace detail

/// Check a claim against an independently computed count table for all
/// 0 <= n <= n_max. The table must cover step*n_max + offset and be exact
/// or modular with modulus a multiple of the claim's.
template <coefficient_ring R>
verification_report check_claim(const congruence_claim& claim, std::int64_t n_max,
                                const count_table<R>& table) {
    detail::validate_claim(claim);
    if (claim.ell != table.constraint.ell || claim.t != table.constraint.t)
        throw ring_mismatch_error("count table was built for a different "
                                  "partition family than the claim");
    auto t0 = std::chrono::steady_clock::now();
    verification_report report;
    report.id = claim.provenance.empty() ? claim.describe() : claim.provenance;
    report.depth = table.nmax;
    const std::int64_t top = claim.step * n_max + claim.offset;
    if (top > table.nmax) {
        report.status = verification_report::status_t::insufficient_precision;
        report.n_checked = std::max<std::int64_t>(
            0, std::min(n_max, (table.nmax - claim.offset) / claim.step));
        return report;
    }
    report.n_checked = n_max;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        std::int64_t arg = claim.step * n + claim.offset;
        std::uint64_t v = detail::residue_mod(table.ring, table[arg], claim.modulus);
        if (v != 0) {
            report.status = verification_report::status_t::fail;
            report.witness = counterexample{n, arg, std::to_string(v), "0"};
            break;
        }
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

/// The seven congruences of the base family, in printed order.
inline std::vector<congruence_claim> claims_lemma11() {
    std::vector<congruence_claim> v;
    const std::int64_t abm[7][3] = {{4, 3, 3},  {6, 2, 2},  {6, 3, 3}, {6, 4, 4},
                                    {6, 5, 6},  {6, 7, 12}, {8, 5, 6}};
    for (int i = 0; i < 7; ++i) {
        congruence_claim c;
        c.step = abm[i][0];
        c.offset = abm[i][1];
        c.modulus = abm[i][2];
        c.provenance = "lemma1.1#" + std::to_string(i + 1);
        v.push_back(c);
    }
    return v;
}

/// Family mod 4: for prime p = 3 (mod 4) and alpha >= 0,
///   RD(12 p^{2a+1} (p n + i) + p^{2a+2} + 1) == 0 mod 4, i = 1..p-1.
inline std::vector<congruence_claim> claims_thm31(std::int64_t p,
                                                  std::int64_t alpha) {
    if (!detail::is_prime(p) || p % 2 == 0)
        throw bad_prime_error("thm3.1 needs an odd prime, got " + std::to_string(p));
    if (legendre(-1, p) != -1)
        throw bad_prime_error("thm3.1 needs p = 3 (mod 4), got " + std::to_string(p));
    if (alpha < 0) throw error("alpha must be >= 0");
    detail::check_family_scale(p, alpha);
    std::int64_t p_odd = 1;
    for (std::int64_t j = 0; j < 2 * alpha + 1; ++j) p_odd *= p;
    const std::int64_t p_even = p_odd * p; // p^{2 alpha + 2}
    std::vector<congruence_claim> v;
    for (std::int64_t i = 1; i <= p - 1; ++i) {
        congruence_claim c;
        c.step = 12 * p_even;
        c.offset = 12 * p_odd * i + p_even + 1;
        c.modulus = 4;
        c.provenance = "thm3.1(p=" + std::to_string(p) + ",alpha=" +
                       std::to_string(alpha) + ",i=" + std::to_string(i) + ")";
        v.push_back(c);
    }
    return v;
}

/// Family mod 6: RD(6*5^{2a+2} n + 6*5^{2a+1} i + 5^{2a+2} + 1) == 0 mod 6,
/// i = 1..4.
inline std::vector<congruence_claim> claims_thm41(std::int64_t alpha) {
    if (alpha < 0) throw error("alpha must be >= 0");
    detail::check_family_scale(5, alpha);
    std::int64_t p_odd = 5;
    for (std::int64_t j = 0; j < 2 * alpha; ++j) p_odd *= 5;
    const std::int64_t p_even = p_odd * 5;
    std::vector<congruence_claim> v;
    for (std::int64_t i = 1; i <= 4; ++i) {
        congruence_claim c;
        c.step = 6 * p_even;
        c.offset = 6 * p_odd * i + p_even + 1;
        c.modulus = 6;
        c.provenance = "thm4.1(alpha=" + std::to_string(alpha) + ",i=" +
                       std::to_string(i) + ")";
        v.push_back(c);
    }
    return v;
}

/// Family mod 12: for prime p = 5 (mod 6),
///   RD(6 p^{2a+1} (p n + i) + 3 p^{2a+2} + 1) == 0 mod 12, i = 1..p-1.
inline std::vector<congruence_claim> claims_thm51(std::int64_t p,
                                                  std::int64_t alpha) {
    if (!detail::is_prime(p) || p < 5)
        throw bad_prime_error("thm5.1 needs a prime >= 5, got " + std::to_string(p));
    if (legendre(-3, p) != -1)
        throw bad_prime_error("thm5.1 needs p = 5 (mod 6), got " + std::to_string(p));
    if (alpha < 0) throw error("alpha must be >= 0");
    detail::check_family_scale(p, alpha);
    std::int64_t p_odd = 1;
    for (std::int64_t j = 0; j < 2 * alpha + 1; ++j) p_odd *= p;
    const std::int64_t p_even = p_odd * p;
    std::vector<congruence_claim> v;
    for (std::int64_t i = 1; i <= p - 1; ++i) {
        congruence_claim c;
        c.step = 6 * p_even;
        c.offset = 6 * p_odd * i + 3 * p_even + 1;
        c.modulus = 12;
        c.provenance = "thm5.1(p=" + std::to_string(p) + ",alpha=" +
                       std::to_string(alpha) + ",i=" + std::to_string(i) + ")";
        v.push_back(c);
    }
    return v;
}

/// The three isolated congruences mod 24.
inline std::vector<congruence_claim> claims_thm61() {
    std::vector<congruence_claim> v;
    const std::int64_t abm[3][2] = {{24, 23}, {48, 29}, {96, 89}};
    for (int i = 0; i < 3; ++i) {
        congruence_claim c;
        c.step = abm[i][0];
        c.offset = abm[i][1];
        c.modulus = 24;
        c.provenance = "thm6.1#" + std::to_string(i + 1);
        v.push_back(c);
    }
    return v;
}

namespace detail {

/// The two auxiliary coefficient sequences, exact.
inline series<exact_ring> aux_series(aux_source src, std::int64_t order) {
    exact_ring zz;
    if (src == aux_source::aux_a) {
        auto f1 = eta_f(1, order, zz);
        return mul(f1, f1);
    }
    auto p = psi(order, zz);
    return mul(p, substitute_power(p, 3));
}

/// Residue/integrality gate and the constant (p^2 - 1)/12 resp. /2.
/// a(n) needs p = 3 (mod 4) with p >= 5 so the offset is integral; b(n)
/// needs p = 5 (mod 6).
inline std::int64_t aux_offset_unit(aux_source src, std::int64_t p) {
    if (!is_prime(p) || p % 2 == 0)
        throw bad_prime_error("need an odd prime, got " + std::to_string(p));
    if (src == aux_source::aux_a) {
        if (legendre(-1, p) != -1)
            throw bad_prime_error("a(n) checks need p = 3 (mod 4), got " +
                                  std::to_string(p));
        if ((p * p - 1) % 12 != 0)
            throw bad_prime_error("(p^2-1)/12 is not an integer for p = " +
                                  std::to_string(p) + "; p = 3 is excluded");
        return 12;
    }
    if (p < 5 || legendre(-3, p) != -1)
        throw bad_prime_error("b(n) checks need p = 5 (mod 6), got " +
                              std::to_string(p));
    return 2;
}

inline const char* aux_name(aux_source src) {
    return src == aux_source::aux_a ? "a" : "b";
}

} // namespace detail

/// Exact vanishing along p^2 n + p i + (p^2-1)/unit for i = 1..p-1, where
/// the sequence is a(n) or b(n). These are equalities in Z, not congruences.
inline verification_report check_vanishing_family(aux_source src, std::int64_t p,
                                                  std::int64_t n_max) {
    const std::int64_t unit = detail::aux_offset_unit(src, p);
    const std::int64_t c = (p * p - 1) / unit;
    auto t0 = std::chrono::steady_clock::now();
    verification_report report;
    report.id = std::string(detail::aux_name(src)) + "-vanishing(p=" +
                std::to_string(p) + ")";
    const std::int64_t order = p * p * n_max + p * (p - 1) + c + 1;
    report.depth = order;
    report.n_checked = n_max;
    auto s = detail::aux_series(src, order);
    exact_ring zz;
    for (std::int64_t n = 0; n <= n_max && report.passed(); ++n) {
        for (std::int64_t i = 1; i <= p - 1; ++i) {
            std::int64_t arg = p * p * n + p * i + c;
            if (!zz.is_zero(s[arg])) {
                report.status = verification_report::status_t::fail;
                report.witness =
                    counterexample{n, arg, zz.to_string(s[arg]), "0"};
                break;
            }
        }
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

/// Exact self-similarity: coefficient(p^{2 alpha} n + (p^{2 alpha}-1)/unit)
/// equals coefficient(n) for n <= n_max. alpha = 0 is the identity map.
inline verification_report check_self_similarity(aux_source src, std::int64_t p,
                                                 std::int64_t alpha,
                                                 std::int64_t n_max) {
    const std::int64_t unit = detail::aux_offset_unit(src, p);
    if (alpha < 0) throw error("alpha must be >= 0");
    std::int64_t scale = 1;
    for (std::int64_t j = 0; j < 2 * alpha; ++j) scale *= p;
    const std::int64_t c = (scale - 1) / unit;
    auto t0 = std::chrono::steady_clock::now();
    verification_report report;
    report.id = std::string(detail::aux_name(src)) + "-selfsim(p=" +
                std::to_string(p) + ",alpha=" + std::to_string(alpha) + ")";
    const std::int64_t order = scale * n_max + c + 1;
    report.depth = order;
    report.n_checked = n_max;
    auto s = detail::aux_series(src, order);
    exact_ring zz;
    for (std::int64_t n = 0; n <= n_max; ++n) {
        std::int64_t arg = scale * n + c;
        if (!zz.equal(s[arg], s[n])) {
            report.status = verification_report::status_t::fail;
            report.witness =
                counterexample{n, arg, zz.to_string(s[arg]), zz.to_string(s[n])};
            break;
        }
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

/// A congruence candidate surfaced by scanning.
struct scan_hit {
    std::int64_t step;
    std::int64_t offset;
    std::int64_t modulus;
    bool operator==(const scan_hit&) const = default;
};

/// Search all progressions step <= step_max, offset < 2*step, modulus in
/// m_set whose counts vanish mod modulus for every n <= n_min_evidence.
/// Offsets run to 2*step because shifted families (first residue-class
/// member excluded) are real: the base family contains one.
///
/// Output is deduplicated: a hit implied by an earlier hit (divisor step,
/// matching residue class, not-smaller offset, multiple modulus) is
/// suppressed, as is any hit whose modulus divides another passing modulus
/// of the same progression. A shifted hit (offset >= step) only suppresses
/// other shifted hits: it asserts vanishing from the progression's second
/// member on, which is weaker in kind than a full residue-class statement,
/// so canonical families stay visible next to it. Sorted by
/// (step, offset, modulus).
///
/// With n_min_evidence = 0 every progression whose first element vanishes
/// qualifies; callers wanting meaningful output should keep the default.
inline std::vector<scan_hit> scan_congruences(std::int64_t ell, std::int64_t t,
                                              std::int64_t step_max,
                                              std::vector<std::int64_t> m_set,
                                              std::int64_t n_min_evidence = 200) {
    if (step_max < 1 || step_max > 200)
        throw too_large_error("scan: step bound must be in 1..200");
    if (n_min_evidence < 0)
        throw error("scan: evidence bound must be >= 0");
    std::sort(m_set.begin(), m_set.end());
    m_set.erase(std::unique(m_set.begin(), m_set.end()), m_set.end());
    for (std::int64_t m : m_set)
        if (m < 2) throw error("scan: moduli must be >= 2");
    if (m_set.empty()) return {};

    // One modular table serves every modulus in the set.
    std::int64_t lcm = 1;
    for (std::int64_t m : m_set) lcm = std::lcm(lcm, m);
    const std::int64_t nmax = step_max * n_min_evidence + 2 * step_max - 1;
    const mod_ring ring(static_cast<std::uint64_t>(lcm));
    const auto table = count_rd(ell, t, nmax, ring);

    std::vector<scan_hit> hits;
    auto implied = [&](const scan_hit& h) {
        const bool h_shifted = h.offset >= h.step;
        for (const auto& prev : hits) {
            if (prev.offset >= prev.step && !h_shifted) continue;
            if (h.step % prev.step == 0 && h.offset >= prev.offset &&
                (h.offset - prev.offset) % prev.step == 0 &&
                prev.modulus % h.modulus == 0)
                return true;
        }
        return false;
    };

    std::vector<std::int64_t> passing;
    for (std::int64_t step = 1; step <= step_max; ++step) {
        for (std::int64_t offset = 0; offset < 2 * step; ++offset) {
            passing = m_set;
            for (std::int64_t n = 0; n <= n_min_evidence && !passing.empty(); ++n) {
                std::uint64_t v = table[step * n + offset];
                std::erase_if(passing, [&](std::int64_t m) {
                    return v % static_cast<std::uint64_t>(m) != 0;
                });
            }
            for (std::size_t i = 0; i < passing.size(); ++i) {
                bool maximal = true;
                for (std::size_t j = 0; j < passing.size(); ++j)
                    if (i != j && passing[j] % passing[i] == 0) maximal = false;
                if (!maximal) continue;
                scan_hit h{step, offset, passing[i]};
                if (!implied(h)) hits.push_back(h);
            }
        }
    }
    return hits;
}

} // namespace qseries
