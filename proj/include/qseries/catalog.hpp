#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/evaluate.hpp"
#include "qseries/expr.hpp"
#include "qseries/parser.hpp"
#include "qseries/report.hpp"

namespace qseries {

/// One catalog identity: two expressions related either exactly or
/// coefficientwise modulo m. default_depth is the number of coefficients
/// the entry promises to verify to.
struct identity_entry {
    std::string id;
    expr_ptr lhs;
    expr_ptr rhs;
    bool congruent = false;
    std::int64_t modulus = 0;
    std::int64_t default_depth = 200;
    bool programmatic = false; // generated, not stored as DSL text
    std::string params;        // parameter bindings of generated entries
};

inline std::string entry_to_text(const identity_entry& e) {
    std::string s = to_text(e.lhs);
    s += e.congruent ? " === " : " == ";
    s += to_text(e.rhs);
    if (e.congruent) s += " mod " + std::to_string(e.modulus);
    return s;
}

namespace detail {

inline identity_entry make_text_entry(std::string id, std::string_view text,
                                      std::int64_t depth) {
    parsed_identity p = parse_identity_text(text);
    identity_entry e;
    e.id = std::move(id);
    e.lhs = p.lhs;
    e.rhs = p.rhs;
    e.congruent = p.congruent;
    e.modulus = p.modulus;
    e.default_depth = depth;
    return e;
}

inline std::int64_t ipow(std::int64_t base, std::int64_t exp) {
    std::int64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

// Fold a signed term into a running sum; a leading negative term is written
// as 0 - term so the chain stays inside the grammar's expression shape.
inline void chain_term(expr_ptr& acc, int sign, expr_ptr term) {
    if (!acc)
        acc = sign > 0 ? std::move(term) : ex_sub(ex_int(0), std::move(term));
    else
        acc = sign > 0 ? ex_add(std::move(acc), std::move(term))
                       : ex_sub(std::move(acc), std::move(term));
}

inline expr_ptr shifted(std::int64_t q_exp, expr_ptr atom) {
    return q_exp == 0 ? atom : ex_mul(ex_q(q_exp), std::move(atom));
}

/// AST of the p-dissection right-hand side of psi.
inline expr_ptr psi_dissection_ast(std::int64_t p) {
    expr_ptr acc;
    for (std::int64_t k = 0; k <= (p - 3) / 2; ++k) {
        auto theta = ex_theta(1, (p * p + (2 * k + 1) * p) / 2,
                              1, (p * p - (2 * k + 1) * p) / 2);
        chain_term(acc, 1, shifted(k * (k + 1) / 2, std::move(theta)));
    }
    chain_term(acc, 1, shifted((p * p - 1) / 8, ex_psi(p * p)));
    return acc;
}

/// AST of the p-dissection right-hand side of f_1.
inline expr_ptr f1_dissection_ast(std::int64_t p) {
    const std::int64_t skipped = (p % 6 == 1) ? (p - 1) / 6 : (-p - 1) / 6;
    expr_ptr acc;
    for (std::int64_t k = (1 - p) / 2; k <= (p - 1) / 2; ++k) {
        if (k == skipped) continue;
        auto theta = ex_theta(-1, (3 * p * p + (6 * k + 1) * p) / 2,
                              -1, (3 * p * p - (6 * k + 1) * p) / 2);
        chain_term(acc, k % 2 == 0 ? 1 : -1,
                   shifted(k * (3 * k + 1) / 2, std::move(theta)));
    }
    chain_term(acc, skipped % 2 == 0 ? 1 : -1,
               shifted((p * p - 1) / 24, ex_eta(p * p)));
    return acc;
}

inline identity_entry make_eq5(std::int64_t p) {
    identity_entry e;
    e.id = "eq5_p" + std::to_string(p);
    e.lhs = ex_psi(1);
    e.rhs = psi_dissection_ast(p);
    e.default_depth = 300;
    e.programmatic = true;
    e.params = "p=" + std::to_string(p);
    return e;
}

inline identity_entry make_eq6(std::int64_t p) {
    identity_entry e;
    e.id = "eq6_p" + std::to_string(p);
    e.lhs = ex_eta(1);
    e.rhs = f1_dissection_ast(p);
    e.default_depth = 300;
    e.programmatic = true;
    e.params = "p=" + std::to_string(p);
    return e;
}

/// f_p^{p^{k-1}} congruent to f_1^{p^k} mod p^k. The exponent on the left
/// is p^{k-1}; the variant p^k - 1 fails numerically (see the unit tests)
/// and is not what any of the derivations downstream rely on.
inline identity_entry make_eq7(std::int64_t p, std::int64_t k) {
    const std::int64_t pk = ipow(p, k);
    const std::int64_t lhs_exp = ipow(p, k - 1);
    std::string text = "f" + std::to_string(p);
    if (lhs_exp != 1) text += "^" + std::to_string(lhs_exp);
    text += " === f1^" + std::to_string(pk) + " mod " + std::to_string(pk);
    auto e = make_text_entry("eq7_p" + std::to_string(p) + "k" + std::to_string(k),
                             text, 200);
    e.programmatic = true;
    e.params = "p=" + std::to_string(p) + ",k=" + std::to_string(k);
    return e;
}

} // namespace detail

/// Every identity the library ships with, in a fixed order. Exact entries
/// are the 2- and 5-dissections and the RD generating-function splits;
/// congruence entries are the modular reductions those splits feed.
inline const std::vector<identity_entry>& builtin_catalog() {
    static const std::vector<identity_entry> catalog = [] {
        using detail::make_text_entry;
        std::vector<identity_entry> v;
        v.push_back(make_text_entry("eq2",
            "f3^2/f1^2 == f4^4*f6*f12^2/(f2^5*f8*f24) + 2*q*f4*f6^2*f8*f24/(f2^4*f12)", 400));
        v.push_back(make_text_entry("eq3",
            "f3^3/f1 == f4^3*f6^2/(f2^2*f12) + q*f12^3/f4", 400));
        v.push_back(make_text_entry("eq4",
            "f1 == f25*(dissectA - q - q^2/dissectA)", 200));
        for (std::int64_t p : {3, 5, 7}) v.push_back(detail::make_eq5(p));
        for (std::int64_t p : {5, 7, 11}) v.push_back(detail::make_eq6(p));
        for (auto [p, k] : {std::pair<std::int64_t, std::int64_t>{2, 1},
                            {2, 2}, {3, 1}, {3, 2}, {5, 1}})
            v.push_back(detail::make_eq7(p, k));
        v.push_back(make_text_entry("eq8",
            "RD(4,9|2n+0) == f6^7*f9^7/(f3^9*f18^5) + 2*q*f6^6*f9^4/(f3^8*f18^2)"
            " + 4*q^2*f6^5*f9*f18/f3^7", 400));
        v.push_back(make_text_entry("eq9",
            "RD(4,9|6n+2) == 2*f2^6*f3^4/(f1^8*f6^2)", 400));
        v.push_back(make_text_entry("eq10",
            "RD(4,9|6n+4) == 4*f2^5*f3*f6/f1^7", 400));
        v.push_back(make_text_entry("eq11",
            "RD(4,9|6n+5) == 6*f2^2*f3^2*f6^2/f1^6", 400));
        v.push_back(make_text_entry("eq12",
            "RD(4,9|12n+2) === 2*f1^2 mod 4", 200));
        v.push_back(make_text_entry("eq19",
            "RD(4,9|6n+2) === 2*f1^4 mod 6", 200));
        v.push_back(make_text_entry("eq20",
            "RD(4,9|30n+26) === 2*f5^4 mod 6", 200));
        v.push_back(make_text_entry("eq21",
            "RD(4,9|150n+26) === 2*f1^4 mod 6", 200));
        v.push_back(make_text_entry("eq24",
            "RD(4,9|6n+4) === 4*auxB mod 12", 200));
        v.push_back(make_text_entry("eq33",
            "RD(4,9|6n+5) === 6*f4^4*f6^3*f12^2/(f2^5*f8*f24)"
            " + 12*q*f4*f6^4*f8*f24/(f2^4*f12) mod 24", 200));
        v.push_back(make_text_entry("eq34",
            "RD(4,9|12n+5) === 6*f2^4*f3^3*f6^2/(f1^5*f4*f12) mod 24", 200));
        v.push_back(make_text_entry("eq34b",
            "6*f2^4*f3^3*f6^2/(f1^5*f4*f12) === 6*f2^2*f3^3*f6^2/(f1*f4*f12) mod 24", 200));
        v.push_back(make_text_entry("eq35",
            "RD(4,9|12n+11) === 12*f2*f3^4*f4*f12/(f1^4*f6) mod 24", 200));
        v.push_back(make_text_entry("eq35b",
            "12*f2*f3^4*f4*f12/(f1^4*f6) === 12*f4*f6*f12/f2 mod 24", 200));
        v.push_back(make_text_entry("eq36",
            "RD(4,9|12n+5) === 6*f4^2*f6^4/f12^2 + 6*q*f2^2*f6^2*f12^2/f4^2 mod 24", 200));
        v.push_back(make_text_entry("eq37",
            "RD(4,9|24n+5) === 6*f2^2*f3^4/f6^2 mod 24", 200));
        v.push_back(make_text_entry("eq37b",
            "6*f2^2*f3^4/f6^2 === 6*f2^2 mod 24", 200));
        v.push_back(make_text_entry("eq38",
            "RD(4,9|24n+17) === 6*f1^2*f3^2*f6^2/f2^2 mod 24", 200));
        v.push_back(make_text_entry("eq38b",
            "6*f1^2*f3^2*f6^2/f2^2 === 6*f3^2*f6^2/f1^2 mod 24", 200));
        v.push_back(make_text_entry("eq39",
            "RD(4,9|48n+41) === 12*f4*f6*f12/f2 mod 24", 200));
        return v;
    }();
    return catalog;
}

inline const identity_entry& find_entry(const std::vector<identity_entry>& catalog,
                                        std::string_view id) {
    for (const auto& e : catalog)
        if (e.id == id) return e;
    throw error("no catalog entry named '" + std::string(id) + "'");
}

/// Parse a catalog file: UTF-8 text, one identity per line, '#' starts a
/// comment, each entry introduced by an `id:` prefix.
inline std::vector<identity_entry> parse_catalog_text(std::string_view text,
                                                      std::string_view source_name) {
    std::vector<identity_entry> out;
    std::int64_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        line = line.substr(first);
        if (line.substr(0, 3) != "id:")
            throw parse_error("catalog line in " + std::string(source_name) +
                                  " must start with 'id:'",
                              line_no, 1);
        line = line.substr(3);
        std::size_t space = line.find_first_of(" \t");
        if (space == std::string_view::npos)
            throw parse_error("catalog entry in " + std::string(source_name) +
                                  " has an id but no identity",
                              line_no, 1);
        std::string id(line.substr(0, space));
        try {
            out.push_back(detail::make_text_entry(id, line.substr(space), 200));
        } catch (const parse_error& pe) {
            throw parse_error(std::string(source_name) + ": " + pe.what(), line_no,
                              pe.column);
        }
    }
    return out;
}

inline std::vector<identity_entry> load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error("cannot open catalog file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_catalog_text(ss.str(), path);
}

namespace detail {

template <coefficient_ring R>
void run_eq_check(const identity_entry& entry, std::int64_t depth, const R& ring,
                  verification_report& report) {
    auto lhs = evaluate(*entry.lhs, depth, ring);
    auto rhs = evaluate(*entry.rhs, depth, ring);
    eq_result eq = eq_up_to(lhs, rhs, depth);
    if (eq.equal) {
        report.status = verification_report::status_t::pass;
        report.n_checked = depth;
    } else {
        report.status = verification_report::status_t::fail;
        report.n_checked = eq.mismatch_index;
        report.witness = counterexample{eq.mismatch_index, eq.mismatch_index,
                                        eq.lhs_value, eq.rhs_value};
    }
}

} // namespace detail

/// Check one entry to `depth` coefficients. Exact entries compare in Z.
/// Congruence entries compare in Z/m end-to-end; with audit_exact they are
/// instead evaluated exactly and reduced afterwards, which must agree.
inline verification_report verify_identity(const identity_entry& entry,
                                           std::int64_t depth,
                                           bool audit_exact = false) {
    auto t0 = std::chrono::steady_clock::now();
    verification_report report;
    report.id = entry.id;
    report.depth = depth;
    if (!entry.congruent) {
        detail::run_eq_check(entry, depth, exact_ring{}, report);
    } else if (audit_exact) {
        exact_ring zz;
        auto lhs = reduce_mod(evaluate(*entry.lhs, depth, zz),
                              static_cast<std::uint64_t>(entry.modulus));
        auto rhs = reduce_mod(evaluate(*entry.rhs, depth, zz),
                              static_cast<std::uint64_t>(entry.modulus));
        eq_result eq = eq_up_to(lhs, rhs, depth);
        if (eq.equal) {
            report.status = verification_report::status_t::pass;
            report.n_checked = depth;
        } else {
            report.status = verification_report::status_t::fail;
            report.n_checked = eq.mismatch_index;
            report.witness = counterexample{eq.mismatch_index, eq.mismatch_index,
                                            eq.lhs_value, eq.rhs_value};
        }
    } else {
        detail::run_eq_check(entry, depth,
                             mod_ring(static_cast<std::uint64_t>(entry.modulus)),
                             report);
    }
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

/// Largest comparison depth this entry supports when every leaf series is
/// truncated at `leaf_budget`.
inline std::int64_t achievable_depth(const identity_entry& entry,
                                     std::int64_t leaf_budget) {
    return std::min(detail::achievable_target(*entry.lhs, leaf_budget),
                    detail::achievable_target(*entry.rhs, leaf_budget));
}

/// Check under a truncation budget. If the budget cannot reach
/// `target_depth` coefficients after the entry's extractions, the result is
/// the dedicated insufficient-precision status, never a pass. Otherwise the
/// whole budget is spent: comparison runs at the achievable depth.
inline verification_report verify_identity_budgeted(const identity_entry& entry,
                                                    std::int64_t target_depth,
                                                    std::int64_t leaf_budget,
                                                    bool audit_exact = false) {
    std::int64_t achievable = achievable_depth(entry, leaf_budget);
    if (achievable < target_depth) {
        verification_report report;
        report.id = entry.id;
        report.status = verification_report::status_t::insufficient_precision;
        report.n_checked = achievable > 0 ? achievable : 0;
        report.depth = leaf_budget;
        return report;
    }
    return verify_identity(entry, achievable, audit_exact);
}

} // namespace qseries
