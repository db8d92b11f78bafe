#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "qseries/errors.hpp"

namespace qseries {

struct expr;
using expr_ptr = std::shared_ptr<const expr>;

/// Identity-DSL syntax tree. Atoms are the named series of the catalog
/// (f_k, q powers, psi(q^k), theta specializations, the 5-dissection factor,
/// extracted RD generating functions, the two auxiliary series); interior
/// nodes are ring operations.
struct expr {
    enum class kind_t {
        int_lit,    // a = value
        q_pow,      // q^a
        eta,        // f_a
        psi_k,      // psi(q^a)
        theta,      // f(sgn(a) q^b, sgn(c) q^d)
        dissect_a,  // the 5-dissection factor
        rd_extract, // sum_n RD^(a,b)(c n + d) q^n
        aux_a,      // coefficients a(n): f_1^2
        aux_b,      // coefficients b(n): psi(q) psi(q^3)
        add,
        sub,
        mul,
        div,
        pow_ // lhs ^ a
    };

    kind_t kind;
    std::int64_t a = 0, b = 0, c = 0, d = 0;
    expr_ptr lhs, rhs;
};

inline expr_ptr make_expr(expr::kind_t k, std::int64_t a = 0, std::int64_t b = 0,
                          std::int64_t c = 0, std::int64_t d = 0,
                          expr_ptr lhs = nullptr, expr_ptr rhs = nullptr) {
    auto e = std::make_shared<expr>();
    e->kind = k;
    e->a = a; e->b = b; e->c = c; e->d = d;
    e->lhs = std::move(lhs); e->rhs = std::move(rhs);
    return e;
}

inline expr_ptr ex_int(std::int64_t v) { return make_expr(expr::kind_t::int_lit, v); }
inline expr_ptr ex_q(std::int64_t e = 1) { return make_expr(expr::kind_t::q_pow, e); }
inline expr_ptr ex_eta(std::int64_t k) { return make_expr(expr::kind_t::eta, k); }
inline expr_ptr ex_psi(std::int64_t k = 1) { return make_expr(expr::kind_t::psi_k, k); }
inline expr_ptr ex_theta(int a_sign, std::int64_t a_exp, int b_sign, std::int64_t b_exp) {
    return make_expr(expr::kind_t::theta, a_sign, a_exp, b_sign, b_exp);
}
inline expr_ptr ex_dissect_a() { return make_expr(expr::kind_t::dissect_a); }
inline expr_ptr ex_rd(std::int64_t ell, std::int64_t t, std::int64_t m, std::int64_t r) {
    return make_expr(expr::kind_t::rd_extract, ell, t, m, r);
}
inline expr_ptr ex_aux_a() { return make_expr(expr::kind_t::aux_a); }
inline expr_ptr ex_aux_b() { return make_expr(expr::kind_t::aux_b); }
inline expr_ptr ex_add(expr_ptr l, expr_ptr r) {
    return make_expr(expr::kind_t::add, 0, 0, 0, 0, std::move(l), std::move(r));
}
inline expr_ptr ex_sub(expr_ptr l, expr_ptr r) {
    return make_expr(expr::kind_t::sub, 0, 0, 0, 0, std::move(l), std::move(r));
}
inline expr_ptr ex_mul(expr_ptr l, expr_ptr r) {
    return make_expr(expr::kind_t::mul, 0, 0, 0, 0, std::move(l), std::move(r));
}
inline expr_ptr ex_div(expr_ptr l, expr_ptr r) {
    return make_expr(expr::kind_t::div, 0, 0, 0, 0, std::move(l), std::move(r));
}
inline expr_ptr ex_pow(expr_ptr base, std::int64_t e) {
    return make_expr(expr::kind_t::pow_, e, 0, 0, 0, std::move(base));
}

inline bool expr_equal(const expr& x, const expr& y) {
    if (x.kind != y.kind || x.a != y.a || x.b != y.b || x.c != y.c || x.d != y.d)
        return false;
    if (!x.lhs != !y.lhs || !x.rhs != !y.rhs) return false;
    if (x.lhs && !expr_equal(*x.lhs, *y.lhs)) return false;
    if (x.rhs && !expr_equal(*x.rhs, *y.rhs)) return false;
    return true;
}

namespace detail {

// precedence: additive 1, multiplicative 2, power 3, atoms 4
inline int expr_prec(const expr& e) {
    switch (e.kind) {
    case expr::kind_t::add:
    case expr::kind_t::sub: return 1;
    case expr::kind_t::mul:
    case expr::kind_t::div: return 2;
    case expr::kind_t::pow_: return 3;
    default: return 4;
    }
}

inline void print_rec(const expr& e, int min_prec, std::string& out) {
    const int prec = expr_prec(e);
    const bool parens = prec < min_prec;
    if (parens) out += "(";
    switch (e.kind) {
    case expr::kind_t::int_lit:
        out += std::to_string(e.a);
        break;
    case expr::kind_t::q_pow:
        out += (e.a == 1) ? "q" : "q^" + std::to_string(e.a);
        break;
    case expr::kind_t::eta:
        out += "f" + std::to_string(e.a);
        break;
    case expr::kind_t::psi_k:
        out += (e.a == 1) ? "psi" : "psi(q^" + std::to_string(e.a) + ")";
        break;
    case expr::kind_t::theta:
        // display-only form; theta atoms are built programmatically and
        // have no surface syntax in the DSL
        out += "theta(" + std::string(e.a < 0 ? "-" : "+") + "q^" +
               std::to_string(e.b) + "," + (e.c < 0 ? "-" : "+") + "q^" +
               std::to_string(e.d) + ")";
        break;
    case expr::kind_t::dissect_a:
        out += "dissectA";
        break;
    case expr::kind_t::rd_extract:
        out += "RD(" + std::to_string(e.a) + "," + std::to_string(e.b) + "|" +
               std::to_string(e.c) + "n+" + std::to_string(e.d) + ")";
        break;
    case expr::kind_t::aux_a:
        out += "auxA";
        break;
    case expr::kind_t::aux_b:
        out += "auxB";
        break;
    case expr::kind_t::add:
        print_rec(*e.lhs, 1, out);
        out += " + ";
        print_rec(*e.rhs, 2, out);
        break;
    case expr::kind_t::sub:
        print_rec(*e.lhs, 1, out);
        out += " - ";
        print_rec(*e.rhs, 2, out);
        break;
    case expr::kind_t::mul:
        print_rec(*e.lhs, 2, out);
        out += "*";
        print_rec(*e.rhs, 3, out);
        break;
    case expr::kind_t::div:
        print_rec(*e.lhs, 2, out);
        out += "/";
        print_rec(*e.rhs, 3, out);
        break;
    case expr::kind_t::pow_:
        print_rec(*e.lhs, 4, out);
        out += "^" + std::to_string(e.a);
        break;
    }
    if (parens) out += ")";
}

} // namespace detail

/// Canonical printer. Output of grammar-expressible trees reparses to a
/// structurally identical tree.
inline std::string to_text(const expr& e) {
    std::string out;
    detail::print_rec(e, 1, out);
    return out;
}

inline std::string to_text(const expr_ptr& e) { return to_text(*e); }

} // namespace qseries
