#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/errors.hpp"
#include "qseries/expr.hpp"

namespace qseries {

/// Identity text split into sides: lhs == rhs (exact) or
/// lhs === rhs mod m (coefficientwise congruence).
struct parsed_identity {
    expr_ptr lhs;
    expr_ptr rhs;
    bool congruent = false;
    std::int64_t modulus = 0;
};

namespace detail {

enum class tok_kind {
    integer, ident, plus, minus, star, slash, caret,
    lparen, rparen, comma, pipe, eq2, eq3, end
};

struct token {
    tok_kind kind;
    std::int64_t value = 0;  // integer
    std::string text;        // ident
    std::int64_t column = 0; // 1-based
};

class lexer {
public:
    explicit lexer(std::string_view src) : src_(src) { tokenize(); }
    const std::vector<token>& tokens() const { return toks_; }

private:
    void tokenize() {
        std::size_t i = 0;
        while (i < src_.size()) {
            char c = src_[i];
            if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
            std::int64_t col = static_cast<std::int64_t>(i) + 1;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
                std::string digits(src_.substr(i, j - i));
                try {
                    toks_.push_back({tok_kind::integer, std::stoll(digits), "", col});
                } catch (const std::out_of_range&) {
                    throw parse_error("integer literal out of range: " + digits, 1, col);
                }
                i = j;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < src_.size() && std::isalpha(static_cast<unsigned char>(src_[j]))) ++j;
                toks_.push_back({tok_kind::ident, 0, std::string(src_.substr(i, j - i)), col});
                i = j;
                continue;
            }
            if (c == '=') {
                std::size_t j = i;
                while (j < src_.size() && src_[j] == '=') ++j;
                std::size_t n = j - i;
                if (n == 2) toks_.push_back({tok_kind::eq2, 0, "", col});
                else if (n == 3) toks_.push_back({tok_kind::eq3, 0, "", col});
                else throw parse_error("expected '==' or '==='", 1, col);
                i = j;
                continue;
            }
            tok_kind k;
            switch (c) {
            case '+': k = tok_kind::plus; break;
            case '-': k = tok_kind::minus; break;
            case '*': k = tok_kind::star; break;
            case '/': k = tok_kind::slash; break;
            case '^': k = tok_kind::caret; break;
            case '(': k = tok_kind::lparen; break;
            case ')': k = tok_kind::rparen; break;
            case ',': k = tok_kind::comma; break;
            case '|': k = tok_kind::pipe; break;
            default:
                throw parse_error(std::string("unexpected character '") + c + "'", 1, col);
            }
            toks_.push_back({k, 0, "", col});
            ++i;
        }
        toks_.push_back({tok_kind::end, 0, "",
                         static_cast<std::int64_t>(src_.size()) + 1});
    }

    std::string_view src_;
    std::vector<token> toks_;
};

class parser {
public:
    explicit parser(std::string_view src) : lex_(src) {}

    expr_ptr parse_expression_all() {
        auto e = parse_expr();
        expect(tok_kind::end, "end of input");
        return e;
    }

    parsed_identity parse_identity_all() {
        parsed_identity id;
        id.lhs = parse_expr();
        if (peek().kind == tok_kind::eq2) {
            advance();
            id.rhs = parse_expr();
        } else if (peek().kind == tok_kind::eq3) {
            advance();
            id.rhs = parse_expr();
            const token& kw = peek();
            if (kw.kind != tok_kind::ident || kw.text != "mod")
                throw parse_error("expected 'mod' after '===' right-hand side", 1, kw.column);
            advance();
            id.congruent = true;
            id.modulus = expect_int("modulus");
            if (id.modulus < 2)
                throw parse_error("congruence modulus must be >= 2", 1, prev_column_);
        } else {
            throw parse_error("expected '==' or '===' between the two sides", 1,
                              peek().column);
        }
        expect(tok_kind::end, "end of input");
        return id;
    }

private:
    const token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        const auto& v = lex_.tokens();
        return i < v.size() ? v[i] : v.back();
    }
    void advance() { prev_column_ = peek().column; ++pos_; }

    void expect(tok_kind k, const char* what) {
        if (peek().kind != k)
            throw parse_error(std::string("expected ") + what, 1, peek().column);
        advance();
    }

    std::int64_t expect_int(const char* what) {
        if (peek().kind != tok_kind::integer)
            throw parse_error(std::string("expected ") + what, 1, peek().column);
        std::int64_t v = peek().value;
        advance();
        return v;
    }

    // identity := expr ("==" expr | "===" expr "mod" INT)
    // expr     := term (("+"|"-") term)*
    // term     := factor ("*" factor | "/" factor)*
    // factor   := atom ("^" SIGNED_INT)?
    expr_ptr parse_expr() {
        auto e = parse_term();
        while (peek().kind == tok_kind::plus || peek().kind == tok_kind::minus) {
            bool plus = peek().kind == tok_kind::plus;
            advance();
            auto r = parse_term();
            e = plus ? ex_add(std::move(e), std::move(r))
                     : ex_sub(std::move(e), std::move(r));
        }
        return e;
    }

    expr_ptr parse_term() {
        auto e = parse_factor();
        while (peek().kind == tok_kind::star || peek().kind == tok_kind::slash) {
            bool star = peek().kind == tok_kind::star;
            advance();
            auto r = parse_factor();
            e = star ? ex_mul(std::move(e), std::move(r))
                     : ex_div(std::move(e), std::move(r));
        }
        return e;
    }

    expr_ptr parse_factor() {
        auto e = parse_atom();
        if (peek().kind == tok_kind::caret) {
            advance();
            bool negative = false;
            if (peek().kind == tok_kind::minus) { negative = true; advance(); }
            std::int64_t v = expect_int("exponent after '^'");
            e = ex_pow(std::move(e), negative ? -v : v);
        }
        return e;
    }

    expr_ptr parse_atom() {
        const token& t = peek();
        switch (t.kind) {
        case tok_kind::integer:
            advance();
            return ex_int(t.value);
        case tok_kind::lparen: {
            advance();
            auto e = parse_expr();
            expect(tok_kind::rparen, "')'");
            return e;
        }
        case tok_kind::ident:
            return parse_named_atom();
        default:
            throw parse_error("expected an atom", 1, t.column);
        }
    }

    expr_ptr parse_named_atom() {
        const token t = peek();
        if (t.text == "q") {
            advance();
            // "q" "^" INT binds inside the atom; "q^-k" is left for the
            // factor rule
            if (peek().kind == tok_kind::caret && peek(1).kind == tok_kind::integer) {
                advance();
                return ex_q(expect_int("exponent"));
            }
            return ex_q(1);
        }
        if (t.text == "f") {
            advance();
            std::int64_t k = expect_int("subscript after 'f'");
            if (k < 1)
                throw parse_error("f subscript must be >= 1", 1, prev_column_);
            return ex_eta(k);
        }
        if (t.text == "psi") {
            advance();
            if (peek().kind == tok_kind::lparen) {
                advance();
                const token& qt = peek();
                if (qt.kind != tok_kind::ident || qt.text != "q")
                    throw parse_error("expected 'q' inside psi(...)", 1, qt.column);
                advance();
                expect(tok_kind::caret, "'^'");
                std::int64_t k = expect_int("exponent");
                if (k < 1)
                    throw parse_error("psi argument exponent must be >= 1", 1, prev_column_);
                expect(tok_kind::rparen, "')'");
                return ex_psi(k);
            }
            return ex_psi(1);
        }
        if (t.text == "RD") {
            advance();
            expect(tok_kind::lparen, "'('");
            std::int64_t ell = expect_int("regularity parameter");
            expect(tok_kind::comma, "','");
            std::int64_t tt = expect_int("distinctness parameter");
            expect(tok_kind::pipe, "'|'");
            std::int64_t m = expect_int("progression step");
            const token& nt = peek();
            if (nt.kind != tok_kind::ident || nt.text != "n")
                throw parse_error("expected 'n' in RD(..|..n+..)", 1, nt.column);
            advance();
            expect(tok_kind::plus, "'+'");
            std::int64_t r = expect_int("progression offset");
            expect(tok_kind::rparen, "')'");
            if (ell < 2 || tt < 2)
                throw parse_error("RD parameters must be >= 2", 1, t.column);
            if (m < 1)
                throw parse_error("RD progression step must be >= 1", 1, t.column);
            return ex_rd(ell, tt, m, r);
        }
        if (t.text == "auxA") { advance(); return ex_aux_a(); }
        if (t.text == "auxB") { advance(); return ex_aux_b(); }
        if (t.text == "dissectA") { advance(); return ex_dissect_a(); }
        throw unknown_symbol_error("unknown symbol '" + t.text + "'", 1, t.column);
    }

    lexer lex_;
    std::size_t pos_ = 0;
    std::int64_t prev_column_ = 1;
};

} // namespace detail

/// Parse one expression; the whole string must be consumed.
inline expr_ptr parse_expression(std::string_view text) {
    return detail::parser(text).parse_expression_all();
}

/// Parse one identity line (without the id prefix).
inline parsed_identity parse_identity_text(std::string_view text) {
    return detail::parser(text).parse_identity_all();
}

} // namespace qseries
