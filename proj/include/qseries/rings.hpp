#pragma once

#include <concepts>
#include <cstdint>
#include <numeric>
#include <string>

#include <gmpxx.h>

#include "qseries/errors.hpp"

namespace qseries {

/// Arbitrary-precision integers. Coefficients of 1/f_1-type series outgrow
/// any fixed-width integer near n ~ 1500, so the exact ring is GMP-backed.
struct exact_ring {
    using value_type = mpz_class;

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type from_int(std::int64_t v) const { return value_type(static_cast<long>(v)); }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    void add_assign(value_type& a, const value_type& b) const { a += b; }
    void sub_assign(value_type& a, const value_type& b) const { a -= b; }
    void addmul(value_type& acc, const value_type& a, const value_type& b) const {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }

    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    // Units of Z are +1 and -1, each its own inverse.
    bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
    value_type inv_unit(const value_type& a) const {
        if (!is_unit(a))
            throw not_invertible_error("constant term " + to_string(a) +
                                       " is not a unit of Z");
        return a;
    }

    bool same_ring(const exact_ring&) const { return true; }
    std::string describe() const { return "Z"; }
    std::string to_string(const value_type& a) const { return a.get_str(); }
};

/// Integers modulo m >= 2, elements stored reduced into [0, m).
class mod_ring {
public:
    using value_type = std::uint64_t;

    explicit mod_ring(std::uint64_t modulus) : m_(modulus) {
        if (m_ < 2)
            throw error("modulus must be >= 2, got " + std::to_string(modulus));
        if (m_ > (std::uint64_t{1} << 32))
            throw error("modulus " + std::to_string(modulus) +
                        " exceeds the supported range (2^32)");
    }

    std::uint64_t modulus() const { return m_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1 % m_; }
    value_type from_int(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(m_);
        if (r < 0) r += static_cast<std::int64_t>(m_);
        return static_cast<value_type>(r);
    }
    value_type from_mpz(const mpz_class& v) const {
        return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m_));
    }

    value_type add(value_type a, value_type b) const {
        value_type s = a + b; // a, b < m <= 2^63: no overflow
        return s >= m_ ? s - m_ : s;
    }
    value_type sub(value_type a, value_type b) const {
        return a >= b ? a - b : a + (m_ - b);
    }
    value_type neg(value_type a) const { return a == 0 ? 0 : m_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(
            static_cast<unsigned __int128>(a) * b % m_);
    }
    void add_assign(value_type& a, value_type b) const { a = add(a, b); }
    void sub_assign(value_type& a, value_type b) const { a = sub(a, b); }
    void addmul(value_type& acc, value_type a, value_type b) const {
        acc = add(acc, mul(a, b));
    }

    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }

    bool is_unit(value_type a) const { return std::gcd(a, m_) == 1; }
    value_type inv_unit(value_type a) const {
        if (!is_unit(a))
            throw not_invertible_error("constant term " + std::to_string(a) +
                                       " is not a unit of " + describe());
        // extended Euclid on (a, m)
        std::int64_t r0 = static_cast<std::int64_t>(m_), r1 = static_cast<std::int64_t>(a);
        std::int64_t s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t r2 = r0 - q * r1;
            std::int64_t s2 = s0 - q * s1;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
        }
        return from_int(s0);
    }

    bool same_ring(const mod_ring& other) const { return m_ == other.m_; }
    std::string describe() const { return "Z/" + std::to_string(m_); }
    std::string to_string(value_type a) const { return std::to_string(a); }

private:
    std::uint64_t m_;
};

template <typename R>
concept coefficient_ring = requires(const R r, const typename R::value_type v,
                                    typename R::value_type& mut) {
    typename R::value_type;
    { r.zero() } -> std::same_as<typename R::value_type>;
    { r.one() } -> std::same_as<typename R::value_type>;
    { r.from_int(std::int64_t{}) } -> std::same_as<typename R::value_type>;
    { r.add(v, v) } -> std::same_as<typename R::value_type>;
    { r.sub(v, v) } -> std::same_as<typename R::value_type>;
    { r.neg(v) } -> std::same_as<typename R::value_type>;
    { r.mul(v, v) } -> std::same_as<typename R::value_type>;
    { r.addmul(mut, v, v) };
    { r.is_zero(v) } -> std::same_as<bool>;
    { r.equal(v, v) } -> std::same_as<bool>;
    { r.is_unit(v) } -> std::same_as<bool>;
    { r.inv_unit(v) } -> std::same_as<typename R::value_type>;
    { r.same_ring(r) } -> std::same_as<bool>;
    { r.describe() } -> std::same_as<std::string>;
    { r.to_string(v) } -> std::same_as<std::string>;
};

static_assert(coefficient_ring<exact_ring>);
static_assert(coefficient_ring<mod_ring>);

} // namespace qseries
