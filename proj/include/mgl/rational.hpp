#pragma once

#include <string>
#include <vector>

#include "mgl/error.hpp"

namespace mgl {

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

/// Canonical decimal-free rendering: "p" when the denominator is 1, else "p/q".
inline std::string rat_to_string(const Rat& r) { return r.str(); }

/// Parses "p", "-p", or "p/q"; the result is in canonical reduced form.
inline Rat rat_from_string(const std::string& s) {
    std::size_t pos = 0;
    auto fail = [&]() -> void { throw Error(Errc::ParseError, "invalid rational '" + s + "'"); };
    auto read_int = [&]() -> Int {
        bool neg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail();
        Int v(s.substr(start, pos - start));
        return neg ? Int(-v) : v;
    };
    Int num = read_int();
    Int den = 1;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = read_int();
    }
    if (pos != s.size()) fail();
    if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + s + "'");
    return Rat(num, den);
}

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

inline Int int_pow(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

/// base^e for integer e (negative exponents allowed); base must be nonzero when e < 0.
inline Rat rat_pow(const Rat& base, const Int& e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw Error(Errc::DivisionByZero, "0 raised to a negative power");
    Int a = e < 0 ? Int(-e) : e;
    Rat acc = 1, b = base;
    while (a > 0) {
        if ((a & 1) == 1) acc *= b;
        b *= b;
        a >>= 1;
    }
    if (e < 0) acc = Rat(1) / acc;
    return acc;
}

/// Prime factorization by trial division; exact, intended for desk-scale inputs.
inline std::vector<std::pair<Int, Int>> factorize(Int n) {
    if (n <= 0) throw Error(Errc::NonpositiveInput, "factorize requires a positive integer");
    std::vector<std::pair<Int, Int>> out;
    auto push = [&](const Int& p, Int e) {
        if (e != 0) out.emplace_back(p, e);
    };
    Int e2 = 0;
    while (n % 2 == 0) { n /= 2; ++e2; }
    push(2, e2);
    Int p = 3;
    while (p * p <= n) {
        Int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        push(p, e);
        p += 2;
    }
    if (n > 1) push(n, 1);
    return out;
}

/// All divisors of |v| with both signs, deterministic order. v must be nonzero.
inline std::vector<Int> signed_divisors(const Int& v) {
    Int a = v < 0 ? Int(-v) : v;
    if (a == 0) throw Error(Errc::InvalidProblem, "divisors of zero requested");
    std::vector<Int> pos{1};
    for (const auto& [p, e] : factorize(a)) {
        std::vector<Int> next;
        Int pk = 1;
        for (Int k = 0; k <= e; ++k) {
            for (const auto& d : pos) next.push_back(d * pk);
            pk *= p;
        }
        pos = std::move(next);
    }
    std::sort(pos.begin(), pos.end());
    std::vector<Int> out;
    out.reserve(pos.size() * 2);
    for (const auto& d : pos) {
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

}  // namespace mgl
