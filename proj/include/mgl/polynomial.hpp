#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mgl/rational.hpp"

namespace mgl {

/// Dense univariate polynomial over the rationals, coefficients stored
/// ascending. The zero polynomial has an empty coefficient vector and
/// degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(Rat constant) {
        if (constant != 0) c_.push_back(std::move(constant));
    }
    explicit Poly(std::vector<Rat> ascending) : c_(std::move(ascending)) { trim(); }

    static Poly variable() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    bool is_constant() const { return c_.size() <= 1; }
    Rat constant_value() const { return coeff(0); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<Rat> r(a.c_);
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }

    Poly scaled(const Rat& s) const {
        std::vector<Rat> r(c_);
        for (auto& x : r) x *= s;
        return Poly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// Euclidean division: returns (quotient, remainder) with deg r < deg divisor.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
        Poly q;
        Poly r = *this;
        std::vector<Rat> qc(r.c_.size(), Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int k = r.degree() - d.degree();
            Rat f = r.leading() / d.leading();
            qc[static_cast<std::size_t>(k)] += f;
            std::vector<Rat> sub(static_cast<std::size_t>(k), Rat(0));
            sub.insert(sub.end(), d.c_.begin(), d.c_.end());
            Poly s(std::move(sub));
            r = r - s.scaled(f);
        }
        return {Poly(std::move(qc)), r};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(Rat(1) / leading());
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

/// Monic gcd over the rationals.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly g = poly_gcd(a, b);
    return (a * b).divmod(g).first.monic();
}

/// Positive rational s such that s*p has coprime integer coefficients.
inline Rat primitive_scale(const Poly& p) {
    if (p.is_zero()) return Rat(1);
    Int den_lcm = 1, num_gcd = 0;
    for (const auto& c : p.coeffs()) {
        if (c == 0) continue;
        den_lcm = int_lcm(den_lcm, rat_den(c));
        num_gcd = int_gcd(num_gcd, rat_num(c));
    }
    if (num_gcd < 0) num_gcd = -num_gcd;
    return Rat(den_lcm, num_gcd);
}

/// Extended Euclid: g = monic gcd(a, b) together with u, v with u*a + v*b = g.
inline std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0(Rat(1)), s1;
    Poly t0, t1(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rat lead = r0.leading();
    return {r0.monic(), s0.scaled(Rat(1) / lead), t0.scaled(Rat(1) / lead)};
}

namespace detail {

inline Poly lagrange_interpolate(const std::vector<Int>& xs, const std::vector<Int>& ys) {
    Poly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly basis(Rat(1));
        Rat denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            basis = basis * Poly(std::vector<Rat>{Rat(-xs[j]), Rat(1)});
            denom *= Rat(xs[i] - xs[j]);
        }
        acc = acc + basis.scaled(Rat(ys[i]) / denom);
    }
    return acc;
}

}  // namespace detail

/// Irreducibility over Q, decided exactly by Kronecker factor search on the
/// primitive integer form. Intended for the small minimal polynomials that
/// appear in problem files; throws LIMIT_EXCEEDED if the divisor search
/// explodes rather than guessing.
inline bool poly_is_irreducible_q(const Poly& p_in, std::size_t tuple_limit = 500000) {
    Poly p = p_in.scaled(primitive_scale(p_in));
    int n = p.degree();
    if (n <= 0) return false;
    if (n == 1) return true;

    // Sample points 0, 1, -1, 2, -2, ...; a root at any of them gives a
    // linear factor immediately.
    auto sample_point = [](int i) -> Int {
        if (i == 0) return 0;
        int k = (i + 1) / 2;
        return i % 2 == 1 ? Int(k) : Int(-k);
    };

    for (int d = 1; d <= n / 2; ++d) {
        std::vector<Int> xs;
        std::vector<std::vector<Int>> choices;
        std::size_t tuples = 1;
        for (int i = 0; i <= d; ++i) {
            Int x = sample_point(i);
            Int v = rat_num(p.eval(Rat(x)));
            if (v == 0) return false;
            xs.push_back(x);
            choices.push_back(signed_divisors(v));
            tuples *= choices.back().size();
            if (tuples > tuple_limit)
                throw Error(Errc::LimitExceeded, "irreducibility search space too large");
        }
        std::vector<std::size_t> idx(xs.size(), 0);
        std::vector<Int> ys(xs.size());
        while (true) {
            for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = choices[i][idx[i]];
            Poly q = detail::lagrange_interpolate(xs, ys);
            if (q.degree() == d) {
                bool integral = true;
                for (const auto& c : q.coeffs())
                    if (!is_integer(c)) { integral = false; break; }
                if (integral && p.divmod(q).second.is_zero()) return false;
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return true;
}

/// Canonical text form, descending powers, no spaces: "2*t+1", "t^2-2", "-t".
inline std::string poly_to_string(const Poly& p, char var = 't') {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        Rat c = p.coeff(static_cast<std::size_t>(k));
        if (c == 0) continue;
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        if (out.empty()) {
            if (neg) out += '-';
        } else {
            out += neg ? '-' : '+';
        }
        if (k == 0) {
            out += rat_to_string(a);
        } else {
            if (a != 1) {
                out += rat_to_string(a);
                out += '*';
            }
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace mgl
