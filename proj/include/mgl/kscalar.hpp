#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mgl/polynomial.hpp"

namespace mgl {

enum class FieldKind { Rational, FormalTau, AlgebraicTau };

inline const char* field_kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::Rational: return "rational";
        case FieldKind::FormalTau: return "formal_tau";
        case FieldKind::AlgebraicTau: return "algebraic_tau";
    }
    return "?";
}

/// Coefficient field selector: Q, Q(t) with t a formal transcendental, or
/// Q[x]/(p) with p irreducible over Q. The algebraic mode stores p monic;
/// irreducibility and degree >= 2 are checked at construction.
class FieldMode {
public:
    static FieldMode rational() { return FieldMode(FieldKind::Rational, Poly()); }
    static FieldMode formal_tau() { return FieldMode(FieldKind::FormalTau, Poly()); }

    static FieldMode algebraic_tau(const Poly& minimal_polynomial) {
        Poly prim = minimal_polynomial.scaled(primitive_scale(minimal_polynomial));
        if (prim.degree() < 2)
            throw Error(Errc::InvalidProblem,
                        "minimal polynomial must have degree >= 2 (tau is irrational)");
        if (!poly_is_irreducible_q(prim))
            throw Error(Errc::InvalidProblem, "minimal polynomial is reducible over Q: " +
                                                  poly_to_string(prim));
        return FieldMode(FieldKind::AlgebraicTau, prim.monic());
    }

    FieldKind kind() const { return kind_; }
    /// Monic minimal polynomial; only meaningful in AlgebraicTau mode.
    const Poly& minimal_polynomial() const { return min_poly_; }
    int extension_degree() const {
        return kind_ == FieldKind::AlgebraicTau ? min_poly_.degree() : 0;
    }

    friend bool operator==(const FieldMode& a, const FieldMode& b) {
        return a.kind_ == b.kind_ && a.min_poly_ == b.min_poly_;
    }

private:
    FieldMode(FieldKind k, Poly p) : kind_(k), min_poly_(std::move(p)) {}

    FieldKind kind_;
    Poly min_poly_;
};

/// Exact element of the coefficient field K. Canonical form by mode:
///   Rational      — constant numerator, denominator 1 (value reduced by Rat);
///   FormalTau     — numerator/denominator coprime, denominator monic;
///   AlgebraicTau  — residue of degree < deg(p), denominator 1.
class KScalar {
public:
    KScalar() : mode_(FieldMode::rational()), num_(), den_(Rat(1)) {}

    static KScalar zero(const FieldMode& mode) { return KScalar(mode, Poly(), Poly(Rat(1))); }
    static KScalar one(const FieldMode& mode) {
        return KScalar(mode, Poly(Rat(1)), Poly(Rat(1)));
    }
    static KScalar from_rational(const FieldMode& mode, const Rat& value) {
        return KScalar(mode, Poly(value), Poly(Rat(1)));
    }
    static KScalar from_int(const FieldMode& mode, long value) {
        return from_rational(mode, Rat(value));
    }
    static KScalar tau(const FieldMode& mode) {
        if (mode.kind() == FieldKind::Rational)
            throw Error(Errc::ModeMismatch, "tau does not exist in RATIONAL mode");
        return KScalar(mode, Poly::variable(), Poly(Rat(1)));
    }
    /// General constructor from a numerator/denominator pair; canonicalizes.
    static KScalar make(const FieldMode& mode, Poly num, Poly den) {
        return KScalar(mode, std::move(num), std::move(den));
    }

    const FieldMode& mode() const { return mode_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.degree() == 0 && num_ == Poly(den_.coeff(0)); }

    /// True when the element lies in Q (degree-0 numerator over denominator 1).
    bool is_rational_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat rational_value() const {
        if (!is_rational_constant())
            throw Error(Errc::NonIntegerExponent, "value is not a rational constant");
        return num_.constant_value() / den_.constant_value();
    }
    bool is_integer_constant() const {
        return is_rational_constant() && is_integer(rational_value());
    }

    friend bool operator==(const KScalar& a, const KScalar& b) {
        return a.mode_ == b.mode_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    KScalar(FieldMode mode, Poly num, Poly den)
        : mode_(std::move(mode)), num_(std::move(num)), den_(std::move(den)) {
        canonicalize();
    }

    void canonicalize() {
        if (den_.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
        switch (mode_.kind()) {
            case FieldKind::Rational: {
                if (!num_.is_constant() || !den_.is_constant())
                    throw Error(Errc::ModeMismatch, "non-constant value in RATIONAL mode");
                Rat v = num_.constant_value() / den_.constant_value();
                num_ = Poly(v);
                den_ = Poly(Rat(1));
                break;
            }
            case FieldKind::FormalTau: {
                if (num_.is_zero()) {
                    den_ = Poly(Rat(1));
                    return;
                }
                Poly g = poly_gcd(num_, den_);
                if (g.degree() > 0) {
                    num_ = num_.divmod(g).first;
                    den_ = den_.divmod(g).first;
                }
                Rat lead = den_.leading();
                if (lead != 1) {
                    den_ = den_.scaled(Rat(1) / lead);
                    num_ = num_.scaled(Rat(1) / lead);
                }
                break;
            }
            case FieldKind::AlgebraicTau: {
                const Poly& p = mode_.minimal_polynomial();
                num_ = num_.divmod(p).second;
                if (!den_.is_constant()) {
                    Poly d = den_.divmod(p).second;
                    if (d.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
                    num_ = (num_ * invert_mod(d, p)).divmod(p).second;
                } else {
                    num_ = num_.scaled(Rat(1) / den_.constant_value());
                }
                den_ = Poly(Rat(1));
                break;
            }
        }
    }

    static Poly invert_mod(const Poly& a, const Poly& p) {
        auto [g, u, v] = poly_xgcd(a, p);
        (void)v;
        if (g.degree() != 0)
            throw Error(Errc::DivisionByZero, "non-invertible residue (reducible modulus?)");
        return u.divmod(p).second;
    }

    FieldMode mode_;
    Poly num_;
    Poly den_;
};

inline void require_same_mode(const KScalar& a, const KScalar& b) {
    if (!(a.mode() == b.mode()))
        throw Error(Errc::ModeMismatch, "operands belong to different field modes");
}

inline KScalar add(const KScalar& a, const KScalar& b) {
    require_same_mode(a, b);
    return KScalar::make(a.mode(), a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

inline KScalar neg(const KScalar& a) { return KScalar::make(a.mode(), -a.num(), a.den()); }

inline KScalar sub(const KScalar& a, const KScalar& b) { return add(a, neg(b)); }

inline KScalar mul(const KScalar& a, const KScalar& b) {
    require_same_mode(a, b);
    return KScalar::make(a.mode(), a.num() * b.num(), a.den() * b.den());
}

inline KScalar inv(const KScalar& a) {
    if (a.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    return KScalar::make(a.mode(), a.den(), a.num());
}

inline KScalar div(const KScalar& a, const KScalar& b) { return mul(a, inv(b)); }

inline KScalar operator+(const KScalar& a, const KScalar& b) { return add(a, b); }
inline KScalar operator-(const KScalar& a, const KScalar& b) { return sub(a, b); }
inline KScalar operator-(const KScalar& a) { return neg(a); }
inline KScalar operator*(const KScalar& a, const KScalar& b) { return mul(a, b); }
inline KScalar operator/(const KScalar& a, const KScalar& b) { return div(a, b); }

enum class ScalarOp { Add, Mul, Neg, Inv };

/// Spec-level dispatch entry; Neg and Inv ignore the second operand.
inline KScalar scalar_arith(ScalarOp op, const KScalar& a,
                            const std::optional<KScalar>& b = std::nullopt) {
    switch (op) {
        case ScalarOp::Add:
            if (!b) throw Error(Errc::InvalidProblem, "add requires two operands");
            return add(a, *b);
        case ScalarOp::Mul:
            if (!b) throw Error(Errc::InvalidProblem, "mul requires two operands");
            return mul(a, *b);
        case ScalarOp::Neg: return neg(a);
        case ScalarOp::Inv: return inv(a);
    }
    throw Error(Errc::InvalidProblem, "unknown scalar op");
}

/// Canonical rendering. Rational constants print as "p/q"; FormalTau fractions
/// as "(num)/(den)"; everything else as a bare polynomial in t.
inline std::string kscalar_to_string(const KScalar& a) {
    if (a.mode().kind() == FieldKind::Rational) return rat_to_string(a.rational_value());
    if (a.den().degree() == 0 && a.den().coeff(0) == 1) return poly_to_string(a.num());
    return "(" + poly_to_string(a.num()) + ")/(" + poly_to_string(a.den()) + ")";
}

namespace detail {

/// Recursive-descent parser for scalar expressions: +, -, *, /, ^, parentheses,
/// unsigned integers and the variable t (x accepted as a synonym). Arithmetic
/// is performed directly in the target field, so algebraic-mode inputs reduce
/// modulo the minimal polynomial as they are parsed.
class ScalarParser {
public:
    ScalarParser(const FieldMode& mode, const std::string& text) : mode_(mode), s_(text) {}

    KScalar parse() {
        KScalar v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) {
        throw Error(Errc::ParseError,
                    "scalar '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    KScalar expr() {
        KScalar v = term();
        while (true) {
            if (eat('+')) v = add(v, term());
            else if (eat('-')) v = sub(v, term());
            else return v;
        }
    }

    KScalar term() {
        KScalar v = factor();
        while (true) {
            if (eat('*')) v = mul(v, factor());
            else if (eat('/')) v = div(v, factor());
            else return v;
        }
    }

    KScalar factor() {
        if (eat('-')) return neg(factor());
        if (eat('+')) return factor();
        KScalar v = atom();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start) fail("expected exponent");
            unsigned long e = std::stoul(s_.substr(start, pos_ - start));
            KScalar acc = KScalar::one(mode_);
            for (unsigned long i = 0; i < e; ++i) acc = mul(acc, v);
            v = acc;
        }
        return v;
    }

    KScalar atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            KScalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == 't' || c == 'x') {
            ++pos_;
            return KScalar::tau(mode_);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return KScalar::from_rational(mode_, Rat(Int(s_.substr(start, pos_ - start))));
        }
        fail("unexpected character");
    }

    FieldMode mode_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline KScalar kscalar_from_string(const FieldMode& mode, const std::string& text) {
    return detail::ScalarParser(mode, text).parse();
}

/// Parses a polynomial (in t or x) from text; rejects genuine fractions.
inline Poly poly_from_string(const std::string& text) {
    KScalar v = kscalar_from_string(FieldMode::formal_tau(), text);
    if (v.den().degree() != 0)
        throw Error(Errc::ParseError, "expected a polynomial, got a rational function: " + text);
    return v.num().scaled(v.den().coeff(0) == 1 ? Rat(1) : Rat(1) / v.den().coeff(0));
}

}  // namespace mgl
