#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgl/group.hpp"

namespace mgl {

/// Integer character chi_k(g) = g_1^{k_1} * ... * g_n^{k_n} on tuples in G^n.
struct Character {
    IVec k;
};

inline GroupElement character_eval(const Character& chi, const std::vector<GroupElement>& g) {
    if (chi.k.size() != g.size())
        throw Error(Errc::ArityMismatch, "character length differs from tuple length");
    if (g.empty()) throw Error(Errc::ArityMismatch, "character over the empty tuple");
    const GroupPresentation& pres = g.front().presentation();
    detail::require_shared_presentation(g, pres);
    KVec acc(pres.rank(), KScalar::zero(pres.mode()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        KScalar ki = KScalar::from_rational(pres.mode(), Rat(chi.k[i]));
        for (std::size_t s = 0; s < pres.rank(); ++s)
            acc[s] = add(acc[s], mul(ki, g[i].exponents()[s]));
    }
    return GroupElement(pres, std::move(acc));
}

/// chi_k(g) in G^[m], decided componentwise on integer exponents. Divisible
/// presentations are m-divisible for every m, so membership is always true
/// there.
inline bool dkm_membership(const std::vector<GroupElement>& g, const Character& chi,
                           const Int& m) {
    if (m < 1) throw Error(Errc::InvalidProblem, "coset modulus must be >= 1");
    if (chi.k.size() != g.size())
        throw Error(Errc::ArityMismatch, "character length differs from tuple length");
    if (g.empty()) throw Error(Errc::ArityMismatch, "membership over the empty tuple");
    if (g.front().presentation().divisible()) return true;
    const GroupPresentation& pres = g.front().presentation();
    detail::require_shared_presentation(g, pres);
    IVec acc(pres.rank(), Int(0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        IVec e = g[i].integer_exponents();
        for (std::size_t s = 0; s < pres.rank(); ++s) acc[s] += chi.k[i] * e[s];
    }
    for (const auto& x : acc)
        if (x % m != 0) return false;
    return true;
}

/// Atomic coset constraint: g in (or not in) shift * D_{k,m}. The shift is an
/// n x r integral exponent matrix; an empty shift means the identity tuple.
struct CosetConstraint {
    IVec k;
    Int m = 1;
    IMat shift;  // n rows of r exponents; empty = identity
    bool negated = false;
};

struct CosetExpr {
    enum class Kind { Atom, And, Or, Not };
    Kind kind = Kind::Atom;
    CosetConstraint atom;
    std::vector<CosetExpr> children;

    static CosetExpr make_atom(CosetConstraint c) {
        CosetExpr e;
        e.kind = Kind::Atom;
        e.atom = std::move(c);
        return e;
    }
    static CosetExpr make(Kind k, std::vector<CosetExpr> ch) {
        CosetExpr e;
        e.kind = k;
        e.children = std::move(ch);
        return e;
    }
};

namespace detail {

inline bool atom_holds(const CosetConstraint& c, const std::vector<GroupElement>& g) {
    if (c.k.size() != g.size())
        throw Error(Errc::MixedArity, "constraint arity differs from tuple arity");
    if (g.empty()) throw Error(Errc::MixedArity, "constraint over the empty tuple");
    const GroupPresentation& pres = g.front().presentation();
    if (pres.divisible()) return !c.negated ? true : false;
    std::size_t r = pres.rank();
    IVec acc(r, Int(0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        IVec e = g[i].integer_exponents();
        for (std::size_t s = 0; s < r; ++s) {
            Int shifted = e[s] - (c.shift.empty() ? Int(0) : c.shift[i][s]);
            acc[s] += c.k[i] * shifted;
        }
    }
    bool inside = true;
    for (const auto& x : acc)
        if (x % c.m != 0) { inside = false; break; }
    return c.negated ? !inside : inside;
}

}  // namespace detail

/// Direct recursive semantics of a constraint tree on a concrete tuple; the
/// independent reference against which coset_normalize is checked.
inline bool coset_expr_eval(const CosetExpr& e, const std::vector<GroupElement>& g) {
    switch (e.kind) {
        case CosetExpr::Kind::Atom: return detail::atom_holds(e.atom, g);
        case CosetExpr::Kind::And:
            for (const auto& c : e.children)
                if (!coset_expr_eval(c, g)) return false;
            return true;
        case CosetExpr::Kind::Or:
            for (const auto& c : e.children)
                if (coset_expr_eval(c, g)) return true;
            return false;
        case CosetExpr::Kind::Not: return !coset_expr_eval(e.children.at(0), g);
    }
    throw Error(Errc::InvalidProblem, "corrupt constraint tree");
}

/// Canonical finite union of cosets of (G^[l])^n: the set of residue vectors
/// in (Z/l)^(r*n) (element-major, then basis coordinate), deduplicated and
/// sorted by their base-l little-endian code.
class CosetUnion {
public:
    CosetUnion(std::uint64_t l, std::size_t n, std::size_t r, std::vector<std::uint64_t> classes)
        : l_(l), n_(n), r_(r), classes_(std::move(classes)) {
        std::sort(classes_.begin(), classes_.end());
        classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
    }

    std::uint64_t modulus() const { return l_; }
    std::size_t arity() const { return n_; }
    std::size_t group_rank() const { return r_; }
    std::size_t digits() const { return n_ * r_; }
    const std::vector<std::uint64_t>& classes() const { return classes_; }

    std::uint64_t total_classes() const {
        std::uint64_t t = 1;
        for (std::size_t i = 0; i < digits(); ++i) t *= l_;
        return t;
    }
    bool is_full() const { return classes_.size() == total_classes(); }
    bool is_empty() const { return classes_.empty(); }

    std::vector<std::uint64_t> decode(std::uint64_t code) const {
        std::vector<std::uint64_t> v(digits());
        for (std::size_t i = 0; i < digits(); ++i) {
            v[i] = code % l_;
            code /= l_;
        }
        return v;
    }

    friend bool operator==(const CosetUnion& a, const CosetUnion& b) {
        return a.l_ == b.l_ && a.n_ == b.n_ && a.r_ == b.r_ && a.classes_ == b.classes_;
    }

private:
    std::uint64_t l_;
    std::size_t n_;
    std::size_t r_;
    std::vector<std::uint64_t> classes_;
};

namespace detail {

inline void collect_moduli(const CosetExpr& e, std::vector<Int>& out) {
    if (e.kind == CosetExpr::Kind::Atom) {
        if (e.atom.m < 1) throw Error(Errc::InvalidProblem, "coset modulus must be >= 1");
        out.push_back(e.atom.m);
    }
    for (const auto& c : e.children) collect_moduli(c, out);
}

inline void check_arity(const CosetExpr& e, std::size_t n) {
    if (e.kind == CosetExpr::Kind::Atom) {
        if (e.atom.k.size() != n)
            throw Error(Errc::MixedArity, "constraint arity differs from declared arity");
        if (!e.atom.shift.empty() && e.atom.shift.size() != n)
            throw Error(Errc::MixedArity, "shift arity differs from declared arity");
    }
    for (const auto& c : e.children) check_arity(c, n);
}

inline std::uint64_t mod_u64(const Int& v, std::uint64_t m) {
    Int r = v % Int(m);
    if (r < 0) r += Int(m);
    return r.convert_to<std::uint64_t>();
}

// Residue indicator of one atom over (Z/l)^(r*n).
inline std::vector<bool> atom_classes(const CosetConstraint& c, std::uint64_t l, std::size_t n,
                                      std::size_t r, std::uint64_t total) {
    std::uint64_t m = c.m.convert_to<std::uint64_t>();
    std::vector<std::int64_t> kmod(n);
    for (std::size_t i = 0; i < n; ++i)
        kmod[i] = static_cast<std::int64_t>(mod_u64(c.k[i], m));
    std::vector<std::int64_t> shift_mod(n * r, 0);
    if (!c.shift.empty())
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t s = 0; s < r; ++s)
                shift_mod[i * r + s] = static_cast<std::int64_t>(mod_u64(c.shift[i][s], m));

    std::vector<bool> out(total, false);
    std::vector<std::uint64_t> digits(n * r, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
        bool inside = true;
        for (std::size_t s = 0; s < r && inside; ++s) {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::int64_t e = static_cast<std::int64_t>(digits[i * r + s]);
                acc += kmod[i] * (e - shift_mod[i * r + s]);
            }
            inside = acc % static_cast<std::int64_t>(m) == 0;
        }
        out[code] = c.negated ? !inside : inside;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < l) break;
            digits[i] = 0;
        }
    }
    return out;
}

inline std::vector<bool> eval_classes(const CosetExpr& e, std::uint64_t l, std::size_t n,
                                      std::size_t r, std::uint64_t total) {
    switch (e.kind) {
        case CosetExpr::Kind::Atom: return atom_classes(e.atom, l, n, r, total);
        case CosetExpr::Kind::And: {
            std::vector<bool> acc(total, true);
            for (const auto& c : e.children) {
                std::vector<bool> x = eval_classes(c, l, n, r, total);
                for (std::uint64_t i = 0; i < total; ++i) acc[i] = acc[i] && x[i];
            }
            return acc;
        }
        case CosetExpr::Kind::Or: {
            std::vector<bool> acc(total, false);
            for (const auto& c : e.children) {
                std::vector<bool> x = eval_classes(c, l, n, r, total);
                for (std::uint64_t i = 0; i < total; ++i) acc[i] = acc[i] || x[i];
            }
            return acc;
        }
        case CosetExpr::Kind::Not: {
            std::vector<bool> x = eval_classes(e.children.at(0), l, n, r, total);
            x.flip();
            return x;
        }
    }
    throw Error(Errc::InvalidProblem, "corrupt constraint tree");
}

}  // namespace detail

struct NormalizeResult {
    CosetUnion classes;
    std::optional<std::string> warning;
};

/// Lemma-style normalization: l is the lcm of all moduli in the tree, every
/// constraint is lifted to its residue-class set in (Z/l)^(r*n), and the
/// boolean tree is evaluated by exact set operations. Divisible presentations
/// short-circuit to the full union with a warning.
inline NormalizeResult coset_normalize(const CosetExpr& expr, const GroupPresentation& pres,
                                       std::size_t arity,
                                       std::uint64_t class_limit = 1000000) {
    detail::check_arity(expr, arity);
    if (arity == 0) throw Error(Errc::MixedArity, "constraint trees need arity >= 1");
    if (pres.divisible()) {
        CosetUnion full(1, arity, pres.rank(), {0});
        return {full, std::string("divisible group: every power-subgroup constraint is trivial; "
                                  "returning the full union")};
    }
    std::vector<Int> moduli;
    detail::collect_moduli(expr, moduli);
    Int l = 1;
    for (const auto& m : moduli) l = int_lcm(l, m);
    std::size_t digits = arity * pres.rank();
    Int total = 1;
    for (std::size_t i = 0; i < digits; ++i) {
        total *= l;
        if (total > Int(class_limit))
            throw Error(Errc::LimitExceeded,
                        "residue class space l^(r*n) exceeds the configured cap");
    }
    std::uint64_t l64 = l.convert_to<std::uint64_t>();
    std::uint64_t total64 = total.convert_to<std::uint64_t>();
    std::vector<bool> hit = detail::eval_classes(expr, l64, arity, pres.rank(), total64);
    std::vector<std::uint64_t> classes;
    for (std::uint64_t i = 0; i < total64; ++i)
        if (hit[i]) classes.push_back(i);
    return {CosetUnion(l64, arity, pres.rank(), std::move(classes)), std::nullopt};
}

/// Refines a union from modulus l to modulus l*s; membership is preserved.
inline CosetUnion coset_refine(const CosetUnion& u, std::uint64_t s,
                               std::uint64_t class_limit = 1000000) {
    if (s == 0) throw Error(Errc::InvalidProblem, "refinement factor must be >= 1");
    if (s == 1) return u;
    std::uint64_t l2 = u.modulus() * s;
    Int total = 1;
    for (std::size_t i = 0; i < u.digits(); ++i) {
        total *= Int(l2);
        if (total > Int(class_limit))
            throw Error(Errc::LimitExceeded, "refined class space exceeds the configured cap");
    }
    std::vector<std::uint64_t> lifted;
    std::vector<std::uint64_t> offsets(u.digits(), 0);
    for (auto code : u.classes()) {
        std::vector<std::uint64_t> base = u.decode(code);
        std::fill(offsets.begin(), offsets.end(), 0);
        while (true) {
            std::uint64_t c2 = 0;
            for (std::size_t i = u.digits(); i-- > 0;)
                c2 = c2 * l2 + (base[i] + offsets[i] * u.modulus());
            lifted.push_back(c2);
            std::size_t i = 0;
            while (i < u.digits() && ++offsets[i] == s) offsets[i++] = 0;
            if (i == u.digits()) break;
        }
    }
    return CosetUnion(l2, u.arity(), u.group_rank(), std::move(lifted));
}

enum class CosetOp { Union, Intersect, Complement };

inline CosetUnion coset_union_op(CosetOp op, const CosetUnion& a,
                                 const CosetUnion* b = nullptr,
                                 std::uint64_t class_limit = 1000000) {
    if (op == CosetOp::Complement) {
        std::vector<std::uint64_t> out;
        std::uint64_t total = a.total_classes();
        const auto& cls = a.classes();
        std::size_t idx = 0;
        for (std::uint64_t c = 0; c < total; ++c) {
            if (idx < cls.size() && cls[idx] == c) { ++idx; continue; }
            out.push_back(c);
        }
        return CosetUnion(a.modulus(), a.arity(), a.group_rank(), std::move(out));
    }
    if (!b) throw Error(Errc::InvalidProblem, "binary coset operation needs two operands");
    if (a.arity() != b->arity() || a.group_rank() != b->group_rank())
        throw Error(Errc::ShapeMismatch, "coset unions differ in arity or group rank");
    Int l = int_lcm(Int(a.modulus()), Int(b->modulus()));
    std::uint64_t l64 = l.convert_to<std::uint64_t>();
    CosetUnion ra = coset_refine(a, l64 / a.modulus(), class_limit);
    CosetUnion rb = coset_refine(*b, l64 / b->modulus(), class_limit);
    std::vector<std::uint64_t> out;
    if (op == CosetOp::Union)
        std::set_union(ra.classes().begin(), ra.classes().end(), rb.classes().begin(),
                       rb.classes().end(), std::back_inserter(out));
    else
        std::set_intersection(ra.classes().begin(), ra.classes().end(), rb.classes().begin(),
                              rb.classes().end(), std::back_inserter(out));
    return CosetUnion(l64, a.arity(), a.group_rank(), std::move(out));
}

inline bool coset_member(const CosetUnion& u, const std::vector<GroupElement>& g) {
    if (g.size() != u.arity())
        throw Error(Errc::ShapeMismatch, "tuple arity differs from union arity");
    if (!g.empty() && g.front().presentation().rank() != u.group_rank())
        throw Error(Errc::ShapeMismatch, "group rank differs from union rank");
    std::uint64_t code = 0;
    for (std::size_t i = g.size(); i-- > 0;) {
        IVec e = g[i].integer_exponents();
        for (std::size_t s = e.size(); s-- > 0;)
            code = code * u.modulus() + detail::mod_u64(e[s], u.modulus());
    }
    return std::binary_search(u.classes().begin(), u.classes().end(), code);
}

/// Parses the prefix constraint format:
///   (and E1 E2 ...) | (or E1 E2 ...) | (not E) |
///   (coset k=[1,-1] m=3 shift=[[0,0],[1,0]] polarity=in)
/// shift and polarity are optional.
inline CosetExpr parse_coset_expr(const std::string& text) {
    struct Parser {
        const std::string& s;
        std::size_t pos = 0;

        [[noreturn]] void fail(const std::string& what) {
            throw Error(Errc::ParseError,
                        "constraint '" + s + "': " + what + " at offset " + std::to_string(pos));
        }
        void ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            ws();
            if (pos < s.size() && s[pos] == c) { ++pos; return true; }
            return false;
        }
        std::string word() {
            ws();
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                      s[pos] == '-' || s[pos] == '_' || s[pos] == '='))
                ++pos;
            if (pos == start) fail("expected a word");
            return s.substr(start, pos - start);
        }
        Int integer() {
            ws();
            std::size_t start = pos;
            if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail("expected an integer");
            return Int(s.substr(start, pos - start));
        }
        IVec ivec() {
            if (!eat('[')) fail("expected '['");
            IVec out;
            ws();
            if (eat(']')) return out;
            while (true) {
                out.push_back(integer());
                if (eat(']')) return out;
                if (!eat(',')) fail("expected ',' or ']'");
            }
        }
        IMat imat() {
            if (!eat('[')) fail("expected '['");
            IMat out;
            ws();
            if (eat(']')) return out;
            while (true) {
                out.push_back(ivec());
                if (eat(']')) return out;
                if (!eat(',')) fail("expected ',' or ']'");
            }
        }

        CosetExpr expr() {
            if (!eat('(')) fail("expected '('");
            ws();
            std::size_t head_start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string head = s.substr(head_start, pos - head_start);
            if (head == "and" || head == "or") {
                std::vector<CosetExpr> children;
                ws();
                while (!eat(')')) {
                    children.push_back(expr());
                    ws();
                }
                if (children.empty()) fail("empty combination");
                return CosetExpr::make(
                    head == "and" ? CosetExpr::Kind::And : CosetExpr::Kind::Or,
                    std::move(children));
            }
            if (head == "not") {
                CosetExpr child = expr();
                if (!eat(')')) fail("expected ')'");
                return CosetExpr::make(CosetExpr::Kind::Not, {std::move(child)});
            }
            if (head == "coset") {
                CosetConstraint c;
                bool have_k = false, have_m = false;
                while (!eat(')')) {
                    ws();
                    if (s.compare(pos, 2, "k=") == 0) {
                        pos += 2;
                        c.k = ivec();
                        have_k = true;
                    } else if (s.compare(pos, 2, "m=") == 0) {
                        pos += 2;
                        c.m = integer();
                        have_m = true;
                    } else if (s.compare(pos, 6, "shift=") == 0) {
                        pos += 6;
                        c.shift = imat();
                    } else if (s.compare(pos, 9, "polarity=") == 0) {
                        pos += 9;
                        std::string p = word();
                        if (p == "in") c.negated = false;
                        else if (p == "not-in") c.negated = true;
                        else fail("polarity must be 'in' or 'not-in'");
                    } else {
                        fail("unknown coset attribute");
                    }
                }
                if (!have_k || !have_m) fail("coset atom needs k=[...] and m=<int>");
                return CosetExpr::make_atom(std::move(c));
            }
            fail("expected and/or/not/coset");
        }
    };
    Parser p{text};
    CosetExpr e = p.expr();
    p.ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

}  // namespace mgl
