#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mgl/group.hpp"

namespace mgl {

/// Mann equation a_1 x_1 + ... + a_n x_n = c over a rational, non-divisible
/// group, searched exhaustively over exponent boxes [-B, B]^rank.
struct MannProblem {
    std::vector<Rat> coefficients;
    GroupPresentation group;
    Rat rhs = Rat(1);
    long bound = 1;

    void validate() const {
        if (coefficients.empty())
            throw Error(Errc::InvalidProblem, "Mann equation needs at least one variable");
        for (const auto& a : coefficients)
            if (a == 0) throw Error(Errc::InvalidProblem, "Mann coefficients must be nonzero");
        if (bound < 1) throw Error(Errc::InvalidProblem, "exponent bound must be >= 1");
        if (!(group.mode().kind() == FieldKind::Rational))
            throw Error(Errc::ModeMismatch, "Mann search requires a RATIONAL-mode group");
        if (group.divisible())
            throw Error(Errc::InvalidProblem, "Mann search requires a non-divisible group");
        if (rhs == 0 && coefficients.size() == 1)
            throw Error(Errc::InvalidProblem, "a*x = 0 has no solution in a torsion-free group");
    }
};

struct MannSolution {
    std::vector<GroupElement> x;
    std::vector<Rat> values;
    bool non_degenerate = true;
    std::optional<std::vector<std::size_t>> vanishing_subset;  // 0-based, set when degenerate
};

struct MannSolutionSet {
    std::vector<MannSolution> solutions;
    long bound_used = 0;

    std::size_t non_degenerate_count() const {
        std::size_t c = 0;
        for (const auto& s : solutions)
            if (s.non_degenerate) ++c;
        return c;
    }
};

/// Checks all 2^n - 1 nonempty subsets; returns the first vanishing subset in
/// ascending bitmask order as the certificate, if any.
inline std::pair<bool, std::optional<std::vector<std::size_t>>> nondegeneracy_check(
    const std::vector<Rat>& coefficients, const std::vector<Rat>& values) {
    if (coefficients.size() != values.size())
        throw Error(Errc::ArityMismatch, "coefficient and solution lengths differ");
    std::size_t n = coefficients.size();
    if (n > 62) throw Error(Errc::SearchSpaceTooLarge, "too many variables for subset scan");
    std::vector<Rat> terms(n);
    for (std::size_t i = 0; i < n; ++i) terms[i] = coefficients[i] * values[i];
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        Rat acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i)) acc += terms[i];
        if (acc == 0) {
            std::vector<std::size_t> subset;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::uint64_t(1) << i)) subset.push_back(i);
            return {false, subset};
        }
    }
    return {true, std::nullopt};
}

inline std::pair<bool, std::optional<std::vector<std::size_t>>> nondegeneracy_check(
    const std::vector<Rat>& coefficients, const std::vector<GroupElement>& x) {
    std::vector<Rat> values;
    values.reserve(x.size());
    for (const auto& g : x) values.push_back(eval_rational(g));
    return nondegeneracy_check(coefficients, values);
}

namespace detail {

/// All group values with exponents in [-B, B]^rank, in exponent-lex order,
/// plus the inverse value -> exponent map.
struct ValueTable {
    std::vector<IVec> exponents;
    std::vector<Rat> values;
    std::map<Rat, std::size_t> index;

    static ValueTable build(const GroupPresentation& pres, long bound) {
        ValueTable t;
        std::size_t r = pres.rank();
        IVec e(r, Int(-bound));
        while (true) {
            Rat v = 1;
            for (std::size_t s = 0; s < r; ++s) v *= rat_pow(pres.basis()[s], e[s]);
            t.index.emplace(v, t.values.size());
            t.exponents.push_back(e);
            t.values.push_back(std::move(v));
            if (r == 0) return t;
            std::size_t s = r;
            while (true) {
                if (s-- == 0) return t;
                if (e[s] < bound) { ++e[s]; break; }
                e[s] = -bound;
            }
        }
    }
};

}  // namespace detail

/// Exhaustive enumeration of solutions with every exponent in [-B, B]:
/// the first n-1 coordinates run over the exponent box in lexicographic
/// order and the last coordinate is solved exactly and looked up, so the
/// output order is deterministic lex order of exponent tuples. Every found
/// tuple is re-verified and flagged with its non-degeneracy certificate.
inline MannSolutionSet enumerate_solutions(const MannProblem& p,
                                           std::uint64_t search_limit = 100000000) {
    p.validate();
    std::size_t n = p.coefficients.size();
    std::size_t r = p.group.rank();

    double box = std::pow(2.0 * static_cast<double>(p.bound) + 1.0, static_cast<double>(r));
    double effective = std::pow(box, static_cast<double>(n >= 1 ? n - 1 : 0));
    if (box > static_cast<double>(search_limit) || effective > static_cast<double>(search_limit))
        throw Error(Errc::SearchSpaceTooLarge,
                    "exponent search space exceeds the configured limit");

    detail::ValueTable table = detail::ValueTable::build(p.group, p.bound);
    MannSolutionSet out;
    out.bound_used = p.bound;

    std::vector<std::size_t> pick(n - 1, 0);
    const Rat& an = p.coefficients[n - 1];
    while (true) {
        Rat partial = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            partial += p.coefficients[i] * table.values[pick[i]];
        Rat last = (p.rhs - partial) / an;
        auto it = table.index.find(last);
        if (it != table.index.end()) {
            MannSolution sol;
            sol.values.reserve(n);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                sol.values.push_back(table.values[pick[i]]);
                sol.x.push_back(
                    GroupElement::from_integer_exponents(p.group, table.exponents[pick[i]]));
            }
            sol.values.push_back(table.values[it->second]);
            sol.x.push_back(
                GroupElement::from_integer_exponents(p.group, table.exponents[it->second]));

            Rat check = 0;
            for (std::size_t i = 0; i < n; ++i) check += p.coefficients[i] * sol.values[i];
            if (check != p.rhs)
                throw Error(Errc::InvalidProblem, "internal solution verification failed");

            auto [nd, cert] = nondegeneracy_check(p.coefficients, sol.values);
            sol.non_degenerate = nd;
            sol.vanishing_subset = cert;
            out.solutions.push_back(std::move(sol));
        }
        if (n == 1) break;
        std::size_t i = n - 1;
        bool done = false;
        while (i-- > 0) {
            if (++pick[i] < table.values.size()) break;
            pick[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return out;
}

struct StabilizationReport {
    std::vector<std::pair<long, std::size_t>> counts;  // (bound, non-degenerate count)
    bool stable = false;
};

/// Non-degenerate solution counts at each bound; "stable" iff the last two
/// counts agree (empirical finiteness evidence, not a proof).
inline StabilizationReport stabilization_report(const MannProblem& p,
                                                const std::vector<long>& bounds,
                                                std::uint64_t search_limit = 100000000) {
    if (bounds.empty()) throw Error(Errc::InvalidProblem, "stabilization needs bounds");
    for (std::size_t i = 1; i < bounds.size(); ++i)
        if (bounds[i] <= bounds[i - 1])
            throw Error(Errc::InvalidProblem, "stabilization bounds must be ascending");
    StabilizationReport rep;
    for (long b : bounds) {
        MannProblem q = p;
        q.bound = b;
        rep.counts.emplace_back(b, enumerate_solutions(q, search_limit).non_degenerate_count());
    }
    rep.stable = rep.counts.size() >= 2
                     ? rep.counts[rep.counts.size() - 1].second ==
                           rep.counts[rep.counts.size() - 2].second
                     : true;
    return rep;
}

}  // namespace mgl
