#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mgl/mann.hpp"
#include "mgl/torus.hpp"

namespace mgl {

/// Variety kinds with exactly computable fiber dimensions: finite point sets,
/// linear systems on the values, and shifted binomial (torus) varieties.
class VarietySpec {
public:
    enum class Kind { Points, Linear, Binomial };

    static VarietySpec points(std::size_t n, std::vector<std::vector<Rat>> pts) {
        VarietySpec w;
        w.kind_ = Kind::Points;
        w.n_ = n;
        for (const auto& p : pts) {
            if (p.size() != n)
                throw Error(Errc::ArityMismatch, "point arity differs from ambient arity");
            for (const auto& v : p)
                if (v <= 0)
                    throw Error(Errc::NonpositiveInput, "variety points must be positive");
        }
        w.points_ = std::move(pts);
        return w;
    }

    /// Linear system sum_j A[i][j] x_j = c[i]; rows are canonicalized to RREF
    /// and an inconsistent system is flagged empty.
    static VarietySpec linear(std::size_t n, QMat a, QVec c) {
        if (a.size() != c.size())
            throw Error(Errc::ShapeMismatch, "matrix and constant column differ in height");
        for (const auto& row : a)
            if (row.size() != n)
                throw Error(Errc::ArityMismatch, "linear row length differs from ambient arity");
        VarietySpec w;
        w.kind_ = Kind::Linear;
        w.n_ = n;

        QMat aug = a;
        for (std::size_t i = 0; i < a.size(); ++i) aug[i].push_back(c[i]);
        std::size_t rows = aug.size(), rank = 0;
        for (std::size_t col = 0; col < n && rank < rows; ++col) {
            std::size_t sel = rows;
            for (std::size_t i = rank; i < rows; ++i)
                if (aug[i][col] != 0) { sel = i; break; }
            if (sel == rows) continue;
            std::swap(aug[rank], aug[sel]);
            Rat piv = aug[rank][col];
            for (auto& x : aug[rank]) x /= piv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == rank || aug[i][col] == 0) continue;
                Rat f = aug[i][col];
                for (std::size_t j = col; j <= n; ++j) aug[i][j] -= f * aug[rank][j];
            }
            w.pivot_cols_.push_back(col);
            ++rank;
        }
        for (std::size_t i = rank; i < rows; ++i)
            if (aug[i][n] != 0) w.empty_ = true;
        for (std::size_t i = 0; i < rank; ++i) {
            QVec row(aug[i].begin(), aug[i].begin() + static_cast<std::ptrdiff_t>(n));
            w.a_.push_back(std::move(row));
            w.c_.push_back(aug[i][n]);
        }
        return w;
    }

    static VarietySpec binomial(TorusSpec torus, std::vector<GroupElement> shift) {
        if (torus.params() != 0)
            throw Error(Errc::ArityMismatch, "binomial varieties use parameter-free tori");
        if (shift.size() != torus.vars())
            throw Error(Errc::ArityMismatch, "shift arity differs from torus arity");
        VarietySpec w;
        w.kind_ = Kind::Binomial;
        w.n_ = torus.vars();
        w.torus_ = std::move(torus);
        w.shift_ = std::move(shift);
        return w;
    }

    Kind kind() const { return kind_; }
    std::size_t ambient() const { return n_; }
    const std::vector<std::vector<Rat>>& point_list() const { return points_; }
    const QMat& matrix() const { return a_; }
    const QVec& constants() const { return c_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }
    bool certainly_empty() const { return empty_; }
    const TorusSpec& torus() const { return *torus_; }
    const std::vector<GroupElement>& shift() const { return shift_; }

    /// Dimension of the solution set (as a real variety).
    std::size_t dim() const {
        switch (kind_) {
            case Kind::Points: return 0;
            case Kind::Linear: return empty_ ? 0 : n_ - a_.size();
            case Kind::Binomial: return torus_dim(*torus_);
        }
        return 0;
    }

    /// Dimension of the fiber through one of its points after pinning the
    /// coordinates in `fixed`.
    std::size_t fiber_dim(const std::vector<std::size_t>& fixed) const {
        switch (kind_) {
            case Kind::Points: return 0;
            case Kind::Linear: {
                QMat ext = a_;
                for (auto i : fixed) {
                    QVec unit(n_, Rat(0));
                    unit.at(i) = 1;
                    ext.push_back(std::move(unit));
                }
                return n_ - q_rank(ext);
            }
            case Kind::Binomial: return torus_fiber_dim(*torus_, fixed);
        }
        return 0;
    }

private:
    Kind kind_ = Kind::Points;
    std::size_t n_ = 0;
    std::vector<std::vector<Rat>> points_;
    QMat a_;
    QVec c_;
    std::vector<std::size_t> pivot_cols_;
    bool empty_ = false;
    std::optional<TorusSpec> torus_;
    std::vector<GroupElement> shift_;
};

namespace detail {

inline bool variety_holds_on_values(const VarietySpec& w, const std::vector<Rat>& values) {
    switch (w.kind()) {
        case VarietySpec::Kind::Points:
            for (const auto& p : w.point_list())
                if (p == values) return true;
            return false;
        case VarietySpec::Kind::Linear: {
            if (w.certainly_empty()) return false;
            for (std::size_t i = 0; i < w.matrix().size(); ++i) {
                Rat acc = 0;
                for (std::size_t j = 0; j < values.size(); ++j)
                    acc += w.matrix()[i][j] * values[j];
                if (acc != w.constants()[i]) return false;
            }
            return true;
        }
        case VarietySpec::Kind::Binomial:
            throw Error(Errc::UnsupportedVariety, "value test on a binomial variety");
    }
    return false;
}

inline bool binomial_contains(const VarietySpec& w, const std::vector<GroupElement>& x) {
    std::vector<GroupElement> shifted;
    shifted.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        shifted.push_back(element_mul(x[i], element_inv(w.shift()[i])));
    return torus_contains(w.torus(), shifted);
}

}  // namespace detail

/// All group points of W with every exponent in [-B, B]. Linear varieties are
/// enumerated over their free columns only (pivot values are solved exactly
/// and looked up), so the guarded work is table^(free) rather than the
/// nominal full box.
inline std::vector<std::vector<GroupElement>> enumerate_group_points(
    const VarietySpec& w, const GroupPresentation& pres, long bound,
    std::uint64_t search_limit = 100000000) {
    std::size_t n = w.ambient();
    std::size_t r = pres.rank();
    std::vector<std::vector<GroupElement>> out;

    if (w.kind() == VarietySpec::Kind::Points) {
        for (const auto& p : w.point_list()) {
            std::vector<GroupElement> tup;
            bool ok = true;
            for (const auto& v : p) {
                auto g = element_from_rational(pres, v);
                if (!g) { ok = false; break; }
                for (const auto& e : g->integer_exponents())
                    if (e > bound || e < -bound) { ok = false; break; }
                if (!ok) break;
                tup.push_back(std::move(*g));
            }
            if (ok) out.push_back(std::move(tup));
        }
        return out;
    }

    detail::ValueTable table = detail::ValueTable::build(pres, bound);
    double tbl = static_cast<double>(table.values.size());

    if (w.kind() == VarietySpec::Kind::Linear) {
        if (w.certainly_empty()) return out;
        std::vector<std::size_t> free_cols;
        {
            std::vector<bool> is_pivot(n, false);
            for (auto c : w.pivot_cols()) is_pivot[c] = true;
            for (std::size_t j = 0; j < n; ++j)
                if (!is_pivot[j]) free_cols.push_back(j);
        }
        if (std::pow(tbl, static_cast<double>(free_cols.size())) >
            static_cast<double>(search_limit))
            throw Error(Errc::SearchSpaceTooLarge,
                        "free-column search space exceeds the configured limit");

        std::vector<std::size_t> pick(free_cols.size(), 0);
        while (true) {
            std::vector<Rat> values(n, Rat(0));
            for (std::size_t f = 0; f < free_cols.size(); ++f)
                values[free_cols[f]] = table.values[pick[f]];
            bool ok = true;
            std::vector<std::size_t> pivot_idx(w.pivot_cols().size());
            for (std::size_t i = 0; i < w.pivot_cols().size() && ok; ++i) {
                Rat v = w.constants()[i];
                for (auto f : free_cols) v -= w.matrix()[i][f] * values[f];
                auto it = table.index.find(v);
                if (it == table.index.end()) ok = false;
                else {
                    values[w.pivot_cols()[i]] = v;
                    pivot_idx[i] = it->second;
                }
            }
            if (ok) {
                std::vector<GroupElement> tup;
                tup.reserve(n);
                std::size_t fi = 0, pi = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (fi < free_cols.size() && free_cols[fi] == j)
                        tup.push_back(GroupElement::from_integer_exponents(
                            pres, table.exponents[pick[fi++]]));
                    else
                        tup.push_back(GroupElement::from_integer_exponents(
                            pres, table.exponents[pivot_idx[pi++]]));
                }
                out.push_back(std::move(tup));
            }
            if (free_cols.empty()) break;
            std::size_t i = free_cols.size();
            bool done = false;
            while (true) {
                if (i-- == 0) { done = true; break; }
                if (++pick[i] < table.values.size()) break;
                pick[i] = 0;
            }
            if (done) break;
        }
        return out;
    }

    // Binomial: full box enumeration with the nominal guard.
    if (std::pow(tbl, static_cast<double>(n)) > static_cast<double>(search_limit))
        throw Error(Errc::SearchSpaceTooLarge, "box search space exceeds the configured limit");
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        std::vector<GroupElement> tup;
        tup.reserve(n);
        for (std::size_t j = 0; j < n; ++j)
            tup.push_back(GroupElement::from_integer_exponents(pres, table.exponents[pick[j]]));
        if (detail::binomial_contains(w, tup)) out.push_back(std::move(tup));
        if (n == 0) break;
        std::size_t i = n;
        bool done = false;
        while (true) {
            if (i-- == 0) { done = true; break; }
            if (++pick[i] < table.values.size()) break;
            pick[i] = 0;
        }
        if (done) break;
    }
    (void)r;
    return out;
}

struct SpecialWitness {
    std::vector<Rat> point;
    std::vector<std::size_t> projection;  // fixed coordinate set, 0-based
    std::size_t dim_w_fiber = 0;
    std::size_t dim_l_fiber = 0;
    std::size_t threshold = 0;  // n - l; specialness requires strict <
};

struct SpecialVerdict {
    bool special = true;
    std::vector<SpecialWitness> witnesses;
    std::optional<std::string> note;
};

/// Definition-level specialness check of the pair (W, L) on explicit candidate
/// points or on all group points of W found by bounded search. Projections
/// range over all coordinate subsets of size 0..n-1.
inline SpecialVerdict special_pair_check(const VarietySpec& w, const TorusSpec& l,
                                         const GroupPresentation& pres,
                                         const std::vector<std::vector<Rat>>* points,
                                         std::optional<long> search_bound,
                                         std::uint64_t search_limit = 100000000) {
    if (w.ambient() != l.vars() || l.params() != 0)
        throw Error(Errc::ArityMismatch, "variety and torus ambient arities differ");
    if (!(pres.mode() == l.mode()))
        throw Error(Errc::ModeMismatch, "torus mode differs from presentation mode");
    std::size_t n = w.ambient();
    SpecialVerdict verdict;
    if (n == 0) {
        verdict.note = "ambient arity 0 is special by definition";
        return verdict;
    }
    if (n > 20) throw Error(Errc::SearchSpaceTooLarge, "too many coordinates for subset scan");

    std::vector<std::vector<GroupElement>> candidates;
    if (points) {
        for (const auto& p : *points) {
            if (p.size() != n)
                throw Error(Errc::ArityMismatch, "candidate point arity differs from ambient");
            std::vector<GroupElement> tup;
            for (const auto& v : p) {
                auto g = element_from_rational(pres, v);
                if (!g)
                    throw Error(Errc::NotInGroup,
                                "candidate coordinate " + rat_to_string(v) +
                                    " is not in the group lattice");
                tup.push_back(std::move(*g));
            }
            candidates.push_back(std::move(tup));
        }
    } else if (search_bound) {
        candidates = enumerate_group_points(w, pres, *search_bound, search_limit);
    } else {
        throw Error(Errc::NoCandidates, "no candidate points and no search bound given");
    }

    std::size_t checked = 0;
    for (const auto& y : candidates) {
        if (!torus_contains(l, y)) continue;
        if (w.kind() != VarietySpec::Kind::Binomial) {
            std::vector<Rat> values;
            values.reserve(n);
            for (const auto& g : y) values.push_back(eval_rational(g));
            if (!detail::variety_holds_on_values(w, values)) continue;
        } else if (!detail::binomial_contains(w, y)) {
            continue;
        }
        ++checked;
        std::vector<Rat> point_values;
        for (const auto& g : y) point_values.push_back(eval_rational(g));
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            std::vector<std::size_t> fixed;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::uint64_t(1) << i)) fixed.push_back(i);
            if (fixed.size() == n) continue;  // l = n makes the bound unsatisfiable
            std::size_t dw = w.fiber_dim(fixed);
            std::size_t dl = torus_fiber_dim(l, fixed);
            std::size_t threshold = n - fixed.size();
            if (dw + dl >= threshold) {
                verdict.special = false;
                verdict.witnesses.push_back({point_values, fixed, dw, dl, threshold});
            }
        }
    }
    if (checked == 0) {
        verdict.note = "no common group points found; special vacuously";
    }
    return verdict;
}

/// Cover item: a group shift together with a rational torus, both canonical.
/// The integer character rows of the torus are kept alongside for exponent
/// congruence tests and axiom emission.
struct CoverItem {
    std::vector<GroupElement> g;
    TorusSpec torus;
    IMat char_rows;
    std::string provenance;
};

struct MLCover {
    std::vector<CoverItem> items;
};

/// Extracts integer character rows from a canonical rational torus.
inline IMat torus_integer_rows(const TorusSpec& t) {
    IMat rows;
    for (const auto& row : t.rows()) {
        IVec r;
        r.reserve(row.size());
        for (const auto& x : row) {
            if (!x.is_integer_constant())
                throw Error(Errc::NonRationalTorus,
                            "torus row is not integral: " + kscalar_to_string(x));
            r.push_back(rat_num(x.rational_value()));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace detail {

// Exponent-level membership of x in g * L, both integral over rank r.
inline bool coset_contains_exponents(const IMat& char_rows, const IMat& g_exps,
                                     const IMat& x_exps, std::size_t r) {
    for (const auto& k : char_rows) {
        for (std::size_t s = 0; s < r; ++s) {
            Int acc = 0;
            for (std::size_t j = 0; j < k.size(); ++j)
                acc += k[j] * (x_exps[j][s] - g_exps[j][s]);
            if (acc != 0) return false;
        }
    }
    return true;
}

inline IMat element_exponent_matrix(const std::vector<GroupElement>& g) {
    IMat out;
    out.reserve(g.size());
    for (const auto& e : g) out.push_back(e.integer_exponents());
    return out;
}

// Canonical coset representative: reduce the stacked exponent vector of g by
// the integer solution lattice of the character rows (trailing coordinates
// normalized first).
inline std::vector<GroupElement> reduce_item_shift(const std::vector<GroupElement>& g,
                                                   const IMat& char_rows,
                                                   const GroupPresentation& pres) {
    std::size_t n = g.size(), r = pres.rank();
    if (n == 0 || r == 0) return g;
    IMat constraints;
    for (const auto& k : char_rows)
        for (std::size_t s = 0; s < r; ++s) {
            IVec row(n * r, Int(0));
            for (std::size_t j = 0; j < n; ++j) row[j * r + s] = k[j];
            constraints.push_back(std::move(row));
        }
    IMat lattice = right_kernel_z(constraints, n * r);
    IVec v(n * r);
    IMat exps = element_exponent_matrix(g);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t s = 0; s < r; ++s) v[j * r + s] = exps[j][s];
    IVec reduced = reduce_mod_lattice_trailing(std::move(v), lattice);
    std::vector<GroupElement> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        IVec e(reduced.begin() + static_cast<std::ptrdiff_t>(j * r),
               reduced.begin() + static_cast<std::ptrdiff_t>((j + 1) * r));
        out.push_back(GroupElement::from_integer_exponents(pres, e));
    }
    return out;
}

inline CoverItem make_item(const std::vector<GroupElement>& g, const IMat& raw_rows,
                           const GroupPresentation& pres, std::string provenance) {
    std::size_t n = g.size();
    KMat krows;
    for (const auto& row : raw_rows) {
        KVec kr;
        kr.reserve(n);
        for (const auto& x : row) kr.push_back(KScalar::from_rational(pres.mode(), Rat(x)));
        krows.push_back(std::move(kr));
    }
    TorusSpec torus = TorusSpec::make(pres.mode(), 0, n, krows);
    IMat canon_rows = torus_integer_rows(torus);
    CoverItem item{reduce_item_shift(g, canon_rows, pres), std::move(torus),
                   std::move(canon_rows), std::move(provenance)};
    return item;
}

inline int compare_imat(const IMat& a, const IMat& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return a[i].size() < b[i].size() ? -1 : 1;
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            if (a[i][j] != b[i][j]) return a[i][j] < b[i][j] ? -1 : 1;
        }
    }
    return 0;
}

inline void sort_and_dedupe(std::vector<CoverItem>& items) {
    auto key_less = [](const CoverItem& x, const CoverItem& y) {
        int c = compare_imat(x.char_rows, y.char_rows);
        if (c != 0) return c < 0;
        return compare_imat(element_exponent_matrix(x.g), element_exponent_matrix(y.g)) < 0;
    };
    std::sort(items.begin(), items.end(), key_less);
    items.erase(std::unique(items.begin(), items.end(),
                            [](const CoverItem& x, const CoverItem& y) {
                                return compare_imat(x.char_rows, y.char_rows) == 0 &&
                                       compare_imat(element_exponent_matrix(x.g),
                                                    element_exponent_matrix(y.g)) == 0;
                            }),
                items.end());
}

// Partitions of `support` into an optional constant block plus zero blocks of
// size >= 2, as label vectors (0 = constant block, i >= 1 = zero block i).
inline std::vector<std::vector<std::size_t>> block_partitions(std::size_t count) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> labels(count, 0);
    auto rec = [&](auto&& self, std::size_t idx, std::size_t max_label) -> void {
        if (idx == count) {
            std::vector<std::size_t> sizes(max_label + 1, 0);
            for (auto l : labels) ++sizes[l];
            for (std::size_t b = 1; b <= max_label; ++b)
                if (sizes[b] < 2) return;
            out.push_back(labels);
            return;
        }
        for (std::size_t l = 0; l <= max_label + 1; ++l) {
            labels[idx] = l;
            self(self, idx + 1, std::max(max_label, l));
        }
        labels[idx] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace detail

/// Mordell-Lang cover of a linear variety over a rational group: per
/// equation, every decomposition into one constant block plus minimal
/// vanishing blocks is enumerated; constant blocks are solved by bounded
/// non-degenerate Mann search at bound B, vanishing blocks by the pivot
/// quotient equation at bound 2B (ratios of box elements live in the doubled
/// box). Items from multiple equations are intersected exactly on the
/// exponent lattice. Every item torus is a rational torus.
inline MLCover compute_ml_cover(const VarietySpec& w, const GroupPresentation& pres, long bound,
                                std::uint64_t search_limit = 100000000) {
    if (w.kind() != VarietySpec::Kind::Linear)
        throw Error(Errc::UnsupportedVariety, "covers are computed for LINEAR varieties");
    if (!(pres.mode().kind() == FieldKind::Rational) || pres.divisible())
        throw Error(Errc::InvalidProblem, "covers require a rational, non-divisible group");
    MLCover cover;
    if (w.certainly_empty()) return cover;
    std::size_t n = w.ambient();
    std::size_t r = pres.rank();

    // Start from the trivial full item and refine equation by equation.
    std::vector<CoverItem> items;
    items.push_back(detail::make_item(
        std::vector<GroupElement>(n, GroupElement::identity(pres)), IMat{}, pres, "full"));

    for (std::size_t eq = 0; eq < w.matrix().size(); ++eq) {
        const QVec& row = w.matrix()[eq];
        const Rat& rhs = w.constants()[eq];
        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < n; ++j)
            if (row[j] != 0) support.push_back(j);

        std::vector<CoverItem> eq_items;
        for (const auto& labels : detail::block_partitions(support.size())) {
            std::size_t max_label = 0;
            for (auto l : labels) max_label = std::max(max_label, l);
            std::vector<std::vector<std::size_t>> blocks(max_label + 1);
            for (std::size_t i = 0; i < labels.size(); ++i)
                blocks[labels[i]].push_back(support[i]);
            const std::vector<std::size_t>& s0 = blocks[0];
            if ((rhs == 0) != s0.empty()) continue;

            // Per-block solution alternatives: assignments coordinate -> element.
            using Assignment = std::vector<std::pair<std::size_t, GroupElement>>;
            std::vector<std::vector<Assignment>> alternatives;
            bool dead = false;

            if (!s0.empty()) {
                MannProblem sub;
                sub.group = pres;
                sub.rhs = rhs;
                sub.bound = bound;
                for (auto j : s0) sub.coefficients.push_back(row[j]);
                MannSolutionSet sols = enumerate_solutions(sub, search_limit);
                std::vector<Assignment> alts;
                for (const auto& s : sols.solutions) {
                    if (!s.non_degenerate) continue;
                    Assignment a;
                    for (std::size_t i = 0; i < s0.size(); ++i) a.emplace_back(s0[i], s.x[i]);
                    alts.push_back(std::move(a));
                }
                if (alts.empty()) dead = true;
                alternatives.push_back(std::move(alts));
            }
            for (std::size_t b = 1; b <= max_label && !dead; ++b) {
                const auto& blk = blocks[b];
                std::size_t pivot = blk.front();
                MannProblem sub;
                sub.group = pres;
                sub.rhs = -row[pivot];
                sub.bound = 2 * bound;
                for (std::size_t i = 1; i < blk.size(); ++i)
                    sub.coefficients.push_back(row[blk[i]]);
                MannSolutionSet sols = enumerate_solutions(sub, search_limit);
                std::vector<Assignment> alts;
                for (const auto& s : sols.solutions) {
                    if (!s.non_degenerate) continue;
                    Assignment a;
                    a.emplace_back(pivot, GroupElement::identity(pres));
                    for (std::size_t i = 1; i < blk.size(); ++i)
                        a.emplace_back(blk[i], s.x[i - 1]);
                    alts.push_back(std::move(a));
                }
                if (alts.empty()) dead = true;
                alternatives.push_back(std::move(alts));
            }
            if (dead) continue;

            // Character rows of this partition.
            IMat rows_p;
            for (auto j : s0) {
                IVec unit(n, Int(0));
                unit[j] = 1;
                rows_p.push_back(std::move(unit));
            }
            for (std::size_t b = 1; b <= max_label; ++b) {
                const auto& blk = blocks[b];
                for (std::size_t i = 1; i < blk.size(); ++i) {
                    IVec diff(n, Int(0));
                    diff[blk[i]] = 1;
                    diff[blk.front()] = -1;
                    rows_p.push_back(std::move(diff));
                }
            }

            std::string prov = "eq" + std::to_string(eq);
            std::vector<std::size_t> choice(alternatives.size(), 0);
            while (true) {
                std::vector<GroupElement> g(n, GroupElement::identity(pres));
                for (std::size_t b = 0; b < alternatives.size(); ++b)
                    for (const auto& [j, el] : alternatives[b][choice[b]]) g[j] = el;
                eq_items.push_back(detail::make_item(g, rows_p, pres, prov));
                std::size_t i = alternatives.size();
                bool done = alternatives.empty();
                while (!done) {
                    if (i-- == 0) { done = true; break; }
                    if (++choice[i] < alternatives[i].size()) break;
                    choice[i] = 0;
                }
                if (done) break;
                if (alternatives.empty()) break;
            }
        }
        detail::sort_and_dedupe(eq_items);

        // Intersect the running cover with this equation's items.
        std::vector<CoverItem> next;
        for (const auto& a : items) {
            IMat a_exps = detail::element_exponent_matrix(a.g);
            for (const auto& b : eq_items) {
                IMat b_exps = detail::element_exponent_matrix(b.g);
                IMat constraints;
                IVec targets;
                auto push_rows = [&](const IMat& char_rows, const IMat& g_exps) {
                    for (const auto& k : char_rows)
                        for (std::size_t s = 0; s < r; ++s) {
                            IVec c(n * r, Int(0));
                            Int t = 0;
                            for (std::size_t j = 0; j < n; ++j) {
                                c[j * r + s] = k[j];
                                t += k[j] * g_exps[j][s];
                            }
                            constraints.push_back(std::move(c));
                            targets.push_back(t);
                        }
                };
                push_rows(a.char_rows, a_exps);
                push_rows(b.char_rows, b_exps);
                auto h = solve_linear_z(constraints, targets, n * r);
                if (!h) continue;
                std::vector<GroupElement> g;
                g.reserve(n);
                for (std::size_t j = 0; j < n; ++j) {
                    IVec e(h->begin() + static_cast<std::ptrdiff_t>(j * r),
                           h->begin() + static_cast<std::ptrdiff_t>((j + 1) * r));
                    g.push_back(GroupElement::from_integer_exponents(pres, e));
                }
                IMat stacked = a.char_rows;
                stacked.insert(stacked.end(), b.char_rows.begin(), b.char_rows.end());
                std::string prov = a.provenance == "full" ? b.provenance
                                                          : a.provenance + "&" + b.provenance;
                next.push_back(detail::make_item(g, stacked, pres, std::move(prov)));
            }
        }
        detail::sort_and_dedupe(next);
        items = std::move(next);
    }
    cover.items = std::move(items);
    return cover;
}

struct VerifyResult {
    bool ok = true;
    std::vector<std::vector<Rat>> counterexamples;
};

/// Re-enumerates all group points of W with exponents in [-B, B] and checks
/// membership in some cover item by exact exponent congruence.
inline VerifyResult verify_cover(const MLCover& cover, const VarietySpec& w,
                                 const GroupPresentation& pres, long bound,
                                 std::uint64_t search_limit = 100000000) {
    VerifyResult res;
    std::size_t r = pres.rank();
    std::vector<IMat> item_exps;
    item_exps.reserve(cover.items.size());
    for (const auto& item : cover.items)
        item_exps.push_back(detail::element_exponent_matrix(item.g));

    for (const auto& x : enumerate_group_points(w, pres, bound, search_limit)) {
        IMat xe = detail::element_exponent_matrix(x);
        bool covered = false;
        for (std::size_t i = 0; i < cover.items.size() && !covered; ++i)
            covered = detail::coset_contains_exponents(cover.items[i].char_rows, item_exps[i],
                                                       xe, r);
        if (!covered) {
            res.ok = false;
            std::vector<Rat> values;
            for (const auto& g : x) values.push_back(eval_rational(g));
            res.counterexamples.push_back(std::move(values));
        }
    }
    return res;
}

/// Deterministic rendering of the Mordell-Lang axiom of (W, L):
///   special(W,L,x) -> (chi[k](x) = chi[k]((g)) & ...) | (...)
/// An empty cover renders the consequent "false".
inline std::string emit_ml_axiom(const MLCover& cover) {
    std::string out = "special(W,L,x) -> ";
    if (cover.items.empty()) return out + "false";
    std::vector<std::string> disjuncts;
    for (const auto& item : cover.items) {
        if (!is_q_torus(item.torus))
            throw Error(Errc::NonRationalTorus, "cover item torus is not a rational torus");
        IMat rows = torus_integer_rows(item.torus);
        std::string gamma = "(";
        for (std::size_t j = 0; j < item.g.size(); ++j) {
            if (j) gamma += ",";
            gamma += rat_to_string(eval_rational(item.g[j]));
        }
        gamma += ")";
        std::string conj;
        if (rows.empty()) {
            conj = "true";
        } else {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i) conj += " & ";
                std::string k = "chi[";
                for (std::size_t j = 0; j < rows[i].size(); ++j) {
                    if (j) k += ",";
                    k += rows[i][j].str();
                }
                k += "]";
                conj += k + "(x) = " + k + "(" + gamma + ")";
            }
        }
        disjuncts.push_back("(" + conj + ")");
    }
    for (std::size_t i = 0; i < disjuncts.size(); ++i) {
        if (i) out += " | ";
        out += disjuncts[i];
    }
    return out;
}

}  // namespace mgl
