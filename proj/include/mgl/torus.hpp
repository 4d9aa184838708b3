#pragma once

#include <cstddef>
#include <vector>

#include "mgl/group.hpp"

namespace mgl {

/// Basic K-torus given by its exponent matrix: each row (p_1,...,p_{m+n})
/// encodes the character equation x_1^{p_1} ... x_{m+n}^{p_{m+n}} = 1, with m
/// leading parameter columns and n variable columns. Rows are stored in
/// canonical echelon form (RREF over K, integer-primitive scaling), so equal
/// tori compare equal representationally.
class TorusSpec {
public:
    static TorusSpec make(const FieldMode& mode, std::size_t m, std::size_t n, const KMat& rows) {
        for (const auto& row : rows) {
            if (row.size() != m + n)
                throw Error(Errc::ArityMismatch, "torus row length differs from ambient arity");
            for (const auto& x : row)
                if (!(x.mode() == mode))
                    throw Error(Errc::ModeMismatch, "torus row mode differs from declared mode");
        }
        return TorusSpec(mode, m, n, canonical_row_space(rows));
    }

    static TorusSpec full(const FieldMode& mode, std::size_t n) {
        return TorusSpec(mode, 0, n, {});
    }

    const FieldMode& mode() const { return mode_; }
    std::size_t params() const { return m_; }
    std::size_t vars() const { return n_; }
    std::size_t ambient() const { return m_ + n_; }
    const KMat& rows() const { return rows_; }

    friend bool operator==(const TorusSpec& a, const TorusSpec& b) {
        return a.mode_ == b.mode_ && a.m_ == b.m_ && a.n_ == b.n_ && a.rows_ == b.rows_;
    }

private:
    TorusSpec(FieldMode mode, std::size_t m, std::size_t n, KMat rows)
        : mode_(std::move(mode)), m_(m), n_(n), rows_(std::move(rows)) {}

    FieldMode mode_;
    std::size_t m_;
    std::size_t n_;
    KMat rows_;
};

/// dim = n - rank of the variable-column submatrix.
inline std::size_t torus_dim(const TorusSpec& l) {
    KMat var;
    var.reserve(l.rows().size());
    for (const auto& row : l.rows())
        var.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(l.params()), row.end());
    return l.vars() - matrix_rank_k(var);
}

/// Fiber of a torus over a parameter point: constraints on the n variables
/// with per-row targets carried as exponent vectors in K^r. Inconsistent
/// systems are flagged empty explicitly.
struct TorusFiber {
    std::size_t n = 0;
    std::size_t group_rank = 0;
    KMat rows;  // k x n variable coefficients (echelon)
    KMat rhs;   // k x r exponent targets, aligned with rows
    bool empty = false;
    std::size_t dim = 0;
};

inline TorusFiber torus_fiber(const TorusSpec& l, const std::vector<GroupElement>& b) {
    if (b.size() != l.params())
        throw Error(Errc::ArityMismatch, "parameter tuple length differs from torus arity");
    const FieldMode& mode = l.mode();
    std::size_t r = b.empty() ? 0 : b.front().presentation().rank();
    for (const auto& g : b)
        if (!(g.presentation().mode() == mode))
            throw Error(Errc::ModeMismatch, "parameter mode differs from torus mode");

    TorusFiber f;
    f.n = l.vars();
    f.group_rank = r;

    KMat v;  // variable parts
    KMat t;  // targets: -(parameter part applied to b)
    for (const auto& row : l.rows()) {
        KVec var(row.begin() + static_cast<std::ptrdiff_t>(l.params()), row.end());
        KVec target(r, KScalar::zero(mode));
        for (std::size_t i = 0; i < l.params(); ++i)
            for (std::size_t s = 0; s < r; ++s)
                target[s] = sub(target[s], mul(row[i], b[i].exponents()[s]));
        v.push_back(std::move(var));
        t.push_back(std::move(target));
    }

    // Eliminate the variable part, carrying the targets along; a vanished row
    // with a nonzero target is an inconsistency (empty fiber).
    std::size_t rows_n = v.size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < f.n && rank < rows_n; ++c) {
        std::size_t sel = rows_n;
        for (std::size_t i = rank; i < rows_n; ++i)
            if (!v[i][c].is_zero()) { sel = i; break; }
        if (sel == rows_n) continue;
        std::swap(v[rank], v[sel]);
        std::swap(t[rank], t[sel]);
        KScalar piv = inv(v[rank][c]);
        for (auto& x : v[rank]) x = mul(x, piv);
        for (auto& x : t[rank]) x = mul(x, piv);
        for (std::size_t i = 0; i < rows_n; ++i) {
            if (i == rank || v[i][c].is_zero()) continue;
            KScalar fct = v[i][c];
            for (std::size_t j = 0; j < f.n; ++j) v[i][j] = sub(v[i][j], mul(fct, v[rank][j]));
            for (std::size_t s = 0; s < r; ++s) t[i][s] = sub(t[i][s], mul(fct, t[rank][s]));
        }
        ++rank;
    }
    for (std::size_t i = rank; i < rows_n; ++i)
        for (const auto& x : t[i])
            if (!x.is_zero()) f.empty = true;
    v.resize(rank, KVec{});
    t.resize(rank, KVec{});
    f.rows = std::move(v);
    f.rhs = std::move(t);
    f.dim = f.empty ? 0 : f.n - rank;
    return f;
}

/// Minimal K-torus over b containing a: rows form the canonical K-basis of
/// {(u, v) : u * E_b + v * E_a = 0}. Its dimension equals ldim_k(a over b).
inline TorusSpec minimal_torus(const std::vector<GroupElement>& b,
                               const std::vector<GroupElement>& a,
                               const GroupPresentation& pres) {
    detail::require_shared_presentation(b, pres);
    detail::require_shared_presentation(a, pres);
    const FieldMode& mode = pres.mode();
    std::size_t m = b.size(), n = a.size(), r = pres.rank();
    KMat constraints(r, KVec(m + n, KScalar::zero(mode)));
    for (std::size_t s = 0; s < r; ++s) {
        for (std::size_t i = 0; i < m; ++i) constraints[s][i] = b[i].exponents()[s];
        for (std::size_t j = 0; j < n; ++j) constraints[s][m + j] = a[j].exponents()[s];
    }
    KMat kernel = matrix_kernel_k(constraints, mode, m + n);
    return TorusSpec::make(mode, m, n, kernel);
}

/// Membership of a group tuple: every row character evaluates to the trivial
/// exponent vector.
inline bool torus_contains(const TorusSpec& l, const std::vector<GroupElement>& x) {
    if (x.size() != l.ambient())
        throw Error(Errc::ArityMismatch, "tuple length differs from torus ambient arity");
    std::size_t r = x.empty() ? 0 : x.front().presentation().rank();
    for (const auto& row : l.rows()) {
        for (std::size_t s = 0; s < r; ++s) {
            KScalar acc = KScalar::zero(l.mode());
            for (std::size_t j = 0; j < row.size(); ++j)
                acc = add(acc, mul(row[j], x[j].exponents()[s]));
            if (!acc.is_zero()) return false;
        }
    }
    return true;
}

/// Q-linear constraint rows equivalent (on rational vectors) to the K-linear
/// functionals given by `vectors`: each K-entry is expanded into its
/// Q-coordinates, one constraint row per coordinate.
inline QMat flatten_functionals(const KMat& vectors, std::size_t width) {
    QMat out;
    for (const auto& w : vectors) {
        QMat coords = rational_coordinates(w);
        if (coords.empty()) continue;
        std::size_t depth = coords.front().size();
        for (std::size_t d = 0; d < depth; ++d) {
            QVec row(width, Rat(0));
            bool nonzero = false;
            for (std::size_t j = 0; j < width; ++j) {
                row[j] = coords[j][d];
                if (row[j] != 0) nonzero = true;
            }
            if (nonzero) out.push_back(std::move(row));
        }
    }
    return out;
}

/// True iff the K-row space of the defining matrix has a rational basis,
/// decided by intersecting the row space with Q^N and comparing dimensions.
inline bool is_q_torus(const TorusSpec& l) {
    if (l.mode().kind() == FieldKind::Rational) return true;
    if (l.rows().empty()) return true;
    std::size_t width = l.ambient();
    KMat kernel = matrix_kernel_k(l.rows(), l.mode(), width);
    QMat constraints = flatten_functionals(kernel, width);
    std::size_t rational_dim = width - q_rank(constraints);
    return rational_dim == l.rows().size();
}

/// dim of the fiber of L (m = 0) through any of its points after pinning the
/// coordinates in `fixed`: the corank of the rows extended by unit rows.
inline std::size_t torus_fiber_dim(const TorusSpec& l, const std::vector<std::size_t>& fixed) {
    KMat ext = l.rows();
    for (auto i : fixed) {
        if (i >= l.ambient()) throw Error(Errc::ArityMismatch, "projection index out of range");
        KVec unit(l.ambient(), KScalar::zero(l.mode()));
        unit[i] = KScalar::one(l.mode());
        ext.push_back(std::move(unit));
    }
    return l.ambient() - matrix_rank_k(ext);
}

}  // namespace mgl
