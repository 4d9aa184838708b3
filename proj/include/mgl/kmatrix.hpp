#pragma once

#include <cstddef>
#include <vector>

#include "mgl/kscalar.hpp"

namespace mgl {

using KVec = std::vector<KScalar>;
using KMat = std::vector<KVec>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

inline void require_uniform_mode(const KMat& m, const FieldMode& mode) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (!(x.mode() == mode))
                throw Error(Errc::ModeMismatch, "matrix entries mix field modes");
}

namespace detail {

/// In-place reduced row echelon form over K; returns pivot columns.
/// Lexicographic pivoting: first nonzero row in the leftmost open column.
inline std::vector<std::size_t> rref_k(KMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) { sel = i; break; }
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        KScalar piv = inv(m[r][c]);
        for (std::size_t j = c; j < cols; ++j) m[r][j] = mul(m[r][j], piv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            KScalar f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = sub(m[i][j], mul(f, m[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r, KVec{});  // drop zero rows
    return pivots;
}

}  // namespace detail

/// Clears a vector to denominator-free, content-primitive entries: the result
/// spans the same K-line and is deterministic (positive rational clearing
/// factor, monic polynomial clearing factor).
inline KVec integer_primitive(const KVec& v) {
    if (v.empty()) return v;
    const FieldMode& mode = v.front().mode();
    if (mode.kind() == FieldKind::FormalTau) {
        Poly den_lcm(Rat(1));
        for (const auto& x : v)
            if (!x.is_zero()) den_lcm = poly_lcm(den_lcm, x.den());
        std::vector<Poly> nums;
        nums.reserve(v.size());
        Poly content;
        for (const auto& x : v) {
            Poly n = x.num() * den_lcm.divmod(x.den()).first;
            content = poly_gcd(content, n);
            nums.push_back(std::move(n));
        }
        if (content.degree() > 0)
            for (auto& n : nums) n = n.divmod(content).first;
        Rat scale(1);
        {
            Int dl = 1, ng = 0;
            for (const auto& n : nums)
                for (const auto& c : n.coeffs()) {
                    if (c == 0) continue;
                    dl = int_lcm(dl, rat_den(c));
                    ng = int_gcd(ng, rat_num(c));
                }
            if (ng < 0) ng = -ng;
            if (ng != 0) scale = Rat(dl, ng);
        }
        KVec out;
        out.reserve(v.size());
        bool flip = false, decided = false;
        for (auto& n : nums) {
            n = n.scaled(scale);
            if (!decided && !n.is_zero()) {
                decided = true;
                flip = n.leading() < 0;
            }
            out.push_back(KScalar::make(mode, flip ? -n : n, Poly(Rat(1))));
        }
        return out;
    }
    // Rational and AlgebraicTau: entries have denominator 1; clear coefficient
    // denominators and content, then fix the sign of the leading coefficient
    // of the first nonzero entry.
    Int dl = 1, ng = 0;
    for (const auto& x : v)
        for (const auto& c : x.num().coeffs()) {
            if (c == 0) continue;
            dl = int_lcm(dl, rat_den(c));
            ng = int_gcd(ng, rat_num(c));
        }
    if (ng < 0) ng = -ng;
    Rat scale = ng == 0 ? Rat(1) : Rat(dl, ng);
    bool flip = false, decided = false;
    KVec out;
    out.reserve(v.size());
    for (const auto& x : v) {
        Poly n = x.num().scaled(scale);
        if (!decided && !n.is_zero()) {
            decided = true;
            flip = n.leading() < 0;
        }
        out.push_back(KScalar::make(v.front().mode(), flip ? -n : n, Poly(Rat(1))));
    }
    return out;
}

/// Canonical echelon rows of the row space: RREF over K, each row cleared to
/// integer-primitive form. Equal row spaces yield identical output.
inline KMat canonical_row_space(const KMat& m) {
    KMat work = m;
    detail::rref_k(work);
    for (auto& row : work) row = integer_primitive(row);
    return work;
}

inline std::size_t matrix_rank_k(const KMat& m) {
    KMat work = m;
    return detail::rref_k(work).size();
}

/// Canonical right-kernel basis: from the RREF, one vector per free column
/// (ascending), cleared to integer-primitive form.
inline KMat matrix_kernel_k(const KMat& m, const FieldMode& mode, std::size_t cols) {
    KMat work = m;
    std::vector<std::size_t> pivots = detail::rref_k(work);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    KMat basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        KVec v(cols, KScalar::zero(mode));
        v[f] = KScalar::one(mode);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = neg(work[i][f]);
        basis.push_back(integer_primitive(v));
    }
    return basis;
}

/// Q-coordinates of a list of scalars sharing one mode. Rational mode: one
/// column. AlgebraicTau: coefficients over 1, t, ..., t^(deg-1). FormalTau:
/// all scalars are brought over one common monic denominator and the rows are
/// the numerator coefficient vectors, padded to a common degree; the Q-row
/// rank of the output equals the Q-linear dimension of the inputs.
inline QMat rational_coordinates(const std::vector<KScalar>& scalars) {
    if (scalars.empty()) return {};
    const FieldMode mode = scalars.front().mode();
    for (const auto& s : scalars)
        if (!(s.mode() == mode)) throw Error(Errc::ModeMismatch, "scalars mix field modes");

    QMat out;
    switch (mode.kind()) {
        case FieldKind::Rational: {
            for (const auto& s : scalars) out.push_back({s.rational_value()});
            break;
        }
        case FieldKind::AlgebraicTau: {
            std::size_t deg = static_cast<std::size_t>(mode.extension_degree());
            for (const auto& s : scalars) {
                QVec row(deg, Rat(0));
                for (std::size_t i = 0; i < deg; ++i) row[i] = s.num().coeff(i);
                out.push_back(std::move(row));
            }
            break;
        }
        case FieldKind::FormalTau: {
            Poly den_lcm(Rat(1));
            for (const auto& s : scalars)
                if (!s.is_zero()) den_lcm = poly_lcm(den_lcm, s.den());
            std::vector<Poly> nums;
            int maxdeg = 0;
            for (const auto& s : scalars) {
                Poly n = s.num() * den_lcm.divmod(s.den()).first;
                maxdeg = std::max(maxdeg, n.degree());
                nums.push_back(std::move(n));
            }
            std::size_t width = static_cast<std::size_t>(maxdeg + 1);
            for (const auto& n : nums) {
                QVec row(width, Rat(0));
                for (std::size_t i = 0; i < width; ++i) row[i] = n.coeff(i);
                out.push_back(std::move(row));
            }
            break;
        }
    }
    return out;
}

/// Exact rank of a matrix over Q.
inline std::size_t q_rank(QMat m) {
    std::size_t rank = 0;
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = rank; i < rows; ++i)
            if (m[i][c] != 0) { sel = i; break; }
        if (sel == rows) continue;
        std::swap(m[rank], m[sel]);
        Rat piv = m[rank][c];
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / piv;
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

/// Right-kernel basis over Q (rows), RREF-derived, one vector per free column.
inline QMat q_kernel(const QMat& m, std::size_t cols) {
    QMat work = m;
    std::vector<std::size_t> pivots;
    std::size_t rows = work.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (work[i][c] != 0) { sel = i; break; }
        if (sel == rows) continue;
        std::swap(work[r], work[sel]);
        Rat piv = work[r][c];
        for (std::size_t j = c; j < cols; ++j) work[r][j] /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || work[i][c] == 0) continue;
            Rat f = work[i][c];
            for (std::size_t j = c; j < cols; ++j) work[i][j] -= f * work[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    QMat basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -work[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace mgl
