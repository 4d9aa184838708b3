#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mgl/rational.hpp"

namespace mgl {

using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline IMat transpose(const IMat& a, std::size_t cols) {
    IMat t(cols, IVec(a.size(), Int(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return t;
}

/// Row Hermite normal form: pivots positive and strictly right of earlier
/// pivots, entries above each pivot reduced into [0, pivot), zero rows kept
/// at the bottom. Optionally accumulates the unimodular transform U with
/// U * input = output.
inline void row_hnf_in_place(IMat& a, IMat* u = nullptr) {
    std::size_t rows = a.size();
    if (rows == 0) return;
    std::size_t cols = a[0].size();
    if (u) {
        u->assign(rows, IVec(rows, Int(0)));
        for (std::size_t i = 0; i < rows; ++i) (*u)[i][i] = 1;
    }
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t j = 0; j < cols; ++j) a[dst][j] += f * a[src][j];
        if (u)
            for (std::size_t j = 0; j < rows; ++j) (*u)[dst][j] += f * (*u)[src][j];
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        if (u) std::swap((*u)[i], (*u)[j]);
    };
    auto negate_row = [&](std::size_t i) {
        for (auto& x : a[i]) x = -x;
        if (u)
            for (auto& x : (*u)[i]) x = -x;
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            std::size_t sel = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                if (sel == rows || boost::multiprecision::abs(a[i][c]) <
                                       boost::multiprecision::abs(a[sel][c]))
                    sel = i;
            }
            if (sel == rows) break;
            if (sel != r) swap_rows(r, sel);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                add_row(i, r, -floor_div(a[i][c], a[r][c]));
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0) negate_row(r);
        for (std::size_t i = 0; i < r; ++i)
            if (a[i][c] != 0) add_row(i, r, -floor_div(a[i][c], a[r][c]));
        ++r;
    }
}

struct Hnf {
    IMat rows;                       // nonzero HNF rows only
    std::vector<std::size_t> pivot_cols;
};

inline Hnf row_hnf(IMat a) {
    row_hnf_in_place(a);
    Hnf h;
    for (auto& row : a) {
        std::size_t p = row.size();
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) { p = j; break; }
        if (p == row.size()) continue;
        h.pivot_cols.push_back(p);
        h.rows.push_back(std::move(row));
    }
    return h;
}

/// Basis rows of the right kernel {v : A v = 0}. The result is a saturated
/// lattice, returned in HNF.
inline IMat right_kernel_z(const IMat& a, std::size_t cols) {
    IMat t = transpose(a, cols);
    IMat u;
    row_hnf_in_place(t, &u);
    IMat kernel;
    for (std::size_t i = 0; i < t.size(); ++i) {
        bool zero = true;
        for (const auto& x : t[i])
            if (x != 0) { zero = false; break; }
        if (zero) kernel.push_back(u[i]);
    }
    IMat canon;
    for (auto& row : row_hnf(std::move(kernel)).rows) canon.push_back(std::move(row));
    return canon;
}

/// HNF basis of the saturation (Q-span intersected with Z^cols) of the
/// lattice spanned by the generator rows.
inline IMat lattice_saturation(const IMat& gens, std::size_t cols) {
    IMat c = right_kernel_z(gens, cols);
    return right_kernel_z(c, cols);
}

inline bool lattice_member(const Hnf& h, IVec v) {
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        std::size_t p = h.pivot_cols[i];
        if (v[p] == 0) continue;
        if (v[p] % h.rows[i][p] != 0) return false;
        Int q = v[p] / h.rows[i][p];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * h.rows[i][j];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// One integer solution of A x = b, if any.
inline std::optional<IVec> solve_linear_z(const IMat& a, const IVec& b, std::size_t cols) {
    IMat t = transpose(a, cols);
    IMat u;
    row_hnf_in_place(t, &u);
    IVec residual = b;
    IVec x(cols, Int(0));
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::size_t p = t[i].size();
        for (std::size_t j = 0; j < t[i].size(); ++j)
            if (t[i][j] != 0) { p = j; break; }
        if (p == t[i].size()) continue;
        if (residual[p] % t[i][p] != 0) return std::nullopt;
        Int y = residual[p] / t[i][p];
        if (y != 0) {
            for (std::size_t j = 0; j < residual.size(); ++j) residual[j] -= y * t[i][j];
            for (std::size_t j = 0; j < cols; ++j) x[j] += y * u[i][j];
        }
    }
    for (const auto& r : residual)
        if (r != 0) return std::nullopt;
    return x;
}

/// Canonical coset representative of v modulo the row lattice, reducing
/// trailing coordinates first (the rightmost coordinates are normalized into
/// the HNF fundamental domain).
inline IVec reduce_mod_lattice_trailing(IVec v, const IMat& basis_rows) {
    if (basis_rows.empty() || v.empty()) return v;
    std::size_t cols = v.size();
    IMat rev(basis_rows.size(), IVec(cols));
    for (std::size_t i = 0; i < basis_rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) rev[i][j] = basis_rows[i][cols - 1 - j];
    Hnf h = row_hnf(std::move(rev));
    IVec w(cols);
    for (std::size_t j = 0; j < cols; ++j) w[j] = v[cols - 1 - j];
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
        std::size_t p = h.pivot_cols[i];
        Int q = floor_div(w[p], h.rows[i][p]);
        if (q != 0)
            for (std::size_t j = 0; j < cols; ++j) w[j] -= q * h.rows[i][j];
    }
    IVec out(cols);
    for (std::size_t j = 0; j < cols; ++j) out[j] = w[cols - 1 - j];
    return out;
}

}  // namespace mgl
