#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mgl/intlinalg.hpp"
#include "mgl/kmatrix.hpp"

namespace mgl {

namespace detail {

struct PresentationData {
    FieldMode mode = FieldMode::rational();
    std::vector<Rat> basis;       // positive rationals, multiplicatively independent
    bool divisible = false;       // true: divisible closure (Delta), false: Z-lattice (Gamma)
    std::vector<Int> primes;      // primes appearing in the basis, ascending
    IMat prime_exponents;         // one row per basis element over `primes`
};

}  // namespace detail

/// Presentation of a finitely generated multiplicative subgroup of the
/// positive rationals. Elements are exponent vectors over the basis; the
/// retained prime-exponent matrix supports exact numeric membership tests.
class GroupPresentation {
public:
    GroupPresentation() : d_(std::make_shared<detail::PresentationData>()) {}

    const FieldMode& mode() const { return d_->mode; }
    const std::vector<Rat>& basis() const { return d_->basis; }
    bool divisible() const { return d_->divisible; }
    std::size_t rank() const { return d_->basis.size(); }
    const IMat& prime_exponents() const { return d_->prime_exponents; }
    const std::vector<Int>& primes() const { return d_->primes; }

    friend bool operator==(const GroupPresentation& a, const GroupPresentation& b) {
        return a.d_ == b.d_ ||
               (a.d_->mode == b.d_->mode && a.d_->basis == b.d_->basis &&
                a.d_->divisible == b.d_->divisible);
    }

private:
    friend GroupPresentation validate_basis(const std::vector<Rat>&, const FieldMode&, bool);
    explicit GroupPresentation(std::shared_ptr<const detail::PresentationData> d)
        : d_(std::move(d)) {}

    std::shared_ptr<const detail::PresentationData> d_;
};

/// Validates multiplicative independence of the candidates via the rank of
/// their prime-factorization exponent matrix. On failure throws
/// DependentBasisError carrying a nonzero integer vector w with
/// prod candidates[i]^w[i] = 1.
inline GroupPresentation validate_basis(const std::vector<Rat>& candidates,
                                        const FieldMode& mode = FieldMode::rational(),
                                        bool divisible = false) {
    auto data = std::make_shared<detail::PresentationData>();
    data->mode = mode;
    data->basis = candidates;
    data->divisible = divisible;

    std::map<Int, std::size_t> prime_index;
    std::vector<std::map<Int, Int>> factored;
    for (const auto& b : candidates) {
        if (b <= 0) throw Error(Errc::NonpositiveInput, "basis element " + rat_to_string(b));
        std::map<Int, Int> f;
        for (const auto& [p, e] : factorize(rat_num(b))) f[p] += e;
        for (const auto& [p, e] : factorize(rat_den(b))) f[p] -= e;
        for (const auto& [p, e] : f)
            if (e != 0) prime_index.emplace(p, 0);
        factored.push_back(std::move(f));
    }
    std::size_t np = 0;
    for (auto& [p, idx] : prime_index) idx = np++;
    data->primes.reserve(np);
    for (const auto& [p, idx] : prime_index) data->primes.push_back(p);

    data->prime_exponents.assign(candidates.size(), IVec(np, Int(0)));
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (const auto& [p, e] : factored[i])
            if (e != 0) data->prime_exponents[i][prime_index[p]] = e;

    // A dependence is a nonzero integer vector in the left kernel of the
    // prime-exponent matrix.
    IMat t = transpose(data->prime_exponents, np);
    IMat dependences = right_kernel_z(t, candidates.size());
    if (!dependences.empty()) {
        std::string desc = "product of the candidates with exponents (";
        for (std::size_t i = 0; i < dependences[0].size(); ++i)
            desc += (i ? "," : "") + dependences[0][i].str();
        desc += ") equals 1";
        throw DependentBasisError(desc, dependences[0]);
    }
    return GroupPresentation(std::move(data));
}

inline void require_same_presentation(const GroupPresentation& a, const GroupPresentation& b) {
    if (!(a == b))
        throw Error(Errc::PresentationMismatch, "elements use different group presentations");
}

/// Element of the group (or of its K-linear span): an exponent vector of
/// KScalars over the presentation basis. Integer exponent vectors are the
/// Gamma-points.
class GroupElement {
public:
    GroupElement(GroupPresentation pres, KVec exponents)
        : pres_(std::move(pres)), exps_(std::move(exponents)) {
        if (exps_.size() != pres_.rank())
            throw Error(Errc::ArityMismatch, "exponent vector length differs from group rank");
        for (const auto& e : exps_)
            if (!(e.mode() == pres_.mode()))
                throw Error(Errc::ModeMismatch, "exponent mode differs from presentation mode");
    }

    static GroupElement identity(const GroupPresentation& pres) {
        return GroupElement(pres, KVec(pres.rank(), KScalar::zero(pres.mode())));
    }

    static GroupElement from_integer_exponents(const GroupPresentation& pres, const IVec& e) {
        KVec v;
        v.reserve(e.size());
        for (const auto& x : e) v.push_back(KScalar::from_rational(pres.mode(), Rat(x)));
        return GroupElement(pres, std::move(v));
    }

    const GroupPresentation& presentation() const { return pres_; }
    const KVec& exponents() const { return exps_; }

    bool is_integral() const {
        for (const auto& e : exps_)
            if (!e.is_integer_constant()) return false;
        return true;
    }

    IVec integer_exponents() const {
        IVec out;
        out.reserve(exps_.size());
        for (const auto& e : exps_) {
            if (!e.is_integer_constant())
                throw Error(Errc::NonIntegerExponent,
                            "exponent " + kscalar_to_string(e) + " is not an integer");
            out.push_back(rat_num(e.rational_value()));
        }
        return out;
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.pres_ == b.pres_ && a.exps_ == b.exps_;
    }

private:
    GroupPresentation pres_;
    KVec exps_;
};

inline GroupElement element_mul(const GroupElement& g, const GroupElement& h) {
    require_same_presentation(g.presentation(), h.presentation());
    KVec e;
    e.reserve(g.exponents().size());
    for (std::size_t i = 0; i < g.exponents().size(); ++i)
        e.push_back(add(g.exponents()[i], h.exponents()[i]));
    return GroupElement(g.presentation(), std::move(e));
}

inline GroupElement element_pow(const GroupElement& g, const KScalar& q) {
    if (!(q.mode() == g.presentation().mode()))
        throw Error(Errc::ModeMismatch, "power exponent mode differs from presentation mode");
    if (!g.presentation().divisible() && !q.is_integer_constant())
        throw Error(Errc::IllegalPower,
                    "non-integer power in integer-lattice (non-divisible) semantics");
    KVec e;
    e.reserve(g.exponents().size());
    for (const auto& x : g.exponents()) e.push_back(mul(x, q));
    return GroupElement(g.presentation(), std::move(e));
}

inline GroupElement element_inv(const GroupElement& g) {
    KVec e;
    e.reserve(g.exponents().size());
    for (const auto& x : g.exponents()) e.push_back(neg(x));
    return GroupElement(g.presentation(), std::move(e));
}

/// Exact rational value of an integral element.
inline Rat eval_rational(const GroupElement& g) {
    IVec e = g.integer_exponents();
    Rat acc = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
        acc *= rat_pow(g.presentation().basis()[i], e[i]);
    return acc;
}

/// Expresses a positive rational in the presentation's lattice, when possible,
/// by solving its prime factorization against the basis exponent matrix.
inline std::optional<GroupElement> element_from_rational(const GroupPresentation& pres,
                                                         const Rat& value) {
    if (value <= 0) throw Error(Errc::NonpositiveInput, "group values are positive rationals");
    std::map<Int, Int> f;
    for (const auto& [p, e] : factorize(rat_num(value))) f[p] += e;
    for (const auto& [p, e] : factorize(rat_den(value))) f[p] -= e;
    IVec target(pres.primes().size(), Int(0));
    for (const auto& [p, e] : f) {
        if (e == 0) continue;
        auto it = std::lower_bound(pres.primes().begin(), pres.primes().end(), p);
        if (it == pres.primes().end() || *it != p) return std::nullopt;
        target[static_cast<std::size_t>(it - pres.primes().begin())] = e;
    }
    // Solve w * prime_exponents = target, i.e. transpose(prime_exponents) w = target.
    IMat t = transpose(pres.prime_exponents(), pres.primes().size());
    auto w = solve_linear_z(t, target, pres.rank());
    if (!w) return std::nullopt;
    return GroupElement::from_integer_exponents(pres, *w);
}

namespace detail {

inline KMat stack_exponents(const std::vector<GroupElement>& elems) {
    KMat m;
    m.reserve(elems.size());
    for (const auto& g : elems) m.push_back(g.exponents());
    return m;
}

inline void require_shared_presentation(const std::vector<GroupElement>& elems,
                                        const GroupPresentation& pres) {
    for (const auto& g : elems) require_same_presentation(g.presentation(), pres);
}

}  // namespace detail

/// Relative K-linear dimension of `elements` over `over`: the rank over K of
/// the stacked exponent vectors of (over + elements) minus the rank of over.
inline std::size_t ldim_k(const std::vector<GroupElement>& elements,
                          const std::vector<GroupElement>& over,
                          const GroupPresentation& pres) {
    detail::require_shared_presentation(elements, pres);
    detail::require_shared_presentation(over, pres);
    KMat all = detail::stack_exponents(over);
    for (const auto& g : elements) all.push_back(g.exponents());
    return matrix_rank_k(all) - matrix_rank_k(detail::stack_exponents(over));
}

/// Relative Q-linear dimension: exponent entries are flattened column by
/// column into Q-coordinates (one shared flattening for over + elements),
/// then the Q-rank difference is taken.
inline std::size_t lfo(const std::vector<GroupElement>& elements,
                       const std::vector<GroupElement>& over,
                       const GroupPresentation& pres) {
    detail::require_shared_presentation(elements, pres);
    detail::require_shared_presentation(over, pres);
    std::vector<GroupElement> all = over;
    all.insert(all.end(), elements.begin(), elements.end());
    if (all.empty()) return 0;

    std::size_t r = pres.rank();
    QMat flat(all.size());
    for (std::size_t c = 0; c < r; ++c) {
        std::vector<KScalar> column;
        column.reserve(all.size());
        for (const auto& g : all) column.push_back(g.exponents()[c]);
        QMat coords = rational_coordinates(column);
        for (std::size_t i = 0; i < all.size(); ++i)
            flat[i].insert(flat[i].end(), coords[i].begin(), coords[i].end());
    }
    QMat over_part(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(over.size()));
    return q_rank(flat) - q_rank(over_part);
}

/// Saturated sublattice H_G<A>: the smallest pure subgroup of the exponent
/// lattice containing H and A, as an HNF basis with decidable membership.
class PureLattice {
public:
    PureLattice(IMat hnf_rows, std::size_t rank)
        : hnf_(row_hnf(std::move(hnf_rows))), ambient_rank_(rank) {}

    const IMat& basis_rows() const { return hnf_.rows; }
    std::size_t ambient_rank() const { return ambient_rank_; }

    bool contains(const GroupElement& g) const {
        IVec e = g.integer_exponents();
        if (e.size() != ambient_rank_)
            throw Error(Errc::ShapeMismatch, "element rank differs from lattice rank");
        return lattice_member(hnf_, std::move(e));
    }

    bool contains_vector(IVec v) const { return lattice_member(hnf_, std::move(v)); }

private:
    Hnf hnf_;
    std::size_t ambient_rank_;
};

inline PureLattice purity_closure(const GroupPresentation& pres,
                                  const std::vector<GroupElement>& generators_h,
                                  const std::vector<GroupElement>& a) {
    IMat gens;
    for (const auto& g : generators_h) {
        require_same_presentation(g.presentation(), pres);
        gens.push_back(g.integer_exponents());
    }
    for (const auto& g : a) {
        require_same_presentation(g.presentation(), pres);
        gens.push_back(g.integer_exponents());
    }
    return PureLattice(lattice_saturation(gens, pres.rank()), pres.rank());
}

/// g in G^[d]: every exponent divisible by d. Divisible presentations are
/// d-divisible for every d, so the answer there is always true.
inline bool power_subgroup_membership(const GroupElement& g, const Int& d) {
    if (d < 1) throw Error(Errc::InvalidProblem, "power subgroup index must be >= 1");
    if (g.presentation().divisible()) return true;
    for (const auto& e : g.integer_exponents())
        if (e % d != 0) return false;
    return true;
}

/// |G : G^[d]| — 1 for divisible presentations, d^rank otherwise (the lattice
/// is torsion-free, so the index is always finite).
inline Int subgroup_index(const GroupPresentation& pres, const Int& d) {
    if (d < 1) throw Error(Errc::InvalidProblem, "power subgroup index must be >= 1");
    if (pres.divisible()) return 1;
    Int acc = 1;
    for (std::size_t i = 0; i < pres.rank(); ++i) acc *= d;
    return acc;
}

}  // namespace mgl
