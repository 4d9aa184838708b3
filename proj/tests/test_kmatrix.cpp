#include <catch2/catch_amalgamated.hpp>

#include "mgl/kmatrix.hpp"

using namespace mgl;

namespace {

KMat parse_matrix(const FieldMode& mode, const std::vector<std::vector<const char*>>& rows) {
    KMat m;
    for (const auto& r : rows) {
        KVec v;
        for (const char* s : r) v.push_back(kscalar_from_string(mode, s));
        m.push_back(std::move(v));
    }
    return m;
}

std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

TEST_CASE("rank over K") {
    FieldMode f = FieldMode::formal_tau();
    CHECK(matrix_rank_k(parse_matrix(f, {{"1", "t"}, {"t", "t^2"}})) == 1);
    FieldMode q = FieldMode::rational();
    CHECK(matrix_rank_k(parse_matrix(q, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}})) == 3);
    CHECK(matrix_rank_k(parse_matrix(q, {{"0", "0", "0", "0"}, {"0", "0", "0", "0"}})) == 0);
}

TEST_CASE("canonical kernels") {
    FieldMode q = FieldMode::rational();
    KMat ker = matrix_kernel_k(parse_matrix(q, {{"2", "3"}}), q, 2);
    REQUIRE(ker.size() == 1);
    CHECK(kscalar_to_string(ker[0][0]) == "3");
    CHECK(kscalar_to_string(ker[0][1]) == "-2");

    FieldMode f = FieldMode::formal_tau();
    KMat ker2 = matrix_kernel_k(parse_matrix(f, {{"1", "t"}}), f, 2);
    REQUIRE(ker2.size() == 1);
    CHECK(kscalar_to_string(ker2[0][0]) == "t");
    CHECK(kscalar_to_string(ker2[0][1]) == "-1");
    // the kernel vector annihilates the row
    KScalar dot = add(mul(kscalar_from_string(f, "1"), ker2[0][0]),
                      mul(kscalar_from_string(f, "t"), ker2[0][1]));
    CHECK(dot.is_zero());

    CHECK(matrix_kernel_k(parse_matrix(q, {{"1", "1"}, {"1", "-1"}}), q, 2).empty());
}

TEST_CASE("rank plus kernel dimension equals column count") {
    FieldMode modes[] = {FieldMode::rational(), FieldMode::formal_tau(),
                         FieldMode::algebraic_tau(poly_from_string("x^2-3"))};
    std::uint64_t seed = 42;
    for (const auto& mode : modes) {
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t rows = splitmix(seed) % 4;
            std::size_t cols = 1 + splitmix(seed) % 4;
            KMat m(rows, KVec(cols, KScalar::zero(mode)));
            for (auto& row : m)
                for (auto& x : row) {
                    long c0 = static_cast<long>(splitmix(seed) % 5) - 2;
                    long c1 = static_cast<long>(splitmix(seed) % 3) - 1;
                    Poly p(std::vector<Rat>{Rat(c0), Rat(c1)});
                    x = mode.kind() == FieldKind::Rational
                            ? KScalar::from_int(mode, c0)
                            : KScalar::make(mode, p, Poly(Rat(1)));
                }
            CHECK(matrix_rank_k(m) + matrix_kernel_k(m, mode, cols).size() == cols);
        }
    }
}

TEST_CASE("rational coordinates") {
    FieldMode f = FieldMode::formal_tau();
    QMat coords = rational_coordinates(
        {kscalar_from_string(f, "t+1"), kscalar_from_string(f, "t-1")});
    REQUIRE(coords.size() == 2);
    CHECK(coords[0] == QVec{Rat(1), Rat(1)});
    CHECK(coords[1] == QVec{Rat(-1), Rat(1)});
    CHECK(q_rank(coords) == 2);

    QMat coords2 = rational_coordinates({kscalar_from_string(f, "1"), kscalar_from_string(f, "t"),
                                         kscalar_from_string(f, "2*t")});
    CHECK(q_rank(coords2) == 2);

    FieldMode q = FieldMode::rational();
    QMat coords3 = rational_coordinates({KScalar::from_int(q, 5)});
    CHECK(q_rank(coords3) == 1);
}

TEST_CASE("flattening with denominators matches Q-dimension") {
    // 1/(t-1) and t/(t-1) and their sum: Q-dimension 2
    FieldMode f = FieldMode::formal_tau();
    KScalar a = kscalar_from_string(f, "1/(t-1)");
    KScalar b = kscalar_from_string(f, "t/(t-1)");
    KScalar c = add(a, b);
    CHECK(q_rank(rational_coordinates({a, b, c})) == 2);
}

TEST_CASE("canonical row space is idempotent") {
    FieldMode f = FieldMode::formal_tau();
    KMat m = parse_matrix(f, {{"2*t", "-2*t", "0"}, {"t", "0", "1"}});
    KMat once = canonical_row_space(m);
    KMat twice = canonical_row_space(once);
    CHECK(once == twice);
}
