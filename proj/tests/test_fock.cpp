#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "genfield/fock.hpp"
#include "genfield/rng.hpp"

using namespace genfield;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<cplx> random_vector(StreamRng& rng, int n) {
    std::vector<cplx> f(n);
    for (auto& v : f) v = rng.complex_in_box(1.0);
    return f;
}
}  // namespace

TEST_CASE("basis enumeration is sector-ascending then lexicographic") {
    OccupationBasis basis(3, 4);
    CHECK(basis.dim() == 35);  // C(3+4, 4)
    CHECK(basis.total(0) == 0);
    for (int u = 1; u < basis.dim(); ++u) {
        CHECK(basis.total(u) >= basis.total(u - 1));
        if (basis.total(u) == basis.total(u - 1))
            CHECK(basis.occupations(u - 1) > basis.occupations(u));  // first mode fills first
    }
    for (int u = 0; u < basis.dim(); ++u) CHECK(basis.index_of(basis.occupations(u)) == u);
    CHECK(basis.index_of({5, 0, 0}) == -1);  // beyond truncation
    CHECK_THROWS_AS(OccupationBasis(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(OccupationBasis(3, -1), std::invalid_argument);
}

TEST_CASE("sector_indices slices by total occupation") {
    OccupationBasis basis(3, 4);
    CHECK(basis.sector_indices(0).size() == 1);
    CHECK(basis.sector_indices(2).size() == 10);  // 1 + 3 + 6
    CHECK(basis.sector_indices(4).size() == 35);
    for (int u : basis.sector_indices(2)) CHECK(basis.total(u) <= 2);
}

TEST_CASE("vacuum and sector weights") {
    OccupationBasis basis(2, 3);
    FockVector v = vacuum(basis);
    CHECK(v.amp(0) == cplx(1.0, 0.0));
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.sector_weight(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.sector_weight(2) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("mode ladder carries the sqrt(n) factors") {
    OccupationBasis basis(2, 3);
    OperatorMatrix bd = mode_ladder(basis, 0, true);
    int u1 = basis.index_of({1, 0});
    int u2 = basis.index_of({2, 0});
    int u21 = basis.index_of({2, 1});
    CHECK(std::abs(bd(u1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(bd(u2, u1) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(bd(u21, basis.index_of({1, 1})) - std::sqrt(2.0)) < 1e-15);
    // lowering is the exact matrix adjoint
    OperatorMatrix b = mode_ladder(basis, 0, false);
    CHECK(max_abs(OperatorMatrix(b - bd.adjoint())) == 0.0);
    // creation out of the top sector is dropped
    CHECK(bd.col(basis.index_of({3, 0})).norm() == 0.0);
}

TEST_CASE("canonical ladder commutators below truncation") {
    OccupationBasis basis(3, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            OperatorMatrix bi = mode_ladder(basis, i, false);
            OperatorMatrix bjd = mode_ladder(basis, j, true);
            OperatorMatrix comm = bi * bjd - bjd * bi;
            cplx want = (i == j) ? 1.0 : 0.0;
            CHECK(max_deviation_from_identity_multiple(comm, basis, want, 3) < 1e-14);
        }
}

TEST_CASE("point ladder rescales the canonical one") {
    MomentumGrid g(1, 3, 2.0 * kTwoPi, 0.5);
    OccupationBasis basis(g.n_modes(), 3);
    for (int i = 0; i < 3; ++i) {
        double s = 1.0 / std::sqrt(g.weight(i) * g.omega(i));
        OperatorMatrix want = s * mode_ladder(basis, i, false);
        CHECK(max_abs(OperatorMatrix(point_ladder(g, basis, i, false) - want)) < 1e-15);
        OperatorMatrix wantd = s * mode_ladder(basis, i, true);
        CHECK(max_abs(OperatorMatrix(point_ladder(g, basis, i, true) - wantd)) < 1e-15);
    }
}

TEST_CASE("smeared creation puts sqrt(w/omega) amplitudes on one-particle states") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    OccupationBasis basis(3, 4);
    for (int i = 0; i < 3; ++i) {
        std::vector<cplx> f(3, 0.0);
        f[i] = 1.0;
        FockVector out = apply_creation(g, f, vacuum(basis));
        std::vector<std::uint8_t> occ(3, 0);
        occ[i] = 1;
        cplx amp = out.amp(basis.index_of(occ));
        CHECK(std::abs(amp - std::sqrt(g.weight(i) / g.omega(i))) < 1e-15);
        CHECK(out.norm() == doctest::Approx(std::abs(amp)).epsilon(1e-12));
    }
}

TEST_CASE("annihilation matrix is the adjoint of the creation matrix") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    OccupationBasis basis(3, 3);
    StreamRng rng(7, "test/fock-adjoint");
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<cplx> f = random_vector(rng, 3);
        OperatorMatrix cr = matrix_of_creation(g, basis, f);
        OperatorMatrix an = matrix_of_annihilation(g, basis, f);
        CHECK(max_abs(OperatorMatrix(an - cr.adjoint())) < 1e-15);
    }
}

TEST_CASE("smeared ccr reproduces the sigma inner product") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    OccupationBasis basis(3, 4);
    StreamRng rng(11, "test/fock-ccr");
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<cplx> f = random_vector(rng, 3), h = random_vector(rng, 3);
        OperatorMatrix A = matrix_of_annihilation(g, basis, f);
        OperatorMatrix Ad = matrix_of_creation(g, basis, h);
        OperatorMatrix comm = A * Ad - Ad * A;
        CHECK(max_deviation_from_identity_multiple(comm, basis, sigma_inner(g, f, h), 3) < 1e-12);
    }
}

TEST_CASE("operator_matrix reproduces a linear map column by column") {
    OccupationBasis basis(2, 2);
    OperatorMatrix ladder = mode_ladder(basis, 1, true);
    OperatorMatrix built = operator_matrix(basis, [&](const FockVector& F) {
        return FockVector{F.basis, Eigen::VectorXcd(ladder * F.amp)};
    });
    CHECK(max_abs(OperatorMatrix(built - ladder)) == 0.0);
}

TEST_CASE("matrix predicates on a crafted operator") {
    OccupationBasis basis(1, 1);  // dim 2
    OperatorMatrix M(2, 2);
    M << cplx(1, 0), cplx(2, 0), cplx(3, 0), cplx(4, 0);
    CHECK(mean_diagonal(M, basis, 0) == cplx(1, 0));
    CHECK(mean_diagonal(M, basis, 1) == cplx(2.5, 0));
    CHECK(max_deviation_from_identity_multiple(M, basis, cplx(1, 0), 0) == 0.0);
    CHECK(max_deviation_from_identity_multiple(M, basis, cplx(2.5, 0), 1) ==
          doctest::Approx(3.0).epsilon(1e-15));
    CHECK(!is_hermitian(M, 1e-12));
    OperatorMatrix H(2, 2);
    H << cplx(1, 0), cplx(0, 2), cplx(0, -2), cplx(5, 0);
    CHECK(is_hermitian(H, 1e-12));
    CHECK(max_abs_diff(M, H, basis, 1) == doctest::Approx(std::sqrt(13.0)).epsilon(1e-15));
    CHECK(max_abs_diff(M, H, basis, 0) == 0.0);
    CHECK(max_abs(M) == doctest::Approx(4.0).epsilon(1e-15));
}
