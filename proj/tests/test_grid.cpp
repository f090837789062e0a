#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "genfield/grid.hpp"

using namespace genfield;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

TEST_CASE("momentum grid layout at d=1 K=3") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    CHECK(g.n_modes() == 3);
    CHECK(g.labels(0)[0] == -1);
    CHECK(g.labels(1)[0] == 0);
    CHECK(g.labels(2)[0] == 1);
    // L = 2*pi makes the momentum step exactly 1
    CHECK(g.p(0)[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g.p(2)[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.omega(1) == 1.0);  // bit-exact m at rest
    CHECK(g.omega(0) == doctest::Approx(kSqrt2).epsilon(1e-15));
    CHECK(g.omega(2) == g.omega(0));
    for (int i = 0; i < 3; ++i) CHECK(g.weight(i) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("weights scale as (2pi/L)^d") {
    MomentumGrid g1(1, 5, 2.0 * kTwoPi, 0.7);
    CHECK(g1.weight(0) == doctest::Approx(0.5).epsilon(1e-15));
    MomentumGrid g3(3, 3, kTwoPi, 1.0);
    CHECK(g3.n_modes() == 27);
    CHECK(g3.weight(13) == doctest::Approx(1.0).epsilon(1e-15));
    // center mode of the 3x3x3 block is at rest
    CHECK(g3.labels(13) == std::array<int, 3>{0, 0, 0});
    CHECK(g3.omega(13) == 1.0);
}

TEST_CASE("index_of inverts the label enumeration") {
    MomentumGrid g(3, 3, 4.0, 0.5);
    for (int i = 0; i < g.n_modes(); ++i) CHECK(g.index_of(g.labels(i)) == i);
    CHECK_THROWS_AS(g.index_of({2, 0, 0}), std::out_of_range);
}

TEST_CASE("negation pairs modes with equal dispersion") {
    MomentumGrid g(3, 3, 5.0, 1.3);
    for (int i = 0; i < g.n_modes(); ++i) {
        int j = g.negated_index(i);
        CHECK(g.negated_index(j) == i);
        CHECK(g.omega(j) == g.omega(i));
        for (int a = 0; a < 3; ++a) CHECK(g.p(j)[a] == -g.p(i)[a]);
    }
}

TEST_CASE("grid constructor rejects bad arguments") {
    CHECK_THROWS_AS(MomentumGrid(2, 3, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MomentumGrid(1, 4, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MomentumGrid(1, 3, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MomentumGrid(1, 3, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(MomentumGrid(1, 3, 1.0, 1.0).with_perturbed_omega(7, 0.1), std::out_of_range);
}

TEST_CASE("perturbed dispersion touches exactly one mode") {
    MomentumGrid g(1, 5, kTwoPi, 1.0);
    MomentumGrid bad = g.with_perturbed_omega(2, 0.25);
    CHECK(bad.omega(2) == doctest::Approx(g.omega(2) + 0.25).epsilon(1e-15));
    for (int i = 0; i < 5; ++i) {
        if (i != 2) CHECK(bad.omega(i) == g.omega(i));
        CHECK(bad.p(i)[0] == g.p(i)[0]);
        CHECK(bad.weight(i) == g.weight(i));
    }
}

TEST_CASE("position lattice sites and cell volume") {
    PositionLattice lat(1, 3, kTwoPi);
    CHECK(lat.n_sites() == 3);
    CHECK(lat.cell_volume() == doctest::Approx(kTwoPi / 3.0).epsilon(1e-15));
    for (int j = 0; j < 3; ++j) {
        CHECK(lat.x(j)[0] == doctest::Approx(j * kTwoPi / 3.0).epsilon(1e-15));
        CHECK(lat.index_of(lat.labels(j)) == j);
    }
    PositionLattice lat3(3, 3, 6.0);
    CHECK(lat3.n_sites() == 27);
    CHECK(lat3.cell_volume() == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("sigma inner product matches the hand-computed sum") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    // constant test vector: (f,f) = sum w/omega = 1/sqrt2 + 1 + 1/sqrt2
    std::vector<cplx> f{1.0, 1.0, 1.0};
    cplx v = sigma_inner(g, f, f);
    CHECK(v.real() == doctest::Approx(1.0 + kSqrt2).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));

    // delta at the rest mode picks out w/omega = 1
    std::vector<cplx> e1{0.0, 1.0, 0.0};
    CHECK(sigma_inner(g, e1, e1).real() == doctest::Approx(1.0).epsilon(1e-15));

    // conjugate-linear in the first slot, linear in the second
    std::vector<cplx> fi{cplx(0, 1), cplx(0, 1), cplx(0, 1)};
    cplx lhs = sigma_inner(g, fi, f);
    CHECK(lhs.imag() == doctest::Approx(-(1.0 + kSqrt2)).epsilon(1e-15));
    cplx a = sigma_inner(g, f, e1), b = sigma_inner(g, e1, f);
    CHECK(std::abs(a - std::conj(b)) < 1e-15);
}

TEST_CASE("mode phase sum is the lattice delta") {
    for (int d : {1, 3}) {
        MomentumGrid g(d, 3, kTwoPi, 1.0);
        PositionLattice lat(g);
        double kd = std::pow(3.0, d);
        for (int j = 0; j < lat.n_sites(); ++j) {
            cplx s = mode_phase_sum(g, lat.x(j));
            cplx expect = (j == 0) ? cplx(kd, 0.0) : cplx(0.0, 0.0);
            CHECK(std::abs(s - expect) < 1e-12);
        }
        // full-period displacement wraps back to K^d
        std::array<double, 3> period{0, 0, 0};
        for (int a = 0; a < d; ++a) period[a] = kTwoPi;
        CHECK(std::abs(mode_phase_sum(g, period) - cplx(kd, 0.0)) < 1e-11);
    }
}

TEST_CASE("dot3 contracts three components") {
    CHECK(dot3({1, 2, 3}, {4, 5, 6}) == doctest::Approx(32.0).epsilon(1e-15));
}
