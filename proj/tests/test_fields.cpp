#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "genfield/fields.hpp"

using namespace genfield;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
const cplx kI(0.0, 1.0);
}  // namespace

TEST_CASE("profiles are named and validated") {
    CHECK(ConventionProfile::from_name("standard").is_standard());
    CHECK(!ConventionProfile::from_name("paper-literal").is_standard());
    CHECK_THROWS_AS(ConventionProfile::from_name("other"), std::invalid_argument);
}

TEST_CASE("prefactors at the rest mode") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    int rest = g.index_of({0, 0, 0});
    ConventionProfile std_p = ConventionProfile::standard();
    CHECK(std_p.nu(g, rest) == doctest::Approx(1.0 / std::sqrt(2.0 * kTwoPi)).epsilon(1e-15));
    CHECK(std_p.gamma(g, rest) == std_p.nu(g, rest));

    ConventionProfile lit = ConventionProfile::paper_literal();
    CHECK(lit.nu(g, rest) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lit.gamma(g, rest) == doctest::Approx(1.0).epsilon(1e-15));  // w = 1 here

    MomentumGrid g2(1, 3, 2.0 * kTwoPi, 1.0);  // w = 1/2
    CHECK(lit.gamma(g2, g2.index_of({0, 0, 0})) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("mode coefficients carry the annihilation phase and its conjugate") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    ConventionProfile prof = ConventionProfile::standard();
    double t = 0.3;
    std::array<double, 3> x{kTwoPi / 3.0, 0.0, 0.0};
    ModeCoefficients phi = field_mode_coefficients(g, prof, FieldKind::Phi, 0, t, x);
    ModeCoefficients pi = field_mode_coefficients(g, prof, FieldKind::Pi, 0, t, x);
    ModeCoefficients gp = field_mode_coefficients(g, prof, FieldKind::GradPhi, 0, t, x);
    for (int i = 0; i < 3; ++i) {
        cplx chi = prof.gamma(g, i) * std::exp(kI * (g.omega(i) * t - g.p(i)[0] * x[0]));
        CHECK(std::abs(phi.lower[i] - chi) < 1e-15);
        CHECK(std::abs(phi.raise[i] - std::conj(chi)) < 1e-15);
        CHECK(std::abs(pi.lower[i] - kI * g.omega(i) * chi) < 1e-15);
        CHECK(std::abs(gp.lower[i] - (-kI) * g.p(i)[0] * chi) < 1e-15);
    }
    // positive/negative frequency parts split the full field
    ModeCoefficients minus = field_mode_coefficients(g, prof, FieldKind::PhiMinus, 0, t, x);
    ModeCoefficients plus = field_mode_coefficients(g, prof, FieldKind::PhiPlus, 0, t, x);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(phi.lower[i] - (minus.lower[i] + plus.lower[i])) < 1e-15);
        CHECK(std::abs(phi.raise[i] - (minus.raise[i] + plus.raise[i])) < 1e-15);
        CHECK(plus.lower[i] == cplx(0.0));
        CHECK(minus.raise[i] == cplx(0.0));
    }
    CHECK_THROWS_AS(field_mode_coefficients(g, prof, FieldKind::GradPhi, 1, t, x),
                    std::invalid_argument);
}

TEST_CASE("assembled fields are hermitian and split consistently") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    OccupationBasis basis(3, 3);
    PositionLattice lat(g);
    for (const char* name : {"standard", "paper-literal"}) {
        ConventionProfile prof = ConventionProfile::from_name(name);
        FieldOperator phi = assemble_field(g, basis, prof, FieldKind::Phi, 0.4, lat.x(1));
        FieldOperator pi = assemble_field(g, basis, prof, FieldKind::Pi, 0.4, lat.x(1));
        FieldOperator gp = assemble_field(g, basis, prof, FieldKind::GradPhi, 0.4, lat.x(1));
        CHECK(is_hermitian(phi.matrix, 1e-12));
        CHECK(is_hermitian(pi.matrix, 1e-12));
        CHECK(is_hermitian(gp.matrix, 1e-12));
        FieldOperator minus = assemble_field(g, basis, prof, FieldKind::PhiMinus, 0.4, lat.x(1));
        FieldOperator plus = assemble_field(g, basis, prof, FieldKind::PhiPlus, 0.4, lat.x(1));
        CHECK(max_abs(OperatorMatrix(plus.matrix - minus.matrix.adjoint())) < 1e-14);
        CHECK(max_abs(OperatorMatrix(phi.matrix - minus.matrix - plus.matrix)) < 1e-14);
        CHECK(phi.profile == prof.name);
    }
}

TEST_CASE("off-lattice evaluation points are rejected unless requested") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    OccupationBasis basis(3, 2);
    ConventionProfile prof = ConventionProfile::standard();
    std::array<double, 3> x{0.1, 0.0, 0.0};
    CHECK_THROWS_AS(assemble_field(g, basis, prof, FieldKind::Phi, 0.0, x),
                    std::invalid_argument);
    FieldOperator f = assemble_field(g, basis, prof, FieldKind::Phi, 0.0, x, 0, true);
    CHECK(is_hermitian(f.matrix, 1e-12));
}

TEST_CASE("commutator helper") {
    OperatorMatrix A(2, 2), B(2, 2);
    A << 0, 1, 0, 0;
    B << 0, 0, 1, 0;
    OperatorMatrix C = commutator(A, B);
    CHECK(C(0, 0) == cplx(1.0));
    CHECK(C(1, 1) == cplx(-1.0));
    CHECK(C(0, 1) == cplx(0.0));
}

TEST_CASE("equal-time ccr at the default grid, standard profile") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    OccupationBasis basis(3, 4);
    PositionLattice lat(g);
    ConventionProfile prof = ConventionProfile::standard();
    cplx want = kI * 3.0 / kTwoPi;
    for (double t : {0.0, 0.9}) {
        CcrCheck at0 = ccr_check(g, basis, prof, t, lat.x(0), lat.x(0));
        CHECK(at0.is_identity_multiple);
        CHECK(std::abs(at0.c_measured - want) < 1e-12);
        CHECK(std::abs(at0.c_predicted - want) < 1e-12);
        CHECK(std::abs(at0.c_canonical - want) < 1e-15);
        CHECK(at0.max_deviation < 1e-12);

        CcrCheck apart = ccr_check(g, basis, prof, t, lat.x(0), lat.x(2));
        CHECK(apart.is_identity_multiple);
        CHECK(std::abs(apart.c_measured) < 1e-12);
        CHECK(apart.c_canonical == cplx(0.0));
    }
}

TEST_CASE("equal-time ccr scales with the box for the standard profile") {
    MomentumGrid g(1, 3, 2.0 * kTwoPi, 1.0);
    OccupationBasis basis(3, 4);
    PositionLattice lat(g);
    CcrCheck c = ccr_check(g, basis, ConventionProfile::standard(), 0.2, lat.x(1), lat.x(1));
    CHECK(std::abs(c.c_measured - kI * 3.0 / (2.0 * kTwoPi)) < 1e-12);
}

TEST_CASE("paper-literal ccr is an identity multiple with a measured excess") {
    for (double L : {kTwoPi, 2.0 * kTwoPi}) {
        MomentumGrid g(1, 3, L, 1.0);
        OccupationBasis basis(3, 4);
        PositionLattice lat(g);
        CcrCheck c = ccr_check(g, basis, ConventionProfile::paper_literal(), 0.0, lat.x(0),
                               lat.x(0));
        CHECK(c.is_identity_multiple);
        CHECK(std::abs(c.c_measured - c.c_predicted) < 1e-12);
        // excess over the canonical constant is 2*(2pi)^d regardless of the box
        cplx ratio = c.c_measured / c.c_canonical;
        CHECK(std::abs(ratio - cplx(2.0 * kTwoPi)) < 1e-10);
    }
}

TEST_CASE("mode-sum prediction is delta-supported on the lattice") {
    MomentumGrid g(1, 5, kTwoPi, 1.3);
    PositionLattice lat(g);
    for (const char* name : {"standard", "paper-literal"}) {
        ConventionProfile prof = ConventionProfile::from_name(name);
        for (int j = 1; j < lat.n_sites(); ++j)
            CHECK(std::abs(ccr_mode_sum(g, prof, lat.x(j), lat.x(0))) < 1e-12);
    }
}

TEST_CASE("canonical value folds displacements into the box") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    std::array<double, 3> zero{0, 0, 0}, period{kTwoPi, 0, 0}, step{kTwoPi / 3.0, 0, 0};
    CHECK(std::abs(ccr_canonical_value(g, period, zero) - kI * 3.0 / kTwoPi) < 1e-15);
    CHECK(ccr_canonical_value(g, step, zero) == cplx(0.0));
}

TEST_CASE("klein-gordon residual vanishes and the negative control fires") {
    MomentumGrid g(1, 3, kTwoPi, 1.0);
    OccupationBasis basis(3, 3);
    PositionLattice lat(g);
    ConventionProfile prof = ConventionProfile::standard();
    for (double t : {0.0, 0.37})
        for (int j = 0; j < lat.n_sites(); ++j)
            CHECK(kg_residual(g, basis, prof, t, lat.x(j)) < 1e-12);

    MomentumGrid bad = g.with_perturbed_omega(0, 0.1);
    CHECK(kg_residual(bad, basis, prof, 0.37, lat.x(0)) > 1e-2);
}

TEST_CASE("klein-gordon residual in three dimensions") {
    MomentumGrid g(3, 1, kTwoPi, 0.5);
    OccupationBasis basis(1, 2);
    CHECK(kg_residual(g, basis, ConventionProfile::paper_literal(), 0.21, {0, 0, 0}) < 1e-12);
}
