#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "genfield/rng.hpp"
#include "genfield/wick.hpp"

using namespace genfield;

namespace {

LadderExpression random_expr(StreamRng& rng, int max_mode, int max_degree, int n_terms) {
    LadderExpression e;
    for (int t = 0; t < n_terms; ++t) {
        LadderExpression term = LadderExpression::constant(rng.complex_in_box(1.0));
        int deg = 1 + static_cast<int>(rng.uniform(0.0, static_cast<double>(max_degree)));
        for (int s = 0; s < deg; ++s) {
            auto mode = static_cast<std::uint32_t>(rng.uniform(0.0, max_mode + 1.0));
            term = term * LadderExpression::symbol(mode, rng.uniform() < 0.5);
        }
        e = e + term;
    }
    return e;
}

}  // namespace

TEST_CASE("parser handles the documented grammar") {
    CHECK(parse_ladder("2*ad(0)*a(1)") ==
          LadderExpression::symbol(0, true) * LadderExpression::symbol(1, false) * cplx(2.0));
    CHECK(parse_ladder("(0,1)*a(2)") == LadderExpression::symbol(2, false, cplx(0, 1)));
    CHECK(parse_ladder("ad(3)^2") ==
          LadderExpression::symbol(3, true) * LadderExpression::symbol(3, true));
    CHECK(parse_ladder(" a(0) + a(0) ") == LadderExpression::symbol(0, false, 2.0));
    CHECK(parse_ladder("a(0) - a(0)") == LadderExpression());  // exact zero drops out
    CHECK(parse_ladder("-3") == LadderExpression::constant(-3.0));
    CHECK(parse_ladder("ad(1) a(1)") ==
          LadderExpression::symbol(1, true) * LadderExpression::symbol(1, false));
}

TEST_CASE("parser reports the failure offset") {
    CHECK_THROWS_AS(parse_ladder("a("), ParseError);
    CHECK_THROWS_AS(parse_ladder("b(0)"), ParseError);
    CHECK_THROWS_AS(parse_ladder("a(0)+"), ParseError);
    try {
        parse_ladder("a(0)*a(x)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 7);
        CHECK(std::string(e.what()).find("offset 7") != std::string::npos);
    }
}

TEST_CASE("print round-trips exactly, including awkward coefficients") {
    StreamRng rng(3, "test/wick-roundtrip");
    for (int trial = 0; trial < 100; ++trial) {
        LadderExpression e = random_expr(rng, 3, 4, 3);
        CHECK(parse_ladder(print_ladder(e)) == e);
    }
    CHECK(print_ladder(LadderExpression()) == "0");
    LadderExpression tiny = LadderExpression::symbol(0, false, cplx(1.0 / 3.0, -7e-17));
    CHECK(parse_ladder(print_ladder(tiny)) == tiny);  // %.17g survives
}

TEST_CASE("normal ordering of the basic contraction") {
    LadderExpression e = LadderExpression::symbol(0, false) * LadderExpression::symbol(0, true);
    LadderExpression want = LadderExpression::constant(1.0) +
                            LadderExpression::symbol(0, true) * LadderExpression::symbol(0, false);
    CHECK(normal_order(e) == want);
    // distinct modes commute without a contraction term
    LadderExpression f = LadderExpression::symbol(0, false) * LadderExpression::symbol(1, true);
    CHECK(normal_order(f) ==
          LadderExpression::symbol(1, true) * LadderExpression::symbol(0, false));
}

TEST_CASE("normal ordering of a quartic string") {
    LadderExpression a = LadderExpression::symbol(0, false);
    LadderExpression ad = LadderExpression::symbol(0, true);
    LadderExpression e = a * a * ad * ad;
    LadderExpression want = LadderExpression::constant(2.0) + (ad * a) * cplx(4.0) +
                            ad * ad * a * a;
    CHECK(normal_order(e) == want);
    CHECK(is_normal_ordered(normal_order(e)));
    CHECK(!is_normal_ordered(e));
    CHECK(normal_order(normal_order(e)) == normal_order(e));  // idempotent
}

TEST_CASE("wick ordering reorders without contraction terms") {
    LadderExpression e = LadderExpression::symbol(0, false) * LadderExpression::symbol(0, true);
    CHECK(wick_order(e) == LadderExpression::symbol(0, true) * LadderExpression::symbol(0, false));
    CHECK(print_ladder(wick_order(e)) == "ad(0)*a(0)");
    // an already block-ordered expression is untouched
    LadderExpression f = LadderExpression::constant(5.0) + LadderExpression::symbol(1, true);
    CHECK(wick_order(f) == f);
    // the reordering removes the vacuum expectation of any pure symbol string
    OccupationBasis basis(1, 3);
    CHECK(std::abs(to_matrix(e, basis)(0, 0) - 1.0) < 1e-15);
    CHECK(to_matrix(wick_order(e), basis)(0, 0) == cplx(0.0));
}

TEST_CASE("degree and max_mode describe the symbol strings") {
    LadderExpression e = parse_ladder("ad(3)*a(1)*a(3) + 2*a(0)");
    CHECK(e.degree() == 3);
    CHECK(e.max_mode() == 3);
    CHECK(LadderExpression::constant(4.0).degree() == 0);
}

TEST_CASE("pow is repeated multiplication") {
    LadderExpression e = parse_ladder("a(0) + ad(1)");
    CHECK(e.pow(3) == e * e * e);
    CHECK(e.pow(0) == LadderExpression::constant(1.0));
}

TEST_CASE("to_matrix matches the ladder matrices") {
    OccupationBasis basis(2, 3);
    CHECK(max_abs(OperatorMatrix(to_matrix(LadderExpression::symbol(1, false), basis) -
                                 mode_ladder(basis, 1, false))) == 0.0);
    OperatorMatrix c = to_matrix(LadderExpression::constant(cplx(0, 2)), basis);
    CHECK(max_abs(OperatorMatrix(c - cplx(0, 2) * OperatorMatrix::Identity(basis.dim(),
                                                                           basis.dim()))) == 0.0);
    CHECK(max_abs(to_matrix(LadderExpression(), basis)) == 0.0);
    // number operator is diagonal with the occupation of its mode
    OperatorMatrix n0 = to_matrix(parse_ladder("ad(0)*a(0)"), basis);
    for (int u = 0; u < basis.dim(); ++u)
        CHECK(std::abs(n0(u, u) - static_cast<double>(basis.occupations(u)[0])) < 1e-14);
}

TEST_CASE("matrix realization is multiplicative under truncation") {
    OccupationBasis basis(2, 4);
    StreamRng rng(5, "test/wick-mult");
    for (int trial = 0; trial < 10; ++trial) {
        LadderExpression e1 = random_expr(rng, 1, 2, 2);
        LadderExpression e2 = random_expr(rng, 1, 2, 2);
        OperatorMatrix lhs = to_matrix(e1 * e2, basis);
        OperatorMatrix rhs = to_matrix(e1, basis) * to_matrix(e2, basis);
        CHECK(max_abs(OperatorMatrix(lhs - rhs)) < 1e-12);
    }
}

TEST_CASE("normal ordering never changes the matrix on the exact sub-basis") {
    OccupationBasis basis(1, 6);
    StreamRng rng(9, "test/wick-invariance");
    for (int trial = 0; trial < 25; ++trial) {
        LadderExpression e = random_expr(rng, 0, 3, 3);
        int cap = basis.n_max() - e.degree();
        OperatorMatrix before = to_matrix(e, basis);
        OperatorMatrix after = to_matrix(normal_order(e), basis);
        CHECK(max_abs_diff(before, after, basis, cap) < 1e-12);
    }
}

TEST_CASE("distribution and scaling in the expression algebra") {
    StreamRng rng(13, "test/wick-algebra");
    LadderExpression e1 = random_expr(rng, 2, 2, 2);
    LadderExpression e2 = random_expr(rng, 2, 2, 2);
    LadderExpression e3 = random_expr(rng, 2, 2, 2);
    CHECK((e1 + e2) * e3 == e1 * e3 + e2 * e3);
    CHECK(e1 * cplx(0.0) == LadderExpression());
    CHECK(e1 - e1 == LadderExpression());
}
