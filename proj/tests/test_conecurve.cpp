#include <doctest.h>

#include <tcone/conecurve.hpp>
#include <tcone/errors.hpp>
#include <tcone/io.hpp>

using namespace tcone;

namespace {

IdealPresentation ideal(std::initializer_list<const char*> gens, Vector point = {}) {
    std::vector<MultiPoly> gs;
    for (const char* g : gens) gs.push_back(parse_polynomial(g, 2));
    return IdealPresentation(2, std::move(gs), std::move(point));
}

const IdealPresentation cusp = ideal({"x1^2 - x2^3"});
const IdealPresentation parabola = ideal({"x2 - x1^2"});
const IdealPresentation node = ideal({"x2^2 - x1^2 - x1^3"});

CurveGerm germ(std::size_t trunc, std::vector<Vector> coeffs) { return CurveGerm::from_coefficients(trunc, coeffs); }

} // namespace

TEST_CASE("ideal presentations") {
    CHECK(cusp.base_point == Vector{0, 0});
    CHECK(cusp.base_point_on_variety());
    CHECK(!ideal({"x1 - 1"}).base_point_on_variety());
    CHECK_THROWS_AS(IdealPresentation(2, {}), PreconditionError);
    CHECK_THROWS_AS(IdealPresentation(2, {parse_polynomial("x1", 1)}), DimensionError);
    CHECK_THROWS_AS(IdealPresentation(2, {parse_polynomial("x1", 2)}, {1}), DimensionError);
}

TEST_CASE("intersection multiplicity") {
    CHECK(multiplicity(cusp, germ(6, {{0, 0}, {0, 1}})) == OrderResult::exact(3, 6));
    CHECK(multiplicity(parabola, germ(6, {{0, 0}, {1, 0}, {0, 1}})).above_truncation());
    CHECK(multiplicity(parabola, germ(6, {{0, 0}, {1, 0}})) == OrderResult::exact(2, 6));
    CHECK(multiplicity(ideal({"x1", "x2^2"}), germ(6, {{0, 0}, {0, 1}})) == OrderResult::exact(2, 6));
    CHECK_THROWS_AS(multiplicity(cusp, germ(6, {{0, 0}, {0, 0}, {1, 0}})), PreconditionError);
    CHECK_THROWS_AS(multiplicity(cusp, germ(6, {{1, 0}, {0, 1}})), PreconditionError);
    CHECK_THROWS_AS(multiplicity(cusp, germ(6, {{0}, {1}})), DimensionError);
}

TEST_CASE("multiplicity at a translated base point") {
    const IdealPresentation moved = ideal({"x1^2 - x2^3"}, {1, 1});
    // Tangent line at (1,1): gradient (2,-3), direction (3,2).
    CHECK(multiplicity(moved, germ(6, {{1, 1}, {3, 2}})).value() == 2);
    CHECK(multiplicity(moved, germ(6, {{1, 1}, {1, 0}})).value() == 1);
}

TEST_CASE("tangent space") {
    CHECK(tangent_space(cusp).same_span(SubspaceBasis::full(2)));
    CHECK(tangent_space(parabola).same_span(SubspaceBasis::span(2, {{1, 0}})));
    CHECK(tangent_space(ideal({"x1", "x2"})).dim() == 0);
    CHECK_THROWS_AS(tangent_space(ideal({"x1 - 1"})), PreconditionError);
}

TEST_CASE("W span") {
    CHECK(build_W(parabola, {1, 0}).same_span(SubspaceBasis::span(3, {{0, 1, -1}})));
    CHECK(build_W(cusp, {0, 1}).dim() == 0);
    CHECK(build_W(node, {1, 2}).same_span(SubspaceBasis::span(3, {{0, 0, 3}})));
    CHECK_THROWS_AS(build_W(parabola, {0, 1}), PreconditionError);
}

TEST_CASE("necessary cone test") {
    CHECK(cone_necessary_test(node, {1, 1}).passed);
    CHECK(cone_necessary_test(node, {1, 1}).w.dim() == 0);
    const ConeTestReport fail = cone_necessary_test(node, {1, 2});
    CHECK(!fail.passed);
    REQUIRE(fail.witness);
    CHECK(*fail.witness == Vector{0, 0, 3});
    CHECK(*fail.witness_coefficients == Vector{1});
    CHECK(fail.w.contains(*fail.witness));
    CHECK(cone_necessary_test(node, {2, 2}).passed);
    CHECK_THROWS_AS(cone_necessary_test(node, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(cone_necessary_test(node, {1}), DimensionError);
}

TEST_CASE("cone test with combinations of generators") {
    // x2 - x1^2 and x2 + x1^2: the difference has no linear part and q(v) = 2 at v = (1, 0).
    const IdealPresentation x = ideal({"x2 - x1^2", "x2 + x1^2"});
    const ConeTestReport r = cone_necessary_test(x, {1, 0});
    CHECK(!r.passed);
    REQUIRE(r.witness);
    CHECK(r.witness->at(0) == 0);
    CHECK(r.witness->at(1) == 0);
    CHECK(r.witness->at(2) != 0);
}

TEST_CASE("order-3 curves") {
    SUBCASE("parabola") {
        const Curve3Result c = construct_curve3(parabola, {1, 0}, 8);
        CHECK(c.gamma == Vector{0, 1});
        CHECK(c.multiplicity.above_truncation());
        CHECK(c.curve == germ(8, {{0, 0}, {1, 0}, {0, 1}}));
    }
    SUBCASE("cusp") {
        const Curve3Result c = construct_curve3(cusp, {0, 1}, 8);
        CHECK(c.gamma == Vector{0, 0});
        CHECK(c.multiplicity == OrderResult::exact(3, 8));
    }
    SUBCASE("node") {
        const Curve3Result c = construct_curve3(node, {1, 1}, 8);
        CHECK(c.gamma == Vector{0, 0});
        CHECK(c.multiplicity == OrderResult::exact(3, 8));
    }
    SUBCASE("failure carries the report") {
        try {
            construct_curve3(node, {1, 2}, 8);
            FAIL("expected ConeTestFailure");
        } catch (const ConeTestFailure& e) {
            CHECK(*e.report().witness == Vector{0, 0, 3});
        }
    }
    CHECK_THROWS_AS(construct_curve3(parabola, {1, 0}, 1), PreconditionError);
}

TEST_CASE("lowest forms") {
    CHECK(hypersurface_lowest_form(parse_polynomial("x1^2 - x2^3", 2)) == parse_polynomial("x1^2", 2));
    CHECK(hypersurface_lowest_form(parse_polynomial("x2 - x1^2", 2)) == parse_polynomial("x2", 2));
    CHECK(hypersurface_lowest_form(parse_polynomial("x2^2 - x1^2 - x1^3", 2)) == parse_polynomial("x2^2 - x1^2", 2));
    CHECK_THROWS_AS(hypersurface_lowest_form(parse_polynomial("x1 + 1", 2)), PreconditionError);
    CHECK_THROWS_AS(hypersurface_lowest_form(MultiPoly(2)), PreconditionError);
}

TEST_CASE("theorem report") {
    CHECK(verify_theorem(cusp, {0, 1}).contact_at_least_3);
    CHECK(verify_theorem(parabola, {1, 0}).contact_at_least_3);
    const TheoremReport r = verify_theorem(node, {1, 2});
    CHECK(!r.cone.passed);
    CHECK(!r.curve);
    CHECK(!r.contact_at_least_3);
}
