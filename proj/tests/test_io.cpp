#include <doctest.h>

#include <tcone/errors.hpp>
#include <tcone/io.hpp>

#include <sstream>

using namespace tcone;

namespace {

template <class F>
std::size_t parse_error_line(F&& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.line();
    }
    return 9999;
}

} // namespace

TEST_CASE("polynomial syntax") {
    const MultiPoly p = parse_polynomial("3/2*x1^2*x2 - x3 + 1", 3);
    CHECK(p.coefficient(Monomial(std::vector<unsigned>{2, 1, 0})) == Scalar(3, 2));
    CHECK(p.coefficient(Monomial(std::vector<unsigned>{0, 0, 1})) == -1);
    CHECK(p.coefficient(Monomial(3)) == 1);
    CHECK(parse_polynomial("2x1", 1) == parse_polynomial("2*x1", 1));
    CHECK(parse_polynomial("-x1 + x1", 1).is_zero());
    CHECK(parse_polynomial("x1*x1", 1) == parse_polynomial("x1^2", 1));
    CHECK(parse_polynomial("t^3 - 2t", 1, VariableStyle::parameter).degree() == 3u);
    CHECK(parse_polynomial("0", 2).is_zero());
}

TEST_CASE("polynomial syntax errors") {
    CHECK_THROWS_AS(parse_polynomial("", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x3", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x0", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("y1", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1 x2", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1^", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/0", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1 +", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("2*", 2), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1", 1, VariableStyle::parameter), ParseError);
    CHECK(parse_error_line([] { parse_polynomial("x9", 2, VariableStyle::indexed, 4); }) == 4);
}

TEST_CASE("polynomial formatting") {
    CHECK(format_polynomial(parse_polynomial("1 - x3 + 3/2 x1^2*x2", 3)) == "3/2*x1^2*x2 - x3 + 1");
    CHECK(format_polynomial(parse_polynomial("-x1 + x2^2", 2)) == "x2^2 - x1");
    CHECK(format_polynomial(MultiPoly(2)) == "0");
    CHECK(format_polynomial(parse_polynomial("t + t^2", 1, VariableStyle::parameter), VariableStyle::parameter) ==
          "t^2 + t");
    for (const char* s : {"x1^2 - x2^3", "-1/3*x1*x2 + 7", "x2 + x1 - 2"}) {
        const MultiPoly p = parse_polynomial(s, 2);
        CHECK(parse_polynomial(format_polynomial(p), 2) == p);
    }
}

TEST_CASE("ideal files") {
    std::istringstream in("# cusp\nvars 2\n\ngen x1^2 - x2^3   # the generator\npoint 0, 0\n");
    const IdealPresentation x = read_ideal(in);
    CHECK(x.nvars == 2);
    REQUIRE(x.generators.size() == 1);
    CHECK(x.generators[0] == parse_polynomial("x1^2 - x2^3", 2));
    std::ostringstream out;
    write_ideal(out, IdealPresentation(2, x.generators, {1, 1}));
    std::istringstream back(out.str());
    const IdealPresentation y = read_ideal(back);
    CHECK(y.generators == x.generators);
    CHECK(y.base_point == Vector{1, 1});
}

TEST_CASE("ideal file errors carry line numbers") {
    auto line_of = [](const char* text) {
        return parse_error_line([&] {
            std::istringstream in(text);
            read_ideal(in);
        });
    };
    CHECK(line_of("vars 2\ngen x1\ngen x5\n") == 3);
    CHECK(line_of("gen x1\n") == 1);
    CHECK(line_of("vars 2\nfoo x1\n") == 2);
    CHECK(line_of("vars 2\ngen x1\npoint 1\n") == 3);
    CHECK(line_of("vars two\n") == 1);
    CHECK(line_of("vars 2\n") == 0);
}

TEST_CASE("curve files") {
    std::istringstream in("trunc 6\ncomp t\ncomp t^2 - 1/2 t^3\n");
    const CurveGerm c = read_curve(in);
    CHECK(c.trunc() == 6);
    CHECK(c.velocity() == Vector{1, 0});
    CHECK(c.coefficient(3) == Vector{0, Scalar(-1, 2)});
    std::ostringstream out;
    write_curve(out, c);
    std::istringstream back(out.str());
    CHECK(read_curve(back) == c);

    std::istringstream bad("trunc 2\ncomp t^3\n");
    CHECK(parse_error_line([&] { read_curve(bad); }) == 2);
    std::istringstream wrong_var("trunc 2\ncomp x1\n");
    CHECK_THROWS_AS(read_curve(wrong_var), ParseError);
}

TEST_CASE("algebra files") {
    std::istringstream in("dim 3\nprod 1 1 : 0 0 1\nprod 2 1 : 0 0 1/2\nprod 1 2 : 0 0 1/2\n");
    const AlgebraPoint a = read_algebra(in);
    CHECK(a.n() == 3);
    CHECK(a.table().product(0, 0) == Vector{0, 0, 1});
    CHECK(a.table().product(0, 1) == Vector{0, 0, Scalar(1, 2)});
    CHECK(a.table().product(1, 0) == Vector{0, 0, Scalar(1, 2)});
    std::ostringstream out;
    write_algebra(out, a);
    std::istringstream back(out.str());
    CHECK(read_algebra(back) == a);

    std::istringstream conflict("dim 2\nprod 1 2 : 1 0\nprod 2 1 : 0 1\n");
    CHECK(parse_error_line([&] { read_algebra(conflict); }) == 3);
    std::istringstream range("dim 2\nprod 1 3 : 1 0\n");
    CHECK(parse_error_line([&] { read_algebra(range); }) == 2);
    std::istringstream count("dim 2\nprod 1 1 : 1\n");
    CHECK(parse_error_line([&] { read_algebra(count); }) == 2);
    std::istringstream header("map 2\n");
    CHECK_THROWS_AS(read_algebra(header), ParseError);
}

TEST_CASE("map files") {
    SymBilinear m(2);
    m.set(0, 1, 1, Scalar(-3, 4));
    std::ostringstream out;
    write_symmap(out, m);
    CHECK(out.str() == "map 2\nprod 1 2 : 0 -3/4\n");
    std::istringstream back(out.str());
    CHECK(read_symmap(back) == m);
}

TEST_CASE("points") {
    CHECK(parse_point("1, -2 3/4") == Vector{1, -2, Scalar(3, 4)});
    CHECK(parse_point("").empty());
    CHECK_THROWS_AS(parse_point("1 x"), ParseError);
    CHECK_THROWS_AS(read_ideal_file("/nonexistent/file.id"), ParseError);
}
