#include <tcone/conecurve.hpp>
#include <tcone/errors.hpp>

namespace tcone {

IdealPresentation::IdealPresentation(std::size_t n, std::vector<MultiPoly> gens, Vector point)
    : nvars(n), generators(std::move(gens)), base_point(point.empty() ? zero_vector(n) : std::move(point)) {
    if (generators.empty()) throw PreconditionError("an ideal presentation needs at least one generator");
    for (const auto& g : generators)
        if (g.nvars() != n) throw DimensionError("generator over the wrong number of variables");
    if (base_point.size() != n) throw DimensionError("base point of the wrong length");
}

bool IdealPresentation::base_point_on_variety() const {
    for (const auto& g : generators)
        if (sgn(poly_eval(g, base_point)) != 0) return false;
    return true;
}

std::vector<MultiPoly> IdealPresentation::translated_generators() const {
    std::vector<MultiPoly> out;
    out.reserve(generators.size());
    for (const auto& g : generators) out.push_back(translate_to_origin(g, base_point));
    return out;
}

namespace {

void require_on_variety(const IdealPresentation& x) {
    if (!x.base_point_on_variety()) throw PreconditionError("base point is not on the variety");
}

struct GeneratorData {
    std::vector<Vector> linear;   // l_g
    std::vector<Scalar> quad_at_v; // q_g(v)
};

GeneratorData linear_and_quadratic(const IdealPresentation& x, const Vector& v) {
    GeneratorData d;
    for (const auto& g : x.translated_generators()) {
        d.linear.push_back(linear_part(g));
        d.quad_at_v.push_back(poly_eval(homogeneous_component(g, 2), v));
    }
    return d;
}

void require_tangent(const IdealPresentation& x, const Vector& v) {
    if (v.size() != x.nvars) throw DimensionError("direction vector of the wrong length");
    if (!tangent_space(x).contains(v)) throw PreconditionError("direction is not in the tangent space");
}

} // namespace

OrderResult multiplicity(const IdealPresentation& x, const CurveGerm& c) {
    if (c.nvars() != x.nvars) throw DimensionError("curve and ideal live in different ambient spaces");
    if (!c.is_smooth()) throw PreconditionError("curve parameterization is not smooth (zero velocity)");
    if (c.base_point() != x.base_point) throw PreconditionError("curve does not pass through the base point");
    OrderResult best = OrderResult::above(c.trunc());
    for (const auto& g : x.generators) best = min_order(best, jet_order(jet_compose(g, c)));
    return best;
}

SubspaceBasis tangent_space(const IdealPresentation& x) {
    require_on_variety(x);
    std::vector<Vector> rows;
    for (const auto& g : x.translated_generators()) rows.push_back(linear_part(g));
    return rank_kernel(Matrix::from_rows(x.nvars, rows)).kernel;
}

SubspaceBasis build_W(const IdealPresentation& x, const Vector& v) {
    require_tangent(x, v);
    const GeneratorData d = linear_and_quadratic(x, v);
    std::vector<Vector> images;
    for (std::size_t i = 0; i < d.linear.size(); ++i) {
        Vector w = d.linear[i];
        w.push_back(d.quad_at_v[i]);
        images.push_back(std::move(w));
    }
    return SubspaceBasis::span(x.nvars + 1, images);
}

ConeTestReport cone_necessary_test(const IdealPresentation& x, const Vector& v) {
    if (v.size() != x.nvars) throw DimensionError("direction vector of the wrong length");
    if (is_zero(v)) throw PreconditionError("direction vector is zero");
    ConeTestReport report;
    report.w = build_W(x, v);

    // Combinations lambda with sum lambda_i l_i = 0 are the kernel of the
    // n x m matrix whose columns are the linear parts.
    const GeneratorData d = linear_and_quadratic(x, v);
    const std::size_t m = d.linear.size();
    Matrix lin(x.nvars, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < x.nvars; ++j) lin(j, i) = d.linear[i][j];
    const SubspaceBasis combos = rank_kernel(lin).kernel;
    for (const auto& lambda : combos.basis()) {
        const Scalar c = dot(lambda, d.quad_at_v);
        if (sgn(c) == 0) continue;
        Vector witness = zero_vector(x.nvars + 1);
        witness.back() = c;
        report.passed = false;
        report.witness_coefficients = lambda;
        report.witness = std::move(witness);
        break;
    }
    return report;
}

ConeTestFailure::ConeTestFailure(ConeTestReport report)
    : PreconditionError("direction fails the tangent cone test"), report_(std::move(report)) {}

Curve3Result construct_curve3(const IdealPresentation& x, const Vector& v, std::size_t trunc) {
    if (trunc < 2) throw PreconditionError("an order-3 contact needs truncation at least 2");
    ConeTestReport cone = cone_necessary_test(x, v);
    if (!cone.passed) throw ConeTestFailure(std::move(cone));

    // Solve (gamma, 1) . w = 0 for every basis vector w of W. When W lies in
    // Q^n x {0} the system is homogeneous and the canonical solution is 0.
    const std::size_t n = x.nvars;
    Matrix a(cone.w.dim(), n);
    Vector b(cone.w.dim());
    for (std::size_t i = 0; i < cone.w.dim(); ++i) {
        const Vector& w = cone.w.basis()[i];
        for (std::size_t j = 0; j < n; ++j) a(i, j) = w[j];
        b[i] = -w.back();
    }
    auto sol = solve_affine(a, b);
    // Injectivity of the projection W -> Q^n guarantees consistency.
    if (!sol) throw Error("internal: gamma system inconsistent although the cone test passed");
    Vector gamma = std::move(sol->particular);
    const std::size_t freedom = sol->kernel.dim();

    std::vector<Vector> coeffs{x.base_point, v, gamma};
    CurveGerm curve = CurveGerm::from_coefficients(trunc, coeffs);
    OrderResult mult = multiplicity(x, curve);
    return Curve3Result{std::move(gamma), freedom, std::move(curve), mult};
}

MultiPoly hypersurface_lowest_form(const MultiPoly& f) {
    if (f.is_zero()) throw PreconditionError("the zero polynomial has no lowest form");
    if (sgn(f.coefficient(Monomial(f.nvars()))) != 0)
        throw PreconditionError("polynomial does not vanish at the origin");
    return homogeneous_component(f, *f.lowest_degree());
}

TheoremReport verify_theorem(const IdealPresentation& x, const Vector& v, std::size_t trunc) {
    TheoremReport report;
    report.cone = cone_necessary_test(x, v);
    if (!report.cone.passed) return report;
    report.curve = construct_curve3(x, v, trunc);
    report.contact_at_least_3 = report.curve->multiplicity.at_least(3);
    return report;
}

} // namespace tcone
