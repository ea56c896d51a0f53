#ifndef TCONE_CONECURVE_HPP
#define TCONE_CONECURVE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <tcone/errors.hpp>
#include <tcone/exactla.hpp>
#include <tcone/polyring.hpp>

namespace tcone {

/// Affine scheme cut out by explicit generators, with a marked base point.
///
/// Everything below is computed relative to the given generators: for a
/// non-radical presentation the multiplicity is scheme-theoretic, i.e.
/// measured against the ideal actually generated, not its radical.
struct IdealPresentation {
    std::size_t nvars = 0;
    std::vector<MultiPoly> generators;
    Vector base_point;

    IdealPresentation() = default;
    /// Base point defaults to the origin. Throws DimensionError on
    /// mismatched generators and PreconditionError on an empty list.
    IdealPresentation(std::size_t n, std::vector<MultiPoly> gens, Vector point = {});

    /// True iff every generator vanishes at the base point.
    bool base_point_on_variety() const;
    /// Generators rewritten in coordinates centred at the base point.
    std::vector<MultiPoly> translated_generators() const;
};

/// Intersection multiplicity of a smooth germ with the scheme at the base
/// point: min over generators of ord_t g(G(t)). Requires a smooth germ whose
/// base point is the presentation's base point.
OrderResult multiplicity(const IdealPresentation& x, const CurveGerm& c);

/// Zariski tangent space: common kernel of the generators' linear parts.
/// Throws PreconditionError when the base point is not on the variety.
SubspaceBasis tangent_space(const IdealPresentation& x);

/// Span of (l_g, q_g(v)) in Q^{n+1} over the generators g (translated to the
/// base point). Throws PreconditionError unless v lies in the tangent space.
SubspaceBasis build_W(const IdealPresentation& x, const Vector& v);

struct ConeTestReport {
    bool passed = true;
    SubspaceBasis w;
    /// Generator coefficients lambda and the W element sum lambda_i (l_i, q_i(v))
    /// = (0, ..., 0, c) with c != 0; present iff the test failed.
    std::optional<Vector> witness_coefficients;
    std::optional<Vector> witness;
};

/// Necessary condition for v to lie in the tangent cone: no combination of
/// generators has vanishing linear part but q(v) != 0.
ConeTestReport cone_necessary_test(const IdealPresentation& x, const Vector& v);

struct Curve3Result {
    Vector gamma;
    /// Dimension of the solution space of l(gamma) + q(v) = 0 around the
    /// returned canonical gamma (0 when gamma is forced).
    std::size_t gamma_freedom = 0;
    CurveGerm curve;
    OrderResult multiplicity;
};

/// Thrown by construct_curve3 when the cone test fails; carries the report.
class ConeTestFailure : public PreconditionError {
public:
    explicit ConeTestFailure(ConeTestReport report);
    const ConeTestReport& report() const noexcept { return report_; }

private:
    ConeTestReport report_;
};

/// Smooth germ p + t v + t^2 gamma with contact order >= 3.
Curve3Result construct_curve3(const IdealPresentation& x, const Vector& v, std::size_t trunc = default_trunc);

/// Lowest-degree homogeneous form of f (the tangent cone of a hypersurface
/// through the origin).
MultiPoly hypersurface_lowest_form(const MultiPoly& f);

struct TheoremReport {
    ConeTestReport cone;
    std::optional<Curve3Result> curve;
    bool contact_at_least_3 = false;
};

/// Runs the cone test and, if it passes, the order-3 curve construction.
TheoremReport verify_theorem(const IdealPresentation& x, const Vector& v, std::size_t trunc = default_trunc);

} // namespace tcone

#endif // TCONE_CONECURVE_HPP
