#include <tcone/errors.hpp>
#include <tcone/polyring.hpp>

#include <algorithm>

namespace tcone {

OrderResult min_order(const OrderResult& a, const OrderResult& b) {
    return b.lower_bound() < a.lower_bound() ? b : a;
}

Jet::Jet(std::size_t trunc, const Vector& coeffs) : coeffs_(trunc + 1, Scalar(0)) {
    for (std::size_t i = 0; i < coeffs.size() && i <= trunc; ++i) coeffs_[i] = coeffs[i];
}

Jet Jet::constant(std::size_t trunc, const Scalar& c) {
    Jet j(trunc);
    j.coeffs_[0] = c;
    return j;
}

Jet Jet::parameter(std::size_t trunc) {
    Jet j(trunc);
    if (trunc >= 1) j.coeffs_[1] = 1;
    return j;
}

void Jet::check_trunc(const Jet& rhs) const {
    if (rhs.trunc() != trunc()) throw DimensionError("jets with different truncation orders");
}

Jet& Jet::operator+=(const Jet& rhs) {
    check_trunc(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
    check_trunc(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

Jet& Jet::operator*=(const Scalar& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_trunc(b);
    const std::size_t d = a.trunc();
    Jet out(d);
    for (std::size_t i = 0; i <= d; ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; i + j <= d; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
}

Jet Jet::compose(const Jet& inner) const {
    check_trunc(inner);
    if (sgn(inner[0]) != 0) throw PreconditionError("inner series of a composition must vanish at t = 0");
    // Horner: h(s) = c0 + s (c1 + s (c2 + ...)).
    const std::size_t d = trunc();
    Jet acc = constant(d, coeffs_[d]);
    for (std::size_t k = d; k-- > 0;) {
        acc = acc * inner;
        acc.coeffs_[0] += coeffs_[k];
    }
    return acc;
}

OrderResult jet_order(const Jet& h) {
    const auto& c = h.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (sgn(c[i]) != 0) return OrderResult::exact(i, h.trunc());
    return OrderResult::above(h.trunc());
}

CurveGerm::CurveGerm(std::vector<Jet> components) : components_(std::move(components)), trunc_(0) {
    if (components_.empty()) throw DimensionError("a curve germ needs at least one coordinate");
    trunc_ = components_.front().trunc();
    for (const auto& c : components_)
        if (c.trunc() != trunc_) throw DimensionError("curve components with different truncation orders");
}

CurveGerm CurveGerm::from_coefficients(std::size_t trunc, const std::vector<Vector>& coeffs) {
    if (coeffs.empty()) throw DimensionError("a curve germ needs at least its base point");
    const std::size_t n = coeffs.front().size();
    std::vector<Jet> comps(n, Jet(trunc));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].size() != n) throw DimensionError("curve coefficient vectors of different lengths");
        if (k > trunc) {
            if (!tcone::is_zero(coeffs[k])) throw DimensionError("curve coefficient beyond the truncation order");
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) comps[i][k] = coeffs[k][i];
    }
    return CurveGerm(std::move(comps));
}

Vector CurveGerm::coefficient(std::size_t k) const {
    Vector v;
    v.reserve(components_.size());
    for (const auto& c : components_) v.push_back(c[k]);
    return v;
}

CurveGerm CurveGerm::reparameterize(const Jet& s) const {
    std::vector<Jet> comps;
    comps.reserve(components_.size());
    for (const auto& c : components_) comps.push_back(c.compose(s));
    return CurveGerm(std::move(comps));
}

Jet jet_compose(const MultiPoly& f, const CurveGerm& g) {
    if (f.nvars() != g.nvars())
        throw DimensionError("polynomial in " + std::to_string(f.nvars()) + " variables composed with a curve in " +
                             std::to_string(g.nvars()) + "-space");
    const std::size_t d = g.trunc();
    std::vector<std::vector<Jet>> powers(g.nvars(), std::vector<Jet>{Jet::constant(d, Scalar(1))});
    Jet out(d);
    for (const auto& [m, c] : f.terms()) {
        Jet term = Jet::constant(d, c);
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            const unsigned e = m.exponents[i];
            if (e == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e) pw.push_back(pw.back() * g.components()[i]);
            term = term * pw[e];
        }
        out += term;
    }
    return out;
}

} // namespace tcone
