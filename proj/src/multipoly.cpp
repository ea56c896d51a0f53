#include <tcone/errors.hpp>
#include <tcone/polyring.hpp>

#include <numeric>

namespace tcone {

unsigned Monomial::degree() const noexcept {
    return std::accumulate(exponents.begin(), exponents.end(), 0u);
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Scalar& c) {
    MultiPoly p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DimensionError("variable index out of range");
    Monomial m(nvars);
    m.exponents[index] = 1;
    MultiPoly p(nvars);
    p.add_term(m, Scalar(1));
    return p;
}

MultiPoly MultiPoly::linear_form(const Vector& coeffs) {
    MultiPoly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (sgn(coeffs[i]) == 0) continue;
        Monomial m(coeffs.size());
        m.exponents[i] = 1;
        p.add_term(m, coeffs[i]);
    }
    return p;
}

std::optional<unsigned> MultiPoly::degree() const {
    if (terms_.empty()) return std::nullopt;
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

std::optional<unsigned> MultiPoly::lowest_degree() const {
    if (terms_.empty()) return std::nullopt;
    unsigned d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
    return d;
}

Scalar MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Scalar& c) {
    if (m.nvars() != nvars_) throw DimensionError("monomial length does not match variable count");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

void MultiPoly::check_same_nvars(const MultiPoly& rhs) const {
    if (rhs.nvars_ != nvars_)
        throw DimensionError("polynomials over " + std::to_string(nvars_) + " and " +
                             std::to_string(rhs.nvars_) + " variables");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
    check_same_nvars(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
    check_same_nvars(rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same_nvars(b);
    MultiPoly out(a.nvars_);
    Monomial prod(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < a.nvars_; ++i) prod.exponents[i] = ma.exponents[i] + mb.exponents[i];
            out.add_term(prod, ca * cb);
        }
    }
    return out;
}

MultiPoly operator-(MultiPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = constant(nvars_, Scalar(1));
    MultiPoly base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

MultiPoly MultiPoly::derivative(std::size_t index) const {
    if (index >= nvars_) throw DimensionError("variable index out of range");
    MultiPoly out(nvars_);
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.exponents[index];
        if (e == 0) continue;
        Monomial dm = m;
        dm.exponents[index] = e - 1;
        out.add_term(dm, c * e);
    }
    return out;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
    if (images.size() != nvars_) throw DimensionError("substitution needs one image per variable");
    const std::size_t target = images.empty() ? 0 : images.front().nvars();
    for (const auto& im : images)
        if (im.nvars() != target) throw DimensionError("substitution images over different rings");

    // Cache powers of each image: powers[i][e] = images[i]^e.
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(constant(target, Scalar(1)));

    MultiPoly out(target);
    for (const auto& [m, c] : terms_) {
        MultiPoly term = constant(target, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            const unsigned e = m.exponents[i];
            if (e == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
            term *= pw[e];
        }
        out += term;
    }
    return out;
}

namespace {

void check_point(const MultiPoly& f, const Vector& p) {
    if (p.size() != f.nvars())
        throw DimensionError("point of length " + std::to_string(p.size()) + " for polynomial in " +
                             std::to_string(f.nvars()) + " variables");
}

Scalar monomial_value(const Monomial& m, const Vector& p) {
    Scalar v(1);
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        for (unsigned e = 0; e < m.exponents[i]; ++e) v *= p[i];
        if (sgn(v) == 0) break;
    }
    return v;
}

} // namespace

Scalar poly_eval(const MultiPoly& f, const Vector& p) {
    check_point(f, p);
    Scalar sum(0);
    for (const auto& [m, c] : f.terms()) sum += c * monomial_value(m, p);
    return sum;
}

Vector poly_gradient(const MultiPoly& f, const Vector& p) {
    check_point(f, p);
    Vector grad = zero_vector(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            const unsigned e = m.exponents[i];
            if (e == 0) continue;
            Monomial dm = m;
            dm.exponents[i] = e - 1;
            grad[i] += c * e * monomial_value(dm, p);
        }
    }
    return grad;
}

MultiPoly translate_to_origin(const MultiPoly& f, const Vector& p) {
    check_point(f, p);
    const std::size_t n = f.nvars();
    std::vector<MultiPoly> shifted;
    shifted.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        shifted.push_back(MultiPoly::variable(n, i) + MultiPoly::constant(n, p[i]));
    return f.substitute(shifted);
}

MultiPoly homogeneous_component(const MultiPoly& f, unsigned d) {
    MultiPoly out(f.nvars());
    for (const auto& [m, c] : f.terms())
        if (m.degree() == d) out.add_term(m, c);
    return out;
}

Vector linear_part(const MultiPoly& f) {
    Vector l = zero_vector(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        if (m.degree() != 1) continue;
        for (std::size_t i = 0; i < m.nvars(); ++i)
            if (m.exponents[i] == 1) l[i] = c;
    }
    return l;
}

} // namespace tcone
