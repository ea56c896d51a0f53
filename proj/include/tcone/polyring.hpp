#ifndef TCONE_POLYRING_HPP
#define TCONE_POLYRING_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <tcone/scalar.hpp>

namespace tcone {

/// Exponent vector of a monomial. Its length is the ambient variable count.
struct Monomial {
    std::vector<unsigned> exponents;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exponents(nvars, 0) {}
    explicit Monomial(std::vector<unsigned> e) : exponents(std::move(e)) {}

    std::size_t nvars() const noexcept { return exponents.size(); }
    unsigned degree() const noexcept;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by exponent vector; zero coefficients are
/// never stored, so structural equality is value equality.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Scalar>;

    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Scalar& c);
    /// The coordinate function x_{index+1}.
    static MultiPoly variable(std::size_t nvars, std::size_t index);
    /// Linear form sum_i coeffs[i] * x_{i+1}.
    static MultiPoly linear_form(const Vector& coeffs);

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Total degree; nullopt for the zero polynomial.
    std::optional<unsigned> degree() const;
    /// Smallest total degree of a term; nullopt for the zero polynomial.
    std::optional<unsigned> lowest_degree() const;

    Scalar coefficient(const Monomial& m) const;
    /// Adds c * m, dropping the term if it cancels.
    void add_term(const Monomial& m, const Scalar& c);

    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);
    MultiPoly& operator*=(const MultiPoly& rhs);
    MultiPoly& operator*=(const Scalar& c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
    friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator-(MultiPoly a);

    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

    MultiPoly pow(unsigned e) const;
    /// Partial derivative with respect to x_{index+1}.
    MultiPoly derivative(std::size_t index) const;
    /// Polynomial obtained by substituting images[i] for x_{i+1}. All images
    /// must share one variable count, which becomes the result's.
    MultiPoly substitute(const std::vector<MultiPoly>& images) const;

private:
    void check_same_nvars(const MultiPoly& rhs) const;

    std::size_t nvars_;
    TermMap terms_;
};

/// Exact value f(p). Throws DimensionError if |p| != nvars.
Scalar poly_eval(const MultiPoly& f, const Vector& p);

/// Gradient of f at p.
Vector poly_gradient(const MultiPoly& f, const Vector& p);

/// g(x) = f(x + p), so that g(0) = f(p).
MultiPoly translate_to_origin(const MultiPoly& f, const Vector& p);

/// Sum of the terms of total degree exactly d.
MultiPoly homogeneous_component(const MultiPoly& f, unsigned d);

/// Coefficient vector of the linear part of f.
Vector linear_part(const MultiPoly& f);

/// Order of vanishing of a truncated series at t = 0.
///
/// Either an exact order m <= trunc, or "above truncation" when every stored
/// coefficient vanishes (the true order is then at least trunc + 1).
class OrderResult {
public:
    static OrderResult exact(std::size_t m, std::size_t trunc) { return OrderResult(m, trunc); }
    static OrderResult above(std::size_t trunc) { return OrderResult(std::nullopt, trunc); }

    bool above_truncation() const noexcept { return !value_; }
    /// The exact order; only valid when !above_truncation().
    std::size_t value() const { return *value_; }
    std::size_t trunc() const noexcept { return trunc_; }
    /// Guaranteed lower bound for the true order.
    std::size_t lower_bound() const noexcept { return value_ ? *value_ : trunc_ + 1; }
    /// True iff the order is certainly >= m.
    bool at_least(std::size_t m) const noexcept { return lower_bound() >= m; }

    friend bool operator==(const OrderResult&, const OrderResult&) = default;

private:
    OrderResult(std::optional<std::size_t> v, std::size_t trunc) : value_(v), trunc_(trunc) {}

    std::optional<std::size_t> value_;
    std::size_t trunc_;
};

/// Smaller of two orders (above-truncation counts as larger than any exact
/// order).
OrderResult min_order(const OrderResult& a, const OrderResult& b);

inline constexpr std::size_t default_trunc = 8;

/// Truncated power series c_0 + c_1 t + ... + c_D t^D.
class Jet {
public:
    explicit Jet(std::size_t trunc = default_trunc) : coeffs_(trunc + 1, Scalar(0)) {}
    /// Coefficients beyond the truncation are dropped; missing ones are zero.
    Jet(std::size_t trunc, const Vector& coeffs);

    static Jet constant(std::size_t trunc, const Scalar& c);
    /// The series t.
    static Jet parameter(std::size_t trunc);

    std::size_t trunc() const noexcept { return coeffs_.size() - 1; }
    const Vector& coeffs() const noexcept { return coeffs_; }
    const Scalar& operator[](std::size_t i) const { return coeffs_.at(i); }
    Scalar& operator[](std::size_t i) { return coeffs_.at(i); }

    bool is_zero() const { return tcone::is_zero(coeffs_); }

    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    Jet& operator*=(const Scalar& c);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(Jet a, const Scalar& c) { return a *= c; }
    friend Jet operator*(const Scalar& c, Jet a) { return a *= c; }

    friend bool operator==(const Jet&, const Jet&) = default;

    /// Series h(s(t)) for an inner series s with s(0) = 0.
    Jet compose(const Jet& inner) const;

private:
    void check_trunc(const Jet& rhs) const;

    Vector coeffs_;
};

/// Index of the first nonzero coefficient, or above-truncation.
OrderResult jet_order(const Jet& h);

/// Parameterized curve germ G(t) = p + t v_1 + t^2 v_2 + ..., one jet per
/// ambient coordinate, all with the same truncation.
class CurveGerm {
public:
    explicit CurveGerm(std::vector<Jet> components);

    /// G(t) = sum_k t^k coeffs[k]; every coefficient vector has length nvars.
    static CurveGerm from_coefficients(std::size_t trunc, const std::vector<Vector>& coeffs);

    std::size_t nvars() const noexcept { return components_.size(); }
    std::size_t trunc() const noexcept { return trunc_; }
    const std::vector<Jet>& components() const noexcept { return components_; }

    /// Coefficient vector of t^k.
    Vector coefficient(std::size_t k) const;
    Vector base_point() const { return coefficient(0); }
    Vector velocity() const { return trunc_ >= 1 ? coefficient(1) : zero_vector(nvars()); }
    bool is_smooth() const { return !tcone::is_zero(velocity()); }

    /// G(s(t)) for a series s with s(0) = 0.
    CurveGerm reparameterize(const Jet& s) const;

    friend bool operator==(const CurveGerm&, const CurveGerm&) = default;

private:
    std::vector<Jet> components_;
    std::size_t trunc_;
};

/// Series f(G(t)), exact through the germ's truncation.
Jet jet_compose(const MultiPoly& f, const CurveGerm& g);

} // namespace tcone

#endif // TCONE_POLYRING_HPP
