// Linear systems and left-hand sides of the compatibility equation and the
// obstruction equations, instantiated over basis vectors of N1 and N2 in the
// adapted basis of a splitting. Left-hand sides are templated so that the
// same code evaluates them on numeric maps (Scalar) and on maps whose
// entries are polynomials in unknown parameters (MultiPoly).
//
// Row layouts (x, y, z in N1; w in N2):
//   co   ((x*d + y)*d + z)*r + k,  k in N2
//   ob1  ((x*d + y)*d + z)*d + k,  k in N1
//   ob2  ((x*d + y)*r + w)*r + k,  k in N2
//   g22  same as ob2
// Unknown layouts: f12 (x*r + w)*r + k, g12 (x*r + w)*d + a, g22 (w1*r + w2)*r + k.

#ifndef TCONE_SRC_CHAIN_EQUATIONS_HPP
#define TCONE_SRC_CHAIN_EQUATIONS_HPP

#include <tcone/exactla.hpp>
#include <tcone/polyring.hpp>
#include <tcone/symmap.hpp>

#include <utility>
#include <vector>

namespace tcone::detail {

inline bool is_zero_value(const Scalar& s) { return sgn(s) == 0; }
inline bool is_zero_value(const MultiPoly& p) { return p.is_zero(); }

inline std::size_t f12_unknowns(const Splitting& s) { return s.d * s.r * s.r; }
inline std::size_t g12_unknowns(const Splitting& s) { return s.d * s.r * s.d; }
inline std::size_t g22_unknowns(const Splitting& s) { return s.r * s.r * s.r; }

/// Right-hand side of f12(x, yz) - f12(z, xy) = f11(x, y) z - x f11(y, z).
template <class T>
std::vector<T> co_lhs(const Splitting& s, const Tensor3<T>& f11, const T& zero) {
    const std::size_t d = s.d, r = s.r;
    std::vector<T> out(d * d * d * r, zero);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t z = 0; z < d; ++z)
                for (std::size_t k = 0; k < r; ++k) {
                    T& acc = out[((x * d + y) * d + z) * r + k];
                    for (std::size_t a = 0; a < d; ++a) {
                        if (!is_zero_value(s.mu(a, z, k)) && !is_zero_value(f11(x, y, a)))
                            acc += f11(x, y, a) * s.mu(a, z, k);
                        if (!is_zero_value(s.mu(x, a, k)) && !is_zero_value(f11(y, z, a)))
                            acc -= f11(y, z, a) * s.mu(x, a, k);
                    }
                }
    return out;
}

inline Matrix co_matrix(const Splitting& s) {
    const std::size_t d = s.d, r = s.r;
    Matrix m(d * d * d * r, f12_unknowns(s));
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t z = 0; z < d; ++z)
                for (std::size_t k = 0; k < r; ++k) {
                    const std::size_t row = ((x * d + y) * d + z) * r + k;
                    for (std::size_t w = 0; w < r; ++w) {
                        m(row, (x * r + w) * r + k) += s.mu(y, z, w);
                        m(row, (z * r + w) * r + k) -= s.mu(x, y, w);
                    }
                }
    return m;
}

/// f11(f11(x, y), z) - f11(x, f11(y, z)).
template <class T>
std::vector<T> ob1_lhs(const Splitting& s, const Tensor3<T>& f11, const T& zero) {
    const std::size_t d = s.d;
    std::vector<T> out(d * d * d * d, zero);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t z = 0; z < d; ++z)
                for (std::size_t a = 0; a < d; ++a) {
                    const T& xy = f11(x, y, a);
                    const T& yz = f11(y, z, a);
                    const bool xy0 = is_zero_value(xy), yz0 = is_zero_value(yz);
                    if (xy0 && yz0) continue;
                    for (std::size_t k = 0; k < d; ++k) {
                        T& acc = out[((x * d + y) * d + z) * d + k];
                        if (!xy0 && !is_zero_value(f11(a, z, k))) acc += xy * f11(a, z, k);
                        if (!yz0 && !is_zero_value(f11(x, a, k))) acc -= yz * f11(x, a, k);
                    }
                }
    return out;
}

/// g12 side of the first obstruction: g12(x, yz) - g12(z, xy).
inline Matrix ob1_matrix(const Splitting& s) {
    const std::size_t d = s.d, r = s.r;
    Matrix m(d * d * d * d, g12_unknowns(s));
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t z = 0; z < d; ++z)
                for (std::size_t k = 0; k < d; ++k) {
                    const std::size_t row = ((x * d + y) * d + z) * d + k;
                    for (std::size_t w = 0; w < r; ++w) {
                        m(row, (x * r + w) * d + k) += s.mu(y, z, w);
                        m(row, (z * r + w) * d + k) -= s.mu(x, y, w);
                    }
                }
    return m;
}

/// f12(x, f12(y, w)) - f12(y, f12(x, w)).
template <class T>
std::vector<T> ob2_lhs(const Splitting& s, const Tensor3<T>& f12, const T& zero) {
    const std::size_t d = s.d, r = s.r;
    std::vector<T> out(d * d * r * r, zero);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t w = 0; w < r; ++w)
                for (std::size_t v = 0; v < r; ++v) {
                    const T& yw = f12(y, w, v);
                    const T& xw = f12(x, w, v);
                    const bool yw0 = is_zero_value(yw), xw0 = is_zero_value(xw);
                    if (yw0 && xw0) continue;
                    for (std::size_t k = 0; k < r; ++k) {
                        T& acc = out[((x * d + y) * r + w) * r + k];
                        if (!yw0 && !is_zero_value(f12(x, v, k))) acc += yw * f12(x, v, k);
                        if (!xw0 && !is_zero_value(f12(y, v, k))) acc -= xw * f12(y, v, k);
                    }
                }
    return out;
}

/// g12 side of the second obstruction: x g12(y, w) - y g12(x, w).
inline Matrix ob2_matrix(const Splitting& s) {
    const std::size_t d = s.d, r = s.r;
    Matrix m(d * d * r * r, g12_unknowns(s));
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t w = 0; w < r; ++w)
                for (std::size_t k = 0; k < r; ++k) {
                    const std::size_t row = ((x * d + y) * r + w) * r + k;
                    for (std::size_t a = 0; a < d; ++a) {
                        m(row, (y * r + w) * d + a) += s.mu(x, a, k);
                        m(row, (x * r + w) * d + a) -= s.mu(y, a, k);
                    }
                }
    return m;
}

/// g22(xy, w) = x g12(y, w) - f12(f11(x, y), w) + f12(x, f12(y, w)).
inline Matrix g22_matrix(const Splitting& s) {
    const std::size_t d = s.d, r = s.r;
    Matrix m(d * d * r * r, g22_unknowns(s));
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t w = 0; w < r; ++w)
                for (std::size_t k = 0; k < r; ++k) {
                    const std::size_t row = ((x * d + y) * r + w) * r + k;
                    for (std::size_t w1 = 0; w1 < r; ++w1) m(row, (w1 * r + w) * r + k) += s.mu(x, y, w1);
                }
    return m;
}

inline Vector g22_rhs(const Splitting& s, const ScalarTensor3& f11, const ScalarTensor3& f12,
                      const ScalarTensor3& g12) {
    const std::size_t d = s.d, r = s.r;
    Vector out = zero_vector(d * d * r * r);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y)
            for (std::size_t w = 0; w < r; ++w)
                for (std::size_t k = 0; k < r; ++k) {
                    Scalar& acc = out[((x * d + y) * r + w) * r + k];
                    for (std::size_t a = 0; a < d; ++a) {
                        acc += g12(y, w, a) * s.mu(x, a, k);
                        acc -= f11(x, y, a) * f12(a, w, k);
                    }
                    for (std::size_t v = 0; v < r; ++v) acc += f12(y, w, v) * f12(x, v, k);
                }
    return out;
}

inline Matrix stack(const Matrix& top, const Matrix& bottom) {
    Matrix m(top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) m(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < bottom.cols(); ++j) m(top.rows() + i, j) = bottom(i, j);
    return m;
}

inline ScalarTensor3 tensor_from(const Vector& v, std::size_t a, std::size_t b, std::size_t c) {
    ScalarTensor3 t(a, b, c, Scalar(0));
    t.data() = v;
    return t;
}

inline std::size_t pair_count(std::size_t d) { return d * (d + 1) / 2; }

/// Index of the unordered pair {a, b} among the d(d+1)/2 pairs, row-major.
inline std::size_t pair_index(std::size_t d, std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return a * d - a * (a - 1) / 2 + (b - a);
}

/// f11 from coordinates pair*d + c.
inline ScalarTensor3 f11_from_coords(std::size_t d, const Vector& coords) {
    ScalarTensor3 t(d, d, d, Scalar(0));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) t(a, b, c) = coords[pair_index(d, a, b) * d + c];
    return t;
}

/// Kernel of the compatibility equation in the joint unknowns
/// (f11 coordinates pair*d + c, then f12).
inline std::vector<Vector> co_joint_kernel(const Splitting& s) {
    const std::size_t d = s.d, nf11 = pair_count(d) * d, nf12 = f12_unknowns(s);
    const Matrix co = co_matrix(s);
    Matrix joint(co.rows(), nf11 + nf12);
    for (std::size_t col = 0; col < nf11; ++col) {
        Vector e = zero_vector(nf11);
        e[col] = 1;
        const Vector lhs = co_lhs(s, f11_from_coords(d, e), Scalar(0));
        for (std::size_t i = 0; i < lhs.size(); ++i) joint(i, col) = -lhs[i];
    }
    for (std::size_t i = 0; i < co.rows(); ++i)
        for (std::size_t j = 0; j < nf12; ++j) joint(i, nf11 + j) = co(i, j);
    return rank_kernel(joint).kernel.basis();
}

} // namespace tcone::detail

#endif // TCONE_SRC_CHAIN_EQUATIONS_HPP
