#ifndef TCONE_SYMMAP_HPP
#define TCONE_SYMMAP_HPP

#include <cstddef>
#include <vector>

#include <tcone/exactla.hpp>
#include <tcone/scalar.hpp>

namespace tcone {

/// Symmetric bilinear map m: Q^n x Q^n -> Q^n, m(e_i, e_j) = sum_k c_ij^k e_k.
///
/// Stored densely as the full n^3 tensor; every write goes to both (i,j)
/// and (j,i), so symmetry holds by construction. The coordinate vector
/// (coords()) lists c_ij^k for i <= j, k ascending, giving dimension
/// n * n(n+1)/2.
class SymBilinear {
public:
    explicit SymBilinear(std::size_t n = 0) : n_(n), data_(n * n * n, Scalar(0)) {}

    /// From the full tensor indexed (i*n + j)*n + k. Throws PreconditionError
    /// if the tensor is not symmetric in (i, j).
    static SymBilinear from_full(std::size_t n, const Vector& full);
    static SymBilinear from_coords(std::size_t n, const Vector& coords);

    static std::size_t coord_dim(std::size_t n) { return n * n * (n + 1) / 2; }
    static std::size_t coord_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k);

    std::size_t n() const noexcept { return n_; }
    const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }
    void set(std::size_t i, std::size_t j, std::size_t k, const Scalar& v);
    void add(std::size_t i, std::size_t j, std::size_t k, const Scalar& v);

    /// m(e_i, e_j) as a vector.
    Vector product(std::size_t i, std::size_t j) const;
    /// m(x, y) for arbitrary vectors.
    Vector apply(const Vector& x, const Vector& y) const;

    Vector coords() const;
    const Vector& full() const noexcept { return data_; }
    bool is_zero() const { return tcone::is_zero(data_); }

    SymBilinear& operator+=(const SymBilinear& rhs);
    SymBilinear& operator-=(const SymBilinear& rhs);
    SymBilinear& operator*=(const Scalar& c);
    friend SymBilinear operator+(SymBilinear a, const SymBilinear& b) { return a += b; }
    friend SymBilinear operator-(SymBilinear a, const SymBilinear& b) { return a -= b; }
    friend SymBilinear operator*(const Scalar& c, SymBilinear a) { return a *= c; }

    friend bool operator==(const SymBilinear&, const SymBilinear&) = default;

private:
    std::size_t n_;
    Vector data_;
};

/// Structure constants of a commutative multiplication on Q^n.
class AlgebraPoint {
public:
    explicit AlgebraPoint(SymBilinear table) : table_(std::move(table)) {}

    std::size_t n() const noexcept { return table_.n(); }
    const SymBilinear& table() const noexcept { return table_; }
    Vector multiply(const Vector& x, const Vector& y) const { return table_.apply(x, y); }

    bool is_associative() const;
    /// All triple products (xy)z vanish.
    bool is_nilpotent3() const;

    friend bool operator==(const AlgebraPoint&, const AlgebraPoint&) = default;

private:
    SymBilinear table_;
};

/// Basis change exhibiting N = N1 + N2 with N2 = N^2.
///
/// The adapted basis is u_1..u_d (spanning N1) followed by w_1..w_r
/// (spanning N2); `basis` holds these as columns in the original coordinates.
struct Splitting {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t r = 0;
    Matrix basis;
    Matrix inverse;
    /// The multiplication of N written in the adapted basis.
    SymBilinear adapted;

    SymBilinear to_adapted(const SymBilinear& m) const;
    SymBilinear from_adapted(const SymBilinear& m) const;

    /// Component on w_k of the product u_a u_b (a, b < d, k < r).
    const Scalar& mu(std::size_t a, std::size_t b, std::size_t k) const { return adapted.at(a, b, d + k); }
};

/// N2 is spanned by the reduced echelon rows of the product span; N1 by the
/// standard basis vectors at the non-pivot columns.
Splitting make_splitting(const AlgebraPoint& algebra);

/// Throws PreconditionError if `s` is not a splitting of `algebra` with
/// second summand exactly N^2.
void validate_splitting(const AlgebraPoint& algebra, const Splitting& s);

/// Dense three-index array, used for the blocks f_ij^k of a symmetric map.
template <class T>
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(std::size_t a, std::size_t b, std::size_t c, const T& fill)
        : a_(a), b_(b), c_(c), data_(a * b * c, fill) {}

    std::size_t dim0() const noexcept { return a_; }
    std::size_t dim1() const noexcept { return b_; }
    std::size_t dim2() const noexcept { return c_; }
    std::size_t size() const noexcept { return data_.size(); }

    T& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * b_ + j) * c_ + k]; }
    const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * b_ + j) * c_ + k]; }
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * b_ + j) * c_ + k; }

    const std::vector<T>& data() const noexcept { return data_; }
    std::vector<T>& data() noexcept { return data_; }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    std::size_t a_ = 0, b_ = 0, c_ = 0;
    std::vector<T> data_;
};

using ScalarTensor3 = Tensor3<Scalar>;

/// Blocks f_ij^k in L(N_i (x) N_j, N_k) of a symmetric map, i, j, k in {1, 2}
/// (stored with 0-based indices). block(i, j, k) has shape
/// dim N_i x dim N_j x dim N_k and block(j, i, k) is its transpose.
struct SymMapBlocks {
    std::size_t d = 0;
    std::size_t r = 0;
    ScalarTensor3 blocks[2][2][2];

    const ScalarTensor3& block(int i, int j, int k) const { return blocks[i][j][k]; }

    /// f_12^1 = f_22^1 = f_22^2 = 0.
    bool satisfies_generic_constraints() const;
};

} // namespace tcone

#endif // TCONE_SYMMAP_HPP
