#ifndef TCONE_EXACTLA_HPP
#define TCONE_EXACTLA_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <tcone/scalar.hpp>

namespace tcone {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, Scalar(0)) {}

    static Matrix identity(std::size_t n);
    /// All rows must have length `cols`.
    static Matrix from_rows(std::size_t cols, const std::vector<Vector>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;
    Matrix transpose() const;

    Vector operator*(const Vector& x) const;
    Matrix operator*(const Matrix& rhs) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> entries_;
};

/// Reduced row echelon form together with the pivot column of each nonzero
/// row (pivots are in increasing column order).
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;

    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Fraction-free (Bareiss) elimination on the row-scaled integer matrix,
/// followed by normalisation to the reduced echelon form over Q.
RowEchelon row_reduce(const Matrix& a);

/// Linearly independent list of vectors spanning a subspace of Q^ambient.
///
/// The stored basis is a subset of the vectors the subspace was built from
/// (in insertion order); membership tests go through a private echelon copy.
class SubspaceBasis {
public:
    explicit SubspaceBasis(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}

    /// Span of `vectors`, keeping the first independent ones.
    static SubspaceBasis span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
    static SubspaceBasis full(std::size_t ambient_dim);

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Vector>& basis() const noexcept { return basis_; }

    /// Adds v if it is independent of the current basis; returns whether it was.
    bool insert(const Vector& v);

    bool contains(const Vector& v) const;
    bool contains(const SubspaceBasis& other) const;
    bool same_span(const SubspaceBasis& other) const;

    /// Coordinates c with v = sum_i c[i] basis()[i]; nullopt when v is not in the span.
    std::optional<Vector> coordinates(const Vector& v) const;

    SubspaceBasis operator+(const SubspaceBasis& other) const;

private:
    // Reduces v against the echelon rows; returns the remainder and fills
    // `combo` (if given) with the basis combination that was subtracted.
    Vector reduce(Vector v, Vector* combo) const;
    void check_dim(const Vector& v) const;

    std::size_t ambient_;
    std::vector<Vector> basis_;
    // Echelon rows: pivot index, row normalised to 1 at the pivot, and the
    // row written as a combination of basis_.
    struct EchelonRow {
        std::size_t pivot;
        Vector row;
        Vector combo;
    };
    std::vector<EchelonRow> echelon_;
};

struct RankKernel {
    std::size_t rank;
    SubspaceBasis kernel;
};

/// Exact rank and a basis of {x : A x = 0}. The kernel basis is canonical:
/// one vector per free column, that column set to 1 and other free columns 0.
RankKernel rank_kernel(const Matrix& a);

struct AffineSolution {
    Vector particular;
    SubspaceBasis kernel;
};

/// Solves A x = b. The particular solution has every free variable zero
/// (pivots taken in column order); nullopt when the system is inconsistent.
std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b);

/// True iff v lies in span(s). Throws DimensionError on ambient mismatch.
bool subspace_contains(const SubspaceBasis& s, const Vector& v);

/// Convenience: exact rank.
std::size_t rank(const Matrix& a);

/// Inverse of a square matrix; throws PreconditionError when singular.
Matrix inverse(const Matrix& a);

Scalar dot(const Vector& a, const Vector& b);

} // namespace tcone

#endif // TCONE_EXACTLA_HPP
