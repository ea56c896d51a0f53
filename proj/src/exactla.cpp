#include <tcone/errors.hpp>
#include <tcone/exactla.hpp>

#include <utility>

namespace tcone {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionError("matrix row of wrong length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vector Matrix::operator*(const Vector& x) const {
    if (x.size() != cols_) throw DimensionError("matrix-vector size mismatch");
    Vector y = zero_vector(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& a = (*this)(i, j);
            if (sgn(a) != 0) y[i] += a * x[j];
        }
    return y;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (rhs.rows_ != cols_) throw DimensionError("matrix product size mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

Scalar dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("dot product of vectors of different lengths");
    Scalar s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RowEchelon row_reduce(const Matrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    // Clear denominators row by row; row scaling does not change the row space.
    std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class lcm = 1;
        for (std::size_t j = 0; j < cols; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = a(i, j).get_num() * (lcm / a(i, j).get_den());
    }

    // Bareiss: after step k every entry below the pivot rows is a (k+1)-minor,
    // so the division by the previous pivot is exact.
    std::vector<std::size_t> pivots;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const mpz_class& piv = m[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                mpz_class t = piv * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }

    // Back to Q: normalise pivots to 1 and clear above them.
    Matrix red(rows, cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const mpz_class& piv = m[i][pivots[i]];
        for (std::size_t j = 0; j < cols; ++j) {
            if (m[i][j] == 0) continue;
            red(i, j) = Scalar(m[i][j], piv);
            red(i, j).canonicalize();
        }
    }
    for (std::size_t i = pivots.size(); i-- > 0;) {
        const std::size_t pc = pivots[i];
        for (std::size_t k = 0; k < i; ++k) {
            const Scalar f = red(k, pc);
            if (sgn(f) == 0) continue;
            for (std::size_t j = pc; j < cols; ++j)
                if (sgn(red(i, j)) != 0) red(k, j) -= f * red(i, j);
        }
    }
    return RowEchelon{std::move(red), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return row_reduce(a).rank(); }

namespace {

SubspaceBasis kernel_from_echelon(const RowEchelon& e, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> vecs;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector k = zero_vector(cols);
        k[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) k[e.pivots[i]] = -e.reduced(i, f);
        vecs.push_back(std::move(k));
    }
    return SubspaceBasis::span(cols, vecs);
}

} // namespace

RankKernel rank_kernel(const Matrix& a) {
    const RowEchelon e = row_reduce(a);
    return RankKernel{e.rank(), kernel_from_echelon(e, a.cols())};
}

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b) {
    if (b.size() != a.rows()) throw DimensionError("right-hand side length does not match row count");
    const std::size_t cols = a.cols();
    Matrix aug(a.rows(), cols + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
        aug(i, cols) = b[i];
    }
    RowEchelon e = row_reduce(aug);
    if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;

    Vector x = zero_vector(cols);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, cols);
    // The kernel of A is read from the same echelon form with the last column dropped.
    return AffineSolution{std::move(x), kernel_from_echelon(e, cols)};
}

bool subspace_contains(const SubspaceBasis& s, const Vector& v) { return s.contains(v); }

Matrix inverse(const Matrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionError("inverse of a non-square matrix");
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    const RowEchelon e = row_reduce(aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) throw PreconditionError("matrix is singular");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

// ---- SubspaceBasis --------------------------------------------------------

SubspaceBasis SubspaceBasis::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    SubspaceBasis s(ambient_dim);
    for (const auto& v : vectors) s.insert(v);
    return s;
}

SubspaceBasis SubspaceBasis::full(std::size_t ambient_dim) {
    SubspaceBasis s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        Vector e = zero_vector(ambient_dim);
        e[i] = 1;
        s.insert(e);
    }
    return s;
}

void SubspaceBasis::check_dim(const Vector& v) const {
    if (v.size() != ambient_)
        throw DimensionError("vector of length " + std::to_string(v.size()) + " in a subspace of Q^" +
                             std::to_string(ambient_));
}

Vector SubspaceBasis::reduce(Vector v, Vector* combo) const {
    if (combo) *combo = zero_vector(basis_.size());
    for (const auto& e : echelon_) {
        const Scalar f = v[e.pivot];
        if (sgn(f) == 0) continue;
        for (std::size_t j = e.pivot; j < ambient_; ++j)
            if (sgn(e.row[j]) != 0) v[j] -= f * e.row[j];
        if (combo)
            for (std::size_t j = 0; j < e.combo.size(); ++j) (*combo)[j] += f * e.combo[j];
    }
    return v;
}

bool SubspaceBasis::insert(const Vector& v) {
    check_dim(v);
    Vector combo;
    Vector rem = reduce(v, &combo);
    std::size_t pivot = 0;
    while (pivot < ambient_ && sgn(rem[pivot]) == 0) ++pivot;
    if (pivot == ambient_) return false;

    // rem = v - sum combo_j b_j, and v becomes the newest basis vector.
    const std::size_t idx = basis_.size();
    basis_.push_back(v);
    Vector rem_combo(idx + 1);
    for (std::size_t j = 0; j < idx; ++j) rem_combo[j] = -combo[j];
    rem_combo[idx] = 1;
    for (auto& e : echelon_) e.combo.resize(idx + 1, Scalar(0));

    const Scalar inv = 1 / rem[pivot];
    for (auto& x : rem) x *= inv;
    for (auto& x : rem_combo) x *= inv;

    // Keep echelon rows sorted by pivot so that one forward pass reduces.
    EchelonRow row{pivot, std::move(rem), std::move(rem_combo)};
    // Clear the new pivot from existing rows.
    for (auto& e : echelon_) {
        const Scalar f = e.row[pivot];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (sgn(row.row[j]) != 0) e.row[j] -= f * row.row[j];
        for (std::size_t j = 0; j <= idx; ++j) e.combo[j] -= f * row.combo[j];
    }
    auto pos = echelon_.begin();
    while (pos != echelon_.end() && pos->pivot < pivot) ++pos;
    echelon_.insert(pos, std::move(row));
    return true;
}

bool SubspaceBasis::contains(const Vector& v) const {
    check_dim(v);
    return tcone::is_zero(reduce(v, nullptr));
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("subspaces of different ambient spaces");
    for (const auto& v : other.basis_)
        if (!contains(v)) return false;
    return true;
}

bool SubspaceBasis::same_span(const SubspaceBasis& other) const {
    return other.dim() == dim() && contains(other);
}

std::optional<Vector> SubspaceBasis::coordinates(const Vector& v) const {
    check_dim(v);
    Vector combo;
    if (!tcone::is_zero(reduce(v, &combo))) return std::nullopt;
    return combo;
}

SubspaceBasis SubspaceBasis::operator+(const SubspaceBasis& other) const {
    if (other.ambient_ != ambient_) throw DimensionError("sum of subspaces of different ambient spaces");
    SubspaceBasis s = *this;
    for (const auto& v : other.basis_) s.insert(v);
    return s;
}

} // namespace tcone
