#include <tcone/errors.hpp>
#include <tcone/symmap.hpp>

namespace tcone {

SymBilinear SymBilinear::from_full(std::size_t n, const Vector& full) {
    if (full.size() != n * n * n) throw DimensionError("structure tensor of the wrong size");
    SymBilinear m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Scalar& a = full[(i * n + j) * n + k];
                if (a != full[(j * n + i) * n + k])
                    throw PreconditionError("multiplication table is not commutative at (" + std::to_string(i + 1) +
                                            "," + std::to_string(j + 1) + ")");
                m.data_[(i * n + j) * n + k] = a;
            }
    return m;
}

std::size_t SymBilinear::coord_index(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
    if (i > j) std::swap(i, j);
    // Pairs (i, j), i <= j, in row-major order: pairs before row i number
    // i*n - i(i-1)/2.
    const std::size_t pair = i * n - i * (i - 1) / 2 + (j - i);
    return pair * n + k;
}

SymBilinear SymBilinear::from_coords(std::size_t n, const Vector& coords) {
    if (coords.size() != coord_dim(n)) throw DimensionError("symmetric map coordinates of the wrong length");
    SymBilinear m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) m.set(i, j, k, coords[coord_index(n, i, j, k)]);
    return m;
}

void SymBilinear::set(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
    data_[(i * n_ + j) * n_ + k] = v;
    data_[(j * n_ + i) * n_ + k] = v;
}

void SymBilinear::add(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
    data_[(i * n_ + j) * n_ + k] += v;
    if (i != j) data_[(j * n_ + i) * n_ + k] += v;
}

Vector SymBilinear::product(std::size_t i, std::size_t j) const {
    Vector v(n_);
    for (std::size_t k = 0; k < n_; ++k) v[k] = at(i, j, k);
    return v;
}

Vector SymBilinear::apply(const Vector& x, const Vector& y) const {
    if (x.size() != n_ || y.size() != n_) throw DimensionError("bilinear map applied to vectors of the wrong length");
    Vector out = zero_vector(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (sgn(y[j]) == 0) continue;
            const Scalar s = x[i] * y[j];
            for (std::size_t k = 0; k < n_; ++k)
                if (sgn(at(i, j, k)) != 0) out[k] += s * at(i, j, k);
        }
    }
    return out;
}

Vector SymBilinear::coords() const {
    Vector c(coord_dim(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) c[coord_index(n_, i, j, k)] = at(i, j, k);
    return c;
}

SymBilinear& SymBilinear::operator+=(const SymBilinear& rhs) {
    if (rhs.n_ != n_) throw DimensionError("symmetric maps of different dimension");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

SymBilinear& SymBilinear::operator-=(const SymBilinear& rhs) {
    if (rhs.n_ != n_) throw DimensionError("symmetric maps of different dimension");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

SymBilinear& SymBilinear::operator*=(const Scalar& c) {
    for (auto& x : data_) x *= c;
    return *this;
}

bool AlgebraPoint::is_associative() const {
    const std::size_t n = this->n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Vector left = multiply(table_.product(i, j), unit_vector(n, k));
                const Vector right = multiply(unit_vector(n, i), table_.product(j, k));
                if (left != right) return false;
            }
    return true;
}

bool AlgebraPoint::is_nilpotent3() const {
    const std::size_t n = this->n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Vector ij = table_.product(i, j);
            for (std::size_t k = 0; k < n; ++k)
                if (!tcone::is_zero(multiply(ij, unit_vector(n, k)))) return false;
        }
    return true;
}

namespace {

SymBilinear change_basis(const SymBilinear& m, const Matrix& cols, const Matrix& inv) {
    const std::size_t n = m.n();
    SymBilinear out(n);
    std::vector<Vector> basis;
    for (std::size_t a = 0; a < n; ++a) basis.push_back(cols.column(a));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            const Vector v = inv * m.apply(basis[a], basis[b]);
            for (std::size_t k = 0; k < n; ++k) out.set(a, b, k, v[k]);
        }
    return out;
}

} // namespace

SymBilinear Splitting::to_adapted(const SymBilinear& m) const {
    if (m.n() != n) throw DimensionError("map and splitting of different dimension");
    return change_basis(m, basis, inverse);
}

SymBilinear Splitting::from_adapted(const SymBilinear& m) const {
    if (m.n() != n) throw DimensionError("map and splitting of different dimension");
    return change_basis(m, inverse, basis);
}

Splitting make_splitting(const AlgebraPoint& algebra) {
    const std::size_t n = algebra.n();
    std::vector<Vector> products;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) products.push_back(algebra.table().product(i, j));
    const RowEchelon e = row_reduce(Matrix::from_rows(n, products));

    Splitting s;
    s.n = n;
    s.r = e.rank();
    s.d = n - s.r;
    s.basis = Matrix(n, n);
    std::vector<bool> pivot(n, false);
    for (auto p : e.pivots) pivot[p] = true;
    std::size_t col = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (!pivot[k]) s.basis(k, col++) = 1;
    for (std::size_t i = 0; i < s.r; ++i, ++col)
        for (std::size_t k = 0; k < n; ++k) s.basis(k, col) = e.reduced(i, k);
    s.inverse = inverse(s.basis);
    s.adapted = change_basis(algebra.table(), s.basis, s.inverse);
    return s;
}

void validate_splitting(const AlgebraPoint& algebra, const Splitting& s) {
    const std::size_t n = algebra.n();
    if (s.n != n || s.d + s.r != n) throw PreconditionError("splitting dimensions do not add up");
    if (s.basis.rows() != n || s.basis.cols() != n || s.basis * s.inverse != Matrix::identity(n))
        throw PreconditionError("splitting basis and inverse do not match");
    std::vector<Vector> products;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) products.push_back(algebra.table().product(i, j));
    const SubspaceBasis square = SubspaceBasis::span(n, products);
    std::vector<Vector> second;
    for (std::size_t c = s.d; c < n; ++c) second.push_back(s.basis.column(c));
    if (!square.same_span(SubspaceBasis::span(n, second)) || square.dim() != s.r)
        throw PreconditionError("second summand of the splitting is not N^2");
    if (s.adapted != s.to_adapted(algebra.table())) throw PreconditionError("adapted table does not match the algebra");
}

bool SymMapBlocks::satisfies_generic_constraints() const {
    for (const auto* t : {&blocks[0][1][0], &blocks[1][1][0], &blocks[1][1][1]})
        if (!tcone::is_zero(t->data())) return false;
    return true;
}

} // namespace tcone
