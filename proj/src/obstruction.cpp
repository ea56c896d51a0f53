#include <tcone/algschemes.hpp>
#include <tcone/errors.hpp>

#include "chain_equations.hpp"

namespace tcone {

using detail::stack;
using detail::tensor_from;

ObstructionChain ObstructionChain::zero(std::size_t d, std::size_t r) {
    return ObstructionChain{ScalarTensor3(d, d, d, Scalar(0)), ScalarTensor3(d, r, r, Scalar(0)),
                            ScalarTensor3(d, r, d, Scalar(0)), ScalarTensor3(r, r, r, Scalar(0))};
}

std::string to_string(ChainStage stage) {
    switch (stage) {
    case ChainStage::co: return "co";
    case ChainStage::ob1: return "ob1";
    case ChainStage::ob2: return "ob2";
    case ChainStage::g22: return "g22";
    }
    return "?";
}

namespace {

void require_nilpotent_split(const AlgebraPoint& algebra, const Splitting& split) {
    if (!algebra.is_nilpotent3()) throw PreconditionError("algebra is not nilpotent of degree 3");
    validate_splitting(algebra, split);
}

void require_f11_shape(const Splitting& split, const ScalarTensor3& f11) {
    const std::size_t d = split.d;
    if (f11.dim0() != d || f11.dim1() != d || f11.dim2() != d) throw DimensionError("f11 must have shape d x d x d");
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < a; ++b)
            for (std::size_t c = 0; c < d; ++c)
                if (f11(a, b, c) != f11(b, a, c)) throw PreconditionError("f11 is not symmetric");
}

void require_chain_shape(const Splitting& s, const ObstructionChain& c) {
    auto check = [](const ScalarTensor3& t, std::size_t a, std::size_t b, std::size_t cc, const char* name) {
        if (t.dim0() != a || t.dim1() != b || t.dim2() != cc)
            throw DimensionError(std::string("chain component ") + name + " has the wrong shape");
    };
    check(c.f11, s.d, s.d, s.d, "f11");
    check(c.f12, s.d, s.r, s.r, "f12");
    check(c.g12, s.d, s.r, s.d, "g12");
    check(c.g22, s.r, s.r, s.r, "g22");
}

Residual residual(const Matrix& m, const Vector& unknowns, const Vector& lhs, std::vector<std::size_t> shape) {
    Vector v = m * unknowns;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = lhs[i] - v[i];
    return Residual{std::move(shape), std::move(v)};
}

} // namespace

ChainResult solve_chain(const AlgebraPoint& algebra, const Splitting& split, const ScalarTensor3& f11) {
    require_nilpotent_split(algebra, split);
    require_f11_shape(split, f11);
    const std::size_t d = split.d, r = split.r;
    ChainResult res;

    const auto co = solve_affine(detail::co_matrix(split), detail::co_lhs(split, f11, Scalar(0)));
    if (!co) {
        res.failed_stage = ChainStage::co;
        return res;
    }
    res.f12_kernel_dim = co->kernel.dim();
    const ScalarTensor3 f12 = tensor_from(co->particular, d, r, r);

    const Matrix ob1 = detail::ob1_matrix(split);
    const Vector ob1_rhs = detail::ob1_lhs(split, f11, Scalar(0));
    const auto g12_first = solve_affine(ob1, ob1_rhs);
    if (!g12_first) {
        res.failed_stage = ChainStage::ob1;
        return res;
    }
    res.g12_kernel_dim = g12_first->kernel.dim();

    // When g12 is not pinned down by the first obstruction, pick one that
    // also satisfies the second.
    Vector both_rhs = ob1_rhs;
    const Vector ob2_rhs = detail::ob2_lhs(split, f12, Scalar(0));
    both_rhs.insert(both_rhs.end(), ob2_rhs.begin(), ob2_rhs.end());
    const auto g12_both = solve_affine(stack(ob1, detail::ob2_matrix(split)), both_rhs);
    if (!g12_both) {
        res.failed_stage = ChainStage::ob2;
        return res;
    }
    const ScalarTensor3 g12 = tensor_from(g12_both->particular, d, r, d);

    const auto g22 = solve_affine(detail::g22_matrix(split), detail::g22_rhs(split, f11, f12, g12));
    if (!g22) {
        res.failed_stage = ChainStage::g22;
        return res;
    }
    res.chain = ObstructionChain{f11, f12, g12, tensor_from(g22->particular, r, r, r)};
    return res;
}

Residual check_co(const Splitting& split, const ObstructionChain& chain) {
    require_chain_shape(split, chain);
    const std::size_t d = split.d, r = split.r;
    return residual(detail::co_matrix(split), chain.f12.data(), detail::co_lhs(split, chain.f11, Scalar(0)),
                    {d, d, d, r});
}

Residual check_ob1(const Splitting& split, const ObstructionChain& chain) {
    require_chain_shape(split, chain);
    const std::size_t d = split.d;
    return residual(detail::ob1_matrix(split), chain.g12.data(), detail::ob1_lhs(split, chain.f11, Scalar(0)),
                    {d, d, d, d});
}

Residual check_ob2(const AlgebraPoint& algebra, const Splitting& split, const ObstructionChain& chain) {
    validate_splitting(algebra, split);
    require_chain_shape(split, chain);
    const std::size_t d = split.d, r = split.r;
    return residual(detail::ob2_matrix(split), chain.g12.data(), detail::ob2_lhs(split, chain.f12, Scalar(0)),
                    {d, d, r, r});
}

bool g22_commutativity_check(const AlgebraPoint& algebra, const Splitting& split, const ObstructionChain& chain) {
    validate_splitting(algebra, split);
    require_chain_shape(split, chain);
    const std::size_t r = split.r;
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < a; ++b)
            for (std::size_t k = 0; k < r; ++k)
                if (chain.g22(a, b, k) != chain.g22(b, a, k)) return false;
    return true;
}

ScalarTensor3 coboundary_f11(const AlgebraPoint& algebra, const Splitting& split, const Matrix& phi) {
    return split_blocks(coboundary(algebra, phi), split).blocks[0][0][0];
}

namespace {

// x(y*z) - (xy)*z + x*(yz) - (x*y)z over basis triples.
Vector coboundary_defect(const SymBilinear& mult, const SymBilinear& star) {
    const std::size_t n = mult.n();
    Vector out = zero_vector(n * n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Vector ex = unit_vector(n, x), ez = unit_vector(n, z);
                const Vector a = mult.apply(ex, star.product(y, z));
                const Vector b = star.apply(mult.product(x, y), ez);
                const Vector c = star.apply(ex, mult.product(y, z));
                const Vector e = mult.apply(star.product(x, y), ez);
                for (std::size_t l = 0; l < n; ++l) out[((x * n + y) * n + z) * n + l] = a[l] - b[l] + c[l] - e[l];
            }
    return out;
}

} // namespace

Matrix coboundary_operator(const AlgebraPoint& algebra) {
    const std::size_t n = algebra.n();
    const std::size_t cols = SymBilinear::coord_dim(n);
    Matrix m(n * n * n * n, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        Vector e = zero_vector(cols);
        e[c] = 1;
        const Vector col = coboundary_defect(algebra.table(), SymBilinear::from_coords(n, e));
        for (std::size_t i = 0; i < col.size(); ++i) m(i, c) = col[i];
    }
    return m;
}

Vector associator_vector(const SymBilinear& circ) {
    const std::size_t n = circ.n();
    Vector out = zero_vector(n * n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Vector a = circ.apply(circ.product(x, y), unit_vector(n, z));
                const Vector b = circ.apply(unit_vector(n, x), circ.product(y, z));
                for (std::size_t l = 0; l < n; ++l) out[((x * n + y) * n + z) * n + l] = a[l] - b[l];
            }
    return out;
}

std::optional<SymBilinear> quadratic_obstruction(const AlgebraPoint& algebra, const SymBilinear& circ) {
    if (circ.n() != algebra.n()) throw DimensionError("deformation and algebra of different dimension");
    if (!algebra.is_associative()) throw PreconditionError("algebra is not associative");
    auto sol = solve_affine(coboundary_operator(algebra), associator_vector(circ));
    if (!sol) return std::nullopt;
    return SymBilinear::from_coords(algebra.n(), sol->particular);
}

Vector linearized_rhs(const SymBilinear& circ, const SymBilinear& dir) {
    const std::size_t n = circ.n();
    if (dir.n() != n) throw DimensionError("direction and deformation of different dimension");
    Vector out = zero_vector(n * n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const Vector ex = unit_vector(n, x), ez = unit_vector(n, z);
                const Vector a = dir.apply(circ.product(x, y), ez);
                const Vector b = circ.apply(dir.product(x, y), ez);
                const Vector c = circ.apply(ex, dir.product(y, z));
                const Vector e = dir.apply(ex, circ.product(y, z));
                for (std::size_t l = 0; l < n; ++l) out[((x * n + y) * n + z) * n + l] = a[l] + b[l] - c[l] - e[l];
            }
    return out;
}

bool LinearizedSystem::feasible(std::size_t i) const { return solve_affine(coboundary, rhs.at(i)).has_value(); }

LinearizedSystem linearized_system(const AlgebraPoint& algebra, const SymBilinear& circ, const Splitting& split) {
    if (circ.n() != algebra.n()) throw DimensionError("deformation and algebra of different dimension");
    if (!algebra.is_associative()) throw PreconditionError("algebra is not associative");
    validate_splitting(algebra, split);
    LinearizedSystem sys;
    sys.coboundary = coboundary_operator(algebra);
    const SubspaceBasis targets = lsym_target_space(split);
    for (const auto& coords : targets.basis()) {
        SymBilinear dir = SymBilinear::from_coords(algebra.n(), coords);
        sys.rhs.push_back(linearized_rhs(circ, dir));
        sys.directions.push_back(std::move(dir));
    }
    return sys;
}

} // namespace tcone
