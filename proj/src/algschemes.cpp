#include <tcone/algschemes.hpp>
#include <tcone/errors.hpp>

#include "chain_equations.hpp"

namespace tcone {

IdealPresentation gen_scheme_ideal(std::size_t n, SchemeKind kind) {
    if (n == 0) throw PreconditionError("scheme dimension must be at least 1");
    const std::size_t nv = n * n * n;
    auto var = [&](std::size_t i, std::size_t j, std::size_t k) {
        return MultiPoly::variable(nv, scheme_variable(n, i, j, k));
    };

    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) gens.push_back(var(i, j, k) - var(j, i, k));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    MultiPoly q(nv);
                    for (std::size_t s = 0; s < n; ++s) {
                        q += var(i, j, s) * var(s, k, l);
                        if (kind == SchemeKind::associative) q -= var(i, s, l) * var(j, k, s);
                    }
                    gens.push_back(std::move(q));
                }
    return IdealPresentation(nv, std::move(gens));
}

Vector scheme_point(const AlgebraPoint& algebra) { return algebra.table().full(); }

AlgebraInvariants algebra_invariants(const AlgebraPoint& algebra) {
    const std::size_t n = algebra.n();
    std::vector<Vector> products;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) products.push_back(algebra.table().product(i, j));

    // x e_j = 0 for all j: row (j, k) of the system is sum_i x_i c_ij^k.
    Matrix ann(n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) ann(j * n + k, i) = algebra.table().at(i, j, k);

    return AlgebraInvariants{SubspaceBasis::span(n, products), rank_kernel(ann).kernel};
}

SubspaceBasis scheme_tangent_space(const IdealPresentation& scheme, const AlgebraPoint& algebra) {
    const std::size_t n = algebra.n();
    if (scheme.nvars != n * n * n) throw DimensionError("scheme and algebra have different dimensions");
    const Vector point = scheme_point(algebra);
    for (const auto& g : scheme.generators)
        if (sgn(poly_eval(g, point)) != 0) throw PreconditionError("algebra is not a point of the scheme");

    // Jacobian composed with the embedding of symmetric coordinates.
    const std::size_t sym = SymBilinear::coord_dim(n);
    Matrix jac(scheme.generators.size(), sym);
    for (std::size_t row = 0; row < scheme.generators.size(); ++row) {
        const Vector grad = poly_gradient(scheme.generators[row], point);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const Scalar& g = grad[scheme_variable(n, i, j, k)];
                    if (sgn(g) != 0) jac(row, SymBilinear::coord_index(n, i, j, k)) += g;
                }
    }
    return rank_kernel(jac).kernel;
}

SymBilinear coboundary(const AlgebraPoint& algebra, const Matrix& phi) {
    const std::size_t n = algebra.n();
    if (phi.rows() != n || phi.cols() != n) throw DimensionError("phi must be an n x n matrix");
    SymBilinear out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Vector ei = unit_vector(n, i), ej = unit_vector(n, j);
            Vector v = algebra.multiply(ei, phi * ej);
            const Vector t = phi * algebra.table().product(i, j);
            const Vector u = algebra.multiply(ej, phi * ei);
            for (std::size_t k = 0; k < n; ++k) out.set(i, j, k, v[k] - t[k] + u[k]);
        }
    return out;
}

SymBilinear functional_deformation(const Vector& f) {
    const std::size_t n = f.size();
    SymBilinear out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            // e_i o e_j = f(e_j) e_i + f(e_i) e_j
            out.add(i, j, i, f[j]);
            out.add(i, j, j, f[i]);
        }
    return out;
}

SubspaceBasis orbit_tangent(const AlgebraPoint& algebra) {
    const std::size_t n = algebra.n();
    SubspaceBasis s(SymBilinear::coord_dim(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Matrix phi(n, n);
            phi(a, b) = 1;
            s.insert(coboundary(algebra, phi).coords());
        }
    return s;
}

SubspaceBasis f_space(const AlgebraPoint& algebra, const Splitting& split) {
    validate_splitting(algebra, split);
    const std::size_t n = algebra.n();
    SubspaceBasis s(SymBilinear::coord_dim(n));
    // Adapted coordinate functionals of u_1..u_d vanish on N2.
    for (std::size_t a = 0; a < split.d; ++a) s.insert(functional_deformation(split.inverse.row(a)).coords());
    return s;
}

SubspaceBasis lsym_target_space(const Splitting& split) {
    SubspaceBasis s(SymBilinear::coord_dim(split.n));
    for (std::size_t a = 0; a < split.d; ++a)
        for (std::size_t b = a; b < split.d; ++b)
            for (std::size_t c = 0; c < split.r; ++c) {
                SymBilinear m(split.n);
                m.set(a, b, split.d + c, Scalar(1));
                s.insert(split.from_adapted(m).coords());
            }
    return s;
}

SubspaceBasis lsym_n1_space(const Splitting& split) {
    SubspaceBasis s(SymBilinear::coord_dim(split.n));
    for (std::size_t a = 0; a < split.d; ++a)
        for (std::size_t b = a; b < split.d; ++b)
            for (std::size_t c = 0; c < split.d; ++c) {
                SymBilinear m(split.n);
                m.set(a, b, c, Scalar(1));
                s.insert(split.from_adapted(m).coords());
            }
    return s;
}

SymMapBlocks split_blocks(const SymBilinear& m, const Splitting& split) {
    const SymBilinear ad = split.to_adapted(m);
    const std::size_t dims[2] = {split.d, split.r};
    const std::size_t offs[2] = {0, split.d};
    SymMapBlocks out;
    out.d = split.d;
    out.r = split.r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                ScalarTensor3 t(dims[i], dims[j], dims[k], Scalar(0));
                for (std::size_t a = 0; a < dims[i]; ++a)
                    for (std::size_t b = 0; b < dims[j]; ++b)
                        for (std::size_t c = 0; c < dims[k]; ++c) t(a, b, c) = ad.at(offs[i] + a, offs[j] + b, offs[k] + c);
                out.blocks[i][j][k] = std::move(t);
            }
    return out;
}

SymBilinear reassemble(const SymMapBlocks& blocks, const Splitting& split) {
    if (blocks.d != split.d || blocks.r != split.r) throw DimensionError("blocks do not match the splitting");
    const std::size_t dims[2] = {split.d, split.r};
    const std::size_t offs[2] = {0, split.d};
    SymBilinear ad(split.n);
    // Write only i <= j blocks; set() mirrors them.
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const ScalarTensor3& t = blocks.blocks[i][j][k];
                for (std::size_t a = 0; a < dims[i]; ++a)
                    for (std::size_t b = 0; b < dims[j]; ++b)
                        for (std::size_t c = 0; c < dims[k]; ++c) ad.set(offs[i] + a, offs[j] + b, offs[k] + c, t(a, b, c));
            }
    return split.from_adapted(ad);
}

TangentDecompositionReport tangent_decomposition(const AlgebraPoint& algebra, const Splitting& split) {
    validate_splitting(algebra, split);
    TangentDecompositionReport rep;
    const SubspaceBasis tangent = scheme_tangent_space(gen_scheme_ideal(algebra.n(), SchemeKind::associative), algebra);
    const SubspaceBasis lsym = lsym_target_space(split);
    const SubspaceBasis orbit = orbit_tangent(algebra);
    const SubspaceBasis known = lsym + orbit;
    rep.tangent_dim = tangent.dim();
    rep.lsym_dim = lsym.dim();
    rep.orbit_dim = orbit.dim();
    rep.known_sum_dim = known.dim();
    rep.known_contained = tangent.contains(known);

    // Lifts: joint solutions (f11, f12) of the compatibility equation.
    const std::size_t d = split.d, r = split.r, nf11 = detail::pair_count(d) * d;
    SubspaceBasis lifts(SymBilinear::coord_dim(split.n));
    SubspaceBasis hull(nf11);
    for (const auto& sol : detail::co_joint_kernel(split)) {
        hull.insert(Vector(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(nf11)));
        SymBilinear m(split.n);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = x; y < d; ++y)
                for (std::size_t z = 0; z < d; ++z) m.set(x, y, z, sol[detail::pair_index(d, x, y) * d + z]);
        for (std::size_t x = 0; x < d; ++x)
            for (std::size_t w = 0; w < r; ++w)
                for (std::size_t k = 0; k < r; ++k) m.set(x, d + w, d + k, sol[nf11 + (x * r + w) * r + k]);
        lifts.insert(split.from_adapted(m).coords());
    }
    rep.every_f11_lifts = hull.dim() == nf11;
    rep.lifted_n1_dim = lifts.dim();
    rep.lifts_contained = tangent.contains(lifts);
    const SubspaceBasis full = known + lifts;
    rep.full_sum_dim = full.dim();
    rep.equality = full.same_span(tangent);
    return rep;
}

bool is_generic_candidate(const AlgebraPoint& algebra) {
    if (!algebra.is_nilpotent3()) return false;
    const AlgebraInvariants inv = algebra_invariants(algebra);
    return inv.square.dim() == inv.annihilator.dim();
}

std::optional<AlgebraPoint> sample_generic_algebra(std::size_t d, std::size_t r, std::mt19937_64& rng, int coeff_bound,
                                                   int max_tries) {
    const std::size_t n = d + r;
    std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        SymBilinear table(n);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = a; b < d; ++b)
                for (std::size_t k = 0; k < r; ++k) table.set(a, b, d + k, Scalar(coeff(rng)));

        // Unimodular basis change: unit lower triangular times unit upper triangular.
        Matrix lower = Matrix::identity(n), upper = Matrix::identity(n);
        std::uniform_int_distribution<int> small(-1, 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                lower(i, j) = small(rng);
                upper(j, i) = small(rng);
            }
        const Matrix change = lower * upper;
        Splitting tmp;
        tmp.n = n;
        tmp.basis = inverse(change);
        tmp.inverse = change;
        AlgebraPoint candidate(tmp.to_adapted(table));
        const AlgebraInvariants inv = algebra_invariants(candidate);
        if (inv.square.dim() == r && inv.annihilator.dim() == r) return candidate;
    }
    return std::nullopt;
}

} // namespace tcone
