#include <doctest.h>

#include <tcone/algschemes.hpp>
#include <tcone/errors.hpp>

#include "oracles.hpp"

#include <random>
#include <tuple>

using namespace tcone;

namespace {

using Product = std::tuple<std::size_t, std::size_t, Vector>;

// 1-based indices, as in algebra files.
AlgebraPoint algebra(std::size_t n, const std::vector<Product>& prods) {
    SymBilinear m(n);
    for (const auto& [i, j, v] : prods)
        for (std::size_t k = 0; k < n; ++k) m.set(i - 1, j - 1, k, v[k]);
    return AlgebraPoint(m);
}

AlgebraPoint corollary_algebra() {
    return algebra(7, {{1, 3, {0, 0, 0, 0, 1, 0, 0}},
                       {1, 4, {0, 0, 0, 0, 0, 1, 0}},
                       {2, 3, {0, 0, 0, 0, 0, 0, 1}},
                       {2, 4, {0, 0, 0, 0, 1, 1, 1}}});
}

const AlgebraPoint square_e2 = algebra(2, {{1, 1, {0, 1}}});

SymBilinear random_symmap(std::mt19937_64& rng, std::size_t n, int bound = 2) {
    std::uniform_int_distribution<int> c(-bound, bound);
    Vector coords(SymBilinear::coord_dim(n));
    for (auto& x : coords) x = c(rng);
    return SymBilinear::from_coords(n, coords);
}

Matrix random_phi(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> c(-2, 2);
    Matrix phi(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) phi(i, j) = c(rng);
    return phi;
}

} // namespace

TEST_CASE("scheme generators") {
    const IdealPresentation s2 = gen_scheme_ideal(2, SchemeKind::associative);
    CHECK(s2.nvars == 8);
    CHECK(s2.generators.size() == 2 + 16);
    CHECK(s2.generators[0] == MultiPoly::variable(8, scheme_variable(2, 0, 1, 0)) -
                                  MultiPoly::variable(8, scheme_variable(2, 1, 0, 0)));
    const IdealPresentation s1 = gen_scheme_ideal(1, SchemeKind::associative);
    CHECK(s1.nvars == 1);
    REQUIRE(s1.generators.size() == 1);
    CHECK(s1.generators[0].is_zero());
    CHECK(gen_scheme_ideal(3, SchemeKind::nilpotent3).generators.size() == 9 + 81);
    CHECK_THROWS_AS(gen_scheme_ideal(0, SchemeKind::associative), PreconditionError);
}

TEST_CASE("scheme generators vanish exactly on the scheme") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-1, 1), pick(0, 2);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = trial % 2 ? 2 : 3;
        Vector full(n * n * n);
        // Sparse tables are associative often enough to exercise both answers.
        for (auto& x : full) x = pick(rng) == 0 ? c(rng) : 0;
        if (trial % 5 == 0) full[1] = full[n] + 1;  // break commutativity sometimes
        for (auto kind : {SchemeKind::associative, SchemeKind::nilpotent3}) {
            const IdealPresentation s = gen_scheme_ideal(n, kind);
            bool all_zero = true;
            for (const auto& g : s.generators) all_zero = all_zero && poly_eval(g, full) == 0;
            CHECK(all_zero == oracle::table_defect_zero(n, full, kind == SchemeKind::nilpotent3));
        }
    }
}

TEST_CASE("algebra invariants") {
    SUBCASE("square to e2") {
        const AlgebraInvariants inv = algebra_invariants(square_e2);
        CHECK(inv.square.same_span(SubspaceBasis::span(2, {{0, 1}})));
        CHECK(inv.annihilator.same_span(SubspaceBasis::span(2, {{0, 1}})));
        CHECK(inv.member_of(1));
        CHECK(!inv.member_of(0));
        CHECK(!inv.member_of(2));
    }
    SUBCASE("zero multiplication") {
        const AlgebraInvariants inv = algebra_invariants(AlgebraPoint(SymBilinear(3)));
        CHECK(inv.square.dim() == 0);
        CHECK(inv.annihilator.dim() == 3);
        for (std::size_t r = 0; r <= 3; ++r) CHECK(inv.member_of(r));
    }
    SUBCASE("idempotent") {
        const AlgebraInvariants inv = algebra_invariants(algebra(1, {{1, 1, {1}}}));
        CHECK(inv.square.dim() == 1);
        CHECK(inv.annihilator.dim() == 0);
        CHECK(!inv.member_of(0));
        CHECK(!inv.member_of(1));
    }
}

TEST_CASE("scheme tangent spaces") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const SubspaceBasis t = scheme_tangent_space(gen_scheme_ideal(n, SchemeKind::associative), AlgebraPoint(SymBilinear(n)));
        CHECK(t.dim() == n * n * (n + 1) / 2);
    }
    const IdealPresentation s2 = gen_scheme_ideal(2, SchemeKind::associative);
    CHECK(scheme_tangent_space(s2, square_e2).dim() == oracle::scheme_tangent_dim(square_e2.table(), false));
    const IdealPresentation n2 = gen_scheme_ideal(2, SchemeKind::nilpotent3);
    CHECK(scheme_tangent_space(n2, square_e2).dim() == oracle::scheme_tangent_dim(square_e2.table(), true));
    CHECK_THROWS_AS(scheme_tangent_space(s2, algebra(2, {{1, 1, {0, 1}}, {2, 2, {1, 0}}})), PreconditionError);
    CHECK_THROWS_AS(scheme_tangent_space(gen_scheme_ideal(3, SchemeKind::associative), square_e2), DimensionError);
}

TEST_CASE("scheme tangent spaces agree with the direct differential") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        const std::size_t d = 2, r = 1 + trial % 2;
        const auto n = sample_generic_algebra(d, r, rng);
        REQUIRE(n);
        for (auto kind : {SchemeKind::associative, SchemeKind::nilpotent3}) {
            const SubspaceBasis t = scheme_tangent_space(gen_scheme_ideal(n->n(), kind), *n);
            CHECK(t.dim() == oracle::scheme_tangent_dim(n->table(), kind == SchemeKind::nilpotent3));
            for (const auto& v : t.basis())
                CHECK(is_zero(oracle::scheme_differential(n->table(), SymBilinear::from_coords(n->n(), v),
                                                          kind == SchemeKind::nilpotent3)));
        }
    }
}

TEST_CASE("orbit tangent") {
    CHECK(orbit_tangent(AlgebraPoint(SymBilinear(3))).dim() == 0);
    const SubspaceBasis orbit = orbit_tangent(square_e2);
    CHECK(orbit.dim() > 0);
    // Reconstruct phi for every basis element.
    const std::size_t n = 2;
    Matrix cob(SymBilinear::coord_dim(n), n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Matrix phi(n, n);
            phi(a, b) = 1;
            const Vector c = coboundary(square_e2, phi).coords();
            for (std::size_t i = 0; i < c.size(); ++i) cob(i, a * n + b) = c[i];
        }
    for (const auto& v : orbit.basis()) {
        const auto sol = solve_affine(cob, v);
        REQUIRE(sol);
        Matrix phi(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) phi(a, b) = sol->particular[a * n + b];
        CHECK(coboundary(square_e2, phi).coords() == v);
    }
    CHECK(coboundary(square_e2, Matrix::identity(2)) == square_e2.table());
    CHECK(orbit.contains(square_e2.table().coords()));
    CHECK_THROWS_AS(coboundary(square_e2, Matrix::identity(3)), DimensionError);
}

TEST_CASE("functional deformations") {
    const SymBilinear f = functional_deformation({1, 0});
    CHECK(f.product(0, 0) == Vector{2, 0});
    CHECK(f.product(0, 1) == Vector{0, 1});
    CHECK(f.product(1, 0) == Vector{0, 1});
    CHECK(f.product(1, 1) == Vector{0, 0});
    const Splitting s = make_splitting(square_e2);
    const SubspaceBasis fs = f_space(square_e2, s);
    CHECK(fs.dim() == 1);
    CHECK(fs.contains(f.coords()));
    CHECK(!fs.contains(functional_deformation({0, 1}).coords()));
    // f ranges over functionals vanishing on N^2 = 0: every functional.
    const AlgebraPoint zero(SymBilinear(2));
    CHECK(f_space(zero, make_splitting(zero)).dim() == 2);
    const AlgebraPoint cor = corollary_algebra();
    CHECK(f_space(cor, make_splitting(cor)).dim() <= 4);
}

TEST_CASE("splittings") {
    const Splitting s = make_splitting(square_e2);
    CHECK(s.d == 1);
    CHECK(s.r == 1);
    CHECK(s.basis == Matrix::identity(2));
    CHECK(s.mu(0, 0, 0) == 1);
    CHECK_NOTHROW(validate_splitting(square_e2, s));
    Splitting bad = s;
    bad.r = 0;
    CHECK_THROWS_AS(validate_splitting(square_e2, bad), PreconditionError);
    bad = s;
    bad.basis = Matrix::from_rows(2, {{0, 1}, {1, 0}});
    bad.inverse = bad.basis;
    CHECK_THROWS_AS(validate_splitting(square_e2, bad), PreconditionError);

    // N^2 not spanned by standard vectors.
    const AlgebraPoint skew = algebra(3, {{1, 1, {0, 1, 1}}});
    const Splitting t = make_splitting(skew);
    CHECK(t.d == 2);
    CHECK(t.basis.column(2) == Vector{0, 1, 1});
    CHECK(t.to_adapted(skew.table()) == t.adapted);
    CHECK(t.from_adapted(t.adapted) == skew.table());
}

TEST_CASE("target spaces") {
    CHECK(lsym_target_space(make_splitting(square_e2)).dim() == 1);
    const AlgebraPoint d2r1 = algebra(3, {{1, 1, {0, 0, 1}}, {2, 2, {0, 0, 1}}});
    CHECK(lsym_target_space(make_splitting(d2r1)).dim() == 3);
    const AlgebraPoint cor = corollary_algebra();
    CHECK(lsym_target_space(make_splitting(cor)).dim() == 30);
    CHECK(lsym_n1_space(make_splitting(cor)).dim() == 40);
}

TEST_CASE("block decomposition") {
    const AlgebraPoint d2r1 = algebra(3, {{1, 2, {0, 0, 1}}});
    const Splitting s = make_splitting(d2r1);
    SUBCASE("supported on N1") {
        SymBilinear m(3);
        m.set(0, 1, 0, 5);
        m.set(1, 1, 1, -1);
        const SymMapBlocks b = split_blocks(m, s);
        CHECK(b.block(0, 0, 0)(0, 1, 0) == 5);
        CHECK(b.block(0, 0, 0)(1, 0, 0) == 5);
        CHECK(b.block(0, 0, 0)(1, 1, 1) == -1);
        CHECK(is_zero(b.block(0, 0, 1).data()));
        CHECK(is_zero(b.block(0, 1, 0).data()));
        CHECK(is_zero(b.block(1, 1, 1).data()));
        CHECK(b.satisfies_generic_constraints());
    }
    SUBCASE("zero") {
        const SymMapBlocks b = split_blocks(SymBilinear(3), s);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) CHECK(is_zero(b.block(i, j, k).data()));
    }
    SUBCASE("round trip") {
        std::mt19937_64 rng(9);
        const AlgebraPoint skew = algebra(3, {{1, 1, {0, 1, 1}}, {1, 2, {0, 2, 2}}});
        const Splitting t = make_splitting(skew);
        for (int trial = 0; trial < 10; ++trial) {
            const SymBilinear m = random_symmap(rng, 3);
            CHECK(reassemble(split_blocks(m, t), t) == m);
        }
        SymMapBlocks wrong;
        wrong.d = 1;
        wrong.r = 2;
        CHECK_THROWS_AS(reassemble(wrong, t), DimensionError);
    }
    SUBCASE("generic constraints") {
        SymBilinear m(3);
        m.set(0, 2, 0, 1);  // f12 with values in N1
        CHECK(!split_blocks(m, s).satisfies_generic_constraints());
    }
}

TEST_CASE("containment of the known tangent directions") {
    std::mt19937_64 rng(21);
    for (auto [d, r] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 1}, {2, 2}, {3, 2}}) {
        const auto n = sample_generic_algebra(d, r, rng);
        REQUIRE(n);
        CHECK(is_generic_candidate(*n));
        const Splitting s = make_splitting(*n);
        const TangentDecompositionReport rep = tangent_decomposition(*n, s);
        CHECK(rep.known_contained);
        CHECK(rep.lifts_contained);
        CHECK(rep.lsym_dim == r * d * (d + 1) / 2);
        const SubspaceBasis t = scheme_tangent_space(gen_scheme_ideal(n->n(), SchemeKind::associative), *n);
        CHECK(t.contains(f_space(*n, s)));
        CHECK(rep.full_sum_dim <= rep.tangent_dim);
    }
}

TEST_CASE("generic sampling") {
    std::mt19937_64 rng(1);
    const auto n = sample_generic_algebra(3, 2, rng);
    REQUIRE(n);
    const AlgebraInvariants inv = algebra_invariants(*n);
    CHECK(inv.square.dim() == 2);
    CHECK(inv.annihilator.dim() == 2);
    CHECK(n->is_nilpotent3());
    CHECK(!sample_generic_algebra(1, 2, rng, 3, 5));
    CHECK(!is_generic_candidate(algebra(1, {{1, 1, {1}}})));
}

TEST_CASE("obstruction chains") {
    std::mt19937_64 rng(17);
    const auto n = sample_generic_algebra(2, 1, rng);
    REQUIRE(n);
    const Splitting s = make_splitting(*n);

    SUBCASE("zero f11") {
        const ChainResult res = solve_chain(*n, s, ScalarTensor3(2, 2, 2, Scalar(0)));
        REQUIRE(res.solved());
        const ObstructionChain z = ObstructionChain::zero(2, 1);
        CHECK(res.chain->f12 == z.f12);
        CHECK(res.chain->g12 == z.g12);
        CHECK(res.chain->g22 == z.g22);
        CHECK(check_ob2(*n, s, z).is_zero());
        CHECK(g22_commutativity_check(*n, s, z));
    }
    SUBCASE("coboundaries are unobstructed") {
        for (int trial = 0; trial < 5; ++trial) {
            const Matrix phi = random_phi(rng, n->n());
            const ChainResult res = solve_chain(*n, s, coboundary_f11(*n, s, phi));
            REQUIRE(res.solved());
            CHECK(res.f12_kernel_dim == 0);
            CHECK(check_co(s, *res.chain).is_zero());
            CHECK(check_ob1(s, *res.chain).is_zero());
            CHECK(check_ob2(*n, s, *res.chain).is_zero());
            CHECK(g22_commutativity_check(*n, s, *res.chain));
            // The f12 block agrees with the coboundary's own.
            const SymMapBlocks b = split_blocks(coboundary(*n, phi), s);
            CHECK(res.chain->f12 == b.block(0, 1, 1));
        }
    }
    SUBCASE("perturbing g12 breaks the second obstruction") {
        const ChainResult res = solve_chain(*n, s, coboundary_f11(*n, s, random_phi(rng, n->n())));
        REQUIRE(res.solved());
        bool some_nonzero = false;
        for (std::size_t i = 0; i < res.chain->g12.size(); ++i) {
            ObstructionChain c = *res.chain;
            c.g12.data()[i] += 1;
            const Residual r = check_ob2(*n, s, c);
            CHECK(r.shape == std::vector<std::size_t>{2, 2, 1, 1});
            some_nonzero = some_nonzero || !r.is_zero();
        }
        CHECK(some_nonzero);
    }
    SUBCASE("incompatible f11") {
        // At (d, r) = (2, 1) every f11 lifts; (3, 1) does not.
        const auto m = sample_generic_algebra(3, 1, rng);
        REQUIRE(m);
        const Splitting t = make_splitting(*m);
        bool found = false;
        std::uniform_int_distribution<int> c(-2, 2);
        for (int trial = 0; trial < 50 && !found; ++trial) {
            ScalarTensor3 f11(3, 3, 3, Scalar(0));
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = a; b < 3; ++b)
                    for (std::size_t k = 0; k < 3; ++k) f11(a, b, k) = f11(b, a, k) = c(rng);
            const ChainResult res = solve_chain(*m, t, f11);
            found = !res.solved() && res.failed_stage == ChainStage::co;
        }
        CHECK(found);
        CHECK(!tangent_decomposition(*m, t).every_f11_lifts);
        CHECK(tangent_decomposition(*n, s).every_f11_lifts);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(solve_chain(*n, s, ScalarTensor3(3, 3, 3, Scalar(0))), DimensionError);
        ScalarTensor3 asym(2, 2, 2, Scalar(0));
        asym(0, 1, 0) = 1;
        CHECK_THROWS_AS(solve_chain(*n, s, asym), PreconditionError);
        const AlgebraPoint idem = algebra(1, {{1, 1, {1}}});
        CHECK_THROWS_AS(solve_chain(idem, make_splitting(idem), ScalarTensor3(0, 0, 0, Scalar(0))),
                        PreconditionError);
    }
    CHECK(to_string(ChainStage::co) == "co");
    CHECK(to_string(ChainStage::ob2) == "ob2");
}

TEST_CASE("quadratic obstruction") {
    const AlgebraPoint& n = square_e2;
    const auto zero = quadratic_obstruction(n, SymBilinear(2));
    REQUIRE(zero);
    CHECK(zero->is_zero());
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        const SymBilinear circ = coboundary(n, random_phi(rng, 2));
        const auto star = quadratic_obstruction(n, circ);
        REQUIRE(star);
        CHECK(coboundary_operator(n) * star->coords() == associator_vector(circ));
    }
    bool obstructed = false;
    for (int trial = 0; trial < 50 && !obstructed; ++trial) {
        const SymBilinear circ = random_symmap(rng, 2, 1);
        obstructed = !quadratic_obstruction(n, circ).has_value();
    }
    CHECK(obstructed);
    CHECK_THROWS_AS(quadratic_obstruction(algebra(2, {{1, 1, {0, 1}}, {2, 2, {1, 0}}}), SymBilinear(2)),
                    PreconditionError);
}

TEST_CASE("linearised obstruction") {
    const Splitting s = make_splitting(square_e2);
    const LinearizedSystem zero = linearized_system(square_e2, SymBilinear(2), s);
    CHECK(zero.size() == lsym_target_space(s).dim());
    for (std::size_t i = 0; i < zero.size(); ++i) {
        CHECK(is_zero(zero.rhs[i]));
        CHECK(zero.feasible(i));
    }
    std::mt19937_64 rng(8);
    const SymBilinear circ = random_symmap(rng, 2);
    CHECK(is_zero(linearized_rhs(circ, SymBilinear(2))));
    const LinearizedSystem sys = linearized_system(square_e2, circ, s);
    CHECK(sys.size() == 1);
    CHECK(sys.coboundary.rows() == 16);
}

TEST_CASE("tangent cone criterion") {
    SUBCASE("injective multiplication") {
        const Thm1Report rep = thm1_test(square_e2, make_splitting(square_e2));
        CHECK(rep.ker_mu_dim == 0);
        CHECK(rep.verdict == Thm1Verdict::holds_linear);
        CHECK(rep.holds());
    }
    SUBCASE("zero multiplication at d = 2") {
        const AlgebraPoint zero(SymBilinear(2));
        const Thm1Report rep = thm1_test(zero, make_splitting(zero));
        CHECK(rep.ker_mu_dim == 3);
        CHECK(rep.hull_dim == 6);
        // Direct enumeration: 0/1 tables that are associative and nonzero exist.
        std::size_t associative = 0;
        for (unsigned bits = 1; bits < 64; ++bits) {
            Vector coords(6);
            for (unsigned i = 0; i < 6; ++i) coords[i] = (bits >> i) & 1u;
            const SymBilinear m = SymBilinear::from_coords(2, coords);
            associative += oracle::table_defect_zero(2, m.full(), false) ? 1 : 0;
        }
        CHECK(associative > 0);
        CHECK(rep.verdict == Thm1Verdict::fails);
        REQUIRE(rep.witness);
        SymBilinear w(2);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t c = 0; c < 2; ++c) w.set(a, b, c, (*rep.witness)(a, b, c));
        CHECK(!w.is_zero());
        CHECK(oracle::table_defect_zero(2, w.full(), false));
    }
    SUBCASE("corollary algebra") {
        const AlgebraPoint cor = corollary_algebra();
        const Thm1Report rep = thm1_test(cor, make_splitting(cor));
        CHECK(rep.ker_mu_dim == 7);
        CHECK(rep.holds());
    }
    CHECK(ker_mu(make_splitting(corollary_algebra())).dim() == 7);
    CHECK_THROWS_AS(thm1_test(algebra(1, {{1, 1, {1}}}), make_splitting(algebra(1, {{1, 1, {1}}}))),
                    PreconditionError);
}

TEST_CASE("dimension identity") {
    const DimIdentity a = dim_identity_check(4, 5);
    CHECK(a.lhs == 20);
    CHECK(a.rhs == 20);
    CHECK(a.equal);
    const DimIdentity b = dim_identity_check(5, 8);
    CHECK(b.lhs == 35);
    CHECK(b.equal);
    const DimIdentity c = dim_identity_check(4, 3);
    CHECK(c.lhs == 28);
    CHECK(c.rhs == 20);
    CHECK(!c.equal);
}

TEST_CASE("corollary") {
    const AlgebraPoint cor = corollary_algebra();
    const Splitting s = make_splitting(cor);
    const CorollaryReport rep = corollary_check(cor, s, {{0, 1}, {2, 3}});
    CHECK(rep.forces_zero);
    CHECK(rep.constraints > 0);
    CHECK(rep.pair_identity == std::vector<bool>{true, true});

    SUBCASE("violations are reported one by one") {
        try {
            corollary_check(cor, s, {{0, 2}, {1, 1}});
            FAIL("expected PreconditionError");
        } catch (const PreconditionError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("pair (1,3): product is not zero") != std::string::npos);
            CHECK(msg.find("pair (2,2) does not pair distinct generators") != std::string::npos);
            CHECK(msg.find("u4 has no paired generator") != std::string::npos);
        }
        const AlgebraPoint small = algebra(3, {{1, 2, {0, 0, 1}}});
        try {
            corollary_check(small, make_splitting(small), {{0, 1}});
            FAIL("expected PreconditionError");
        } catch (const PreconditionError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("not divisible by 4") != std::string::npos);
            CHECK(msg.find("(5d^2 - 8d)/16") != std::string::npos);
            CHECK(msg.find("u1^2") == std::string::npos);
        }
    }
}

TEST_CASE("corollary identity") {
    const CorollaryIdentity id = corollary_identity();
    const MultiPoly fu = MultiPoly::variable(2, 0), fv = MultiPoly::variable(2, 1);
    // Coordinates (u, v).
    CHECK(id.term_a == CorollaryIdentity::PolyVec{fu * fv * Scalar(2), fu * fu * Scalar(2)});
    CHECK(id.term_b == CorollaryIdentity::PolyVec{fu * fv, fu * fu});
    CHECK(id.term_c == CorollaryIdentity::PolyVec{fu * fv * Scalar(2), MultiPoly(2)});
    CHECK(id.expected == CorollaryIdentity::PolyVec{-(fu * fv), fu * fu});
    CHECK(id.combined == id.expected);
    CHECK(id.via_map == id.expected);
}
