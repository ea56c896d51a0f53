#ifndef TCONE_ALGSCHEMES_HPP
#define TCONE_ALGSCHEMES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <tcone/conecurve.hpp>
#include <tcone/exactla.hpp>
#include <tcone/polyring.hpp>
#include <tcone/symmap.hpp>

namespace tcone {

// ---------------------------------------------------------------------------
// Structure-constant schemes

enum class SchemeKind {
    associative, ///< commutative + associative multiplications (C_n)
    nilpotent3,  ///< commutative multiplications with all triple products zero (A_n)
};

/// Index of the variable c_ij^k among the n^3 structure constants.
constexpr std::size_t scheme_variable(std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
    return (i * n + j) * n + k;
}

/// Generators of the scheme in the n^3 variables c_ij^k: the commutativity
/// forms c_ij^k - c_ji^k (i < j), then n^4 quadrics indexed (i, j, k, l):
/// associativity sum_s c_ij^s c_sk^l - c_is^l c_jk^s, or for nilpotent3 the
/// triple products sum_s c_ij^s c_sk^l. Identically zero quadrics are kept,
/// so the count is always n(n-1)/2 * n + n^4.
IdealPresentation gen_scheme_ideal(std::size_t n, SchemeKind kind);

/// Point of Q^{n^3} holding the structure constants of `algebra`.
Vector scheme_point(const AlgebraPoint& algebra);

struct AlgebraInvariants {
    SubspaceBasis square;      ///< N^2
    SubspaceBasis annihilator; ///< Ann_N N = {x : xN = 0}

    /// dim N^2 <= r <= dim Ann.
    bool member_of(std::size_t r) const { return square.dim() <= r && r <= annihilator.dim(); }
};

AlgebraInvariants algebra_invariants(const AlgebraPoint& algebra);

/// Kernel of the scheme's Jacobian at the algebra, intersected with the
/// symmetric maps; returned in SymBilinear coordinates. Throws
/// PreconditionError if the algebra is not on the scheme.
SubspaceBasis scheme_tangent_space(const IdealPresentation& scheme, const AlgebraPoint& algebra);

/// x o y = x phi(y) - phi(xy) + y phi(x).
SymBilinear coboundary(const AlgebraPoint& algebra, const Matrix& phi);

/// x o y = f(y) x + f(x) y for a linear functional f.
SymBilinear functional_deformation(const Vector& f);

/// Tangent space to the GL(n) orbit: all coboundaries.
SubspaceBasis orbit_tangent(const AlgebraPoint& algebra);

/// The space F: functional deformations with f vanishing on N^2.
SubspaceBasis f_space(const AlgebraPoint& algebra, const Splitting& split);

/// L(S^2(N/N^2), N^2) embedded as symmetric maps: dimension r d(d+1)/2.
SubspaceBasis lsym_target_space(const Splitting& split);

/// L(S^2 N1, N1) embedded as symmetric maps supported on N1 x N1 -> N1.
SubspaceBasis lsym_n1_space(const Splitting& split);

/// Block decomposition in the adapted basis; exact inverse of reassemble().
SymMapBlocks split_blocks(const SymBilinear& m, const Splitting& split);
SymBilinear reassemble(const SymMapBlocks& blocks, const Splitting& split);

/// Comparison of T_N C_n with L(S^2(N/N^2),N^2) + T_N GN + (lifted) L(S^2 N1, N1).
struct TangentDecompositionReport {
    std::size_t tangent_dim = 0;
    std::size_t lsym_dim = 0;
    std::size_t orbit_dim = 0;
    std::size_t known_sum_dim = 0;    ///< dim(lsym + orbit)
    std::size_t lifted_n1_dim = 0;    ///< dim of the f11-blocks that admit an f12 lift
    std::size_t full_sum_dim = 0;     ///< dim(lsym + orbit + lifts)
    bool known_contained = false;     ///< lsym + orbit inside T_N C_n
    bool lifts_contained = false;     ///< every lift inside T_N C_n
    bool every_f11_lifts = false;     ///< each f11 in L(S^2 N1, N1) has an f12 lift
    bool equality = false;            ///< T_N C_n equals the full sum
};

TangentDecompositionReport tangent_decomposition(const AlgebraPoint& algebra, const Splitting& split);

/// dim N^2 = r = dim Ann, nilpotent of degree 3.
bool is_generic_candidate(const AlgebraPoint& algebra);

/// Random degree-3 nilpotent algebra with dim N1 = d and dim N^2 = r =
/// dim Ann: a random integer map S^2 N1 -> N2 conjugated by a random
/// unimodular basis change. Retries up to `max_tries` times.
std::optional<AlgebraPoint> sample_generic_algebra(std::size_t d, std::size_t r, std::mt19937_64& rng,
                                                   int coeff_bound = 3, int max_tries = 50);

// ---------------------------------------------------------------------------
// Obstruction equations

/// The maps of an obstruction chain, all in the adapted basis of a splitting.
struct ObstructionChain {
    ScalarTensor3 f11; ///< S^2 N1 -> N1, shape d x d x d
    ScalarTensor3 f12; ///< N1 (x) N2 -> N2, shape d x r x r
    ScalarTensor3 g12; ///< N1 (x) N2 -> N1, shape d x r x d
    ScalarTensor3 g22; ///< N2 (x) N2 -> N2, shape r x r x r

    static ObstructionChain zero(std::size_t d, std::size_t r);
};

enum class ChainStage { co, ob1, ob2, g22 };

std::string to_string(ChainStage stage);

struct ChainResult {
    std::optional<ObstructionChain> chain;
    std::optional<ChainStage> failed_stage;
    std::size_t f12_kernel_dim = 0; ///< freedom in f12 for the given f11
    std::size_t g12_kernel_dim = 0; ///< freedom in g12 from the first obstruction alone

    bool solved() const noexcept { return chain.has_value(); }
};

/// Solves the compatibility equation for f12, the first obstruction for g12
/// (refined by the second obstruction when g12 is not unique), then derives
/// g22. Returns the first stage whose linear system is inconsistent. When
/// f12 is not unique (f12_kernel_dim > 0) the particular solution with free
/// coordinates zero is carried forward, so a later failure refers to that f12.
ChainResult solve_chain(const AlgebraPoint& algebra, const Splitting& split, const ScalarTensor3& f11);

/// Residual of the second obstruction, indexed (x, y, w, k) with x, y in N1,
/// w, k in N2; zero iff it holds.
struct Residual {
    std::vector<std::size_t> shape;
    Vector values;
    bool is_zero() const { return tcone::is_zero(values); }
};

Residual check_ob2(const AlgebraPoint& algebra, const Splitting& split, const ObstructionChain& chain);

/// Residuals of the compatibility equation and the first obstruction.
Residual check_co(const Splitting& split, const ObstructionChain& chain);
Residual check_ob1(const Splitting& split, const ObstructionChain& chain);

/// Explicit symmetry test g22(a, b) == g22(b, a).
bool g22_commutativity_check(const AlgebraPoint& algebra, const Splitting& split, const ObstructionChain& chain);

/// f11 block of the coboundary of phi in the adapted basis.
ScalarTensor3 coboundary_f11(const AlgebraPoint& algebra, const Splitting& split, const Matrix& phi);

/// The linear map star |-> x(y*z) - (xy)*z + x*(yz) - (x*y)z, as an
/// (n^4 x dim SymBilinear) matrix with rows indexed ((x*n + y)*n + z)*n + l.
Matrix coboundary_operator(const AlgebraPoint& algebra);

/// (x o y) o z - x o (y o z), flattened like coboundary_operator rows.
Vector associator_vector(const SymBilinear& circ);

/// Second-order obstruction: a star solving the associativity defect
/// equation, or nullopt when circ is obstructed. Requires an associative
/// algebra.
std::optional<SymBilinear> quadratic_obstruction(const AlgebraPoint& algebra, const SymBilinear& circ);

/// Linearised obstruction, one system per basis element * of
/// L(S^2(N/N^2),N^2): coboundary_operator(star) = rhs[i] with
/// rhs[i] = (x o y)*z + (x*y) o z - x o (y*z) - x*(y o z).
struct LinearizedSystem {
    Matrix coboundary;
    std::vector<SymBilinear> directions;
    std::vector<Vector> rhs;

    std::size_t size() const noexcept { return directions.size(); }
    bool feasible(std::size_t i) const;
};

/// rhs for one explicit direction *.
Vector linearized_rhs(const SymBilinear& circ, const SymBilinear& direction);

LinearizedSystem linearized_system(const AlgebraPoint& algebra, const SymBilinear& circ, const Splitting& split);

// ---------------------------------------------------------------------------
// Tangent cone criterion

enum class Thm1Verdict {
    holds_linear,    ///< every f11 admitting an f12 vanishes on ker mu
    holds_certified, ///< quadratic constraints force the restriction to zero
    fails,           ///< verified solution whose f11 is nonzero on ker mu
    undecided,
};

std::string to_string(Thm1Verdict v);

struct Thm1Report {
    Thm1Verdict verdict = Thm1Verdict::undecided;
    std::size_t d = 0, r = 0;
    std::size_t ker_mu_dim = 0;
    std::size_t hull_dim = 0;        ///< dim of f11's admitting an f12
    std::size_t restricted_dim = 0;  ///< dim of the hull restricted to ker mu
    std::size_t quadratic_constraints = 0;
    std::size_t certified_forms = 0; ///< linear forms proven to vanish
    std::optional<ScalarTensor3> witness; ///< f11 of a full solution, when verdict is fails

    bool holds() const noexcept {
        return verdict == Thm1Verdict::holds_linear || verdict == Thm1Verdict::holds_certified;
    }
};

/// Does every solution of the compatibility equation and both obstructions
/// have f11 = 0 on ker(mu: S^2 N1 -> N2)? Requires a degree-3 nilpotent
/// algebra and a valid splitting.
Thm1Report thm1_test(const AlgebraPoint& algebra, const Splitting& split);

/// Kernel of mu: S^2 N1 -> N2, vectors indexed by pairs a <= b of N1 basis
/// vectors (row-major).
SubspaceBasis ker_mu(const Splitting& split);

struct DimIdentity {
    std::int64_t lhs = 0; ///< d (d(d+1)/2 - r)
    std::int64_t rhs = 0; ///< d(d+1)(d+2)/6
    bool equal = false;
};

DimIdentity dim_identity_check(std::int64_t d, std::int64_t r);

struct CorollaryReport {
    bool forces_zero = false;
    std::size_t constraints = 0;
    /// Per pair (u, v): the first obstruction at (u, u, v) equals
    /// f(u)^2 v - f(u) f(v) u as a polynomial identity.
    std::vector<bool> pair_identity;
};

/// Generator pairs (a, b), 0-based indices into the N1 basis, with u_a u_b = 0.
using GeneratorPairing = std::vector<std::pair<std::size_t, std::size_t>>;

/// Restricts f11 to f(x)y + f(y)x - psi(xy) and checks that the first
/// obstruction forces f = 0. Throws PreconditionError, one message per
/// violated condition.
CorollaryReport corollary_check(const AlgebraPoint& algebra, const Splitting& split, const GeneratorPairing& pairing);

/// The substitution x = y = u, z = v in the first obstruction for
/// f11(x, y) = f(x)y + f(y)x with u^2 = uv = 0, carried out in span{u, v}
/// with f(u), f(v) symbolic. Vectors are (coefficient of u, coefficient of v)
/// over Q[f(u), f(v)].
struct CorollaryIdentity {
    using PolyVec = std::vector<MultiPoly>;
    PolyVec term_a; ///< 2f(u)(f(u)v + f(v)u)
    PolyVec term_b; ///< f(u)(f(u)v + f(v)u)
    PolyVec term_c; ///< f(v)(2f(u)u)
    PolyVec combined;   ///< term_a - term_b - term_c
    PolyVec via_map;    ///< f11(f11(u,u),v) - f11(u, f11(u,v)) computed from the bilinear map
    PolyVec expected;   ///< f(u)^2 v - f(u) f(v) u
};

CorollaryIdentity corollary_identity();

} // namespace tcone

#endif // TCONE_ALGSCHEMES_HPP
