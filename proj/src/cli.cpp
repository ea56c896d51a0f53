#include <tcone/algschemes.hpp>
#include <tcone/cli.hpp>
#include <tcone/errors.hpp>
#include <tcone/io.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

namespace tcone::cli {

namespace {

enum Exit { ok = 0, negative = 1, bad_input = 2 };

struct Options {
    std::string ideal, curve, algebra, f11, circ, emit, v, poly, pairs, kind = "assoc";
    std::size_t trunc = default_trunc;
    std::size_t n = 0, vars = 0;
    std::int64_t d = 0, r = 0;
    bool linearized = false;
};

std::ofstream open_emit(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParseError(0, "cannot write '" + path + "'");
    return f;
}

void emit_vectors(const std::string& path, std::size_t ambient, const std::vector<Vector>& vs) {
    if (path.empty()) return;
    auto f = open_emit(path);
    f << "basis " << ambient << ' ' << vs.size() << '\n';
    for (const auto& v : vs) f << "vector " << to_string(v) << '\n';
}

void print_basis(std::ostream& out, const SubspaceBasis& s) {
    out << "dim: " << s.dim() << '\n';
    for (const auto& v : s.basis()) out << "  " << to_string(v) << '\n';
}

std::string order_text(const char* name, const OrderResult& o) {
    if (o.above_truncation())
        return std::string(name) + " ≥ " + std::to_string(o.lower_bound()) + " (above truncation)";
    return std::string(name) + " = " + std::to_string(o.value());
}

Vector require_vector(const std::string& text, std::size_t n) {
    Vector v = parse_vector(text);
    if (v.size() != n)
        throw DimensionError("vector has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
    return v;
}

SchemeKind parse_kind(const std::string& s) {
    if (s == "assoc") return SchemeKind::associative;
    if (s == "nilp3") return SchemeKind::nilpotent3;
    throw ParseError(0, "unknown scheme kind '" + s + "' (expected assoc or nilp3)");
}

CurveGerm retruncate(const CurveGerm& c, std::size_t trunc) {
    std::vector<Jet> comps;
    for (const auto& j : c.components()) {
        Jet out(trunc);
        for (std::size_t k = 0; k <= std::min(trunc, j.trunc()); ++k) out[k] = j[k];
        comps.push_back(std::move(out));
    }
    return CurveGerm(std::move(comps));
}

void print_splitting(std::ostream& out, const Splitting& s) {
    out << "d: " << s.d << '\n' << "r: " << s.r << '\n';
    for (std::size_t c = 0; c < s.n; ++c)
        out << (c < s.d ? "u" + std::to_string(c + 1) : "w" + std::to_string(c - s.d + 1)) << ": "
            << to_string(s.basis.column(c)) << '\n';
}

GeneratorPairing parse_pairs(const std::string& text) {
    GeneratorPairing out;
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw ParseError(0, "pair '" + tok + "' is not of the form a:b");
        try {
            const long a = std::stol(tok.substr(0, colon)), b = std::stol(tok.substr(colon + 1));
            if (a < 1 || b < 1) throw ParseError(0, "pair '" + tok + "': indices are 1-based");
            out.emplace_back(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1));
        } catch (const std::logic_error&) {
            throw ParseError(0, "pair '" + tok + "' is not of the form a:b");
        }
    }
    if (out.empty()) throw ParseError(0, "no generator pairs given");
    return out;
}

// The N1 block of a map file, read in the adapted basis u_1..u_d.
ScalarTensor3 f11_from_map(const SymBilinear& m, std::size_t d) {
    if (m.n() != d) throw DimensionError("f11 map must have dimension d = " + std::to_string(d));
    ScalarTensor3 t(d, d, d, Scalar(0));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) t(a, b, c) = m.at(a, b, c);
    return t;
}

void print_tensor(std::ostream& out, const char* name, const ScalarTensor3& t) {
    out << name << ":";
    if (is_zero(t.data())) {
        out << " 0\n";
        return;
    }
    out << '\n';
    for (std::size_t a = 0; a < t.dim0(); ++a)
        for (std::size_t b = 0; b < t.dim1(); ++b) {
            Vector row(t.dim2());
            for (std::size_t c = 0; c < t.dim2(); ++c) row[c] = t(a, b, c);
            if (!is_zero(row)) out << "  (" << a + 1 << "," << b + 1 << "): " << to_string(row) << '\n';
        }
}

int run_imult(const Options& o, std::ostream& out, bool trunc_given) {
    const IdealPresentation x = read_ideal_file(o.ideal);
    CurveGerm c = read_curve_file(o.curve);
    if (trunc_given) c = retruncate(c, o.trunc);
    const OrderResult m = multiplicity(x, c);
    out << "trunc: " << c.trunc() << '\n';
    out << "multiplicity: " << (m.above_truncation() ? "above truncation" : std::to_string(m.value())) << '\n';
    out << "result: " << order_text("multiplicity", m) << '\n';
    return ok;
}

int run_tspace(const Options& o, std::ostream& out) {
    const IdealPresentation x = read_ideal_file(o.ideal);
    const SubspaceBasis t = tangent_space(x);
    print_basis(out, t);
    emit_vectors(o.emit, x.nvars, t.basis());
    return ok;
}

int run_conetest(const Options& o, std::ostream& out) {
    const IdealPresentation x = read_ideal_file(o.ideal);
    const ConeTestReport rep = cone_necessary_test(x, require_vector(o.v, x.nvars));
    out << "W ";
    print_basis(out, rep.w);
    if (rep.passed) {
        out << "result: pass\n";
        return ok;
    }
    out << "coefficients: " << to_string(*rep.witness_coefficients) << '\n';
    out << "witness: " << to_string(*rep.witness) << '\n';
    out << "result: fail\n";
    return negative;
}

int run_curve3(const Options& o, std::ostream& out) {
    const IdealPresentation x = read_ideal_file(o.ideal);
    const Vector v = require_vector(o.v, x.nvars);
    try {
        const Curve3Result res = construct_curve3(x, v, o.trunc);
        out << "gamma: " << to_string(res.gamma) << '\n';
        out << "gamma freedom: " << res.gamma_freedom << '\n';
        out << "trunc: " << o.trunc << '\n';
        out << "result: " << order_text("contact", res.multiplicity) << '\n';
        if (!o.emit.empty()) {
            auto f = open_emit(o.emit);
            write_curve(f, res.curve);
        }
        return ok;
    } catch (const ConeTestFailure& e) {
        out << "witness: " << to_string(*e.report().witness) << '\n';
        out << "result: cone test failed\n";
        return negative;
    }
}

int run_lowestform(const Options& o, std::ostream& out) {
    MultiPoly f;
    if (!o.poly.empty()) {
        if (o.vars == 0) throw ParseError(0, "--poly needs --vars");
        f = parse_polynomial(o.poly, o.vars);
    } else {
        const IdealPresentation x = read_ideal_file(o.ideal);
        if (x.generators.size() != 1) throw PreconditionError("a hypersurface needs exactly one generator");
        f = translate_to_origin(x.generators[0], x.base_point);
    }
    const MultiPoly low = hypersurface_lowest_form(f);
    out << "degree: " << (low.lowest_degree() ? std::to_string(*low.lowest_degree()) : "none") << '\n';
    out << "result: " << format_polynomial(low) << '\n';
    return ok;
}

int run_scheme_gen(const Options& o, std::ostream& out) {
    const IdealPresentation s = gen_scheme_ideal(o.n, parse_kind(o.kind));
    std::size_t nonzero = 0;
    for (const auto& g : s.generators) nonzero += g.is_zero() ? 0 : 1;
    out << "variables: " << s.nvars << '\n';
    out << "generators: " << s.generators.size() << '\n';
    out << "nonzero generators: " << nonzero << '\n';
    if (!o.emit.empty()) {
        auto f = open_emit(o.emit);
        f << "vars " << s.nvars << '\n';
        for (const auto& g : s.generators)
            if (!g.is_zero()) f << "gen " << format_polynomial(g) << '\n';
    }
    return ok;
}

int run_scheme_tangent(const Options& o, std::ostream& out) {
    const AlgebraPoint a = read_algebra_file(o.algebra);
    const SubspaceBasis t = scheme_tangent_space(gen_scheme_ideal(a.n(), parse_kind(o.kind)), a);
    out << "ambient: " << SymBilinear::coord_dim(a.n()) << '\n';
    print_basis(out, t);
    emit_vectors(o.emit, SymBilinear::coord_dim(a.n()), t.basis());
    return ok;
}

int run_spaces(const Options& o, std::ostream& out) {
    const AlgebraPoint a = read_algebra_file(o.algebra);
    const AlgebraInvariants inv = algebra_invariants(a);
    out << "n: " << a.n() << '\n';
    out << "associative: " << (a.is_associative() ? "yes" : "no") << '\n';
    out << "nilpotent3: " << (a.is_nilpotent3() ? "yes" : "no") << '\n';
    out << "dim N^2: " << inv.square.dim() << '\n';
    out << "dim Ann: " << inv.annihilator.dim() << '\n';
    if (!a.is_associative()) {
        out << "result: not associative\n";
        return negative;
    }
    const Splitting s = make_splitting(a);
    print_splitting(out, s);
    const TangentDecompositionReport rep = tangent_decomposition(a, s);
    const SubspaceBasis f = f_space(a, s);
    const SubspaceBasis tangent = scheme_tangent_space(gen_scheme_ideal(a.n(), SchemeKind::associative), a);
    out << "dim T_N C_n: " << rep.tangent_dim << '\n';
    out << "dim L(S^2(N/N^2),N^2): " << rep.lsym_dim << '\n';
    out << "dim orbit tangent: " << rep.orbit_dim << '\n';
    out << "dim F: " << f.dim() << '\n';
    out << "dim lifted L(S^2 N1,N1): " << rep.lifted_n1_dim << '\n';
    out << "every f11 lifts: " << (rep.every_f11_lifts ? "yes" : "no") << '\n';
    const bool contained = rep.known_contained && tangent.contains(f);
    out << "L + orbit + F inside tangent: " << (contained ? "yes" : "no") << '\n';
    out << "dim of full sum: " << rep.full_sum_dim << '\n';
    out << "result: tangent space " << (rep.equality ? "equals" : "differs from") << " the full sum\n";
    return contained ? ok : negative;
}

int run_chain(const Options& o, std::ostream& out) {
    const AlgebraPoint a = read_algebra_file(o.algebra);
    const Splitting s = make_splitting(a);
    print_splitting(out, s);
    const ScalarTensor3 f11 =
        o.f11.empty() ? ScalarTensor3(s.d, s.d, s.d, Scalar(0)) : f11_from_map(read_symmap_file(o.f11), s.d);
    const ChainResult res = solve_chain(a, s, f11);
    if (res.f12_kernel_dim > 0)
        out << "note: f12 is not unique (kernel dim " << res.f12_kernel_dim
            << "); later stages use the solution with free coordinates zero\n";
    if (!res.solved()) {
        out << "result: infeasible at " << to_string(*res.failed_stage) << '\n';
        return negative;
    }
    out << "f12 kernel dim: " << res.f12_kernel_dim << '\n';
    out << "g12 kernel dim: " << res.g12_kernel_dim << '\n';
    print_tensor(out, "f12", res.chain->f12);
    print_tensor(out, "g12", res.chain->g12);
    print_tensor(out, "g22", res.chain->g22);
    out << "ob2 residual zero: " << (check_ob2(a, s, *res.chain).is_zero() ? "yes" : "no") << '\n';
    out << "g22 symmetric: " << (g22_commutativity_check(a, s, *res.chain) ? "yes" : "no") << '\n';
    out << "result: chain solved\n";
    return ok;
}

int run_obstruct(const Options& o, std::ostream& out) {
    const AlgebraPoint a = read_algebra_file(o.algebra);
    const SymBilinear circ = read_symmap_file(o.circ);
    if (o.linearized) {
        const LinearizedSystem sys = linearized_system(a, circ, make_splitting(a));
        std::size_t feasible = 0;
        for (std::size_t i = 0; i < sys.size(); ++i) feasible += sys.feasible(i) ? 1 : 0;
        out << "directions: " << sys.size() << '\n';
        out << "feasible: " << feasible << '\n';
    }
    const auto star = quadratic_obstruction(a, circ);
    if (!star) {
        out << "result: obstructed\n";
        return negative;
    }
    out << "result: unobstructed\n";
    if (!o.emit.empty()) {
        auto f = open_emit(o.emit);
        write_symmap(f, *star);
    }
    return ok;
}

int run_thm1(const Options& o, std::ostream& out) {
    const AlgebraPoint a = read_algebra_file(o.algebra);
    const Splitting s = make_splitting(a);
    const Thm1Report rep = thm1_test(a, s);
    out << "d: " << rep.d << '\n' << "r: " << rep.r << '\n';
    out << "dim ker mu: " << rep.ker_mu_dim << '\n';
    out << "hull dim: " << rep.hull_dim << '\n';
    out << "restricted dim: " << rep.restricted_dim << '\n';
    out << "quadratic constraints: " << rep.quadratic_constraints << '\n';
    out << "certified forms: " << rep.certified_forms << '\n';
    if (rep.witness) print_tensor(out, "witness f11", *rep.witness);
    out << "result: " << to_string(rep.verdict) << '\n';
    return rep.holds() ? ok : negative;
}

int run_dimcheck(const Options& o, std::ostream& out) {
    if (o.d < 0 || o.r < 0) throw PreconditionError("d and r must be nonnegative");
    const DimIdentity id = dim_identity_check(o.d, o.r);
    out << "lhs: " << id.lhs << '\n' << "rhs: " << id.rhs << '\n';
    out << "result: " << id.lhs << (id.equal ? " = " : " ≠ ") << id.rhs << " : identity "
        << (id.equal ? "holds" : "fails") << '\n';
    return id.equal ? ok : negative;
}

int run_corollary(const Options& o, std::ostream& out) {
    const AlgebraPoint a = read_algebra_file(o.algebra);
    const Splitting s = make_splitting(a);
    const GeneratorPairing pairs = parse_pairs(o.pairs);
    const CorollaryReport rep = corollary_check(a, s, pairs);
    out << "constraints: " << rep.constraints << '\n';
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out << "pair " << pairs[i].first + 1 << ":" << pairs[i].second + 1
            << " identity f(u)^2 v - f(u) f(v) u: " << (rep.pair_identity[i] ? "yes" : "no") << '\n';
    out << "result: " << (rep.forces_zero ? "f forced to 0" : "f not forced to 0") << '\n';
    return rep.forces_zero ? ok : negative;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tangent cones, contact curves and commutative algebra schemes"};
    app.name("tcone");
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto add_emit = [&](CLI::App* sub) { sub->add_option("--emit", o.emit, "Write a machine-readable result file"); };
    auto add_trunc = [&](CLI::App* sub) { return sub->add_option("--trunc", o.trunc, "Truncation degree")->check(CLI::Range(1, 1000)); };

    auto* imult = app.add_subcommand("imult", "Intersection multiplicity of a curve germ with an ideal");
    imult->add_option("--ideal", o.ideal)->required();
    imult->add_option("--curve", o.curve)->required();
    auto* imult_trunc = add_trunc(imult);
    imult->callback([&] { action = [&] { return run_imult(o, out, imult_trunc->count() > 0); }; });

    auto* tspace = app.add_subcommand("tspace", "Zariski tangent space at the base point");
    tspace->add_option("--ideal", o.ideal)->required();
    add_emit(tspace);
    tspace->callback([&] { action = [&] { return run_tspace(o, out); }; });

    auto* conetest = app.add_subcommand("conetest", "Necessary tangent cone test for a direction");
    conetest->add_option("--ideal", o.ideal)->required();
    conetest->add_option("--v", o.v, "Direction, comma separated")->required();
    conetest->callback([&] { action = [&] { return run_conetest(o, out); }; });

    auto* curve3 = app.add_subcommand("curve3", "Smooth germ with contact order at least 3");
    curve3->add_option("--ideal", o.ideal)->required();
    curve3->add_option("--v", o.v, "Direction, comma separated")->required();
    add_trunc(curve3);
    add_emit(curve3);
    curve3->callback([&] { action = [&] { return run_curve3(o, out); }; });

    auto* lowest = app.add_subcommand("lowestform", "Lowest-degree form of a hypersurface");
    auto* lowest_ideal = lowest->add_option("--ideal", o.ideal);
    auto* lowest_poly = lowest->add_option("--poly", o.poly);
    lowest->add_option("--vars", o.vars);
    lowest_ideal->excludes(lowest_poly);
    lowest->callback([&] {
        if (o.ideal.empty() && o.poly.empty()) throw CLI::RequiredError("--ideal or --poly");
        action = [&] { return run_lowestform(o, out); };
    });

    auto* sgen = app.add_subcommand("scheme-gen", "Generators of the structure-constant scheme");
    sgen->add_option("--n", o.n)->required()->check(CLI::Range(1, 6));
    sgen->add_option("--kind", o.kind, "assoc or nilp3");
    add_emit(sgen);
    sgen->callback([&] { action = [&] { return run_scheme_gen(o, out); }; });

    auto* stan = app.add_subcommand("scheme-tangent", "Tangent space of the scheme at an algebra");
    stan->add_option("--algebra", o.algebra)->required();
    stan->add_option("--kind", o.kind, "assoc or nilp3");
    add_emit(stan);
    stan->callback([&] { action = [&] { return run_scheme_tangent(o, out); }; });

    auto* spaces = app.add_subcommand("spaces", "Invariants and tangent space decomposition of an algebra");
    spaces->add_option("--algebra", o.algebra)->required();
    spaces->callback([&] { action = [&] { return run_spaces(o, out); }; });

    auto* chain = app.add_subcommand("chain", "Solve the compatibility and obstruction equations for f11");
    chain->add_option("--algebra", o.algebra)->required();
    chain->add_option("--f11", o.f11, "Map file (map d) in the adapted basis; zero if omitted");
    chain->callback([&] { action = [&] { return run_chain(o, out); }; });

    auto* obstruct = app.add_subcommand("obstruct", "Second-order obstruction of a deformation");
    obstruct->add_option("--algebra", o.algebra)->required();
    obstruct->add_option("--circ", o.circ, "Map file (map n)")->required();
    obstruct->add_flag("--linearized", o.linearized, "Also report the linearised systems");
    add_emit(obstruct);
    obstruct->callback([&] { action = [&] { return run_obstruct(o, out); }; });

    auto* thm1 = app.add_subcommand("thm1", "Does f11 vanish on ker mu for every solution?");
    thm1->add_option("--algebra", o.algebra)->required();
    thm1->callback([&] { action = [&] { return run_thm1(o, out); }; });

    auto* dimcheck = app.add_subcommand("dimcheck", "Dimension identity d(d(d+1)/2 - r) = d(d+1)(d+2)/6");
    dimcheck->add_option("--d", o.d)->required();
    dimcheck->add_option("--r", o.r)->required();
    dimcheck->callback([&] { action = [&] { return run_dimcheck(o, out); }; });

    auto* corollary = app.add_subcommand("corollary", "Check that the first obstruction forces f = 0");
    corollary->add_option("--algebra", o.algebra)->required();
    corollary->add_option("--pairs", o.pairs, "Generator pairs a:b, 1-based, comma separated")->required();
    corollary->callback([&] { action = [&] { return run_corollary(o, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }

    try {
        return action();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const DimensionError& e) {
        err << "dimension error: " << e.what() << '\n';
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
    }
    return bad_input;
}

} // namespace tcone::cli
