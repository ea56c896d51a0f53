#include <tcone/errors.hpp>
#include <tcone/io.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace tcone {

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, std::size_t nvars, VariableStyle style, std::size_t line)
        : text_(text), nvars_(nvars), style_(style), line_(line) {}

    MultiPoly parse() {
        MultiPoly out(nvars_);
        skip();
        if (done()) fail("empty polynomial");
        bool first = true;
        while (!done()) {
            Scalar sign(1);
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-' at column " + std::to_string(pos_ + 1));
            }
            out += term() * sign;
            first = false;
            skip();
        }
        return out;
    }

private:
    MultiPoly term() {
        Scalar coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = number();
            have_coeff = true;
            skip();
            if (peek() == '*') {
                ++pos_;
                skip();
            } else if (done() || peek() == '+' || peek() == '-') {
                return MultiPoly::constant(nvars_, coeff);
            }
        }
        Monomial m(nvars_);
        bool any = false;
        while (true) {
            if (!std::isalpha(static_cast<unsigned char>(peek()))) {
                if (!any && !have_coeff) fail("expected a term at column " + std::to_string(pos_ + 1));
                if (!any) fail("expected a variable after '*'");
                break;
            }
            const std::size_t v = variable();
            unsigned e = 1;
            skip();
            if (peek() == '^') {
                ++pos_;
                skip();
                e = exponent();
                skip();
            }
            m.exponents[v] += e;
            any = true;
            if (peek() != '*') break;
            ++pos_;
            skip();
        }
        MultiPoly t(nvars_);
        t.add_term(m, coeff);
        return t;
    }

    Scalar number() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '/') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        try {
            return parse_scalar(text_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }

    unsigned exponent() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected an exponent after '^'");
        const std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 6) fail("exponent too large: " + digits);
        return static_cast<unsigned>(std::stoul(digits));
    }

    std::size_t variable() {
        const std::size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (style_ == VariableStyle::parameter) {
            if (name != "t") fail("unknown variable '" + name + "' (expected t)");
            return 0;
        }
        if (name.size() < 2 || name[0] != 'x' ||
            !std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail("unknown variable '" + name + "' (expected x1..x" + std::to_string(nvars_) + ")");
        const std::size_t idx = name.size() > 8 ? nvars_ + 1 : std::stoul(name.substr(1));
        if (idx == 0 || idx > nvars_)
            fail("variable '" + name + "' out of range (expected x1..x" + std::to_string(nvars_) + ")");
        return idx - 1;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool done() const { return pos_ >= text_.size(); }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t nvars_;
    VariableStyle style_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

struct Line {
    std::size_t number;
    std::string keyword;
    std::string rest;
};

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<Line> read_lines(std::istream& in) {
    std::vector<Line> out;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string s = trim(raw);
        if (s.empty()) continue;
        const auto space = s.find_first_of(" \t");
        Line l{number, s.substr(0, space), space == std::string::npos ? std::string() : trim(s.substr(space))};
        out.push_back(std::move(l));
    }
    return out;
}

std::size_t parse_count(const Line& l, const char* what) {
    const std::string& s = l.rest;
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(l.number, std::string("expected a nonnegative integer after '") + what + "'");
    return std::stoul(s);
}

std::string term_text(const Monomial& m, VariableStyle style) {
    std::string out;
    for (std::size_t v = 0; v < m.nvars(); ++v) {
        if (m.exponents[v] == 0) continue;
        if (!out.empty()) out += '*';
        out += style == VariableStyle::parameter ? std::string("t") : "x" + std::to_string(v + 1);
        if (m.exponents[v] > 1) out += "^" + std::to_string(m.exponents[v]);
    }
    return out;
}

void write_table(std::ostream& out, const char* header, const SymBilinear& m) {
    const std::size_t n = m.n();
    out << header << ' ' << n << '\n';
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Vector p = m.product(i, j);
            if (is_zero(p)) continue;
            out << "prod " << i + 1 << ' ' << j + 1 << " :";
            for (const auto& c : p) out << ' ' << to_string(c);
            out << '\n';
        }
}

SymBilinear read_table(std::istream& in, const std::string& header) {
    const std::vector<Line> lines = read_lines(in);
    if (lines.empty() || lines[0].keyword != header)
        throw ParseError(lines.empty() ? 0 : lines[0].number, "expected '" + header + " n' as the first line");
    const std::size_t n = parse_count(lines[0], header.c_str());
    if (n == 0) throw ParseError(lines[0].number, "dimension must be positive");
    SymBilinear m(n);
    std::vector<bool> seen(n * n, false);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& l = lines[li];
        if (l.keyword != "prod") throw ParseError(l.number, "unknown keyword '" + l.keyword + "'");
        const auto colon = l.rest.find(':');
        if (colon == std::string::npos) throw ParseError(l.number, "expected 'prod i j : a1 ... an'");
        std::istringstream idx(l.rest.substr(0, colon));
        long long i = 0, j = 0;
        std::string extra;
        if (!(idx >> i >> j) || (idx >> extra))
            throw ParseError(l.number, "expected two indices before ':'");
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n)
            throw ParseError(l.number, "index out of range 1.." + std::to_string(n));
        const Vector v = parse_point(l.rest.substr(colon + 1), l.number);
        if (v.size() != n)
            throw ParseError(l.number, "expected " + std::to_string(n) + " coefficients, got " + std::to_string(v.size()));
        const std::size_t a = static_cast<std::size_t>(std::min(i, j)) - 1, b = static_cast<std::size_t>(std::max(i, j)) - 1;
        if (seen[a * n + b]) {
            if (m.product(a, b) != v)
                throw ParseError(l.number, "conflicting product for (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
            continue;
        }
        seen[a * n + b] = true;
        for (std::size_t k = 0; k < n; ++k) m.set(a, b, k, v[k]);
    }
    return m;
}

template <class T, class Reader>
T read_file(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return reader(in);
}

} // namespace

MultiPoly parse_polynomial(std::string_view text, std::size_t nvars, VariableStyle style, std::size_t line) {
    if (style == VariableStyle::parameter && nvars != 1) throw DimensionError("parameter style needs exactly one variable");
    return PolyParser(text, nvars, style, line).parse();
}

std::string format_polynomial(const MultiPoly& p, VariableStyle style) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Monomial, Scalar>> terms(p.terms().begin(), p.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() > b.first.degree();
        return a.first > b.first;
    });
    std::string out;
    for (const auto& [m, c] : terms) {
        const bool negative = sgn(c) < 0;
        const Scalar mag = abs(c);
        if (out.empty()) out += negative ? "-" : "";
        else out += negative ? " - " : " + ";
        const std::string vars = term_text(m, style);
        if (vars.empty()) out += to_string(mag);
        else if (mag == 1) out += vars;
        else out += to_string(mag) + "*" + vars;
    }
    return out;
}

Vector parse_point(std::string_view text, std::size_t line) {
    std::string s(text);
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    Vector out;
    std::string tok;
    while (in >> tok) {
        try {
            out.push_back(parse_scalar(tok));
        } catch (const ParseError& e) {
            throw ParseError(line, e.what());
        }
    }
    return out;
}

IdealPresentation read_ideal(std::istream& in) {
    const std::vector<Line> lines = read_lines(in);
    if (lines.empty() || lines[0].keyword != "vars")
        throw ParseError(lines.empty() ? 0 : lines[0].number, "expected 'vars n' as the first line");
    const std::size_t n = parse_count(lines[0], "vars");
    if (n == 0) throw ParseError(lines[0].number, "number of variables must be positive");
    std::vector<MultiPoly> gens;
    Vector point;
    bool have_point = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.keyword == "gen") {
            gens.push_back(parse_polynomial(l.rest, n, VariableStyle::indexed, l.number));
        } else if (l.keyword == "point") {
            if (have_point) throw ParseError(l.number, "duplicate 'point' line");
            point = parse_point(l.rest, l.number);
            if (point.size() != n)
                throw ParseError(l.number, "point has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(n));
            have_point = true;
        } else {
            throw ParseError(l.number, "unknown keyword '" + l.keyword + "'");
        }
    }
    if (gens.empty()) throw ParseError(0, "no 'gen' lines");
    return IdealPresentation(n, std::move(gens), std::move(point));
}

void write_ideal(std::ostream& out, const IdealPresentation& x) {
    out << "vars " << x.nvars << '\n';
    for (const auto& g : x.generators) out << "gen " << format_polynomial(g) << '\n';
    if (!is_zero(x.base_point)) out << "point " << to_string(x.base_point, " ") << '\n';
}

CurveGerm read_curve(std::istream& in) {
    const std::vector<Line> lines = read_lines(in);
    if (lines.empty() || lines[0].keyword != "trunc")
        throw ParseError(lines.empty() ? 0 : lines[0].number, "expected 'trunc D' as the first line");
    const std::size_t trunc = parse_count(lines[0], "trunc");
    std::vector<Jet> comps;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.keyword != "comp") throw ParseError(l.number, "unknown keyword '" + l.keyword + "'");
        const MultiPoly p = parse_polynomial(l.rest, 1, VariableStyle::parameter, l.number);
        Jet j(trunc);
        for (const auto& [m, c] : p.terms()) {
            if (m.exponents[0] > trunc)
                throw ParseError(l.number, "term t^" + std::to_string(m.exponents[0]) + " exceeds truncation " + std::to_string(trunc));
            j[m.exponents[0]] = c;
        }
        comps.push_back(std::move(j));
    }
    if (comps.empty()) throw ParseError(0, "no 'comp' lines");
    return CurveGerm(std::move(comps));
}

void write_curve(std::ostream& out, const CurveGerm& c) {
    out << "trunc " << c.trunc() << '\n';
    for (const auto& j : c.components()) {
        MultiPoly p(1);
        for (std::size_t k = 0; k <= j.trunc(); ++k)
            if (sgn(j[k]) != 0) p.add_term(Monomial(std::vector<unsigned>{static_cast<unsigned>(k)}), j[k]);
        out << "comp " << format_polynomial(p, VariableStyle::parameter) << '\n';
    }
}

AlgebraPoint read_algebra(std::istream& in) { return AlgebraPoint(read_table(in, "dim")); }
SymBilinear read_symmap(std::istream& in) { return read_table(in, "map"); }
void write_algebra(std::ostream& out, const AlgebraPoint& a) { write_table(out, "dim", a.table()); }
void write_symmap(std::ostream& out, const SymBilinear& m) { write_table(out, "map", m); }

IdealPresentation read_ideal_file(const std::string& path) {
    return read_file<IdealPresentation>(path, [](std::istream& in) { return read_ideal(in); });
}
CurveGerm read_curve_file(const std::string& path) {
    return read_file<CurveGerm>(path, [](std::istream& in) { return read_curve(in); });
}
AlgebraPoint read_algebra_file(const std::string& path) {
    return read_file<AlgebraPoint>(path, [](std::istream& in) { return read_algebra(in); });
}
SymBilinear read_symmap_file(const std::string& path) {
    return read_file<SymBilinear>(path, [](std::istream& in) { return read_symmap(in); });
}

} // namespace tcone
