#ifndef TCONE_IO_HPP
#define TCONE_IO_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <tcone/conecurve.hpp>
#include <tcone/polyring.hpp>
#include <tcone/symmap.hpp>

namespace tcone {

/// Variables are written x1..xn (indexed) or, for a single curve parameter, t.
enum class VariableStyle { indexed, parameter };

/// Parses sums of terms like `3/2*x1^2*x2 - x3 + 1`; the `*` after a
/// coefficient may be omitted. Throws ParseError tagged with `line`.
MultiPoly parse_polynomial(std::string_view text, std::size_t nvars, VariableStyle style = VariableStyle::indexed,
                           std::size_t line = 0);

/// Inverse of parse_polynomial; terms in descending graded order.
std::string format_polynomial(const MultiPoly& p, VariableStyle style = VariableStyle::indexed);

/// Rationals separated by commas and/or whitespace.
Vector parse_point(std::string_view text, std::size_t line = 0);

// Line-oriented files. Blank lines and text after `#` are ignored.
//
//   ideal:    vars n / gen <poly>... / [point a1 ... an]
//   curve:    trunc D / comp <poly in t>... (one per coordinate)
//   algebra:  dim n / prod i j : a1 ... an   (1-based, symmetric, omitted pairs zero)
//   map:      the same with header `map n`

IdealPresentation read_ideal(std::istream& in);
void write_ideal(std::ostream& out, const IdealPresentation& x);

CurveGerm read_curve(std::istream& in);
void write_curve(std::ostream& out, const CurveGerm& c);

AlgebraPoint read_algebra(std::istream& in);
SymBilinear read_symmap(std::istream& in);
void write_algebra(std::ostream& out, const AlgebraPoint& a);
void write_symmap(std::ostream& out, const SymBilinear& m);

/// Opens `path` and applies one of the readers; ParseError if it cannot be opened.
IdealPresentation read_ideal_file(const std::string& path);
CurveGerm read_curve_file(const std::string& path);
AlgebraPoint read_algebra_file(const std::string& path);
SymBilinear read_symmap_file(const std::string& path);

} // namespace tcone

#endif // TCONE_IO_HPP
