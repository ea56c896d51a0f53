#ifndef TCONE_SCALAR_HPP
#define TCONE_SCALAR_HPP

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace tcone {

/// Exact rational number, always canonical (lowest terms, positive
/// denominator) after any arithmetic operation.
using Scalar = mpq_class;

/// Dense vector of exact scalars.
using Vector = std::vector<Scalar>;

/// Parses `a`, `-a`, `a/b` with integer a, b (b != 0). Throws ParseError.
Scalar parse_scalar(std::string_view text);

std::string to_string(const Scalar& value);

/// Comma separated rationals, e.g. "1,-2,3/4".
Vector parse_vector(std::string_view text);

std::string to_string(const Vector& v, std::string_view sep = ",");

bool is_zero(const Vector& v);

Vector zero_vector(std::size_t n);

/// Standard basis vector e_k of Q^n.
Vector unit_vector(std::size_t n, std::size_t k);

} // namespace tcone

#endif // TCONE_SCALAR_HPP
