#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace afx {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/// Parses a decimal integer ("-42"). Throws std::invalid_argument.
Int parse_int(std::string_view text);

/// Parses "p/q", an integer, or a decimal with optional exponent ("1.5e-3"),
/// exactly. Throws std::invalid_argument.
Rat parse_rat(std::string_view text);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

IntVector make_int_vector(std::initializer_list<long> values);
RatVector to_rat(const IntVector& v);

Int dot(const IntVector& a, const IntVector& b);
Rat dot(const RatVector& a, const RatVector& b);
Rat dot(const RatVector& a, const IntVector& b);

bool is_zero(const IntVector& v);
bool is_nonnegative(const IntVector& v);
Int max_abs(const IntVector& v);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a);
IntVector scaled(const IntVector& v, const Int& factor);

/// Clears denominators and divides by the content, so the result is a
/// primitive integer vector on the same ray (zero stays zero).
IntVector primitive_integer_vector(const RatVector& v);

}  // namespace afx
