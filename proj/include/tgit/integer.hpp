// Exact integer and rational scalars plus small vector helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace tgit {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;

inline IntVector zero_vector(std::size_t n) { return IntVector(n, Integer(0)); }

inline IntVector to_int_vector(const std::vector<long long>& v) {
    IntVector out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

Integer dot(const IntVector& a, const IntVector& b);
Integer gcd_of(const IntVector& v);
bool is_zero(const IntVector& v);
bool is_primitive(const IntVector& v);

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);

IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& s, const IntVector& v);
IntVector negate(const IntVector& v);

std::string to_string(const IntVector& v);

}  // namespace tgit
