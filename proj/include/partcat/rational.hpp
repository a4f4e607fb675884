#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace partcat {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);  // ParseError

RationalMatrix rational_identity(std::size_t n);
RationalMatrix rational_multiply(const RationalMatrix& a, const RationalMatrix& b);
bool rational_equal(const RationalMatrix& a, const RationalMatrix& b);

// Gauss-Jordan; nullopt when singular
std::optional<RationalMatrix> rational_inverse(const RationalMatrix& m);

// indices of a maximal independent subset, scanning rows in the given order
std::vector<std::size_t> greedy_independent_rows(const RationalMatrix& rows);
std::size_t rational_rank(const RationalMatrix& rows);

}  // namespace partcat
