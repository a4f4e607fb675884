#pragma once

#include <string>
#include <vector>

#include "partcat/category.hpp"
#include "partcat/rational.hpp"

namespace partcat {

// Exact integration data for one exponent word: the cell basis, its Gram
// matrix, and a generalized inverse supported on a maximal independent
// subset of the realized vectors.
struct WeingartenTable {
  ColorWord word;
  int N = 0;
  std::vector<Partition> basis;
  std::vector<std::vector<long long>> gram;
  RationalMatrix W;
  std::vector<std::size_t> independent;
};

// basis = D(empty, word); independence decided by exact symmetric elimination
// on the Gram (its vectors' Schur complement diagonal vanishes exactly on
// dependent ones), W = inverse of the restricted Gram, zero elsewhere
WeingartenTable weingarten_table(const CategorySnapshot& D, const ColorWord& word,
                                 int N);  // EmptyBasis

struct MomentQuery {
  ColorWord word;
  std::vector<int> rows;
  std::vector<int> cols;
  int N = 0;
};

// the double sum of delta_pi(rows) * W(pi, sigma) * delta_sigma(cols)
Rational moment(const WeingartenTable& table, const MomentQuery& q);
// WordMismatch, IndexOutOfRange

std::string weingarten_to_json(const WeingartenTable& t);
std::string weingarten_to_text(const WeingartenTable& t);

}  // namespace partcat
