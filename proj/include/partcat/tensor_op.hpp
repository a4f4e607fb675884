#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partcat/category.hpp"
#include "partcat/partition.hpp"

namespace partcat {

inline constexpr std::uint64_t kDefaultOperatorBudget = 10'000'000;

// exact sparse operator on tensor index spaces: cols = N^|upper| (input),
// rows = N^|lower| (output); tuples encode little-endian, leg 1 least
// significant, so index = sum (j_t - 1) * N^(t-1)
struct SparseIntegerOperator {
  struct Entry {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    long long value = 0;
    bool operator==(const Entry&) const = default;
  };

  int N = 1;
  ColorWord upper;
  ColorWord lower;
  bool twisted = false;
  std::vector<Entry> entries;  // sorted by (row, col), zero values dropped

  std::uint64_t rows() const;
  std::uint64_t cols() const;
  long long at(std::uint64_t row, std::uint64_t col) const;
  bool operator==(const SparseIntegerOperator&) const = default;
};

std::uint64_t pow_u64(std::uint64_t base, int exp);
std::uint64_t encode_tuple(const std::vector<int>& tuple, int N);  // IndexOutOfRange
std::vector<int> decode_tuple(std::uint64_t index, int N, int len);

SparseIntegerOperator realize(const Partition& p, int N,
                              std::uint64_t budget = kDefaultOperatorBudget);
SparseIntegerOperator realize_twisted(const Partition& p, int N,
                                      std::uint64_t budget = kDefaultOperatorBudget);

SparseIntegerOperator op_tensor(const SparseIntegerOperator& a, const SparseIntegerOperator& b,
                                std::uint64_t budget = kDefaultOperatorBudget);
// matrix product bottom . top for stacked diagrams (top feeds into bottom)
SparseIntegerOperator op_compose(const SparseIntegerOperator& top,
                                 const SparseIntegerOperator& bottom,
                                 std::uint64_t budget = kDefaultOperatorBudget);
SparseIntegerOperator op_adjoint(const SparseIntegerOperator& a);
SparseIntegerOperator op_scale(SparseIntegerOperator a, long long factor);

struct CategoricalReport {
  int checks = 0;
  std::vector<std::string> failures;
  bool all_ok() const { return failures.empty(); }
};
CategoricalReport verify_categorical(const std::vector<Partition>& pool, int N,
                                     std::uint64_t budget = kDefaultOperatorBudget);

// Gram matrix of the delta vectors of a same-word one-row basis
std::vector<std::vector<long long>> gram_matrix(const std::vector<Partition>& basis, int N);
std::vector<std::vector<long long>> gram_matrix_brute(const std::vector<Partition>& basis, int N);

int hom_rank(const CategorySnapshot& D, const ColorWord& upper, const ColorWord& lower, int N,
             std::uint64_t budget = kDefaultOperatorBudget);

std::string operator_to_text(const SparseIntegerOperator& op);
std::string operator_to_json(const SparseIntegerOperator& op);

}  // namespace partcat
