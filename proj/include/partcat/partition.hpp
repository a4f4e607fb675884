#pragma once

#include <string>
#include <vector>

#include "partcat/colorword.hpp"
#include "partcat/errors.hpp"

namespace partcat {

// Set partition of {0..n-1} in canonical form: every block sorted ascending,
// blocks ordered by their minimal element. Equality is plain field equality.
struct SetPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  static SetPartition from_blocks(int n, std::vector<std::vector<int>> blocks);
  static SetPartition from_labels(const std::vector<int>& label_of);
  static SetPartition singletons(int n);

  // restricted-growth labels: block ids renumbered by first occurrence
  std::vector<int> labels() const;
  int block_count() const { return static_cast<int>(blocks.size()); }
  int block_of(int point) const;

  bool operator==(const SetPartition&) const = default;
  bool operator<(const SetPartition& o) const;
};

// finest common coarsening
SetPartition join(const SetPartition& a, const SetPartition& b);

// true when every block of `fine` lies inside one block of `coarse`
bool coarsens(const SetPartition& coarse, const SetPartition& fine);

// all partitions obtained from p by merging blocks (p itself included)
std::vector<SetPartition> coarsenings(const SetPartition& p);

// positions of equal values form the blocks; upper tuple first, then lower
SetPartition kernel(const std::vector<int>& upper, const std::vector<int>& lower);

bool even_blocks(const SetPartition& p);
bool is_pairing(const SetPartition& p);
bool noncrossing(const SetPartition& p);
int crossing_count(const SetPartition& p);  // interleaved pairs of legs from distinct blocks

// (-1)^c where c is the number of adjacent distinct-block switches needed to
// reach a noncrossing arrangement; throws NotEven on odd blocks
int signature(const SetPartition& p);

std::vector<SetPartition> all_set_partitions(int n);
std::vector<SetPartition> all_pairings(int n);

// Colored two-row partition. Legs are numbered 0..k-1 on the upper row and
// k..k+l-1 on the lower row, left to right; text names are u1..uk, l1..ll.
struct Partition {
  ColorWord upper, lower;
  SetPartition blocks;

  int k() const { return static_cast<int>(upper.size()); }
  int l() const { return static_cast<int>(lower.size()); }
  int legs() const { return k() + l(); }

  static Partition make(ColorWord upper, ColorWord lower,
                        std::vector<std::vector<int>> blocks);

  bool operator==(const Partition&) const = default;
  bool operator<(const Partition& o) const;
};

// one-row partition together with its color word (the flattened form)
struct Flattened {
  ColorWord word;
  SetPartition part;

  bool operator==(const Flattened&) const = default;
  bool operator<(const Flattened& o) const {
    if (word != o.word) return word < o.word;
    return part < o.part;
  }
};

// literal form `UPPER|LOWER;block;block` with blocks as space-separated leg names
Partition parse_partition(const std::string& text);
std::string format_partition(const Partition& p);

Partition empty_partition();

}  // namespace partcat
