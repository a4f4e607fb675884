#pragma once

#include <vector>

#include "partcat/partition.hpp"

namespace partcat {

// Single-leg rotation steps. A leg changing row flips its color.
enum class RotateStep { FirstUpperDown, LastUpperDown, FirstLowerUp, LastLowerUp };

Partition tensor(const Partition& p, const Partition& q);

struct Composed {
  Partition result;
  int loops = 0;
};

// glue top's lower row to bottom's upper row; middle words must agree exactly
Composed compose(const Partition& top, const Partition& bottom);

// exchange rows and flip every color
Partition involute(const Partition& p);

Partition rotate(const Partition& p, RotateStep step);

// rotate all upper legs down past the right edge: word = lower ++ conjugate(upper)
Flattened flatten(const Partition& p);

// inverse of flatten for a chosen upper row length
Partition unflatten(const Flattened& f, int upper_legs);

struct ClassFlags {
  bool even = false;
  bool pairing = false;
  bool noncrossing = false;
  bool matching = false;
  bool balanced = false;
  bool alt_balanced = false;
};

ClassFlags classify(const Flattened& f);
ClassFlags classify(const Partition& p);

// predicate selection for enumeration and the named-category catalog
enum PredFlag : unsigned {
  PredEven = 1u << 0,
  PredPairing = 1u << 1,
  PredNoncrossing = 1u << 2,
  PredMatching = 1u << 3,
  PredBalanced = 1u << 4,
  PredAltBalanced = 1u << 5,
};

bool satisfies(const ClassFlags& flags, unsigned predicates);

// 1 iff the combined index assignment is constant on every block
int delta(const Partition& p, const std::vector<int>& i, const std::vector<int>& j);

int signature(const Partition& p);

// all canonical partitions on the given words passing the requested predicates
std::vector<Partition> enumerate(const ColorWord& upper, const ColorWord& lower,
                                 unsigned predicates, int cap = 12);

}  // namespace partcat
