#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "partcat/weingarten.hpp"

namespace partcat {

enum class ClassicalGroup { Orthogonal, Unitary, SignedPermutation, PhasedPermutation };

ClassicalGroup parse_classical_group(const std::string& name);  // "O","U","H","K"; UnknownName
std::string classical_group_name(ClassicalGroup g);

// the four classical corners of the preset square; everything else has no
// sampling model and raises UnsupportedGroup
ClassicalGroup classical_group_for_preset(const std::string& preset);
bool preset_has_classical_group(const std::string& preset);

struct ComplexMatrix {
  int N = 0;
  std::vector<std::complex<double>> a;  // row-major

  std::complex<double>& at(int r, int c) { return a[static_cast<std::size_t>(r) * N + c]; }
  const std::complex<double>& at(int r, int c) const {
    return a[static_cast<std::size_t>(r) * N + c];
  }
};

// Deterministic Haar stream: mt19937_64 with hand-coded Box-Muller normals,
// so identical seeds replay identical matrices and the stream does not
// depend on library distribution internals. Orthogonal/unitary matrices come
// from Gram-Schmidt on Gaussian matrices (positive-diagonal normalization
// makes the factorization unique), signed/phased permutations from uniform
// permutations with i.i.d. signs or phases.
class HaarSampler {
 public:
  HaarSampler(ClassicalGroup group, int N, std::uint64_t seed);
  ComplexMatrix next();

  ClassicalGroup group() const { return group_; }
  int size() const { return N_; }

 private:
  double uniform01();  // in [0, 1)
  double gaussian();
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n), rejection sampled

  ClassicalGroup group_;
  int N_;
  std::mt19937_64 rng_;
  double spare_ = 0;
  bool has_spare_ = false;
};

struct McEstimate {
  double estimate = 0;
  double stderr_of_mean = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// empirical mean of the monomial prod_t u_{i_t j_t} (black letters take the
// conjugate entry); the estimate is the real part, matching the exact side
// where every balanced moment is rational
McEstimate mc_moment(ClassicalGroup group, const MomentQuery& q, std::uint64_t samples,
                     std::uint64_t seed);

}  // namespace partcat
