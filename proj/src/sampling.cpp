#include "partcat/sampling.hpp"

#include <cmath>
#include <numeric>

#include "partcat/errors.hpp"

namespace partcat {

ClassicalGroup parse_classical_group(const std::string& name) {
  if (name == "O") return ClassicalGroup::Orthogonal;
  if (name == "U") return ClassicalGroup::Unitary;
  if (name == "H") return ClassicalGroup::SignedPermutation;
  if (name == "K") return ClassicalGroup::PhasedPermutation;
  throw UnknownName("unknown classical group: " + name + " (expected O, U, H or K)");
}

std::string classical_group_name(ClassicalGroup g) {
  switch (g) {
    case ClassicalGroup::Orthogonal: return "O";
    case ClassicalGroup::Unitary: return "U";
    case ClassicalGroup::SignedPermutation: return "H";
    case ClassicalGroup::PhasedPermutation: return "K";
  }
  return "?";
}

bool preset_has_classical_group(const std::string& preset) {
  return preset == "ON" || preset == "UN" || preset == "HN" || preset == "KN";
}

ClassicalGroup classical_group_for_preset(const std::string& preset) {
  if (preset == "ON") return ClassicalGroup::Orthogonal;
  if (preset == "UN") return ClassicalGroup::Unitary;
  if (preset == "HN") return ClassicalGroup::SignedPermutation;
  if (preset == "KN") return ClassicalGroup::PhasedPermutation;
  throw UnsupportedGroup("preset " + preset + " has no classical sampling model");
}

HaarSampler::HaarSampler(ClassicalGroup group, int N, std::uint64_t seed)
    : group_(group), N_(N), rng_(seed) {
  if (N < 1) throw IndexOutOfRange("matrix size must be at least 1");
}

double HaarSampler::uniform01() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double HaarSampler::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted away from zero so the log is finite
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t HaarSampler::below(std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return x % n;
}

ComplexMatrix HaarSampler::next() {
  const int n = N_;
  ComplexMatrix m;
  m.N = n;
  m.a.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});

  switch (group_) {
    case ClassicalGroup::Orthogonal:
    case ClassicalGroup::Unitary: {
      const bool complex_entries = group_ == ClassicalGroup::Unitary;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          m.at(r, c) = complex_entries ? std::complex<double>(gaussian(), gaussian())
                                       : std::complex<double>(gaussian(), 0.0);
      // modified Gram-Schmidt over columns; the diagonal of the implicit R
      // stays positive, which pins the Haar representative
      for (int c = 0; c < n; ++c) {
        for (int prev = 0; prev < c; ++prev) {
          std::complex<double> dot = 0;
          for (int r = 0; r < n; ++r) dot += std::conj(m.at(r, prev)) * m.at(r, c);
          for (int r = 0; r < n; ++r) m.at(r, c) -= dot * m.at(r, prev);
        }
        double norm = 0;
        for (int r = 0; r < n; ++r) norm += std::norm(m.at(r, c));
        norm = std::sqrt(norm);
        for (int r = 0; r < n; ++r) m.at(r, c) /= norm;
      }
      return m;
    }
    case ClassicalGroup::SignedPermutation:
    case ClassicalGroup::PhasedPermutation: {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[static_cast<int>(below(static_cast<std::uint64_t>(i) + 1))]);
      for (int c = 0; c < n; ++c) {
        if (group_ == ClassicalGroup::SignedPermutation) {
          m.at(perm[c], c) = (rng_() & 1) ? -1.0 : 1.0;
        } else {
          const double a = 6.283185307179586476925286766559 * uniform01();
          m.at(perm[c], c) = {std::cos(a), std::sin(a)};
        }
      }
      return m;
    }
  }
  throw Error("unreachable sampler state");
}

McEstimate mc_moment(ClassicalGroup group, const MomentQuery& q, std::uint64_t samples,
                     std::uint64_t seed) {
  const std::size_t p = q.word.size();
  if (q.rows.size() != p || q.cols.size() != p)
    throw IndexOutOfRange("index tuples must match the word length");
  for (int v : q.rows)
    if (v < 1 || v > q.N) throw IndexOutOfRange("row index outside 1..N");
  for (int v : q.cols)
    if (v < 1 || v > q.N) throw IndexOutOfRange("column index outside 1..N");
  if (samples == 0) throw IndexOutOfRange("sample count must be positive");

  HaarSampler sampler(group, q.N, seed);
  double mean = 0, m2 = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const ComplexMatrix u = sampler.next();
    std::complex<double> val = 1.0;
    for (std::size_t t = 0; t < p; ++t) {
      const std::complex<double>& e = u.at(q.rows[t] - 1, q.cols[t] - 1);
      val *= (q.word[t] == Color::White) ? e : std::conj(e);
    }
    const double x = val.real();
    const double delta = x - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (x - mean);
  }
  McEstimate out;
  out.estimate = mean;
  out.samples = samples;
  out.seed = seed;
  out.stderr_of_mean =
      samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) /
                              static_cast<double>(samples))
                  : 0.0;
  return out;
}

}  // namespace partcat
