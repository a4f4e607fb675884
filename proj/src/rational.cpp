#include "partcat/rational.hpp"

#include "partcat/errors.hpp"

namespace partcat {

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos)
      return Rational(boost::multiprecision::cpp_int(s));
    return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                    boost::multiprecision::cpp_int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParseError("invalid rational: " + s, 0);
  }
}

RationalMatrix rational_identity(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix rational_multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t rows = a.size();
  const std::size_t mid = b.size();
  const std::size_t cols = mid ? b[0].size() : 0;
  RationalMatrix out(rows, std::vector<Rational>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < mid; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

bool rational_equal(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  }
  return true;
}

std::optional<RationalMatrix> rational_inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv = rational_identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational lead = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= lead;
      inv[col][j] /= lead;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<std::size_t> greedy_independent_rows(const RationalMatrix& rows) {
  std::vector<std::size_t> chosen;
  RationalMatrix pivots;             // reduced, each with leading 1
  std::vector<std::size_t> lead_col;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<Rational> v = rows[r];
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      const Rational factor = v[lead_col[p]];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (pivots[p][j] != 0) v[j] -= factor * pivots[p][j];
    }
    std::size_t lead = v.size();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        lead = j;
        break;
      }
    if (lead == v.size()) continue;
    const Rational inv_lead = v[lead];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] /= inv_lead;
    pivots.push_back(std::move(v));
    lead_col.push_back(lead);
    chosen.push_back(r);
  }
  return chosen;
}

std::size_t rational_rank(const RationalMatrix& rows) {
  return greedy_independent_rows(rows).size();
}

}  // namespace partcat
