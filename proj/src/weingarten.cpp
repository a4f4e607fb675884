#include "partcat/weingarten.hpp"

#include <sstream>

#include "json.hpp"
#include "partcat/diagram_ops.hpp"
#include "partcat/errors.hpp"
#include "partcat/tensor_op.hpp"

namespace partcat {

namespace {

// Symmetric elimination over the exact Gram. The Gram of real vectors is
// positive semidefinite, so after eliminating the kept pivots a vector is
// dependent on them exactly when its remaining diagonal entry is zero.
std::vector<std::size_t> independent_from_gram(const std::vector<std::vector<long long>>& gram) {
  const std::size_t m = gram.size();
  RationalMatrix work(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) work[i][j] = gram[i][j];

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m; ++i) {
    if (work[i][i] == 0) continue;
    kept.push_back(i);
    for (std::size_t r = i + 1; r < m; ++r) {
      if (work[r][i] == 0) continue;
      const Rational f = work[r][i] / work[i][i];
      for (std::size_t c = i; c < m; ++c) work[r][c] -= f * work[i][c];
      for (std::size_t c = i; c < m; ++c) work[c][r] = work[r][c];
    }
  }
  return kept;
}

}  // namespace

WeingartenTable weingarten_table(const CategorySnapshot& D, const ColorWord& word, int N) {
  if (N < 1) throw IndexOutOfRange("N must be at least 1");
  WeingartenTable t;
  t.word = word;
  t.N = N;
  t.basis = D.cell(ColorWord{}, word);
  if (t.basis.empty())
    throw EmptyBasis("no cells on word " + format_color_word(word) + " in " + D.provenance());
  t.gram = gram_matrix(t.basis, N);
  t.independent = independent_from_gram(t.gram);

  const std::size_t m = t.basis.size();
  const std::size_t s = t.independent.size();
  RationalMatrix restricted(s, std::vector<Rational>(s));
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      restricted[a][b] = t.gram[t.independent[a]][t.independent[b]];
  const auto inv = rational_inverse(restricted);
  if (!inv) throw Error("independent Gram block unexpectedly singular");

  t.W.assign(m, std::vector<Rational>(m, 0));
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) t.W[t.independent[a]][t.independent[b]] = (*inv)[a][b];
  return t;
}

Rational moment(const WeingartenTable& table, const MomentQuery& q) {
  if (q.word != table.word)
    throw WordMismatch("query word " + format_color_word(q.word) + " differs from table word " +
                       format_color_word(table.word));
  if (q.N != table.N)
    throw WordMismatch("query N=" + std::to_string(q.N) + " differs from table N=" +
                       std::to_string(table.N));
  if (q.rows.size() != q.word.size() || q.cols.size() != q.word.size())
    throw IndexOutOfRange("index tuples must match the word length");
  for (int v : q.rows)
    if (v < 1 || v > table.N) throw IndexOutOfRange("row index outside 1..N");
  for (int v : q.cols)
    if (v < 1 || v > table.N) throw IndexOutOfRange("column index outside 1..N");

  const std::vector<int> none;
  Rational sum = 0;
  for (std::size_t a : table.independent) {
    if (delta(table.basis[a], none, q.rows) == 0) continue;
    for (std::size_t b : table.independent) {
      if (delta(table.basis[b], none, q.cols) == 0) continue;
      sum += table.W[a][b];
    }
  }
  return sum;
}

std::string weingarten_to_json(const WeingartenTable& t) {
  nlohmann::json basis = nlohmann::json::array();
  for (const Partition& p : t.basis) basis.push_back(format_partition(p));
  nlohmann::json gram = nlohmann::json::array();
  for (const auto& row : t.gram) gram.push_back(row);
  nlohmann::json w = nlohmann::json::array();
  for (const auto& row : t.W) {
    nlohmann::json r = nlohmann::json::array();
    for (const Rational& v : row) r.push_back(rational_to_string(v));
    w.push_back(r);
  }
  nlohmann::json doc{{"kind", "weingarten_table"},
                     {"word", format_color_word(t.word)},
                     {"N", t.N},
                     {"basis", basis},
                     {"independent", t.independent},
                     {"gram", gram},
                     {"W", w}};
  return doc.dump(2);
}

std::string weingarten_to_text(const WeingartenTable& t) {
  std::ostringstream out;
  out << "word=" << format_color_word(t.word) << " N=" << t.N << " basis=" << t.basis.size()
      << " independent=" << t.independent.size() << '\n';
  for (std::size_t i = 0; i < t.basis.size(); ++i)
    out << "  [" << i << "] " << format_partition(t.basis[i]) << '\n';
  for (std::size_t a = 0; a < t.W.size(); ++a) {
    out << " ";
    for (std::size_t b = 0; b < t.W.size(); ++b)
      out << ' ' << rational_to_string(t.W[a][b]);
    out << '\n';
  }
  return out.str();
}

}  // namespace partcat
