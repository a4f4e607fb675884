#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "partcat/category.hpp"
#include "partcat/errors.hpp"
#include "partcat/rational.hpp"
#include "partcat/sampling.hpp"
#include "partcat/weingarten.hpp"

using namespace partcat;

namespace {

const CategorySnapshot& orthogonal_cat() {
  static const CategorySnapshot d = CategorySnapshot::named(NamedCategory::P2, 6);
  return d;
}

const CategorySnapshot& unitary_cat() {
  static const CategorySnapshot d = CategorySnapshot::named(NamedCategory::MP2, 6);
  return d;
}

ColorWord word(const std::string& s) { return parse_color_word(s); }

Rational q(long long num, long long den) { return Rational(num) / den; }

MomentQuery query(const std::string& w, std::vector<int> rows, std::vector<int> cols, int N) {
  return MomentQuery{word(w), std::move(rows), std::move(cols), N};
}

}  // namespace

TEST_CASE("rational helpers round-trip and invert") {
  CHECK(rational_to_string(q(5, 72)) == "5/72");
  CHECK(rational_to_string(Rational(-3)) == "-3");
  CHECK(rational_from_string("5/72") == q(5, 72));
  CHECK(rational_from_string("-8") == Rational(-8));
  CHECK_THROWS_AS(rational_from_string("threeve"), ParseError);
  CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);

  RationalMatrix m = {{2, 1}, {1, 2}};
  const auto inv = rational_inverse(m);
  REQUIRE(inv.has_value());
  CHECK(rational_equal(rational_multiply(m, *inv), rational_identity(2)));
  RationalMatrix sing = {{1, 2}, {2, 4}};
  CHECK_FALSE(rational_inverse(sing).has_value());
  CHECK(rational_rank(sing) == 1);
  CHECK(greedy_independent_rows(sing) == std::vector<std::size_t>{0});
}

TEST_CASE("degree-two tables are one-dimensional") {
  const WeingartenTable t = weingarten_table(orthogonal_cat(), word("oo"), 4);
  REQUIRE(t.basis.size() == 1);
  CHECK(t.gram == std::vector<std::vector<long long>>{{4}});
  CHECK(t.W[0][0] == q(1, 4));
  CHECK(t.independent == std::vector<std::size_t>{0});

  const WeingartenTable u = weingarten_table(unitary_cat(), word("ob"), 4);
  REQUIRE(u.basis.size() == 1);
  CHECK(u.W[0][0] == q(1, 4));
}

TEST_CASE("empty word gives the trivial table") {
  const WeingartenTable t = weingarten_table(orthogonal_cat(), word(""), 3);
  REQUIRE(t.basis.size() == 1);
  CHECK(t.W[0][0] == 1);
  CHECK(moment(t, query("", {}, {}, 3)) == 1);
}

TEST_CASE("empty cells are refused") {
  CHECK_THROWS_AS(weingarten_table(orthogonal_cat(), word("o"), 3), EmptyBasis);
  CHECK_THROWS_AS(weingarten_table(unitary_cat(), word("oo"), 3), EmptyBasis);
}

TEST_CASE("orthogonal degree-four moments match the hand inversion") {
  // Gram [[N^2,N,N],[N,N^2,N],[N,N,N^2]] inverted by hand at N=4:
  // diagonal 5/72, off-diagonal -1/72, total sum 1/8
  const WeingartenTable t = weingarten_table(orthogonal_cat(), word("oooo"), 4);
  REQUIRE(t.basis.size() == 3);
  REQUIRE(t.independent.size() == 3);
  CHECK(moment(t, query("oooo", {1, 1, 1, 1}, {1, 1, 1, 1}, 4)) == q(1, 8));
  CHECK(moment(t, query("oooo", {1, 1, 2, 2}, {1, 1, 2, 2}, 4)) == q(5, 72));
  CHECK(moment(t, query("oooo", {1, 1, 2, 2}, {1, 2, 1, 2}, 4)) == q(-1, 72));
  CHECK(moment(t, query("oooo", {1, 2, 1, 2}, {1, 1, 2, 2}, 4)) == q(-1, 72));
  // odd occurrence counts integrate to zero
  CHECK(moment(t, query("oooo", {1, 1, 1, 2}, {1, 1, 1, 2}, 4)) == 0);
}

TEST_CASE("unitary fourth moment of a single entry") {
  const WeingartenTable t = weingarten_table(unitary_cat(), word("obob"), 4);
  REQUIRE(t.basis.size() == 2);
  CHECK(moment(t, query("obob", {1, 1, 1, 1}, {1, 1, 1, 1}, 4)) == q(1, 10));
  // general N: 2/(N(N+1))
  for (int N : {2, 3, 5}) {
    const WeingartenTable tn = weingarten_table(unitary_cat(), word("obob"), N);
    CHECK(moment(tn, query("obob", {1, 1, 1, 1}, {1, 1, 1, 1}, N)) ==
          Rational(2) / (Rational(N) * (N + 1)));
  }
}

TEST_CASE("weingarten is a generalized inverse even when the gram is singular") {
  // at N=2 the three pairing vectors on four legs have rank 3, but the
  // fifteen six-leg ones drop rank, exercising the subset route
  for (int N : {2, 3}) {
    for (const std::string& w : {std::string("oooo"), std::string("oooooo")}) {
      const WeingartenTable t = weingarten_table(orthogonal_cat(), word(w), N);
      const std::size_t m = t.basis.size();
      CAPTURE(N);
      CAPTURE(w);
      RationalMatrix g(m, std::vector<Rational>(m));
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) g[a][b] = t.gram[a][b];
      CHECK(rational_equal(rational_multiply(rational_multiply(g, t.W), g), g));
      // symmetry of the generalized inverse
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) CHECK(t.W[a][b] == t.W[b][a]);
    }
  }
  const WeingartenTable t2 = weingarten_table(orthogonal_cat(), word("oooooo"), 2);
  CHECK(t2.basis.size() == 15);
  CHECK(t2.independent.size() == 10);
  const WeingartenTable t3 = weingarten_table(orthogonal_cat(), word("oooooo"), 3);
  CHECK(t3.independent.size() == 15);
}

TEST_CASE("independent subset agrees with exact vector rank") {
  // dual route: realize the delta vectors densely and rank them rationally
  for (int N : {2, 3}) {
    const WeingartenTable t = weingarten_table(orthogonal_cat(), word("oooo"), N);
    RationalMatrix rows;
    for (const Partition& p : t.basis) {
      std::vector<Rational> v(static_cast<std::size_t>(N) * N * N * N, 0);
      std::vector<int> tuple(4, 1);
      for (std::size_t idx = 0; idx < v.size(); ++idx) {
        std::size_t rest = idx;
        for (int pos = 0; pos < 4; ++pos) {
          tuple[pos] = static_cast<int>(rest % N) + 1;
          rest /= N;
        }
        v[idx] = delta(p, {}, tuple);
      }
      rows.push_back(std::move(v));
    }
    CHECK(t.independent.size() == rational_rank(rows));
    CHECK(t.independent == greedy_independent_rows(rows));
  }
}

TEST_CASE("moments reject mismatched queries") {
  const WeingartenTable t = weingarten_table(orthogonal_cat(), word("oo"), 3);
  CHECK_THROWS_AS(moment(t, query("oooo", {1, 1, 1, 1}, {1, 1, 1, 1}, 3)), WordMismatch);
  CHECK_THROWS_AS(moment(t, query("oo", {1, 1}, {1, 1}, 4)), WordMismatch);
  CHECK_THROWS_AS(moment(t, query("oo", {1}, {1, 1}, 3)), IndexOutOfRange);
  CHECK_THROWS_AS(moment(t, query("oo", {0, 1}, {1, 1}, 3)), IndexOutOfRange);
  CHECK_THROWS_AS(moment(t, query("oo", {1, 1}, {1, 4}, 3)), IndexOutOfRange);
}

TEST_CASE("biunitarity sums are exactly zero or one") {
  for (int N = 2; N <= 5; ++N) {
    // unitary rows: sum_j u_{1j} conj(u_{rj})
    const WeingartenTable tu = weingarten_table(unitary_cat(), word("ob"), N);
    for (int r = 1; r <= N; ++r) {
      Rational sum = 0;
      for (int j = 1; j <= N; ++j) sum += moment(tu, query("ob", {1, r}, {j, j}, N));
      CHECK(sum == (r == 1 ? 1 : 0));
    }
    // orthogonal rows: colors carry no information for a real u
    const WeingartenTable to = weingarten_table(orthogonal_cat(), word("oo"), N);
    for (int r = 1; r <= N; ++r) {
      Rational sum = 0;
      for (int j = 1; j <= N; ++j) sum += moment(to, query("oo", {1, r}, {j, j}, N));
      CHECK(sum == (r == 1 ? 1 : 0));
    }
  }
}

TEST_CASE("table serialization carries the exact entries") {
  const WeingartenTable t = weingarten_table(orthogonal_cat(), word("oooo"), 4);
  const auto doc = nlohmann::json::parse(weingarten_to_json(t));
  CHECK(doc.at("kind") == "weingarten_table");
  CHECK(doc.at("word") == "oooo");
  CHECK(doc.at("N") == 4);
  CHECK(doc.at("basis").size() == 3);
  CHECK(doc.at("W")[0][0] == "5/72");
  CHECK(doc.at("W")[0][1] == "-1/72");
  CHECK(doc.at("gram")[0][0] == 16);

  const std::string text = weingarten_to_text(t);
  CHECK(text.find("word=oooo") != std::string::npos);
  CHECK(text.find("5/72") != std::string::npos);
}

TEST_CASE("orthogonal samples are orthogonal, unitary samples unitary") {
  for (ClassicalGroup g : {ClassicalGroup::Orthogonal, ClassicalGroup::Unitary}) {
    HaarSampler sampler(g, 4, 99);
    for (int s = 0; s < 10; ++s) {
      const ComplexMatrix u = sampler.next();
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          std::complex<double> dot = 0;
          for (int k = 0; k < 4; ++k) dot += u.at(k, r) * std::conj(u.at(k, c));
          CHECK(std::abs(dot - (r == c ? 1.0 : 0.0)) < 1e-12);
          if (g == ClassicalGroup::Orthogonal) CHECK(u.at(r, c).imag() == 0.0);
        }
    }
  }
}

TEST_CASE("samplers replay exactly under the same seed") {
  for (ClassicalGroup g : {ClassicalGroup::Orthogonal, ClassicalGroup::Unitary,
                           ClassicalGroup::SignedPermutation,
                           ClassicalGroup::PhasedPermutation}) {
    HaarSampler a(g, 3, 12345);
    HaarSampler b(g, 3, 12345);
    HaarSampler c(g, 3, 54321);
    bool all_same = true, any_diff = false;
    for (int s = 0; s < 5; ++s) {
      const ComplexMatrix ma = a.next(), mb = b.next(), mc = c.next();
      if (ma.a != mb.a) all_same = false;
      if (ma.a != mc.a) any_diff = true;
    }
    CHECK(all_same);
    CHECK(any_diff);
  }
}

TEST_CASE("signed permutations hit all 48 matrices uniformly") {
  HaarSampler sampler(ClassicalGroup::SignedPermutation, 3, 777);
  std::map<std::string, int> counts;
  const int samples = 100000;
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix m = sampler.next();
    std::string key;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const double x = m.at(r, c).real();
        key += (x > 0.5) ? '+' : (x < -0.5 ? '-' : '0');
        CHECK(m.at(r, c).imag() == 0.0);
      }
    ++counts[key];
  }
  CHECK(counts.size() == 48);
  double chi2 = 0;
  const double expect = samples / 48.0;
  for (const auto& [key, n] : counts) chi2 += (n - expect) * (n - expect) / expect;
  // Wilson-Hilferty 99th percentile for 47 degrees of freedom
  const double df = 47.0;
  const double z99 = 2.3263478740408408;
  const double cutoff =
      df * std::pow(1.0 - 2.0 / (9.0 * df) + z99 * std::sqrt(2.0 / (9.0 * df)), 3.0);
  CHECK(chi2 < cutoff);
}

TEST_CASE("phased permutations have unit-modulus support") {
  HaarSampler sampler(ClassicalGroup::PhasedPermutation, 4, 4242);
  for (int s = 0; s < 50; ++s) {
    const ComplexMatrix m = sampler.next();
    for (int c = 0; c < 4; ++c) {
      int nonzero_rows = 0;
      for (int r = 0; r < 4; ++r) {
        const double mod = std::abs(m.at(r, c));
        if (mod != 0.0) {
          ++nonzero_rows;
          CHECK(mod == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
      CHECK(nonzero_rows == 1);
    }
  }
}

TEST_CASE("monte carlo estimates surround the exact moments") {
  const std::uint64_t n = 200000;
  const int N = 4;
  struct Case {
    ClassicalGroup g;
    std::string w;
    std::vector<int> rows, cols;
    Rational exact;
  };
  const WeingartenTable o2 = weingarten_table(orthogonal_cat(), word("oo"), N);
  const WeingartenTable o4 = weingarten_table(orthogonal_cat(), word("oooo"), N);
  const WeingartenTable u4 = weingarten_table(unitary_cat(), word("obob"), N);
  const std::vector<Case> battery = {
      {ClassicalGroup::Orthogonal, "oo", {1, 1}, {1, 1},
       moment(o2, query("oo", {1, 1}, {1, 1}, N))},
      {ClassicalGroup::Orthogonal, "oo", {1, 2}, {1, 2}, 0},
      {ClassicalGroup::Orthogonal, "oooo", {1, 1, 1, 1}, {1, 1, 1, 1},
       moment(o4, query("oooo", {1, 1, 1, 1}, {1, 1, 1, 1}, N))},
      {ClassicalGroup::Orthogonal, "oooo", {1, 1, 2, 2}, {1, 2, 1, 2},
       moment(o4, query("oooo", {1, 1, 2, 2}, {1, 2, 1, 2}, N))},
      {ClassicalGroup::Unitary, "obob", {1, 1, 1, 1}, {1, 1, 1, 1},
       moment(u4, query("obob", {1, 1, 1, 1}, {1, 1, 1, 1}, N))},
  };
  std::uint64_t seed = 31337;
  for (const Case& c : battery) {
    const McEstimate est = mc_moment(c.g, query(c.w, c.rows, c.cols, N), n, seed++);
    const double exact = static_cast<double>(c.exact);
    CAPTURE(c.w);
    CHECK(std::abs(est.estimate - exact) <= 4.0 * est.stderr_of_mean + 1e-12);
    CHECK(est.samples == n);
  }
}

TEST_CASE("reflection samplers agree with forced degree-two sums") {
  // summing over a full row forces 1 for any orthogonal or unitary subgroup
  const std::uint64_t n = 20000;
  for (ClassicalGroup g : {ClassicalGroup::SignedPermutation,
                           ClassicalGroup::PhasedPermutation}) {
    double total = 0, var = 0;
    for (int j = 1; j <= 3; ++j) {
      const McEstimate est = mc_moment(g, query("ob", {1, 1}, {j, j}, 3), n, 5000 + j);
      total += est.estimate;
      var += est.stderr_of_mean * est.stderr_of_mean;
    }
    CHECK(std::abs(total - 1.0) <= 4.0 * std::sqrt(var) + 1e-12);
  }
}

TEST_CASE("group names and preset corners") {
  CHECK(parse_classical_group("O") == ClassicalGroup::Orthogonal);
  CHECK(classical_group_name(ClassicalGroup::PhasedPermutation) == "K");
  CHECK_THROWS_AS(parse_classical_group("Q"), UnknownName);
  CHECK(classical_group_for_preset("UN") == ClassicalGroup::Unitary);
  CHECK(preset_has_classical_group("HN"));
  CHECK_FALSE(preset_has_classical_group("HN+"));
  CHECK_THROWS_AS(classical_group_for_preset("ON+"), UnsupportedGroup);
  CHECK_THROWS_AS(classical_group_for_preset("TON"), UnsupportedGroup);
}
