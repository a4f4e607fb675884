#include "partcat/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "partcat/category.hpp"
#include "partcat/diagram_ops.hpp"
#include "partcat/presentations.hpp"
#include "partcat/sampling.hpp"
#include "partcat/sphere_span.hpp"
#include "partcat/tensor_op.hpp"
#include "partcat/weingarten.hpp"

namespace partcat {
namespace {

class FailureLog {
 public:
  void add(std::string what) {
    ++count_;
    if (lines_.size() < 5) lines_.push_back(std::move(what));
  }
  bool empty() const { return count_ == 0; }
  std::string text() const {
    std::string out = std::to_string(count_) + " failures:";
    for (const auto& l : lines_) out += " [" + l + "]";
    return out;
  }

 private:
  std::uint64_t count_ = 0;
  std::vector<std::string> lines_;
};

std::vector<Partition> even_pool_three_per_row() {
  std::vector<Partition> pool;
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l)
      for (const ColorWord& up : all_color_words(k))
        for (const ColorWord& lo : all_color_words(l)) {
          auto cells = enumerate(up, lo, PredEven);
          pool.insert(pool.end(), cells.begin(), cells.end());
        }
  return pool;
}

bool same_operator_entries(const SparseIntegerOperator& a, const SparseIntegerOperator& b) {
  return a.N == b.N && a.upper == b.upper && a.lower == b.lower && a.entries == b.entries;
}

// Tensor, composition, and adjoint identities over every even partition with
// at most three legs per row, for the plain and the sign-weighted realization
// alike. Tensor pairs are exhaustive while the product stays inside the same
// leg bound; a seeded sample of general pairs exercises products up to twelve
// legs on top of that. Composition covers every composable pair.
CriterionResult categorical_identities(std::uint64_t seed) {
  CriterionResult r;
  const std::vector<Partition> pool = even_pool_three_per_row();
  FailureLog failures;
  std::uint64_t adjoint_checks = 0, composition_checks = 0, tensor_checks = 0;
  constexpr std::size_t kSampledPairs = 2000;

  for (int N : {2, 3}) {
    std::vector<SparseIntegerOperator> plain, twisted;
    plain.reserve(pool.size());
    twisted.reserve(pool.size());
    for (const auto& p : pool) {
      plain.push_back(realize(p, N));
      twisted.push_back(realize_twisted(p, N));
    }

    for (std::size_t i = 0; i < pool.size(); ++i) {
      const Partition inv = involute(pool[i]);
      adjoint_checks += 2;
      if (op_adjoint(plain[i]) != realize(inv, N))
        failures.add("adjoint plain N=" + std::to_string(N) + " " + format_partition(pool[i]));
      if (op_adjoint(twisted[i]) != realize_twisted(inv, N))
        failures.add("adjoint twisted N=" + std::to_string(N) + " " +
                     format_partition(pool[i]));
    }

    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (pool[i].lower != pool[j].upper) continue;
        const Composed c = compose(pool[i], pool[j]);
        long long factor = 1;
        for (int q = 0; q < c.loops; ++q) factor *= N;
        composition_checks += 2;
        if (op_compose(plain[i], plain[j]) != op_scale(realize(c.result, N), factor))
          failures.add("composition plain N=" + std::to_string(N) + " " +
                       format_partition(pool[i]) + " then " + format_partition(pool[j]));
        if (op_compose(twisted[i], twisted[j]) !=
            op_scale(realize_twisted(c.result, N), factor))
          failures.add("composition twisted N=" + std::to_string(N) + " " +
                       format_partition(pool[i]) + " then " + format_partition(pool[j]));
      }

    auto check_tensor_pair = [&](std::size_t i, std::size_t j) {
      const Partition prod = tensor(pool[i], pool[j]);
      tensor_checks += 2;
      if (op_tensor(plain[i], plain[j]) != realize(prod, N))
        failures.add("tensor plain N=" + std::to_string(N) + " " + format_partition(pool[i]) +
                     " with " + format_partition(pool[j]));
      if (op_tensor(twisted[i], twisted[j]) != realize_twisted(prod, N))
        failures.add("tensor twisted N=" + std::to_string(N) + " " +
                     format_partition(pool[i]) + " with " + format_partition(pool[j]));
    };
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (pool[i].k() + pool[j].k() > 3 || pool[i].l() + pool[j].l() > 3) continue;
        check_tensor_pair(i, j);
      }
    std::mt19937_64 rng(seed * 16 + static_cast<std::uint64_t>(N));
    for (std::size_t t = 0; t < kSampledPairs; ++t)
      check_tensor_pair(rng() % pool.size(), rng() % pool.size());
  }

  r.pass = failures.empty();
  r.detail = failures.empty()
                 ? "pool " + std::to_string(pool.size()) + ", adjoint " +
                       std::to_string(adjoint_checks) + ", composition " +
                       std::to_string(composition_checks) + ", tensor " +
                       std::to_string(tensor_checks) + " checks at N in {2,3}"
                 : failures.text();
  return r;
}

// The sign-weighted realization must coincide with the plain one on every
// noncrossing even partition: entrywise, exactly, at every split and coloring
// up to six legs.
CriterionResult twisted_matches_untwisted(std::uint64_t) {
  CriterionResult r;
  FailureLog failures;
  std::uint64_t cells = 0;
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      for (const ColorWord& up : all_color_words(k))
        for (const ColorWord& lo : all_color_words(n - k))
          for (const Partition& p : enumerate(up, lo, PredEven | PredNoncrossing)) {
            ++cells;
            for (int N : {1, 2, 3})
              if (!same_operator_entries(realize(p, N), realize_twisted(p, N)))
                failures.add("N=" + std::to_string(N) + " " + format_partition(p));
          }
  r.pass = failures.empty();
  r.detail = failures.empty()
                 ? std::to_string(cells) + " noncrossing even cells exact at N in {1,2,3}"
                 : failures.text();
  return r;
}

int permutation_parity(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

// Signature well-definedness: random adjacent transpositions flip the sign
// exactly when the two legs lie in distinct blocks, so any switching sequence
// lands on signature(start) * (-1)^flips. Pairings must reproduce the
// crossing-count parity and permutation diagrams the permutation sign.
CriterionResult signature_well_defined(std::uint64_t seed) {
  CriterionResult r;
  FailureLog failures;
  std::mt19937_64 rng(seed * 16 + 3);
  std::uint64_t partitions = 0, sequences = 0, pairings = 0, permutations = 0;

  for (int n : {0, 2, 4, 6, 8})
    for (const SetPartition& p : all_set_partitions(n)) {
      if (!even_blocks(p)) continue;
      ++partitions;
      const int s0 = signature(p);
      if (is_pairing(p)) {
        ++pairings;
        if (s0 != (crossing_count(p) % 2 ? -1 : 1))
          failures.add("pairing parity n=" + std::to_string(n));
      }
      if (n < 2) continue;
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> labels = p.labels();
        int flips = 0;
        const int steps = 1 + static_cast<int>(rng() % 15);
        for (int s = 0; s < steps; ++s) {
          const int pos = static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
          if (labels[pos] != labels[pos + 1]) flips ^= 1;
          std::swap(labels[pos], labels[pos + 1]);
        }
        ++sequences;
        if (signature(SetPartition::from_labels(labels)) != (flips ? -s0 : s0))
          failures.add("switching sequence n=" + std::to_string(n));
      }
    }

  for (int n = 1; n <= 4; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::vector<int>> blocks;
      for (int i = 0; i < n; ++i) blocks.push_back({i, n + perm[static_cast<std::size_t>(i)]});
      const Partition diagram = Partition::make(ColorWord(static_cast<std::size_t>(n), Color::White),
                                                ColorWord(static_cast<std::size_t>(n), Color::White),
                                                std::move(blocks));
      ++permutations;
      if (signature(diagram) != permutation_parity(perm))
        failures.add("permutation diagram " + format_partition(diagram));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  r.pass = failures.empty();
  r.detail = failures.empty()
                 ? std::to_string(partitions) + " even partitions, " +
                       std::to_string(sequences) + " switching sequences, " +
                       std::to_string(pairings) + " pairings, " + std::to_string(permutations) +
                       " permutation diagrams"
                 : failures.text();
  return r;
}

// The matched crossing generates exactly the matched pairings, and the
// matched three-line crossing exactly the alternating matched pairings, as
// full cell tables up to eight legs.
CriterionResult generator_closures(std::uint64_t) {
  CriterionResult r;
  const CategorySnapshot un = CategorySnapshot::close(preset_generators("UN"), 8);
  const CategorySnapshot mp2 = CategorySnapshot::named(NamedCategory::MP2, 8);
  const CategorySnapshot unstar = CategorySnapshot::close(preset_generators("UN*"), 8);
  const CategorySnapshot mp2star = CategorySnapshot::named(NamedCategory::MP2Star, 8);
  const bool crossing_ok = un.same_cells(mp2);
  const bool three_line_ok = unstar.same_cells(mp2star);
  r.pass = crossing_ok && three_line_ok;
  std::string detail = "crossing closure " + std::to_string(un.cell_count()) + " cells vs " +
                       std::to_string(mp2.cell_count()) + (crossing_ok ? " equal" : " DIFFER") +
                       "; three-line closure " + std::to_string(unstar.cell_count()) +
                       " cells vs " + std::to_string(mp2star.cell_count()) +
                       (three_line_ok ? " equal" : " DIFFER");
  r.detail = std::move(detail);
  return r;
}

// Meets of the eight predicate-cut categories agree with the predicate-union
// oracle cell-for-cell, and each geometry preset satisfies both axioms tying
// it to its reflection partner: the pairings of the partner recover the
// preset, and the partner is generated by the preset plus the minimal even
// category.
CriterionResult meets_and_pair_axioms(std::uint64_t) {
  CriterionResult r;
  FailureLog failures;
  const NamedCategory base[8] = {NamedCategory::P2,    NamedCategory::NC2,
                                 NamedCategory::MP2,   NamedCategory::MNC2,
                                 NamedCategory::Peven, NamedCategory::NCeven,
                                 NamedCategory::MPeven, NamedCategory::MNCeven};
  std::vector<CategorySnapshot> snaps;
  snaps.reserve(8);
  for (NamedCategory c : base) snaps.push_back(CategorySnapshot::named(c, 8));

  std::uint64_t meets = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = i; j < 8; ++j) {
      const unsigned mask = named_category_predicates(base[i]) | named_category_predicates(base[j]);
      int target = -1;
      for (int t = 0; t < 8; ++t)
        if (named_category_predicates(base[t]) == mask) target = t;
      if (target < 0) {
        failures.add("no category for predicate union of " + named_category_name(base[i]) +
                     " and " + named_category_name(base[j]));
        continue;
      }
      ++meets;
      if (!intersect(snaps[static_cast<std::size_t>(i)], snaps[static_cast<std::size_t>(j)])
               .same_cells(snaps[static_cast<std::size_t>(target)]))
        failures.add("meet " + named_category_name(base[i]) + " ^ " +
                     named_category_name(base[j]) + " != " + named_category_name(base[target]));
    }

  std::uint64_t pairs = 0;
  for (const std::string& preset : geometry_preset_names()) {
    const CategorySnapshot d = CategorySnapshot::named(preset_category(preset), 8);
    const CategorySnapshot e =
        CategorySnapshot::named(preset_category(reflection_partner(preset)), 8);
    const PairAxiomReport axioms = check_pair_axioms(d, e);
    ++pairs;
    if (!axioms.d_eq)
      failures.add(preset + " pairing axiom" +
                   (axioms.d_witnesses.empty() ? "" : ": " + axioms.d_witnesses.front()));
    if (!axioms.e_eq)
      failures.add(preset + " join axiom" +
                   (axioms.e_witnesses.empty() ? "" : ": " + axioms.e_witnesses.front()));
  }

  r.pass = failures.empty();
  r.detail = failures.empty() ? std::to_string(meets) + " meets and " + std::to_string(pairs) +
                                    " reflection pairs at bound 8"
                              : failures.text();
  return r;
}

struct MomentCase {
  char group;  // 'O' or 'U'
  const char* word;
  std::vector<int> rows;
  std::vector<int> cols;
};

// Exact Weingarten moments against Monte-Carlo sampling of the classical
// groups, then the biunitarity sums in exact arithmetic: row and column
// orthonormality of the first-order moments must come out as literal 0 or 1.
CriterionResult weingarten_against_monte_carlo(std::uint64_t seed) {
  CriterionResult r;
  FailureLog failures;

  const std::vector<MomentCase> cases = {
      // orthogonal, degree two
      {'O', "oo", {1, 1}, {1, 1}},
      {'O', "oo", {1, 2}, {1, 2}},
      {'O', "oo", {1, 1}, {1, 2}},
      {'O', "oo", {2, 3}, {4, 1}},
      {'O', "oo", {3, 3}, {2, 2}},
      // orthogonal, degree four
      {'O', "oooo", {1, 1, 1, 1}, {1, 1, 1, 1}},
      {'O', "oooo", {1, 1, 1, 1}, {1, 1, 2, 2}},
      {'O', "oooo", {1, 1, 2, 2}, {1, 1, 2, 2}},
      {'O', "oooo", {1, 2, 1, 2}, {1, 2, 1, 2}},
      {'O', "oooo", {1, 1, 2, 2}, {1, 2, 1, 2}},
      {'O', "oooo", {1, 2, 3, 4}, {1, 2, 3, 4}},
      {'O', "oooo", {1, 2, 2, 1}, {2, 1, 1, 2}},
      {'O', "oooo", {1, 1, 2, 3}, {1, 1, 2, 3}},
      {'O', "oooo", {1, 1, 1, 2}, {1, 1, 1, 2}},
      {'O', "oooo", {1, 2, 3, 4}, {4, 3, 2, 1}},
      {'O', "oooo", {1, 1, 2, 2}, {3, 3, 4, 4}},
      {'O', "oooo", {1, 2, 1, 3}, {1, 2, 1, 3}},
      {'O', "oooo", {1, 1, 2, 2}, {1, 2, 2, 1}},
      {'O', "oooo", {2, 2, 2, 2}, {1, 1, 3, 3}},
      {'O', "oooo", {1, 2, 2, 3}, {1, 2, 2, 3}},
      // unitary, degree two
      {'U', "ob", {1, 1}, {1, 1}},
      {'U', "ob", {1, 2}, {1, 2}},
      {'U', "ob", {1, 1}, {1, 2}},
      {'U', "ob", {3, 2}, {3, 2}},
      {'U', "ob", {2, 2}, {4, 4}},
      // unitary, degree four
      {'U', "obob", {1, 1, 1, 1}, {1, 1, 1, 1}},
      {'U', "obob", {1, 1, 2, 2}, {1, 1, 2, 2}},
      {'U', "obob", {1, 1, 2, 2}, {1, 2, 2, 1}},
      {'U', "obob", {1, 2, 2, 1}, {1, 2, 2, 1}},
      {'U', "obob", {1, 1, 1, 1}, {1, 1, 2, 2}},
      {'U', "obob", {1, 2, 3, 4}, {1, 2, 3, 4}},
      {'U', "obob", {1, 1, 2, 3}, {1, 1, 2, 3}},
      {'U', "obob", {1, 2, 1, 2}, {1, 2, 1, 2}},
      {'U', "oobb", {1, 2, 1, 2}, {1, 2, 1, 2}},
      {'U', "oobb", {1, 2, 2, 1}, {1, 2, 2, 1}},
      {'U', "oobb", {1, 1, 1, 1}, {1, 2, 1, 2}},
      {'U', "oobb", {1, 2, 1, 2}, {2, 1, 2, 1}},
      {'U', "oobb", {1, 2, 3, 4}, {1, 2, 3, 4}},
      {'U', "oobb", {1, 1, 1, 1}, {1, 1, 1, 1}},
      {'U', "oobb", {1, 1, 2, 2}, {1, 2, 1, 2}},
      {'U', "oobb", {3, 4, 3, 4}, {1, 2, 1, 2}},
  };

  std::uint64_t queries = 0;
  double worst_pull = 0;
  for (std::size_t idx = 0; idx < cases.size(); ++idx) {
    const MomentCase& c = cases[idx];
    const ColorWord w = parse_color_word(c.word);
    const NamedCategory cat = c.group == 'O' ? NamedCategory::P2 : NamedCategory::MP2;
    const ClassicalGroup group =
        c.group == 'O' ? ClassicalGroup::Orthogonal : ClassicalGroup::Unitary;
    const CategorySnapshot D = CategorySnapshot::named(cat, static_cast<int>(w.size()));
    const WeingartenTable table = weingarten_table(D, w, 4);
    const MomentQuery q{w, c.rows, c.cols, 4};
    const double exact = moment(table, q).convert_to<double>();
    const McEstimate est = mc_moment(group, q, 200000, seed * 1000 + idx);
    ++queries;
    const double tolerance = 4 * est.stderr_of_mean + 1e-12;
    const double pull = std::abs(exact - est.estimate) / (est.stderr_of_mean + 1e-12);
    worst_pull = std::max(worst_pull, pull);
    if (std::abs(exact - est.estimate) > tolerance)
      failures.add(std::string(1, c.group) + "4 " + c.word + " query " + std::to_string(idx) +
                   " off by " + std::to_string(std::abs(exact - est.estimate)) + " > 4 se");
  }

  std::uint64_t sums = 0;
  for (int N = 2; N <= 5; ++N) {
    const CategorySnapshot p2 = CategorySnapshot::named(NamedCategory::P2, 2);
    const CategorySnapshot mp2 = CategorySnapshot::named(NamedCategory::MP2, 2);
    const ColorWord oo = parse_color_word("oo");
    const ColorWord ob = parse_color_word("ob");
    const ColorWord bo = parse_color_word("bo");
    const WeingartenTable t_oo = weingarten_table(p2, oo, N);
    const WeingartenTable t_ob = weingarten_table(mp2, ob, N);
    const WeingartenTable t_bo = weingarten_table(mp2, bo, N);
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        const Rational expect(i == j ? 1 : 0);
        Rational o_row = 0, o_col = 0, u_row = 0, u_col = 0, u_row_rev = 0, u_col_rev = 0;
        for (int k = 1; k <= N; ++k) {
          o_row += moment(t_oo, {oo, {i, j}, {k, k}, N});
          o_col += moment(t_oo, {oo, {k, k}, {i, j}, N});
          u_row += moment(t_ob, {ob, {i, j}, {k, k}, N});
          u_col += moment(t_ob, {ob, {k, k}, {i, j}, N});
          u_row_rev += moment(t_bo, {bo, {i, j}, {k, k}, N});
          u_col_rev += moment(t_bo, {bo, {k, k}, {i, j}, N});
        }
        sums += 6;
        if (o_row != expect || o_col != expect)
          failures.add("orthogonal biunitarity N=" + std::to_string(N) + " (" +
                       std::to_string(i) + "," + std::to_string(j) + ")");
        if (u_row != expect || u_col != expect || u_row_rev != expect || u_col_rev != expect)
          failures.add("unitary biunitarity N=" + std::to_string(N) + " (" + std::to_string(i) +
                       "," + std::to_string(j) + ")");
      }
  }

  r.pass = failures.empty();
  std::ostringstream d;
  d << queries << " moment queries within 4 se (worst pull "
    << std::fixed << std::setprecision(2) << worst_pull << "), " << sums
    << " biunitarity sums exact for N <= 5";
  r.detail = failures.empty() ? d.str() : failures.text();
  return r;
}

// The join-based Gram formula agrees with the brute-force inner products on
// the full one-row basis for every length up to six, and each entry is
// exactly N to the number of blocks of the join.
CriterionResult gram_formula(std::uint64_t) {
  CriterionResult r;
  FailureLog failures;
  std::uint64_t matrices = 0;
  for (int n = 1; n <= 6; ++n) {
    const ColorWord word(static_cast<std::size_t>(n), Color::White);
    std::vector<Partition> basis;
    for (const SetPartition& sp : all_set_partitions(n))
      basis.push_back(unflatten(Flattened{word, sp}, 0));
    for (int N : {2, 3, 4}) {
      const auto fast = gram_matrix(basis, N);
      const auto brute = gram_matrix_brute(basis, N);
      ++matrices;
      if (fast != brute) {
        failures.add("formula vs brute n=" + std::to_string(n) + " N=" + std::to_string(N));
        continue;
      }
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
          const int joined = join(basis[i].blocks, basis[j].blocks).block_count();
          if (fast[i][j] != static_cast<long long>(pow_u64(static_cast<std::uint64_t>(N), joined)))
            failures.add("join exponent n=" + std::to_string(n) + " N=" + std::to_string(N));
        }
    }
  }
  r.pass = failures.empty();
  r.detail = failures.empty()
                 ? std::to_string(matrices) + " bases up to 6 legs, N in {2,3,4}, entrywise"
                 : failures.text();
  return r;
}

// Torus normal forms at bound 8: pairings give the cube, matched pairings the
// standard torus, matched noncrossing pairings the free dual, and the signed
// emission routes produce byte-identical text and json.
CriterionResult torus_normal_forms(std::uint64_t) {
  CriterionResult r;
  FailureLog failures;
  struct Expectation {
    NamedCategory cat;
    bool commutation;
    bool squares;
    TorusKind kind;
  };
  const Expectation wants[3] = {
      {NamedCategory::P2, true, true, TorusKind::Cube},
      {NamedCategory::MP2, true, false, TorusKind::StandardTorus},
      {NamedCategory::MNC2, false, false, TorusKind::FreeDual},
  };
  std::string kinds;
  for (const Expectation& want : wants) {
    const CategorySnapshot D = CategorySnapshot::named(want.cat, 8);
    const TorusPresentation plain = torus_presentation(D, 3, 8, false);
    const TorusPresentation signed_route = torus_presentation(D, 3, 8, true);
    const TorusNormalForm nf = normalize_torus(plain);
    const std::string label = named_category_name(want.cat);
    if (nf.commutation != want.commutation)
      failures.add(label + " commutation " + (nf.commutation ? "detected" : "missed"));
    if (nf.squares != want.squares)
      failures.add(label + " squares " + (nf.squares ? "detected" : "missed"));
    if (nf.kind != want.kind) failures.add(label + " classified as " + torus_kind_name(nf.kind));
    if (torus_to_text(plain) != torus_to_text(signed_route) ||
        torus_to_json(plain) != torus_to_json(signed_route))
      failures.add(label + " signed emission differs");
    if (!kinds.empty()) kinds += ", ";
    kinds += label + " -> " + torus_kind_name(nf.kind);
  }
  r.pass = failures.empty();
  r.detail = failures.empty() ? kinds + "; signed emissions byte-identical" : failures.text();
  return r;
}

// Every geometry preset is generated by permutation diagrams, and the
// untwisted sum relations of the classical corners hold numerically on their
// commutative models.
CriterionResult fizziness_and_models(std::uint64_t seed) {
  CriterionResult r;
  FailureLog failures;
  std::uint64_t fizzy = 0;
  for (const std::string& preset : geometry_preset_names()) {
    const FizzyReport rep = fizzy_criterion(preset_generators(preset));
    ++fizzy;
    if (rep.verdict != FizzyVerdict::FizzyByPermutations) {
      std::string why = preset + " inconclusive";
      for (const auto& g : rep.non_permutation_generators) why += " " + g;
      failures.add(why);
    }
  }

  std::uint64_t checks = 0;
  for (const std::string& preset : {std::string("ON"), std::string("TON"), std::string("UN")}) {
    const CategorySnapshot D = CategorySnapshot::named(preset_category(preset), 6);
    const SphereRelationSet rels = sphere_relations(D, 4, 6, false);
    const ModelCheckReport check =
        classical_model_check(rels, classical_model_for_preset(preset), 1000, 1e-9, seed);
    ++checks;
    if (!check.pass)
      failures.add(preset + " max deviation " + std::to_string(check.max_deviation) + " on " +
                   check.worst_relation);
  }

  r.pass = failures.empty();
  r.detail = failures.empty() ? std::to_string(fizzy) + " presets by permutations, " +
                                    std::to_string(checks) +
                                    " classical model checks at N=4, 1000 points, 1e-9"
                              : failures.text();
  return r;
}

// One-row and two-row sphere relation sets are mutually derivable inside the
// degree-six slice for every geometry preset, on the plain and the signed
// route alike.
CriterionResult sphere_relation_equivalence(std::uint64_t) {
  CriterionResult r;
  FailureLog failures;
  std::uint64_t reports = 0, certified = 0;
  for (const std::string& preset : geometry_preset_names()) {
    const CategorySnapshot D = CategorySnapshot::named(preset_category(preset), 6);
    for (bool twisted : {false, true}) {
      const SphereEquivalenceReport rep = check_sphere_equivalence(D, 2, 6, twisted);
      ++reports;
      certified += rep.two_row_certified;
      if (!rep.equivalent)
        failures.add(preset + (twisted ? " signed" : " plain") +
                     (rep.failures.empty() ? "" : ": " + rep.failures.front()));
    }
  }
  r.pass = failures.empty();
  r.detail = failures.empty() ? std::to_string(reports) + " preset routes equivalent at N=2, " +
                                    "degree 6 (" + std::to_string(certified) +
                                    " schemas via certificate)"
                              : failures.text();
  return r;
}

struct CriterionEntry {
  const char* name;
  CriterionResult (*fn)(std::uint64_t);
};

constexpr CriterionEntry kCriteria[] = {
    {"categorical identities", categorical_identities},
    {"twisted equals untwisted on noncrossing cells", twisted_matches_untwisted},
    {"signature well-definedness", signature_well_defined},
    {"generator closures", generator_closures},
    {"meets and pair axioms", meets_and_pair_axioms},
    {"weingarten against monte carlo", weingarten_against_monte_carlo},
    {"gram formula", gram_formula},
    {"torus normal forms", torus_normal_forms},
    {"fizziness and classical models", fizziness_and_models},
    {"sphere relation equivalence", sphere_relation_equivalence},
};

}  // namespace

AcceptanceReport run_acceptance(std::uint64_t seed, std::ostream* log) {
  AcceptanceReport report;
  report.seed = seed;
  const int total = static_cast<int>(std::size(kCriteria));
  int id = 0;
  for (const CriterionEntry& entry : kCriteria) {
    ++id;
    CriterionResult result;
    const auto start = std::chrono::steady_clock::now();
    try {
      result = entry.fn(seed);
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.id = id;
    result.name = entry.name;
    result.ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                               std::chrono::steady_clock::now() - start)
                                               .count());
    if (log) {
      *log << "[" << std::setw(2) << id << "/" << total << "] "
           << (result.pass ? "PASS" : "FAIL") << " " << result.name << " (" << result.ms
           << " ms) " << result.detail << std::endl;
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

std::string acceptance_to_json(const AcceptanceReport& r) {
  nlohmann::json doc;
  doc["kind"] = "acceptance";
  doc["seed"] = r.seed;
  doc["all_pass"] = r.all_pass();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : r.results) {
    list.push_back({{"id", c.id},
                    {"name", c.name},
                    {"pass", c.pass},
                    {"ms", c.ms},
                    {"detail", c.detail}});
  }
  doc["criteria"] = std::move(list);
  return doc.dump(2);
}

}  // namespace partcat
