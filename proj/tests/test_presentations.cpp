#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "partcat/category.hpp"
#include "partcat/diagram_ops.hpp"
#include "partcat/errors.hpp"
#include "partcat/onerow.hpp"
#include "partcat/partition.hpp"
#include "partcat/presentations.hpp"
#include "partcat/tensor_op.hpp"

using namespace partcat;

namespace {

Partition make_p(const std::string& literal) { return parse_partition(literal); }

std::string lit(const std::string& literal) { return format_partition(make_p(literal)); }

// Reference relator, built from scratch: flatten the partition, then read the
// flattened word backwards with inverted exponents, renaming block letters in
// order of first use. The library builds the word from the two-row legs
// instead (upper ascending, lower descending), so agreement here proves that
// every split of one cell asserts literally the same group relation.
std::vector<std::pair<int, int>> oracle_relator(const std::string& literal) {
  const Partition p = make_p(literal);
  const Flattened f = flatten(p);
  const std::vector<int> labels = f.part.labels();
  std::vector<std::pair<int, int>> w;
  for (int j = static_cast<int>(f.word.size()) - 1; j >= 0; --j)
    w.push_back({labels[j], f.word[j] == Color::White ? -1 : 1});
  std::map<int, int> rename;
  for (auto& s : w) {
    auto it = rename.emplace(s.first, static_cast<int>(rename.size())).first;
    s.first = it->second;
  }
  return w;
}

std::vector<std::pair<int, int>> schema_relator(const TorusSchema& s) {
  std::vector<std::pair<int, int>> w;
  for (size_t i = 0; i < s.upper_blocks.size(); ++i)
    w.push_back({s.upper_blocks[i], s.upper_exponents[i]});
  for (size_t t = s.lower_blocks.size(); t-- > 0;)
    w.push_back({s.lower_blocks[t], -s.lower_exponents[t]});
  std::map<int, int> rename;
  for (auto& syl : w) {
    auto it = rename.emplace(syl.first, static_cast<int>(rename.size())).first;
    syl.first = it->second;
  }
  return w;
}

const TorusSchema* find_schema(const TorusPresentation& t, const std::string& literal) {
  const std::string want = lit(literal);
  for (const TorusSchema& s : t.schemas)
    if (s.partition == want) return &s;
  return nullptr;
}

CategorySnapshot crossing_seed_snapshot(int bound) {
  CellTable table(bound);
  const Partition crossing =
      Partition::make({Color::White, Color::White}, {Color::White, Color::White},
                      {{0, 3}, {1, 2}});
  table.insert(pack_cell(crossing));
  return CategorySnapshot::from_cells(std::move(table), "crossing-seed");
}

}  // namespace

TEST_CASE("torus presentation emits one schema per cell and split") {
  const CategorySnapshot D = CategorySnapshot::named(NamedCategory::P2, 4);
  const TorusPresentation t = torus_presentation(D, 2, 4);
  CHECK(t.N == 2);
  CHECK(t.bound == 4);
  CHECK(t.source == D.provenance());

  // colored pairings up to four legs: 1 empty + 4*1 two-leg + 16*3 four-leg
  // cells, each cell contributing legs+1 splits
  CHECK(D.cell_count() == 53);
  CHECK(t.schemas.size() == 1 * 1 + 4 * 3 + 48 * 5);

  // sorted by leg count first, so the empty relation leads
  REQUIRE(!t.schemas.empty());
  CHECK(t.schemas.front().partition == lit("|"));
  CHECK(t.schemas.front().upper_blocks.empty());
  CHECK(t.schemas.front().lower_blocks.empty());

  const TorusSchema* oo = find_schema(t, "|oo;l1 l2");
  REQUIRE(oo != nullptr);
  CHECK(oo->upper_word == "");
  CHECK(oo->lower_word == "oo");
  CHECK(oo->lower_blocks == std::vector<int>{0, 0});
  CHECK(oo->lower_exponents == std::vector<int>{1, 1});

  const TorusSchema* strand = find_schema(t, "b|o;u1 l1");
  REQUIRE(strand != nullptr);
  CHECK(strand->upper_blocks == std::vector<int>{0});
  CHECK(strand->upper_exponents == std::vector<int>{-1});
  CHECK(strand->lower_exponents == std::vector<int>{1});
}

TEST_CASE("every split of a cell carries the same relator") {
  const CategorySnapshot D = CategorySnapshot::named(NamedCategory::MPeven, 4);
  const TorusPresentation t = torus_presentation(D, 2, 4);
  std::map<std::string, std::set<std::vector<std::pair<int, int>>>> by_cell;
  for (const TorusSchema& s : t.schemas) {
    CHECK(schema_relator(s) == oracle_relator(s.partition));
    by_cell[format_partition(unflatten(flatten(make_p(s.partition)), 0))].insert(
        schema_relator(s));
  }
  for (const auto& [cell, relators] : by_cell) {
    INFO(cell);
    CHECK(relators.size() == 1);
  }
}

TEST_CASE("torus text and json render group words") {
  CellTable table(2);
  table.insert(pack_cell(make_p("|oo;l1 l2")));
  const CategorySnapshot D = CategorySnapshot::from_cells(std::move(table), "demo");
  const TorusPresentation t = torus_presentation(D, 2, 2);
  REQUIRE(t.schemas.size() == 3);

  const std::string text = torus_to_text(t);
  CHECK(text ==
        "diagonal torus relations  N=2  bound=2  source=demo\n"
        "1 = g1*g1  # " + lit("|oo;l1 l2") + "\n"
        "g1^-1 = g1  # " + lit("b|o;u1 l1") + "\n"
        "g1^-1*g1^-1 = 1  # " + lit("bb|;u1 u2") + "\n");

  const std::string json = torus_to_json(t);
  CHECK(json.find("\"kind\": \"torus_presentation\"") != std::string::npos);
  CHECK(json.find("\"g1\"") != std::string::npos);
  CHECK(json.find("\"g2\"") != std::string::npos);
  CHECK(json.find(lit("|oo;l1 l2")) != std::string::npos);
}

TEST_CASE("signed emission is byte identical to the plain route") {
  for (NamedCategory c : {NamedCategory::P2, NamedCategory::MNCeven, NamedCategory::PevenBar}) {
    const CategorySnapshot D = CategorySnapshot::named(c, 6);
    const TorusPresentation plain = torus_presentation(D, 3, 6, false);
    const TorusPresentation routed = torus_presentation(D, 3, 6, true);
    CHECK(plain.schemas == routed.schemas);
    CHECK(torus_to_text(plain) == torus_to_text(routed));
    CHECK(torus_to_json(plain) == torus_to_json(routed));
  }
}

TEST_CASE("torus emission rejects bounds beyond the snapshot") {
  const CategorySnapshot D = CategorySnapshot::named(NamedCategory::P2, 4);
  CHECK_THROWS_AS(torus_presentation(D, 2, 6), BoundMismatch);
  CHECK_THROWS_AS(sphere_relations(D, 2, 6, false), BoundMismatch);
  CHECK_THROWS_AS(group_relations(D, 2, 6, false), BoundMismatch);
}

TEST_CASE("normalizer detects the relation families of each named category") {
  struct Row {
    NamedCategory cat;
    bool commutation, squares, square_equality, half_commutation;
    TorusKind kind;
  };
  // Expectations derived by hand. Commutation needs a crossing whose strand
  // colors flip, squares need a same-colored pair, square equality needs two
  // same-lettered doublets, half commutation a three-line crossing. The kind
  // column is the exact group: detections bound it above, the triviality
  // certificate of every emitted relator bounds it below.
  const std::vector<Row> rows = {
      {NamedCategory::P2, true, true, true, true, TorusKind::Cube},
      {NamedCategory::P2Star, false, true, true, true, TorusKind::Unclassified},
      {NamedCategory::NC2, false, true, true, false, TorusKind::FreeCube},
      {NamedCategory::P2Bar, true, false, true, true, TorusKind::Unclassified},
      {NamedCategory::P2BarStar, false, false, true, true, TorusKind::Unclassified},
      {NamedCategory::NC2Bar, false, false, true, false, TorusKind::Unclassified},
      {NamedCategory::MP2, true, false, false, true, TorusKind::StandardTorus},
      {NamedCategory::MP2Star, false, false, false, true, TorusKind::Unclassified},
      {NamedCategory::MNC2, false, false, false, false, TorusKind::FreeDual},
      {NamedCategory::Peven, true, true, true, true, TorusKind::Cube},
      {NamedCategory::PevenStar, false, true, true, true, TorusKind::Unclassified},
      {NamedCategory::NCeven, false, true, true, false, TorusKind::FreeCube},
      {NamedCategory::PevenBar, true, false, true, true, TorusKind::Unclassified},
      {NamedCategory::PevenBarStar, false, false, true, true, TorusKind::Unclassified},
      {NamedCategory::NCevenBar, false, false, true, false, TorusKind::Unclassified},
      {NamedCategory::MPeven, true, false, false, true, TorusKind::StandardTorus},
      {NamedCategory::MPevenStar, false, false, false, true, TorusKind::Unclassified},
      {NamedCategory::MNCeven, false, false, false, false, TorusKind::FreeDual},
  };
  for (const Row& r : rows) {
    INFO(named_category_name(r.cat));
    const CategorySnapshot D = CategorySnapshot::named(r.cat, 6);
    const TorusNormalForm nf = normalize_torus(torus_presentation(D, 3, 6));
    CHECK(nf.commutation == r.commutation);
    CHECK(nf.squares == r.squares);
    CHECK(nf.square_equality == r.square_equality);
    CHECK(nf.half_commutation == r.half_commutation);
    CHECK(nf.kind == r.kind);
  }
}

TEST_CASE("triviality certificates match the classified groups") {
  auto nf_of = [](NamedCategory c) {
    return normalize_torus(torus_presentation(CategorySnapshot::named(c, 6), 3, 6));
  };

  const TorusNormalForm p2 = nf_of(NamedCategory::P2);
  CHECK(p2.trivial_mod_both);
  CHECK(!p2.trivial_mod_commutation);
  CHECK(!p2.trivial_mod_squares);
  CHECK(!p2.trivial_free);

  const TorusNormalForm mp2 = nf_of(NamedCategory::MP2);
  CHECK(mp2.trivial_mod_commutation);
  CHECK(mp2.trivial_mod_both);
  CHECK(!mp2.trivial_mod_squares);

  const TorusNormalForm nc2 = nf_of(NamedCategory::NC2);
  CHECK(nc2.trivial_mod_squares);
  CHECK(!nc2.trivial_mod_commutation);

  const TorusNormalForm mnc2 = nf_of(NamedCategory::MNC2);
  CHECK(mnc2.trivial_free);
  CHECK(mnc2.trivial_mod_squares);
  CHECK(mnc2.trivial_mod_commutation);
  CHECK(mnc2.trivial_mod_both);

  // the half-liberated cube keeps every letter count even without being
  // abelian: the certificate holds while the kind stays unclassified
  const TorusNormalForm p2s = nf_of(NamedCategory::P2Star);
  CHECK(p2s.trivial_mod_both);
  CHECK(!p2s.trivial_mod_squares);
  CHECK(p2s.kind == TorusKind::Unclassified);
}

TEST_CASE("normalizer witnesses point at minimal schemas") {
  const CategorySnapshot p2 = CategorySnapshot::named(NamedCategory::P2, 6);
  const TorusNormalForm nf = normalize_torus(torus_presentation(p2, 3, 6));
  CHECK(nf.squares_witness == lit("|bb;l1 l2"));
  CHECK(nf.commutation_witness == lit("|bboo;l1 l3;l2 l4"));

  const CategorySnapshot bar = CategorySnapshot::named(NamedCategory::P2Bar, 6);
  const TorusNormalForm nfb = normalize_torus(torus_presentation(bar, 3, 6));
  CHECK(nfb.square_equality_witness == lit("|bboo;l1 l2;l3 l4"));
  CHECK(nfb.squares_witness == "");

  const CategorySnapshot star = CategorySnapshot::named(NamedCategory::MP2Star, 6);
  const TorusNormalForm nfs = normalize_torus(torus_presentation(star, 3, 6));
  CHECK(nfs.half_commutation_witness == lit("|bbbooo;l1 l4;l2 l5;l3 l6"));
  CHECK(nfs.commutation_witness == "");
}

TEST_CASE("patterns count distinct relators across splits") {
  const CategorySnapshot two = CategorySnapshot::named(NamedCategory::P2, 2);
  const TorusNormalForm nf2 = normalize_torus(torus_presentation(two, 2, 2));
  CHECK(nf2.patterns == 5);  // the empty cell and four colored pairs
  CHECK(nf2.squares);
  CHECK(!nf2.commutation);

  const CategorySnapshot four = CategorySnapshot::named(NamedCategory::P2, 4);
  const TorusNormalForm nf4 = normalize_torus(torus_presentation(four, 2, 4));
  CHECK(nf4.patterns == 53);  // one pattern per cell, splits collapse
}

TEST_CASE("sphere relation sets in sum and substitution form") {
  const CategorySnapshot D = CategorySnapshot::named(NamedCategory::P2, 4);

  const SphereRelationSet sums = sphere_relations(D, 3, 4, false);
  CHECK(sums.relations.size() == 53);
  CHECK(!sums.two_row);
  for (const SphereRelation& r : sums.relations) CHECK(r.upper_blocks.empty());

  const std::string text = sphere_to_text(sums);
  CHECK(text.find("sum x(i1) x(i2) x(i2) x(i1) = 1  # " + lit("|oooo;l1 l4;l2 l3")) !=
        std::string::npos);
  CHECK(text.find("sum x(i1) x(i2) x(i1) x(i2) = 1  # " + lit("|oooo;l1 l3;l2 l4")) !=
        std::string::npos);

  const SphereRelationSet subs = sphere_relations_two_row(D, 3, 4, false);
  CHECK(subs.two_row);
  // permutation splits: the empty diagram, 4 colored strands, then 2 honest
  // pairings of two upper against two lower legs in 16 colorings each
  CHECK(subs.relations.size() == 1 + 4 + 32);
  for (const SphereRelation& r : subs.relations) {
    CHECK(r.upper_blocks.size() == r.lower_blocks.size());
    CHECK(is_permutation_diagram(make_p(r.partition)));
  }

  // signed weights never remove a defining instance, so the signed emission
  // lists the same schemas
  const SphereRelationSet signed_sums = sphere_relations(D, 3, 4, true);
  CHECK(signed_sums.twisted);
  CHECK(signed_sums.relations == sums.relations);
  const SphereRelationSet signed_subs = sphere_relations_two_row(D, 3, 4, true);
  CHECK(signed_subs.relations == subs.relations);
}

TEST_CASE("intertwiner equations of the matching crossing") {
  const CategorySnapshot D = crossing_seed_snapshot(4);
  const IntertwinerRelationSet rel = group_relations(D, 2, 4, false);
  CHECK(rel.equations_before_pruning == 80);  // five splits, 2^4 components each

  std::vector<const IntertwinerEquation*> middle;
  for (const IntertwinerEquation& e : rel.equations)
    if (e.upper_word == "oo" && e.lower_word == "oo") middle.push_back(&e);
  // the four diagonal components cancel, leaving pure commutators
  CHECK(middle.size() == 12);
  for (const IntertwinerEquation* e : middle) {
    REQUIRE(e->terms.size() == 2);
    CHECK(e->terms[0].factors.size() == 2);
    CHECK(e->terms[0].coeff + e->terms[1].coeff == 0);
  }

  CHECK(rel.recognized.size() == 12);
  for (const RecognizedPair& r : rel.recognized) {
    CHECK(!r.anti);
    const IntertwinerEquation& original = rel.equations[r.equation];
    const IntertwinerEquation expanded = expand_recognized(r, original);
    CHECK(expanded.terms == original.terms);
    CHECK(expanded.partition == original.partition);
  }

  const std::string text = intertwiners_to_text(rel);
  CHECK(text.find("commute u[") != std::string::npos);
  const std::string json = intertwiners_to_json(rel);
  CHECK(json.find("\"equations_before_pruning\": 80") != std::string::npos);
}

TEST_CASE("the signed crossing mixes commutators with anticommutators") {
  const CategorySnapshot D = crossing_seed_snapshot(4);
  const IntertwinerRelationSet rel = group_relations(D, 2, 4, true);
  CHECK(rel.recognized.size() == 12);
  int anti = 0;
  for (const RecognizedPair& r : rel.recognized) {
    const IntertwinerEquation& e = rel.equations[r.equation];
    REQUIRE(e.out_tuple.size() == 2);
    REQUIRE(e.in_tuple.size() == 2);
    const bool rows_equal = e.out_tuple[0] == e.out_tuple[1];
    const bool cols_equal = e.in_tuple[0] == e.in_tuple[1];
    // the switching sign flips exactly when strands genuinely cross
    CHECK(r.anti == (rows_equal != cols_equal));
    if (r.anti) ++anti;
    CHECK(expand_recognized(r, e).terms == e.terms);
  }
  CHECK(anti == 8);
}

TEST_CASE("intertwiner expansion respects the operator budget") {
  const CategorySnapshot D = crossing_seed_snapshot(4);
  CHECK_THROWS_AS(group_relations(D, 2, 4, false, 10), BudgetExceeded);
}

TEST_CASE("permutation generators make a preset fizzy") {
  for (const std::string& name : geometry_preset_names()) {
    INFO(name);
    const FizzyReport r = fizzy_criterion(preset_generators(name));
    CHECK(r.verdict == FizzyVerdict::FizzyByPermutations);
    CHECK(r.non_permutation_generators.empty());
  }

  const FizzyReport hn = fizzy_criterion(preset_generators("HN"));
  CHECK(hn.verdict == FizzyVerdict::Inconclusive);
  REQUIRE(hn.non_permutation_generators.size() == 2);
  CHECK(hn.non_permutation_generators[0] == lit("|obob;l1 l2 l3 l4"));
  CHECK(hn.non_permutation_generators[1] == lit("|oobb;l1 l2 l3 l4"));

  CHECK(is_permutation_diagram(make_p("ob|bo;u1 l2;u2 l1")));
  CHECK(!is_permutation_diagram(make_p("|oo;l1 l2")));
  CHECK(!is_permutation_diagram(make_p("oo|oo;u1 u2 l1 l2")));
}

TEST_CASE("classical sphere models satisfy the emitted relations") {
  const CategorySnapshot p2 = CategorySnapshot::named(NamedCategory::P2, 6);
  const SphereRelationSet real_rels = sphere_relations(p2, 5, 6, false);
  CHECK(real_rels.relations.size() == 1013);
  const ModelCheckReport rr = classical_model_check(real_rels, "real_sphere", 1000, 1e-9, 7);
  CHECK(rr.pass);
  CHECK(rr.max_deviation <= 1e-9);
  CHECK(rr.samples == 1000);
  CHECK(rr.relations == 1013);

  const CategorySnapshot mp2 = CategorySnapshot::named(NamedCategory::MP2, 4);
  const SphereRelationSet cx_rels = sphere_relations(mp2, 4, 4, false);
  const ModelCheckReport cr = classical_model_check(cx_rels, "complex_sphere", 1000, 1e-9, 7);
  CHECK(cr.pass);

  // flipping one instance weight leaves a deviation of sphere-monomial size,
  // far above float noise
  const ModelCheckReport bad = classical_model_check(cx_rels, "complex_sphere", 200, 1e-9, 7, 1);
  CHECK(!bad.pass);
  CHECK(bad.max_deviation > 1e-3);
  CHECK(bad.worst_relation == cx_rels.relations[1].partition);
}

TEST_CASE("model checks refuse what they cannot validate") {
  const CategorySnapshot D = CategorySnapshot::named(NamedCategory::P2, 4);
  const SphereRelationSet plain = sphere_relations(D, 2, 4, false);
  const SphereRelationSet twisted = sphere_relations(D, 2, 4, true);
  const SphereRelationSet two_row = sphere_relations_two_row(D, 2, 4, false);

  CHECK_THROWS_AS(classical_model_check(twisted, "real_sphere", 10, 1e-9), UnsupportedModel);
  CHECK_THROWS_AS(classical_model_check(two_row, "real_sphere", 10, 1e-9), UnsupportedModel);
  CHECK_THROWS_AS(classical_model_check(plain, "chromatic_sphere", 10, 1e-9), UnsupportedModel);

  CHECK(classical_model_for_preset("ON") == "real_sphere");
  CHECK(classical_model_for_preset("TON*") == "real_sphere");
  CHECK(classical_model_for_preset("UN+") == "complex_sphere");
  CHECK_THROWS_AS(classical_model_for_preset("HN"), UnknownName);
  CHECK_THROWS_AS(classical_model_for_preset("QN"), UnknownName);
}

TEST_CASE("automatic conditions hold for every geometry and its reflection") {
  for (const std::string& name : geometry_preset_names()) {
    INFO(name);
    const CategorySnapshot D = CategorySnapshot::named(preset_category(name), 6);
    const CategorySnapshot E =
        CategorySnapshot::named(preset_category(reflection_partner(name)), 6);
    const AutomaticConditionsReport rep = check_automatic_conditions(D, E, 2, 6);
    INFO("twist witnesses: ", rep.twist_witnesses.empty() ? "" : rep.twist_witnesses.front());
    INFO("torus witnesses: ", rep.torus_witnesses.empty() ? "" : rep.torus_witnesses.front());
    CHECK(rep.twist_invariant);
    CHECK(rep.torus_equivalent);
    CHECK(rep.pair_axioms.d_eq);
    CHECK(rep.pair_axioms.e_eq);
    CHECK(rep.all_ok());
    CHECK(rep.noncrossing_cells_checked > 0);
  }
}

TEST_CASE("automatic conditions at the documented depth") {
  const CategorySnapshot D = CategorySnapshot::named(NamedCategory::MP2, 8);
  const CategorySnapshot E = CategorySnapshot::named(NamedCategory::MPeven, 8);
  const AutomaticConditionsReport rep = check_automatic_conditions(D, E, 3, 8);
  CHECK(rep.all_ok());

  const std::string json = automatic_conditions_to_json(rep);
  CHECK(json.find("\"all_ok\": true") != std::string::npos);
}

TEST_CASE("the crossing is exempt from twist invariance") {
  // the signed and plain realizations genuinely differ on the crossing, so
  // condition (a) quantifies over noncrossing cells only
  const Partition crossing = make_p("|oobb;l1 l3;l2 l4");
  const SparseIntegerOperator plain = realize(crossing, 2);
  const SparseIntegerOperator twisted = realize_twisted(crossing, 2);
  CHECK(plain.entries != twisted.entries);

  const CategorySnapshot D = CategorySnapshot::named(NamedCategory::P2, 4);
  const CategorySnapshot E = CategorySnapshot::named(NamedCategory::Peven, 4);
  const AutomaticConditionsReport rep = check_automatic_conditions(D, E, 2, 4);
  CHECK(rep.twist_invariant);
  CHECK(rep.all_ok());
}

TEST_CASE("automatic conditions demand matching snapshot depths") {
  const CategorySnapshot shallow = CategorySnapshot::named(NamedCategory::MP2, 4);
  const CategorySnapshot deep = CategorySnapshot::named(NamedCategory::MPeven, 6);
  CHECK_THROWS_AS(check_automatic_conditions(shallow, deep, 2, 4), BoundMismatch);

  const CategorySnapshot d4 = CategorySnapshot::named(NamedCategory::MP2, 4);
  const CategorySnapshot e4 = CategorySnapshot::named(NamedCategory::MPeven, 4);
  CHECK_THROWS_AS(check_automatic_conditions(d4, e4, 2, 6), BoundMismatch);
}
