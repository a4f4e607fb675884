#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "partcat/category.hpp"
#include "partcat/diagram_ops.hpp"
#include "partcat/errors.hpp"
#include "partcat/onerow.hpp"
#include "partcat/partition.hpp"

using namespace partcat;

namespace {

Partition make_p(const std::string& literal) { return parse_partition(literal); }

// Reference closure over two-row partitions, kept deliberately naive: a plain
// worklist over tensor, composition, involution and single-leg rotations,
// starting from the identity strands and the color-opposite cups and caps.
// The packed one-row engine must agree with this on every split of every cell.
std::set<Partition> oracle_close(const std::vector<Partition>& generators, int bound) {
  std::set<Partition> done;
  std::deque<Partition> todo;
  auto add = [&](const Partition& p) {
    if (p.legs() > bound) return;
    if (done.insert(p).second) todo.push_back(p);
  };

  add(empty_partition());
  add(make_p("o|o;u1 l1"));
  add(make_p("b|b;u1 l1"));
  add(make_p("|ob;l1 l2"));
  add(make_p("|bo;l1 l2"));
  add(make_p("ob|;u1 u2"));
  add(make_p("bo|;u1 u2"));
  for (const Partition& g : generators) add(g);

  while (!todo.empty()) {
    const Partition p = todo.front();
    todo.pop_front();
    add(involute(p));
    if (p.k() > 0) {
      add(rotate(p, RotateStep::FirstUpperDown));
      add(rotate(p, RotateStep::LastUpperDown));
    }
    if (p.l() > 0) {
      add(rotate(p, RotateStep::FirstLowerUp));
      add(rotate(p, RotateStep::LastLowerUp));
    }
    // pair p against everything seen so far, in both orders; partners found
    // later repeat the pairing when they pop, so every pair is covered
    const std::vector<Partition> seen(done.begin(), done.end());
    for (const Partition& q : seen) {
      if (p.legs() + q.legs() <= bound) {
        add(tensor(p, q));
        add(tensor(q, p));
      }
      if (p.lower == q.upper) add(compose(p, q).result);
      if (q.lower == p.upper) add(compose(q, p).result);
    }
  }
  return done;
}

void check_engine_matches_oracle(const GeneratorSet& gens, int bound,
                                 const std::set<Partition>& oracle) {
  const CategorySnapshot snap = CategorySnapshot::close(gens, bound);

  for (const Partition& p : oracle)
    CHECK(snap.contains(p) == CategorySnapshot::Membership::Member);

  std::set<Cell> oracle_cells;
  for (const Partition& p : oracle) oracle_cells.insert(pack_cell(flatten(p)));
  CHECK(oracle_cells.size() == snap.cell_count());

  for (Cell c : snap.cells().sorted_cells()) {
    const Flattened f = unpack_cell(c);
    const int n = static_cast<int>(f.word.size());
    for (int k = 0; k <= n; ++k) CHECK(oracle.count(unflatten(f, k)) == 1);
  }
}

// recomputes the catalog predicates straight from the classifier
bool in_named(NamedCategory c, const Flattened& f) {
  return satisfies(classify(f), named_category_predicates(c));
}

std::uint64_t named_cell_count_by_scan(NamedCategory c, int bound) {
  std::uint64_t count = 0;
  for (int n = 0; n <= bound; ++n)
    for (const ColorWord& w : all_color_words(n))
      for (const SetPartition& sp : all_set_partitions(n))
        if (in_named(c, Flattened{w, sp})) ++count;
  return count;
}

}  // namespace

TEST_CASE("packed cells round-trip every even one-row shape") {
  for (int n = 0; n <= 6; n += 2) {
    for (const ColorWord& w : all_color_words(n)) {
      for (const SetPartition& sp : all_set_partitions(n)) {
        const Flattened f{w, sp};
        const Cell c = pack_cell(f);
        CHECK(unpack_cell(c) == f);
        CHECK(cell_length(c) == n);
        for (int i = 0; i < n; ++i) {
          CHECK(cell_color_bit(c, i) == (w[i] == Color::Black ? 1 : 0));
          CHECK(cell_label(c, i) == sp.labels()[i]);
        }
      }
    }
  }
  CHECK(key_of_word(parse_color_word("obb")) ==
        cell_word_key(pack_cell(Flattened{parse_color_word("obb"), all_set_partitions(3)[0]})));
  CHECK(format_color_word(word_of_key(key_of_word(parse_color_word("bobo")))) == "bobo");
}

TEST_CASE("packed tensor, rotation and reflection act like the diagram ops") {
  for (const ColorWord& w : all_color_words(4)) {
    for (const SetPartition& sp : all_set_partitions(4)) {
      const Flattened f{w, sp};
      const Cell c = pack_cell(f);

      // rotation: one-row cells have no upper legs, so a cyclic shift equals
      // rotating the underlying partition's first lower leg up and back down
      Partition base = unflatten(f, 0);
      Partition stepped = rotate(base, RotateStep::FirstLowerUp);
      stepped = rotate(stepped, RotateStep::LastUpperDown);
      CHECK(cell_rotate(c) == pack_cell(flatten(stepped)));

      // reflection matches flatten of the involution
      CHECK(cell_reflect(c) == pack_cell(flatten(involute(base))));
      CHECK(cell_reflect(cell_reflect(c)) == c);

      // four rotations return to the start
      Cell r = c;
      for (int i = 0; i < 4; ++i) r = cell_rotate(r);
      CHECK(r == c);
    }
  }

  const Cell a = pack_cell(flatten(make_p("|ob;l1 l2")));
  const Cell b = pack_cell(flatten(make_p("|bo;l1 l2")));
  CHECK(cell_tensor(a, b) == pack_cell(flatten(make_p("|obbo;l1 l2;l3 l4"))));
}

TEST_CASE("glue contracts nested legs and counts loops") {
  const Cell crossing = pack_cell(flatten(make_p("oo|oo;u1 l2;u2 l1")));
  // crossing flattens to blocks {1,3},{2,4} on oobb
  {
    const Flattened f = unpack_cell(crossing);
    CHECK(format_color_word(f.word) == "oobb");
    CHECK(f.part == SetPartition::from_blocks(4, {{0, 2}, {1, 3}}));
  }

  SUBCASE("two crossings glued on two legs give the nested pairing") {
    const CellGlue g = cell_glue(crossing, crossing, 2);
    REQUIRE(g.ok);
    CHECK(g.loops == 0);
    const Flattened f = unpack_cell(g.cell);
    CHECK(format_color_word(f.word) == "oobb");
    CHECK(f.part == SetPartition::from_blocks(4, {{0, 3}, {1, 2}}));
  }

  SUBCASE("full contraction of a cup against itself closes loops") {
    const Cell cup = pack_cell(flatten(make_p("|ob;l1 l2")));
    const CellGlue g = cell_glue(cup, cup, 2);
    REQUIRE(g.ok);
    CHECK(g.loops == 1);
    CHECK(cell_length(g.cell) == 0);
  }

  SUBCASE("same-color legs refuse to glue") {
    const Cell cup = pack_cell(flatten(make_p("|ob;l1 l2")));
    const Cell puc = pack_cell(flatten(make_p("|bo;l1 l2")));
    // innermost contracted pair is cup's trailing b against puc's leading b
    CHECK_FALSE(glue_colors_ok(cell_word_key(cup), cell_word_key(puc), 1));
    CHECK_FALSE(cell_glue(cup, puc, 1).ok);
  }
}

TEST_CASE("matched noncrossing pairings enumerate the minimal category's cells") {
  CHECK(matched_noncrossing_pairings(parse_color_word("")).size() == 1);
  CHECK(matched_noncrossing_pairings(parse_color_word("ob")).size() == 1);
  CHECK(matched_noncrossing_pairings(parse_color_word("oo")).empty());
  CHECK(matched_noncrossing_pairings(parse_color_word("obob")).size() == 2);
  CHECK(matched_noncrossing_pairings(parse_color_word("obbo")).size() == 1);
  CHECK(matched_noncrossing_pairings(parse_color_word("oobb")).size() == 1);
  CHECK(matched_noncrossing_pairings(parse_color_word("obbb")).empty());

  // against the classifier: exactly the noncrossing pairings whose blocks
  // join opposite colors
  for (int n = 0; n <= 6; n += 2) {
    for (const ColorWord& w : all_color_words(n)) {
      std::set<Cell> direct;
      for (const SetPartition& sp : all_set_partitions(n)) {
        const Flattened f{w, sp};
        const ClassFlags flags = classify(f);
        if (flags.pairing && flags.noncrossing && flags.matching) direct.insert(pack_cell(f));
      }
      const std::vector<Cell> got = matched_noncrossing_pairings(w);
      CHECK(direct == std::set<Cell>(got.begin(), got.end()));
    }
  }
}

TEST_CASE("closure of no generators is the minimal category") {
  const std::set<Partition> oracle = oracle_close({}, 6);
  check_engine_matches_oracle(GeneratorSet{{}, "minimal"}, 6, oracle);
  const CategorySnapshot snap = CategorySnapshot::close(GeneratorSet{{}, "minimal"}, 6);
  CHECK(snap.same_cells(CategorySnapshot::named(NamedCategory::MNC2, 6)));
}

TEST_CASE("closure of the color-flip strands gives all noncrossing pairings") {
  const std::vector<Partition> gens = {make_p("o|b;u1 l1"), make_p("b|o;u1 l1")};
  check_engine_matches_oracle(GeneratorSet{gens, "on+"}, 6, oracle_close(gens, 6));
  const CategorySnapshot snap = CategorySnapshot::close(GeneratorSet{gens, "on+"}, 6);
  CHECK(snap.same_cells(CategorySnapshot::named(NamedCategory::NC2, 6)));

  // one direction alone cannot repaint blocks all-white: its closure stays
  // strictly between the minimal category and the full noncrossing pairings
  const std::vector<Partition> half = {make_p("o|b;u1 l1")};
  const CategorySnapshot part = CategorySnapshot::close(GeneratorSet{half, "half"}, 6);
  CHECK(part.contains(make_p("|bb;l1 l2")) == CategorySnapshot::Membership::Member);
  CHECK(part.contains(make_p("|oo;l1 l2")) ==
        CategorySnapshot::Membership::NonMemberUpToBound);
}

TEST_CASE("closure of the two-strand swap gives balanced noncrossing pairings") {
  const std::vector<Partition> gens = {make_p("ob|bo;u1 l1;u2 l2")};
  check_engine_matches_oracle(GeneratorSet{gens, "ton+"}, 6, oracle_close(gens, 6));
  const CategorySnapshot snap = CategorySnapshot::close(GeneratorSet{gens, "ton+"}, 6);
  CHECK(snap.same_cells(CategorySnapshot::named(NamedCategory::NC2Bar, 6)));
}

TEST_CASE("closure of the matching crossings gives the matching pairings") {
  const GeneratorSet gens = preset_generators("UN");
  check_engine_matches_oracle(gens, 6, oracle_close(gens.generators, 6));
  const CategorySnapshot snap = CategorySnapshot::close(gens, 6);
  CHECK(snap.same_cells(CategorySnapshot::named(NamedCategory::MP2, 6)));
}

TEST_CASE("closure of the three-line crossings gives the alternating matching pairings") {
  const GeneratorSet gens = preset_generators("UN*");
  check_engine_matches_oracle(gens, 6, oracle_close(gens.generators, 6));
  const CategorySnapshot snap = CategorySnapshot::close(gens, 6);
  CHECK(snap.same_cells(CategorySnapshot::named(NamedCategory::MP2Star, 6)));
  // strictly between the free and unrestricted matching categories
  CHECK_FALSE(snap.same_cells(CategorySnapshot::named(NamedCategory::MP2, 6)));
  CHECK_FALSE(snap.same_cells(CategorySnapshot::named(NamedCategory::MNC2, 6)));
}

TEST_CASE("closure of all crossings plus the color flip gives all pairings") {
  const GeneratorSet gens = preset_generators("ON");
  check_engine_matches_oracle(gens, 4, oracle_close(gens.generators, 4));
  const CategorySnapshot snap = CategorySnapshot::close(gens, 4);
  CHECK(snap.same_cells(CategorySnapshot::named(NamedCategory::P2, 4)));
}

TEST_CASE("closure of the four-leg blocks gives matched noncrossing evens") {
  const GeneratorSet gens = preset_generators("KN+");
  check_engine_matches_oracle(gens, 6, oracle_close(gens.generators, 6));
  const CategorySnapshot snap = CategorySnapshot::close(gens, 6);
  CHECK(snap.same_cells(CategorySnapshot::named(NamedCategory::MNCeven, 6)));
}

TEST_CASE("closure of crossings plus the four-leg block gives all even partitions") {
  const GeneratorSet gens = preset_generators("HN");
  check_engine_matches_oracle(gens, 4, oracle_close(gens.generators, 4));
  const CategorySnapshot snap = CategorySnapshot::close(gens, 4);
  CHECK(snap.same_cells(CategorySnapshot::named(NamedCategory::Peven, 4)));
}

TEST_CASE("every preset closure lands on its catalog class at bound six") {
  for (const std::string& geo : geometry_preset_names()) {
    for (const std::string& name : {geo, reflection_partner(geo)}) {
      CAPTURE(name);
      const CategorySnapshot closed = CategorySnapshot::close(preset_generators(name), 6);
      const CategorySnapshot target =
          CategorySnapshot::named(preset_category(name), 6);
      CHECK(closed.same_cells(target));
    }
  }
}

TEST_CASE("named tables hold exactly the partitions passing their predicates") {
  for (NamedCategory c : all_named_categories()) {
    CAPTURE(named_category_name(c));
    const CategorySnapshot snap = CategorySnapshot::named(c, 6);
    CHECK(snap.cell_count() == named_cell_count_by_scan(c, 6));
    for (Cell cell : snap.cells().sorted_cells()) CHECK(in_named(c, unpack_cell(cell)));
  }
}

TEST_CASE("every named class is closed under the category operations") {
  for (NamedCategory c : all_named_categories()) {
    CAPTURE(named_category_name(c));
    const CategorySnapshot snap = CategorySnapshot::named(c, 6);
    CHECK(closure_sweep_adds_nothing(snap.cells()));
  }
}

TEST_CASE("raising the bound keeps the smaller cells unchanged") {
  for (NamedCategory c : {NamedCategory::MP2, NamedCategory::NCevenBar, NamedCategory::Peven}) {
    const CategorySnapshot small = CategorySnapshot::named(c, 4);
    const CategorySnapshot big = CategorySnapshot::named(c, 6);
    std::set<Cell> trimmed;
    for (Cell cell : big.cells().sorted_cells())
      if (cell_length(cell) <= 4) trimmed.insert(cell);
    const std::vector<Cell> got = small.cells().sorted_cells();
    CHECK(trimmed == std::set<Cell>(got.begin(), got.end()));
  }
}

TEST_CASE("cells, membership and bounds") {
  const CategorySnapshot mp2 = CategorySnapshot::named(NamedCategory::MP2, 6);

  CHECK(mp2.cell(parse_color_word(""), parse_color_word("oooo")).empty());
  CHECK(mp2.cell(parse_color_word(""), parse_color_word("oobb")).size() == 2);
  CHECK(mp2.cell(parse_color_word("o"), parse_color_word("o")).size() == 1);
  CHECK(mp2.cell(parse_color_word("o"), parse_color_word("o"))[0] == make_p("o|o;u1 l1"));

  // cell agrees with the direct enumeration for every split of a word
  for (int k = 0; k <= 4; ++k) {
    const ColorWord u = parse_color_word(std::string(k, 'o'));
    const ColorWord l = parse_color_word(std::string(4 - k, 'o') + "");
    const auto got = mp2.cell(u, l);
    const auto want = named_category_cell(NamedCategory::MP2, u, l);
    CHECK(got == want);
  }

  CHECK(mp2.contains(make_p("oo|oo;u1 l2;u2 l1")) == CategorySnapshot::Membership::Member);
  CHECK(mp2.contains(make_p("oo|oo;u1 u2;l1 l2")) ==
        CategorySnapshot::Membership::NonMemberUpToBound);
  CHECK_THROWS_AS(mp2.contains(make_p("|obobobob;l1 l2;l3 l4;l5 l6;l7 l8")), OutOfBound);
  CHECK_THROWS_AS(mp2.cell(parse_color_word("oooo"), parse_color_word("oooo")), OutOfBound);
}

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(parse_named_category("Q2"), UnknownName);
  CHECK_THROWS_AS(preset_generators("XN"), UnknownName);
  CHECK_THROWS_AS(preset_category("ON++"), UnknownName);
  CHECK_THROWS_AS(reflection_partner("HN"), UnknownName);
  CHECK(is_preset_name("TON*"));
  CHECK_FALSE(is_preset_name("TON**"));
  for (NamedCategory c : all_named_categories())
    CHECK(parse_named_category(named_category_name(c)) == c);
}

TEST_CASE("generators outside the bound or with odd blocks are rejected") {
  GeneratorSet too_big{{make_p("|obobob;l1 l4;l2 l3;l5 l6")}, "big"};
  CHECK_THROWS_AS(CategorySnapshot::close(too_big, 4), BoundTooSmall);
  GeneratorSet odd{{make_p("|o;l1")}, "odd"};
  CHECK_THROWS_AS(CategorySnapshot::close(odd, 4), NotEven);
}

TEST_CASE("snapshots survive the json round trip") {
  const CategorySnapshot snap = CategorySnapshot::close(preset_generators("UN"), 4);
  const std::string text = snap.to_json_string();
  const CategorySnapshot back = CategorySnapshot::from_json_string(text);
  CHECK(back.same_cells(snap));
  CHECK(back.bound() == snap.bound());
  CHECK(back.provenance() == snap.provenance());
  CHECK(back.generator_literals() == snap.generator_literals());

  const std::string path = "snapshot_roundtrip_tmp.json";
  snap.save(path);
  const CategorySnapshot loaded = CategorySnapshot::load(path);
  CHECK(loaded.same_cells(snap));
  std::remove(path.c_str());

  CHECK_THROWS_AS(CategorySnapshot::from_json_string("{]"), ParseError);
  CHECK_THROWS_AS(CategorySnapshot::from_json_string("{\"kind\":\"other\"}"), ParseError);
  CHECK_THROWS_AS(CategorySnapshot::load("missing_dir/missing.json"), Error);
}

TEST_CASE("intersection and join respect the class lattice") {
  const int bound = 6;
  const CategorySnapshot nc2 = CategorySnapshot::named(NamedCategory::NC2, bound);
  const CategorySnapshot peven = CategorySnapshot::named(NamedCategory::Peven, bound);
  const CategorySnapshot mp2 = CategorySnapshot::named(NamedCategory::MP2, bound);
  const CategorySnapshot p2bar = CategorySnapshot::named(NamedCategory::P2Bar, bound);
  const CategorySnapshot nc2bar = CategorySnapshot::named(NamedCategory::NC2Bar, bound);

  CHECK(intersect(nc2, peven).same_cells(nc2));
  CHECK(intersect(p2bar, mp2).same_cells(mp2));
  CHECK(intersect(mp2, nc2).same_cells(CategorySnapshot::named(NamedCategory::MNC2, bound)));

  // the balanced and matching pairing classes join to the balanced class:
  // the swap generator sits in one, the matching crossings in the other
  CHECK(generate_join(nc2bar, mp2, bound).same_cells(p2bar));

  const CategorySnapshot small = CategorySnapshot::named(NamedCategory::NC2, 4);
  CHECK_THROWS_AS(intersect(nc2, small), BoundMismatch);
  CHECK_THROWS_AS(generate_join(nc2, small, bound), BoundMismatch);
}

TEST_CASE("pair axioms hold for matched pairs and fail across the lattice") {
  const int bound = 6;
  auto named = [&](NamedCategory c) { return CategorySnapshot::named(c, bound); };

  const PairAxiomReport good = check_pair_axioms(named(NamedCategory::MP2),
                                                 named(NamedCategory::MPeven));
  CHECK(good.d_eq);
  CHECK(good.e_eq);
  CHECK(good.d_witnesses.empty());
  CHECK(good.e_witnesses.empty());

  CHECK(check_pair_axioms(named(NamedCategory::P2), named(NamedCategory::Peven)).d_eq);
  CHECK(check_pair_axioms(named(NamedCategory::P2), named(NamedCategory::Peven)).e_eq);
  CHECK(check_pair_axioms(named(NamedCategory::NC2), named(NamedCategory::NCeven)).d_eq);
  CHECK(check_pair_axioms(named(NamedCategory::NC2), named(NamedCategory::NCeven)).e_eq);

  // mismatched pair: the pairings of all evens form P2, not NC2
  const PairAxiomReport bad = check_pair_axioms(named(NamedCategory::NC2),
                                                named(NamedCategory::Peven));
  CHECK_FALSE(bad.d_eq);
  CHECK_FALSE(bad.d_witnesses.empty());
}
