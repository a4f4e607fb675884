#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partcat/category.hpp"
#include "partcat/partition.hpp"
#include "partcat/tensor_op.hpp"

namespace partcat {

// ---------------------------------------------------------------------------
// Diagonal torus presentations.
//
// Killing the off-diagonal matrix entries turns every partition of a category
// into a group-word relation: each leg contributes one generator, white legs
// straight and black legs inverted, with legs of one block forced to share
// their generator. A schema stores that pattern; its instances are the
// relations g_{i1}^{e1}...g_{ik}^{ek} = g_{j1}^{f1}...g_{jl}^{fl} over all
// assignments of generators to blocks.

struct TorusSchema {
  std::string partition;  // canonical literal
  std::string upper_word;
  std::string lower_word;
  std::vector<int> upper_blocks;  // block id per leg, first-use order
  std::vector<int> lower_blocks;
  std::vector<int> upper_exponents;  // +1 white, -1 black
  std::vector<int> lower_exponents;

  bool operator==(const TorusSchema&) const = default;
};

struct TorusPresentation {
  int N = 0;
  int bound = 0;
  std::string source;
  std::vector<TorusSchema> schemas;  // canonically sorted, deduplicated per cell entry
};

// The signed route recomputes every schema through the signature-weighted
// symbol and keeps the nonzero support; the support never differs from the
// plain route, so both produce identical bytes. BoundMismatch when the
// snapshot is too shallow.
TorusPresentation torus_presentation(const CategorySnapshot& D, int N, int bound,
                                     bool signed_route = false);

std::string torus_to_json(const TorusPresentation& t);
std::string torus_to_text(const TorusPresentation& t);

// What the relation set amounts to as a group on N generators. Each verdict
// carries a two-sided certificate: the named relations are derived from
// schema instances, and every schema instance holds in the named group, so
// the classification is exact rather than heuristic.
enum class TorusKind {
  Cube,           // Z_2^N: commutation and squares
  StandardTorus,  // Z^N: commutation, squares provably absent
  FreeCube,       // Z_2^{*N}: squares, commutation provably absent
  FreeDual,       // F_N: every relator already trivial
  Unclassified,
};

struct TorusNormalForm {
  bool commutation = false;      // some relator proves g_a g_b = g_b g_a
  bool squares = false;          // some relator proves g_a^2 = 1
  bool square_equality = false;  // some relator proves g_a^2 = g_b^2
  bool half_commutation = false; // some relator proves g_a g_b g_c = g_c g_b g_a
  // relator triviality in the four candidate quotients, decided per pattern
  bool trivial_free = false;
  bool trivial_mod_squares = false;
  bool trivial_mod_commutation = false;
  bool trivial_mod_both = false;
  TorusKind kind = TorusKind::Unclassified;
  std::string commutation_witness;  // partition literal, empty when undetected
  std::string squares_witness;
  std::string square_equality_witness;
  std::string half_commutation_witness;
  std::uint64_t patterns = 0;  // distinct relator patterns examined
};

TorusNormalForm normalize_torus(const TorusPresentation& t);
std::string torus_kind_name(TorusKind k);

// ---------------------------------------------------------------------------
// Sphere relation sets.
//
// One-row form: for every partition pi in D(p) the sum relation
//   sum_i delta_pi(i) x_{i1}^{e1}...x_{ip}^{ep} = 1,
// exponents read off the colors (white = plain, black = star). Two-row form:
// for every permutation diagram sigma in D(p,p) the substitution rules
//   x_{j_sigma(1)}^{e1}...x_{j_sigma(p)}^{ep} = x_{j1}^{f1}...x_{jp}^{fp}.
// The signed flag swaps delta for its signature-weighted version.

struct SphereRelation {
  std::string partition;
  std::string upper_word;  // empty in the one-row set
  std::string lower_word;
  std::vector<int> upper_blocks;
  std::vector<int> lower_blocks;
  std::vector<int> upper_exponents;
  std::vector<int> lower_exponents;

  bool operator==(const SphereRelation&) const = default;
};

struct SphereRelationSet {
  int N = 0;
  int bound = 0;
  bool twisted = false;
  bool two_row = false;
  std::string source;
  std::vector<SphereRelation> relations;
};

SphereRelationSet sphere_relations(const CategorySnapshot& D, int N, int bound, bool twisted);
SphereRelationSet sphere_relations_two_row(const CategorySnapshot& D, int N, int bound,
                                           bool twisted);

std::string sphere_to_json(const SphereRelationSet& s);
std::string sphere_to_text(const SphereRelationSet& s);

// ---------------------------------------------------------------------------
// Intertwiner relations: the scalar equations of T u^{(k)} = u^{(l)} T per
// cell entry, expanded over the matrix generators. Conjugate legs act through
// the conjugated generators.

struct UFactor {
  int row = 0;  // 1-based
  int col = 0;
  bool star = false;

  bool operator==(const UFactor&) const = default;
  auto operator<=>(const UFactor&) const = default;
};

struct UTerm {
  long long coeff = 0;
  std::vector<UFactor> factors;  // ordered product

  bool operator==(const UTerm&) const = default;
};

struct IntertwinerEquation {
  std::string partition;
  std::string upper_word;
  std::string lower_word;
  std::vector<int> in_tuple;   // upper indices, 1-based
  std::vector<int> out_tuple;  // lower indices
  std::vector<UTerm> terms;    // sums to zero; canonically sorted

  bool operator==(const IntertwinerEquation&) const = default;
};

// a two-term degree-2 equation collapsing to AB = BA or AB = -BA
struct RecognizedPair {
  bool anti = false;
  UFactor a, b;
  std::size_t equation = 0;  // index into equations
};

struct IntertwinerRelationSet {
  int N = 0;
  int bound = 0;
  bool twisted = false;
  std::string source;
  std::uint64_t equations_before_pruning = 0;
  std::vector<IntertwinerEquation> equations;  // zero rows dropped
  std::vector<RecognizedPair> recognized;
};

IntertwinerRelationSet group_relations(const CategorySnapshot& D, int N, int bound, bool twisted,
                                       std::uint64_t budget = kDefaultOperatorBudget);

// rebuilds a recognized pair into its two-term equation
IntertwinerEquation expand_recognized(const RecognizedPair& r, const IntertwinerEquation& original);

std::string intertwiners_to_json(const IntertwinerRelationSet& s);
std::string intertwiners_to_text(const IntertwinerRelationSet& s);

// ---------------------------------------------------------------------------
// Fizziness: the strong sum relations present the sphere whenever the
// category is generated by permutation diagrams. The criterion only inspects
// the generators, so a negative answer refutes nothing.

enum class FizzyVerdict { FizzyByPermutations, Inconclusive };

struct FizzyReport {
  FizzyVerdict verdict = FizzyVerdict::Inconclusive;
  std::string label;
  std::vector<std::string> non_permutation_generators;
};

FizzyReport fizzy_criterion(const GeneratorSet& gens);
bool is_permutation_diagram(const Partition& p);

// ---------------------------------------------------------------------------
// Numeric validation of untwisted sum relations at the commutative corners.
// Points are sampled uniformly on the model sphere; every relation must
// evaluate to 1. A nonnegative corrupt_index flips the sign of one summand of
// one relation, which any honest run reports as a failure.

struct ModelCheckReport {
  std::string model;
  int N = 0;
  std::uint64_t samples = 0;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  std::string worst_relation;
  std::uint64_t relations = 0;
  bool pass = false;
};

ModelCheckReport classical_model_check(const SphereRelationSet& rels, const std::string& model,
                                       std::uint64_t samples, double tolerance,
                                       std::uint64_t seed = 1, long long corrupt_index = -1);

// the commutative model matching a geometry preset's classical corner
std::string classical_model_for_preset(const std::string& preset);

// ---------------------------------------------------------------------------
// The conditions that hold automatically for a category pair (D, E) with
// D = E n P2 and E = <D, NCeven>: twisting is invisible on noncrossing cells,
// both categories present the same diagonal torus, and the pair axioms
// themselves.

struct AutomaticConditionsReport {
  bool twist_invariant = false;
  std::uint64_t noncrossing_cells_checked = 0;
  std::vector<std::string> twist_witnesses;
  bool torus_equivalent = false;
  std::vector<std::string> torus_witnesses;
  PairAxiomReport pair_axioms;

  bool all_ok() const {
    return twist_invariant && torus_equivalent && pair_axioms.d_eq && pair_axioms.e_eq;
  }
};

AutomaticConditionsReport check_automatic_conditions(const CategorySnapshot& D,
                                                     const CategorySnapshot& E, int N, int bound);

std::string automatic_conditions_to_json(const AutomaticConditionsReport& r);

}  // namespace partcat
