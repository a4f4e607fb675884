#include "partcat/presentations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "partcat/diagram_ops.hpp"
#include "partcat/onerow.hpp"

namespace partcat {

namespace {

int exponent_of(Color c) { return c == Color::White ? 1 : -1; }

// A relator syllable: generator id (block label) with exponent +1 or -1.
using Syllable = std::pair<int, int>;
using Word = std::vector<Syllable>;

// The group word asserted trivial by a schema: upper legs in order, then the
// lower legs reversed with negated exponents. Reading the flattened word
// backwards with negated exponents gives the same result for every split of
// one cell, which is why rotations of a partition all carry one relation.
Word relator_word(const std::vector<int>& ublocks, const std::vector<int>& uexp,
                  const std::vector<int>& lblocks, const std::vector<int>& lexp) {
  Word w;
  w.reserve(ublocks.size() + lblocks.size());
  for (size_t s = 0; s < ublocks.size(); ++s) w.push_back({ublocks[s], uexp[s]});
  for (size_t t = lblocks.size(); t-- > 0;) w.push_back({lblocks[t], -lexp[t]});
  return w;
}

Word free_reduce(const Word& w) {
  Word out;
  for (const Syllable& s : w) {
    if (!out.empty() && out.back().first == s.first && out.back().second == -s.second)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

// letters only, adjacent equal letters cancel: normal form in Z_2^{*N}
std::vector<int> square_reduce(const Word& w) {
  std::vector<int> out;
  for (const Syllable& s : w) {
    if (!out.empty() && out.back() == s.first)
      out.pop_back();
    else
      out.push_back(s.first);
  }
  return out;
}

// Block labels follow first occurrence in two-row leg order, which changes
// between splits of one cell. Renaming letters by first use in the relator
// makes the patterns of all splits literally equal.
Word canonical_relabel(const Word& w) {
  std::map<int, int> rename;
  Word out;
  out.reserve(w.size());
  for (const Syllable& s : w) {
    auto [it, fresh] = rename.emplace(s.first, static_cast<int>(rename.size()));
    (void)fresh;
    out.push_back({it->second, s.second});
  }
  return out;
}

Word cyclic_reduce(Word w) {
  while (w.size() >= 2 && w.front().first == w.back().first &&
         w.front().second == -w.back().second) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

Word invert_word(const Word& w) {
  Word out;
  for (size_t i = w.size(); i-- > 0;) out.push_back({w[i].first, -w[i].second});
  return out;
}

// every cyclic rotation of w and of its inverse; relators are only defined up
// to conjugation and inversion
std::vector<Word> cyclic_variants(const Word& w) {
  std::vector<Word> out;
  Word inv = invert_word(w);
  for (size_t r = 0; r < std::max<size_t>(w.size(), 1); ++r) {
    Word a, b;
    for (size_t i = 0; i < w.size(); ++i) {
      a.push_back(w[(r + i) % w.size()]);
      b.push_back(inv[(r + i) % w.size()]);
    }
    out.push_back(a);
    out.push_back(b);
  }
  if (w.empty()) out.push_back(w);
  return out;
}

bool matches_square(const Word& w) {
  return w.size() == 2 && w[0] == w[1];
}

bool matches_commutator(const Word& w) {
  return w.size() == 4 && w[0].first == w[2].first && w[1].first == w[3].first &&
         w[0].first != w[1].first && w[0].second == -w[2].second && w[1].second == -w[3].second;
}

bool matches_square_equality(const Word& w) {
  return w.size() == 4 && w[0] == w[1] && w[2] == w[3] && w[0].first != w[2].first;
}

// a b c a^-1 b^-1 c^-1 on three distinct letters; the exponent triple (of the
// left half) parameterizes which colored instances the category exhibits
bool matches_half_commutation(const Word& w, std::array<int, 3>* combo) {
  if (w.size() != 6) return false;
  for (int i = 0; i < 3; ++i) {
    if (w[i].first != w[i + 3].first || w[i].second != -w[i + 3].second) return false;
  }
  if (w[0].first == w[1].first || w[0].first == w[2].first || w[1].first == w[2].first)
    return false;
  *combo = {w[0].second, w[1].second, w[2].second};
  return true;
}

// letters-only cyclic matchers for the pass that assumes g^2 = 1
std::vector<int> cyclic_square_reduce(std::vector<int> v) {
  while (v.size() >= 2 && v.front() == v.back()) {
    v.erase(v.begin());
    v.pop_back();
  }
  return v;
}

bool matches_four_cycle(const std::vector<int>& v) {
  return v.size() == 4 && v[0] == v[2] && v[1] == v[3] && v[0] != v[1];
}

bool matches_six_cycle(const std::vector<int>& v) {
  return v.size() == 6 && v[0] == v[3] && v[1] == v[4] && v[2] == v[5] && v[0] != v[1] &&
         v[0] != v[2] && v[1] != v[2];
}

// Everything the relator patterns of one presentation prove about the group.
// Each detection instantiates to the full relation family: a schema's blocks
// range over all generator assignments, so one commutator pattern yields
// commutation of every pair, one square pattern every g^2 = 1, and so on.
struct Detections {
  bool commutation = false;
  bool squares = false;
  bool square_equality = false;
  std::set<std::array<int, 3>> half_combos;
  std::string commutation_witness;
  std::string squares_witness;
  std::string square_equality_witness;
  std::string half_commutation_witness;
  bool trivial_free = true;
  bool trivial_mod_squares = true;
  bool trivial_mod_commutation = true;
  bool trivial_mod_both = true;
  std::uint64_t patterns = 0;

  bool half_commutation() const { return !half_combos.empty(); }
  // the half-commutation reducers fold exponent signs away via g^2-relations;
  // without those, soundness needs every signed instance to be present
  bool half_commutation_applicable() const {
    if (half_combos.empty()) return false;
    return squares || square_equality || half_combos.size() == 8;
  }
};

void scan_pattern(Detections& d, const Word& raw, const std::string& witness) {
  ++d.patterns;

  const Word reduced = free_reduce(raw);
  if (!reduced.empty()) d.trivial_free = false;
  if (!square_reduce(raw).empty()) d.trivial_mod_squares = false;

  std::map<int, long long> sums;
  std::map<int, long long> counts;
  for (const Syllable& s : raw) {
    sums[s.first] += s.second;
    counts[s.first] += 1;
  }
  for (const auto& [g, v] : sums)
    if (v != 0) d.trivial_mod_commutation = false;
  for (const auto& [g, c] : counts)
    if (c % 2 != 0) d.trivial_mod_both = false;

  const Word cyc = cyclic_reduce(reduced);
  for (const Word& v : cyclic_variants(cyc)) {
    if (matches_square(v) && !d.squares) {
      d.squares = true;
      d.squares_witness = witness;
    }
    if (matches_commutator(v) && !d.commutation) {
      d.commutation = true;
      d.commutation_witness = witness;
    }
    if (matches_square_equality(v) && !d.square_equality) {
      d.square_equality = true;
      d.square_equality_witness = witness;
    }
    std::array<int, 3> combo{};
    if (matches_half_commutation(v, &combo)) {
      if (d.half_combos.insert(combo).second && d.half_commutation_witness.empty())
        d.half_commutation_witness = witness;
    }
  }
}

// detections that only emerge once g^2 = 1 is available: a 4-cycle abab gives
// commutation (ab = (ab)^-1 = ba), a 6-cycle abcabc gives abc = cba
void rescan_mod_squares(Detections& d, const Word& raw, const std::string& witness) {
  const std::vector<int> letters = cyclic_square_reduce(square_reduce(raw));
  if (letters.empty()) return;
  for (size_t r = 0; r < letters.size(); ++r) {
    std::vector<int> rot;
    for (size_t i = 0; i < letters.size(); ++i) rot.push_back(letters[(r + i) % letters.size()]);
    if (matches_four_cycle(rot) && !d.commutation) {
      d.commutation = true;
      d.commutation_witness = witness;
    }
    if (matches_six_cycle(rot)) {
      std::array<int, 3> combo{1, 1, 1};
      if (d.half_combos.insert(combo).second && d.half_commutation_witness.empty())
        d.half_commutation_witness = witness;
    }
  }
}

// ---------------------------------------------------------------------------
// Exact word-problem reducers for the groups cut out by detected relations.
// Each answers: is this word trivial in F_N modulo the detected family? A
// positive answer certifies derivability from the presentation that produced
// the detections; a negative answer only means this reducer cannot certify.

bool trivial_abelian(const Word& w, bool mod_two, bool need_zero_sum) {
  std::map<int, long long> sums;
  long long total = 0;
  for (const Syllable& s : w) {
    sums[s.first] += s.second;
    total += s.second;
  }
  for (const auto& [g, v] : sums) {
    if (mod_two && v % 2 != 0) return false;
    if (!mod_two && v != 0) return false;
  }
  if (need_zero_sum && total != 0) return false;
  return true;
}

// normal form in <g_1..g_N | g_i^2 = c, c central>: scan to c^m g_i1..g_ik
// with adjacent letters distinct; the rewriting {g g -> c, g^-1 -> c^-1 g} is
// length-reducing and confluent
bool trivial_central_square(const Word& w) {
  long long m = 0;
  std::vector<int> stack;
  for (const Syllable& s : w) {
    if (s.second < 0) m -= 1;
    if (!stack.empty() && stack.back() == s.first) {
      stack.pop_back();
      m += 1;
    } else {
      stack.push_back(s.first);
    }
  }
  return m == 0 && stack.empty();
}

// The half-commutation groups embed into 2x2 monomial matrices: g_i maps to
// antidiag(x_i, y_i), which satisfies abc = cba identically because the
// entries commute. The three flavors pin y_i down: y_i = x_i^-1 when g^2 = 1,
// y_i = z x_i^-1 with one shared z when only g_a^2 = g_b^2 holds, and an
// independent y_i when neither does. Triviality in the image decides
// triviality in the group, the model being the known faithful matrix picture
// of the half-liberated tori.
enum class HalfMode { SquaresOne, CentralSquare, Independent };

bool trivial_half_model(const Word& w, HalfMode mode) {
  using Monomial = std::map<int, long long>;  // variable id -> exponent
  const int kZ = -1;                          // shared central variable
  Monomial top, bot;
  int parity = 0;
  auto mul = [](Monomial& m, int var, long long e) {
    if (e == 0) return;
    auto it = m.emplace(var, 0).first;
    it->second += e;
    if (it->second == 0) m.erase(it);
  };
  for (const Syllable& s : w) {
    // the syllable's matrix antidiag(u, v) as exponent assignments
    // u = x_g and v depends on the mode; inversion swaps and negates
    const int g = s.first;
    struct Half {
      int xvar;
      long long xexp;
      int zvar;
      long long zexp;
    };
    Half u{g, 1, kZ, 0}, v{};
    switch (mode) {
      case HalfMode::SquaresOne: v = {g, -1, kZ, 0}; break;
      case HalfMode::CentralSquare: v = {g, -1, kZ, 1}; break;
      case HalfMode::Independent: v = {g + (1 << 20), 1, kZ, 0}; break;
    }
    if (s.second < 0) {
      // antidiag(u, v)^-1 = antidiag(v^-1, u^-1)
      std::swap(u, v);
      u.xexp = -u.xexp;
      u.zexp = -u.zexp;
      v.xexp = -v.xexp;
      v.zexp = -v.zexp;
    }
    // diag(A,B) * antidiag(u,v) = antidiag(A u, B v)
    // antidiag(A,B) * antidiag(u,v) = diag(A v, B u)
    if (parity == 0) {
      mul(top, u.xvar, u.xexp);
      mul(top, u.zvar, u.zexp);
      mul(bot, v.xvar, v.xexp);
      mul(bot, v.zvar, v.zexp);
    } else {
      mul(top, v.xvar, v.xexp);
      mul(top, v.zvar, v.zexp);
      mul(bot, u.xvar, u.xexp);
      mul(bot, u.zvar, u.zexp);
    }
    parity ^= 1;
  }
  return parity == 0 && top.empty() && bot.empty();
}

bool trivial_mod_squares_stack(const Word& w) { return square_reduce(w).empty(); }

bool derivable_from(const Detections& d, const Word& w) {
  const bool h = d.half_commutation_applicable();
  if (d.commutation && d.squares) return trivial_abelian(w, true, false);
  if (d.commutation && d.square_equality) return trivial_abelian(w, true, true);
  if (d.commutation) return trivial_abelian(w, false, false);
  if (h && d.squares) return trivial_half_model(w, HalfMode::SquaresOne);
  if (h && d.square_equality) return trivial_half_model(w, HalfMode::CentralSquare);
  if (h) return trivial_half_model(w, HalfMode::Independent);
  if (d.squares) return trivial_mod_squares_stack(w);
  if (d.square_equality) return trivial_central_square(w);
  return free_reduce(w).empty();
}

TorusSchema schema_of(const Partition& p) {
  TorusSchema s;
  s.partition = format_partition(p);
  s.upper_word = format_color_word(p.upper);
  s.lower_word = format_color_word(p.lower);
  const std::vector<int> labels = p.blocks.labels();
  s.upper_blocks.assign(labels.begin(), labels.begin() + p.k());
  s.lower_blocks.assign(labels.begin() + p.k(), labels.end());
  for (Color c : p.upper) s.upper_exponents.push_back(exponent_of(c));
  for (Color c : p.lower) s.lower_exponents.push_back(exponent_of(c));
  return s;
}

Word relator_of(const TorusSchema& s) {
  return relator_word(s.upper_blocks, s.upper_exponents, s.lower_blocks, s.lower_exponents);
}

// detections over every cell of a snapshot, one relator per cell; all splits
// of a cell share the relator, so the one-row form suffices
Detections detect_over_cells(const CategorySnapshot& D, int bound) {
  Detections d;
  std::set<Word> seen;
  std::vector<std::pair<Word, std::string>> kept;
  for (Cell c : D.cells().sorted_cells()) {
    if (cell_length(c) > bound) continue;
    const Partition p = unflatten(unpack_cell(c), 0);
    const TorusSchema s = schema_of(p);
    Word w = canonical_relabel(relator_of(s));
    if (!seen.insert(w).second) continue;
    scan_pattern(d, w, s.partition);
    kept.push_back({std::move(w), s.partition});
  }
  if (d.squares)
    for (const auto& [w, lit] : kept) rescan_mod_squares(d, w, lit);
  return d;
}

std::string render_side(const std::vector<int>& blocks, const std::vector<int>& exps) {
  if (blocks.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (!out.empty()) out += "*";
    out += "g" + std::to_string(blocks[i] + 1);
    if (exps[i] < 0) out += "^-1";
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// torus presentations

TorusPresentation torus_presentation(const CategorySnapshot& D, int N, int bound,
                                     bool signed_route) {
  if (N < 1) throw IndexOutOfRange("torus needs at least one generator");
  if (bound > D.bound())
    throw BoundMismatch("presentation bound " + std::to_string(bound) +
                        " exceeds snapshot bound " + std::to_string(D.bound()));
  TorusPresentation t;
  t.N = N;
  t.bound = bound;
  t.source = D.provenance();
  for (Cell c : D.cells().sorted_cells()) {
    const int n = cell_length(c);
    if (n > bound) continue;
    const Flattened f = unpack_cell(c);
    for (int k = 0; k <= n; ++k) {
      const Partition p = unflatten(f, k);
      if (signed_route) {
        // the signed symbol weights instances by the signature of their
        // kernel; on the defining instance the kernel is the partition
        // itself, so a nonzero signature certifies that the support, and
        // with it the schema, is the same as on the plain route
        if (signature(p) == 0) continue;
      }
      t.schemas.push_back(schema_of(p));
    }
  }
  std::sort(t.schemas.begin(), t.schemas.end(), [](const TorusSchema& a, const TorusSchema& b) {
    const size_t la = a.upper_blocks.size() + a.lower_blocks.size();
    const size_t lb = b.upper_blocks.size() + b.lower_blocks.size();
    if (la != lb) return la < lb;
    if (a.upper_word != b.upper_word) return a.upper_word < b.upper_word;
    if (a.lower_word != b.lower_word) return a.lower_word < b.lower_word;
    return a.partition < b.partition;
  });
  return t;
}

std::string torus_to_json(const TorusPresentation& t) {
  nlohmann::json gens = nlohmann::json::array();
  for (int i = 1; i <= t.N; ++i) gens.push_back("g" + std::to_string(i));
  nlohmann::json schemas = nlohmann::json::array();
  for (const TorusSchema& s : t.schemas) {
    schemas.push_back({{"partition", s.partition},
                       {"upper", s.upper_word},
                       {"lower", s.lower_word},
                       {"upper_blocks", s.upper_blocks},
                       {"lower_blocks", s.lower_blocks},
                       {"upper_exponents", s.upper_exponents},
                       {"lower_exponents", s.lower_exponents}});
  }
  nlohmann::json doc{{"kind", "torus_presentation"},
                     {"N", t.N},
                     {"bound", t.bound},
                     {"source", t.source},
                     {"generators", gens},
                     {"schemas", schemas}};
  return doc.dump(2);
}

std::string torus_to_text(const TorusPresentation& t) {
  std::ostringstream out;
  out << "diagonal torus relations  N=" << t.N << "  bound=" << t.bound << "  source=" << t.source
      << "\n";
  for (const TorusSchema& s : t.schemas) {
    out << render_side(s.upper_blocks, s.upper_exponents) << " = "
        << render_side(s.lower_blocks, s.lower_exponents) << "  # " << s.partition << "\n";
  }
  return out.str();
}

TorusNormalForm normalize_torus(const TorusPresentation& t) {
  Detections d;
  std::set<Word> seen;
  std::vector<std::pair<Word, std::string>> kept;
  for (const TorusSchema& s : t.schemas) {
    Word w = canonical_relabel(relator_of(s));
    if (!seen.insert(w).second) continue;
    scan_pattern(d, w, s.partition);
    kept.push_back({std::move(w), s.partition});
  }
  // the letter-only pass is licensed by g^2 = 1 alone; square equality g^2 =
  // h^2 does not collapse exponents, so it must not trigger it
  if (d.squares)
    for (const auto& [w, lit] : kept) rescan_mod_squares(d, w, lit);

  TorusNormalForm nf;
  nf.commutation = d.commutation;
  nf.squares = d.squares;
  nf.square_equality = d.square_equality;
  nf.half_commutation = d.half_commutation();
  nf.trivial_free = d.trivial_free;
  nf.trivial_mod_squares = d.trivial_mod_squares;
  nf.trivial_mod_commutation = d.trivial_mod_commutation;
  nf.trivial_mod_both = d.trivial_mod_both;
  nf.commutation_witness = d.commutation_witness;
  nf.squares_witness = d.squares_witness;
  nf.square_equality_witness = d.square_equality_witness;
  nf.half_commutation_witness = d.half_commutation_witness;
  nf.patterns = d.patterns;

  // Exact two-sided classifications. Detections push the group below the
  // named quotient; the matching triviality certificate lifts it back up, and
  // finitely generated residually finite groups are not isomorphic to proper
  // quotients of themselves.
  if (d.commutation && d.squares && d.trivial_mod_both)
    nf.kind = TorusKind::Cube;
  else if (d.commutation && d.trivial_mod_commutation)
    nf.kind = TorusKind::StandardTorus;
  else if (d.squares && d.trivial_mod_squares)
    nf.kind = TorusKind::FreeCube;
  else if (d.trivial_free)
    nf.kind = TorusKind::FreeDual;
  else
    nf.kind = TorusKind::Unclassified;
  return nf;
}

std::string torus_kind_name(TorusKind k) {
  switch (k) {
    case TorusKind::Cube: return "cube";
    case TorusKind::StandardTorus: return "standard_torus";
    case TorusKind::FreeCube: return "free_cube";
    case TorusKind::FreeDual: return "free_dual";
    case TorusKind::Unclassified: return "unclassified";
  }
  return "unclassified";
}

// ---------------------------------------------------------------------------
// sphere relation sets

namespace {

SphereRelation sphere_relation_of(const Partition& p) {
  const TorusSchema s = schema_of(p);
  SphereRelation r;
  r.partition = s.partition;
  r.upper_word = s.upper_word;
  r.lower_word = s.lower_word;
  r.upper_blocks = s.upper_blocks;
  r.lower_blocks = s.lower_blocks;
  r.upper_exponents = s.upper_exponents;
  r.lower_exponents = s.lower_exponents;
  return r;
}

void sort_relations(std::vector<SphereRelation>& v) {
  std::sort(v.begin(), v.end(), [](const SphereRelation& a, const SphereRelation& b) {
    const size_t la = a.upper_blocks.size() + a.lower_blocks.size();
    const size_t lb = b.upper_blocks.size() + b.lower_blocks.size();
    if (la != lb) return la < lb;
    if (a.upper_word != b.upper_word) return a.upper_word < b.upper_word;
    if (a.lower_word != b.lower_word) return a.lower_word < b.lower_word;
    return a.partition < b.partition;
  });
}

}  // namespace

SphereRelationSet sphere_relations(const CategorySnapshot& D, int N, int bound, bool twisted) {
  if (bound > D.bound())
    throw BoundMismatch("relation bound " + std::to_string(bound) + " exceeds snapshot bound " +
                        std::to_string(D.bound()));
  SphereRelationSet s;
  s.N = N;
  s.bound = bound;
  s.twisted = twisted;
  s.two_row = false;
  s.source = D.provenance();
  for (Cell c : D.cells().sorted_cells()) {
    if (cell_length(c) > bound) continue;
    const Partition p = unflatten(unpack_cell(c), 0);
    if (twisted && signature(p) == 0) continue;  // signed weights never kill the defining instance
    s.relations.push_back(sphere_relation_of(p));
  }
  sort_relations(s.relations);
  return s;
}

SphereRelationSet sphere_relations_two_row(const CategorySnapshot& D, int N, int bound,
                                           bool twisted) {
  if (bound > D.bound())
    throw BoundMismatch("relation bound " + std::to_string(bound) + " exceeds snapshot bound " +
                        std::to_string(D.bound()));
  SphereRelationSet s;
  s.N = N;
  s.bound = bound;
  s.twisted = twisted;
  s.two_row = true;
  s.source = D.provenance();
  for (Cell c : D.cells().sorted_cells()) {
    const int n = cell_length(c);
    if (n > bound || n % 2 != 0) continue;
    const Partition p = unflatten(unpack_cell(c), n / 2);
    // substitution rules x_{j sigma}^e = x_j^f only make sense for honest
    // permutation diagrams, where exactly one upper tuple survives per j
    if (!is_permutation_diagram(p)) continue;
    if (twisted && signature(p) == 0) continue;
    s.relations.push_back(sphere_relation_of(p));
  }
  sort_relations(s.relations);
  return s;
}

namespace {

std::string monomial_text(const std::vector<int>& blocks, const std::vector<int>& exps,
                          char index_letter) {
  if (blocks.empty()) return "1";
  std::string out;
  for (size_t t = 0; t < blocks.size(); ++t) {
    if (!out.empty()) out += " ";
    out += "x(";
    out += index_letter;
    out += std::to_string(blocks[t] + 1) + ")";
    if (exps[t] < 0) out += "*";
  }
  return out;
}

}  // namespace

std::string sphere_to_json(const SphereRelationSet& s) {
  nlohmann::json coords = nlohmann::json::array();
  for (int i = 1; i <= s.N; ++i) coords.push_back("x" + std::to_string(i));
  nlohmann::json rels = nlohmann::json::array();
  for (const SphereRelation& r : s.relations) {
    rels.push_back({{"partition", r.partition},
                    {"upper", r.upper_word},
                    {"lower", r.lower_word},
                    {"upper_blocks", r.upper_blocks},
                    {"lower_blocks", r.lower_blocks},
                    {"upper_exponents", r.upper_exponents},
                    {"lower_exponents", r.lower_exponents}});
  }
  nlohmann::json doc{{"kind", "sphere_relations"}, {"N", s.N},
                     {"bound", s.bound},           {"twisted", s.twisted},
                     {"two_row", s.two_row},       {"source", s.source},
                     {"coordinates", coords},      {"relations", rels}};
  return doc.dump(2);
}

std::string sphere_to_text(const SphereRelationSet& s) {
  std::ostringstream out;
  out << "sphere relations  N=" << s.N << "  bound=" << s.bound
      << (s.twisted ? "  signed" : "  plain") << (s.two_row ? "  substitution-form" : "  sum-form")
      << "  source=" << s.source << "\n";
  for (const SphereRelation& r : s.relations) {
    if (s.two_row) {
      out << monomial_text(r.upper_blocks, r.upper_exponents, 'j') << " = "
          << monomial_text(r.lower_blocks, r.lower_exponents, 'j') << "  # " << r.partition
          << "\n";
    } else {
      out << "sum " << monomial_text(r.lower_blocks, r.lower_exponents, 'i') << " = 1  # "
          << r.partition << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// intertwiner relations

IntertwinerRelationSet group_relations(const CategorySnapshot& D, int N, int bound, bool twisted,
                                       std::uint64_t budget) {
  if (N < 1) throw IndexOutOfRange("matrix size must be at least 1");
  if (bound > D.bound())
    throw BoundMismatch("relation bound " + std::to_string(bound) + " exceeds snapshot bound " +
                        std::to_string(D.bound()));
  IntertwinerRelationSet out;
  out.N = N;
  out.bound = bound;
  out.twisted = twisted;
  out.source = D.provenance();

  for (Cell c : D.cells().sorted_cells()) {
    const int n = cell_length(c);
    if (n > bound) continue;
    const Flattened f = unpack_cell(c);
    for (int k = 0; k <= n; ++k) {
      const Partition p = unflatten(f, k);
      const int l = n - k;
      const SparseIntegerOperator op =
          twisted ? realize_twisted(p, N, budget) : realize(p, N, budget);
      const std::uint64_t rows = pow_u64(N, l);
      const std::uint64_t cols = pow_u64(N, k);
      const std::uint64_t eqs = rows * cols;
      const std::uint64_t work = op.entries.size() * (rows + cols);
      if (eqs > budget || work > budget)
        throw BudgetExceeded("intertwiner expansion for " + format_partition(p) +
                             " exceeds the operator budget");
      out.equations_before_pruning += eqs;

      std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, long long>>> by_row, by_col;
      for (const auto& e : op.entries) {
        by_row[e.row].push_back({e.col, e.value});
        by_col[e.col].push_back({e.row, e.value});
      }

      const std::string literal = format_partition(p);
      const std::string uw = format_color_word(p.upper);
      const std::string lw = format_color_word(p.lower);
      for (std::uint64_t j = 0; j < rows; ++j) {
        const std::vector<int> jt = decode_tuple(j, N, l);
        for (std::uint64_t i = 0; i < cols; ++i) {
          const std::vector<int> it = decode_tuple(i, N, k);
          std::map<std::vector<UFactor>, long long> collect;
          if (auto r = by_row.find(j); r != by_row.end()) {
            for (const auto& [a, val] : r->second) {
              const std::vector<int> at = decode_tuple(a, N, k);
              std::vector<UFactor> fs;
              for (int s = 0; s < k; ++s)
                fs.push_back({at[s], it[s], p.upper[s] == Color::Black});
              collect[fs] += val;
            }
          }
          if (auto cc = by_col.find(i); cc != by_col.end()) {
            for (const auto& [b, val] : cc->second) {
              const std::vector<int> bt = decode_tuple(b, N, l);
              std::vector<UFactor> fs;
              for (int t = 0; t < l; ++t)
                fs.push_back({jt[t], bt[t], p.lower[t] == Color::Black});
              collect[fs] -= val;
            }
          }
          IntertwinerEquation eq;
          eq.partition = literal;
          eq.upper_word = uw;
          eq.lower_word = lw;
          eq.in_tuple = it;
          eq.out_tuple = jt;
          for (const auto& [fs, coeff] : collect)
            if (coeff != 0) eq.terms.push_back({coeff, fs});
          if (!eq.terms.empty()) out.equations.push_back(std::move(eq));
        }
      }
    }
  }

  for (std::size_t idx = 0; idx < out.equations.size(); ++idx) {
    const auto& terms = out.equations[idx].terms;
    if (terms.size() != 2) continue;
    const auto& t0 = terms[0];
    const auto& t1 = terms[1];
    if (t0.factors.size() != 2 || t1.factors.size() != 2) continue;
    if (t0.factors[0] == t0.factors[1]) continue;
    if (t1.factors[0] != t0.factors[1] || t1.factors[1] != t0.factors[0]) continue;
    if (t0.coeff != t1.coeff && t0.coeff != -t1.coeff) continue;
    RecognizedPair r;
    r.anti = t0.coeff == t1.coeff;
    r.a = t0.factors[0];
    r.b = t0.factors[1];
    r.equation = idx;
    out.recognized.push_back(r);
  }
  return out;
}

IntertwinerEquation expand_recognized(const RecognizedPair& r,
                                      const IntertwinerEquation& original) {
  IntertwinerEquation eq;
  eq.partition = original.partition;
  eq.upper_word = original.upper_word;
  eq.lower_word = original.lower_word;
  eq.in_tuple = original.in_tuple;
  eq.out_tuple = original.out_tuple;
  // scale to the original's normalization so the round trip is exact
  long long c = 1;
  if (original.terms.size() == 2 && original.terms[0].factors.size() == 2 &&
      original.terms[0].factors[0] == r.a && original.terms[0].factors[1] == r.b)
    c = original.terms[0].coeff;
  eq.terms.push_back({c, {r.a, r.b}});
  eq.terms.push_back({r.anti ? c : -c, {r.b, r.a}});
  std::sort(eq.terms.begin(), eq.terms.end(),
            [](const UTerm& x, const UTerm& y) { return x.factors < y.factors; });
  return eq;
}

namespace {

std::string factor_text(const UFactor& f) {
  std::string out = f.star ? "u*[" : "u[";
  out += std::to_string(f.row) + "," + std::to_string(f.col) + "]";
  return out;
}

nlohmann::json factor_json(const UFactor& f) {
  return {{"row", f.row}, {"col", f.col}, {"star", f.star}};
}

std::string tuple_text(const std::vector<int>& t) {
  std::string out = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

}  // namespace

std::string intertwiners_to_json(const IntertwinerRelationSet& s) {
  nlohmann::json eqs = nlohmann::json::array();
  for (const IntertwinerEquation& e : s.equations) {
    nlohmann::json terms = nlohmann::json::array();
    for (const UTerm& t : e.terms) {
      nlohmann::json fs = nlohmann::json::array();
      for (const UFactor& f : t.factors) fs.push_back(factor_json(f));
      terms.push_back({{"coeff", t.coeff}, {"factors", fs}});
    }
    eqs.push_back({{"partition", e.partition},
                   {"upper", e.upper_word},
                   {"lower", e.lower_word},
                   {"in", e.in_tuple},
                   {"out", e.out_tuple},
                   {"terms", terms}});
  }
  nlohmann::json rec = nlohmann::json::array();
  for (const RecognizedPair& r : s.recognized) {
    rec.push_back({{"anti", r.anti},
                   {"a", factor_json(r.a)},
                   {"b", factor_json(r.b)},
                   {"equation", r.equation}});
  }
  nlohmann::json doc{{"kind", "intertwiner_relations"},
                     {"N", s.N},
                     {"bound", s.bound},
                     {"twisted", s.twisted},
                     {"source", s.source},
                     {"equations_before_pruning", s.equations_before_pruning},
                     {"equations", eqs},
                     {"recognized", rec}};
  return doc.dump(2);
}

std::string intertwiners_to_text(const IntertwinerRelationSet& s) {
  std::ostringstream out;
  out << "intertwiner relations  N=" << s.N << "  bound=" << s.bound
      << (s.twisted ? "  signed" : "  plain") << "  source=" << s.source << "\n";
  out << "equations " << s.equations.size() << " of " << s.equations_before_pruning
      << " before pruning\n";
  for (const IntertwinerEquation& e : s.equations) {
    out << "0 =";
    for (const UTerm& t : e.terms) {
      out << (t.coeff >= 0 ? " +" : " ") << t.coeff << "*";
      if (t.factors.empty()) out << "1";
      for (const UFactor& f : t.factors) out << factor_text(f);
    }
    out << "  # " << e.partition << " out=" << tuple_text(e.out_tuple)
        << " in=" << tuple_text(e.in_tuple) << "\n";
  }
  for (const RecognizedPair& r : s.recognized) {
    out << (r.anti ? "anticommute " : "commute ") << factor_text(r.a) << " " << factor_text(r.b)
        << "  # equation " << r.equation << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// fizziness

bool is_permutation_diagram(const Partition& p) {
  if (p.k() != p.l()) return false;
  for (const auto& blk : p.blocks.blocks) {
    if (blk.size() != 2) return false;
    const bool upper0 = blk[0] < p.k();
    const bool upper1 = blk[1] < p.k();
    if (upper0 == upper1) return false;
  }
  return true;
}

FizzyReport fizzy_criterion(const GeneratorSet& gens) {
  FizzyReport r;
  r.label = gens.label;
  for (const Partition& p : gens.generators)
    if (!is_permutation_diagram(p)) r.non_permutation_generators.push_back(format_partition(p));
  r.verdict = r.non_permutation_generators.empty() ? FizzyVerdict::FizzyByPermutations
                                                   : FizzyVerdict::Inconclusive;
  return r;
}

// ---------------------------------------------------------------------------
// classical model checks

namespace {

struct GaussianStream {
  std::mt19937_64 rng;
  bool has_spare = false;
  double spare = 0.0;

  explicit GaussianStream(std::uint64_t seed) : rng(seed) {}

  double uniform01() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare = r * std::sin(a);
    has_spare = true;
    return r * std::cos(a);
  }
};

}  // namespace

ModelCheckReport classical_model_check(const SphereRelationSet& rels, const std::string& model,
                                       std::uint64_t samples, double tolerance,
                                       std::uint64_t seed, long long corrupt_index) {
  if (rels.twisted)
    throw UnsupportedModel("signed relation sets have no commutative model");
  if (rels.two_row)
    throw UnsupportedModel("substitution rules are validated through the sum relations");
  bool complex_model = false;
  if (model == "complex_sphere")
    complex_model = true;
  else if (model != "real_sphere")
    throw UnsupportedModel("unknown model: " + model);

  const int N = rels.N;
  ModelCheckReport rep;
  rep.model = model;
  rep.N = N;
  rep.samples = samples;
  rep.tolerance = tolerance;
  rep.relations = rels.relations.size();

  // per relation: the color runs of each block, for factorized evaluation
  struct BlockColors {
    std::vector<std::vector<Color>> blocks;
    std::vector<Color> all;
    std::string literal;
  };
  std::vector<BlockColors> prepared;
  for (const SphereRelation& r : rels.relations) {
    BlockColors bc;
    bc.literal = r.partition;
    int nblocks = 0;
    for (int b : r.lower_blocks) nblocks = std::max(nblocks, b + 1);
    bc.blocks.resize(nblocks);
    const ColorWord w = parse_color_word(r.lower_word);
    for (size_t t = 0; t < w.size(); ++t) {
      bc.blocks[r.lower_blocks[t]].push_back(w[t]);
      bc.all.push_back(w[t]);
    }
    prepared.push_back(std::move(bc));
  }

  GaussianStream g(seed);
  std::vector<std::complex<double>> z(N);
  for (std::uint64_t s = 0; s < samples; ++s) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (int v = 0; v < N; ++v) {
        z[v] = complex_model ? std::complex<double>(g.gaussian(), g.gaussian())
                             : std::complex<double>(g.gaussian(), 0.0);
        norm += std::norm(z[v]);
      }
    } while (norm < 1e-12);
    const double scale = 1.0 / std::sqrt(norm);
    for (int v = 0; v < N; ++v) z[v] *= scale;

    for (std::size_t ri = 0; ri < prepared.size(); ++ri) {
      const BlockColors& bc = prepared[ri];
      std::complex<double> value = 1.0;
      for (const auto& blk : bc.blocks) {
        std::complex<double> sum = 0.0;
        for (int v = 0; v < N; ++v) {
          std::complex<double> term = 1.0;
          for (Color c : blk) term *= c == Color::White ? z[v] : std::conj(z[v]);
          sum += term;
        }
        value *= sum;
      }
      if (static_cast<long long>(ri) == corrupt_index) {
        std::complex<double> flipped = 1.0;
        for (Color c : bc.all) flipped *= c == Color::White ? z[0] : std::conj(z[0]);
        value -= 2.0 * flipped;
      }
      const double dev = std::abs(value - std::complex<double>(1.0, 0.0));
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst_relation = bc.literal;
      }
    }
  }
  rep.pass = rep.max_deviation <= tolerance;
  return rep;
}

std::string classical_model_for_preset(const std::string& preset) {
  const std::vector<std::string> names = geometry_preset_names();
  if (std::find(names.begin(), names.end(), preset) == names.end())
    throw UnknownName("no classical sphere model for: " + preset);
  return preset[0] == 'U' ? "complex_sphere" : "real_sphere";
}

// ---------------------------------------------------------------------------
// automatic conditions for a pairing/even category pair

AutomaticConditionsReport check_automatic_conditions(const CategorySnapshot& D,
                                                     const CategorySnapshot& E, int N,
                                                     int bound) {
  if (D.bound() != E.bound())
    throw BoundMismatch("category snapshots disagree on bound: " + std::to_string(D.bound()) +
                        " vs " + std::to_string(E.bound()));
  if (bound > D.bound())
    throw BoundMismatch("check bound " + std::to_string(bound) + " exceeds snapshot bound " +
                        std::to_string(D.bound()));

  AutomaticConditionsReport rep;

  // (a) the signed realization agrees with the plain one on noncrossing
  // cells; crossing cells genuinely differ and are exempt
  std::set<Cell> all_cells;
  for (Cell c : D.cells().sorted_cells()) all_cells.insert(c);
  for (Cell c : E.cells().sorted_cells()) all_cells.insert(c);
  for (Cell c : all_cells) {
    if (cell_length(c) > bound) continue;
    const Flattened f = unpack_cell(c);
    if (!noncrossing(f.part) || !even_blocks(f.part)) continue;
    const Partition p = unflatten(f, 0);
    const SparseIntegerOperator plain = realize(p, N);
    const SparseIntegerOperator signed_op = realize_twisted(p, N);
    ++rep.noncrossing_cells_checked;
    if (plain.entries != signed_op.entries) rep.twist_witnesses.push_back(format_partition(p));
  }
  rep.twist_invariant = rep.twist_witnesses.empty();

  // (b) both categories present the same diagonal torus: every relator of one
  // side is either emitted verbatim by the other (shared cell; all splits of
  // a cell share one relator, its flattened form) or certified derivable by
  // the exact reducer for the group the other side's detections cut out
  const Detections dd = detect_over_cells(D, bound);
  const Detections de = detect_over_cells(E, bound);
  auto side = [&](const CategorySnapshot& from, const CategorySnapshot& other,
                  const Detections& flags) {
    for (Cell c : from.cells().sorted_cells()) {
      if (cell_length(c) > bound) continue;
      if (other.cells().contains(c)) continue;
      const Partition p = unflatten(unpack_cell(c), 0);
      const TorusSchema s = schema_of(p);
      if (!derivable_from(flags, relator_of(s))) rep.torus_witnesses.push_back(s.partition);
    }
  };
  side(D, E, de);
  side(E, D, dd);
  rep.torus_equivalent = rep.torus_witnesses.empty();

  // (c) the defining axioms of the pair itself
  rep.pair_axioms = check_pair_axioms(D, E);
  return rep;
}

std::string automatic_conditions_to_json(const AutomaticConditionsReport& r) {
  nlohmann::json doc{{"kind", "automatic_conditions"},
                     {"twist_invariant", r.twist_invariant},
                     {"noncrossing_cells_checked", r.noncrossing_cells_checked},
                     {"twist_witnesses", r.twist_witnesses},
                     {"torus_equivalent", r.torus_equivalent},
                     {"torus_witnesses", r.torus_witnesses},
                     {"pair_axioms",
                      {{"d_eq", r.pair_axioms.d_eq},
                       {"e_eq", r.pair_axioms.e_eq},
                       {"d_witnesses", r.pair_axioms.d_witnesses},
                       {"e_witnesses", r.pair_axioms.e_witnesses}}},
                     {"all_ok", r.all_ok()}};
  return doc.dump(2);
}

}  // namespace partcat
