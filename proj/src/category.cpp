#include "partcat/category.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "partcat/errors.hpp"

namespace partcat {

namespace {

struct NamedRow {
  NamedCategory id;
  const char* name;
  unsigned predicates;
};

constexpr unsigned E = PredEven;
constexpr unsigned P = PredPairing;
constexpr unsigned N = PredNoncrossing;
constexpr unsigned M = PredMatching;
constexpr unsigned B = PredBalanced;
constexpr unsigned A = PredAltBalanced;

const std::array<NamedRow, 18> kCatalog = {{
    {NamedCategory::P2, "P2", E | P},
    {NamedCategory::P2Star, "P2*", E | P | A},
    {NamedCategory::NC2, "NC2", E | P | N},
    {NamedCategory::P2Bar, "P2bar", E | P | B},
    {NamedCategory::P2BarStar, "P2bar*", E | P | B | A},
    {NamedCategory::NC2Bar, "NC2bar", E | P | B | N},
    {NamedCategory::MP2, "MP2", E | P | M},
    {NamedCategory::MP2Star, "MP2*", E | P | M | A},
    {NamedCategory::MNC2, "MNC2", E | P | M | N},
    {NamedCategory::Peven, "Peven", E},
    {NamedCategory::PevenStar, "Peven*", E | A},
    {NamedCategory::NCeven, "NCeven", E | N},
    {NamedCategory::PevenBar, "Pevenbar", E | B},
    {NamedCategory::PevenBarStar, "Pevenbar*", E | B | A},
    {NamedCategory::NCevenBar, "NCevenbar", E | B | N},
    {NamedCategory::MPeven, "MPeven", E | M},
    {NamedCategory::MPevenStar, "MPeven*", E | M | A},
    {NamedCategory::MNCeven, "MNCeven", E | M | N},
}};

const NamedRow& row_of(NamedCategory c) {
  for (const auto& r : kCatalog)
    if (r.id == c) return r;
  throw UnknownName("unknown named category");
}

std::vector<Partition> color_flip_strands() {
  // both directions of u = ū; with color-flipping involution neither one
  // reaches the other, so they are separate generators
  return {Partition::make({Color::White}, {Color::Black}, {{0, 1}}),
          Partition::make({Color::Black}, {Color::White}, {{0, 1}})};
}

Partition two_strand_swap() {
  // upper ∘•, lower •∘, straight strands: the ab* = a*b diagram
  return Partition::make({Color::White, Color::Black}, {Color::Black, Color::White},
                         {{0, 2}, {1, 3}});
}

std::vector<Partition> matching_crossings() {
  std::vector<Partition> out;
  for (Color a : {Color::White, Color::Black})
    for (Color b : {Color::White, Color::Black})
      out.push_back(Partition::make({a, b}, {b, a}, {{0, 3}, {1, 2}}));
  return out;
}

std::vector<Partition> matching_three_line_crossings() {
  std::vector<Partition> out;
  for (Color a : {Color::White, Color::Black})
    for (Color b : {Color::White, Color::Black})
      for (Color c : {Color::White, Color::Black})
        out.push_back(Partition::make({a, b, c}, {c, b, a}, {{0, 5}, {1, 4}, {2, 3}}));
  return out;
}

std::vector<Partition> four_leg_blocks() {
  // the alternating coloring alone only spawns alternating blocks: gluing
  // never breaks that pattern, so the shuffled coloring joins it
  return {parse_partition("|obob;l1 l2 l3 l4"), parse_partition("|oobb;l1 l2 l3 l4")};
}

struct PresetRow {
  const char* name;
  NamedCategory category;
};

const std::array<PresetRow, 18> kPresets = {{
    {"ON", NamedCategory::P2},
    {"ON*", NamedCategory::P2Star},
    {"ON+", NamedCategory::NC2},
    {"TON", NamedCategory::P2Bar},
    {"TON*", NamedCategory::P2BarStar},
    {"TON+", NamedCategory::NC2Bar},
    {"UN", NamedCategory::MP2},
    {"UN*", NamedCategory::MP2Star},
    {"UN+", NamedCategory::MNC2},
    {"HN", NamedCategory::Peven},
    {"HN*", NamedCategory::PevenStar},
    {"HN+", NamedCategory::NCeven},
    {"THN", NamedCategory::PevenBar},
    {"THN*", NamedCategory::PevenBarStar},
    {"THN+", NamedCategory::NCevenBar},
    {"KN", NamedCategory::MPeven},
    {"KN*", NamedCategory::MPevenStar},
    {"KN+", NamedCategory::MNCeven},
}};

}  // namespace

const std::vector<NamedCategory>& all_named_categories() {
  static const std::vector<NamedCategory> all = [] {
    std::vector<NamedCategory> v;
    for (const auto& r : kCatalog) v.push_back(r.id);
    return v;
  }();
  return all;
}

NamedCategory parse_named_category(const std::string& name) {
  for (const auto& r : kCatalog)
    if (name == r.name) return r.id;
  throw UnknownName("unknown category name: " + name);
}

std::string named_category_name(NamedCategory c) { return row_of(c).name; }

unsigned named_category_predicates(NamedCategory c) { return row_of(c).predicates; }

std::vector<Partition> named_category_cell(NamedCategory c, const ColorWord& upper,
                                           const ColorWord& lower, int cap) {
  return enumerate(upper, lower, named_category_predicates(c), cap);
}

const std::vector<std::string>& geometry_preset_names() {
  static const std::vector<std::string> names = {"ON",  "ON*",  "ON+", "TON", "TON*",
                                                 "TON+", "UN",  "UN*", "UN+"};
  return names;
}

std::string reflection_partner(const std::string& geometry_preset) {
  static const std::map<std::string, std::string> partner = {
      {"ON", "HN"},   {"ON*", "HN*"},   {"ON+", "HN+"},
      {"TON", "THN"}, {"TON*", "THN*"}, {"TON+", "THN+"},
      {"UN", "KN"},   {"UN*", "KN*"},   {"UN+", "KN+"},
  };
  auto it = partner.find(geometry_preset);
  if (it == partner.end()) throw UnknownName("no reflection partner for: " + geometry_preset);
  return it->second;
}

bool is_preset_name(const std::string& name) {
  for (const auto& p : kPresets)
    if (name == p.name) return true;
  return false;
}

GeneratorSet preset_generators(const std::string& name) {
  GeneratorSet out;
  out.label = "preset:" + name;
  auto append = [&out](const std::vector<Partition>& ps) {
    out.generators.insert(out.generators.end(), ps.begin(), ps.end());
  };
  std::string base = name;
  bool reflection = false;
  static const std::map<std::string, std::string> unreflect = {
      {"HN", "ON"},   {"HN*", "ON*"},   {"HN+", "ON+"},
      {"THN", "TON"}, {"THN*", "TON*"}, {"THN+", "TON+"},
      {"KN", "UN"},   {"KN*", "UN*"},   {"KN+", "UN+"},
  };
  if (auto it = unreflect.find(name); it != unreflect.end()) {
    base = it->second;
    reflection = true;
  }

  if (base == "ON" || base == "ON*" || base == "ON+") append(color_flip_strands());
  if (base == "TON" || base == "TON*" || base == "TON+") out.generators.push_back(two_strand_swap());
  if (base == "ON" || base == "TON" || base == "UN") append(matching_crossings());
  if (base == "ON*" || base == "TON*" || base == "UN*") append(matching_three_line_crossings());
  if (base != "ON" && base != "ON*" && base != "ON+" && base != "TON" && base != "TON*" &&
      base != "TON+" && base != "UN" && base != "UN*" && base != "UN+")
    throw UnknownName("unknown preset name: " + name);

  if (reflection) append(four_leg_blocks());
  return out;
}

NamedCategory preset_category(const std::string& name) {
  for (const auto& p : kPresets)
    if (name == p.name) return p.category;
  throw UnknownName("unknown preset name: " + name);
}

CategorySnapshot::CategorySnapshot(CellTable table, std::string provenance,
                                   std::vector<std::string> generator_literals)
    : table_(std::move(table)),
      provenance_(std::move(provenance)),
      generator_literals_(std::move(generator_literals)) {}

CategorySnapshot CategorySnapshot::from_cells(CellTable cells, std::string provenance,
                                              std::vector<std::string> generator_literals) {
  return CategorySnapshot(std::move(cells), std::move(provenance),
                          std::move(generator_literals));
}

CategorySnapshot CategorySnapshot::close(const GeneratorSet& gens, int bound,
                                         std::uint64_t max_cells) {
  std::vector<Cell> seeds;
  std::vector<std::string> literals;
  for (const Partition& g : gens.generators) {
    if (g.legs() > bound)
      throw BoundTooSmall("generator " + format_partition(g) + " exceeds bound " +
                          std::to_string(bound));
    if (!classify(g).even)
      throw NotEven("generator " + format_partition(g) + " has an odd block");
    seeds.push_back(pack_cell(g));
    literals.push_back(format_partition(g));
  }
  // every category contains the color-matched noncrossing pairings
  for (int n = 0; n <= bound; ++n)
    for (const ColorWord& w : all_color_words(n))
      for (Cell c : matched_noncrossing_pairings(w)) seeds.push_back(c);
  return CategorySnapshot(close_cells(seeds, bound, max_cells), gens.label, std::move(literals));
}

CategorySnapshot CategorySnapshot::named(NamedCategory c, int bound) {
  const unsigned preds = named_category_predicates(c);
  CellTable table(bound);
  for (int n = 0; n <= bound; ++n) {
    for (const SetPartition& sp : all_set_partitions(n)) {
      // color-independent screens first
      if (!even_blocks(sp)) continue;
      if ((preds & PredPairing) && !is_pairing(sp)) continue;
      if ((preds & PredNoncrossing) && !noncrossing(sp)) continue;
      std::vector<std::uint16_t> block_masks;
      std::vector<int> block_sizes;
      for (const auto& blk : sp.blocks) {
        std::uint16_t mask = 0;
        for (int leg : blk) mask |= static_cast<std::uint16_t>(1u << leg);
        block_masks.push_back(mask);
        block_sizes.push_back(static_cast<int>(blk.size()));
      }
      if (preds & PredAltBalanced) {
        // positions alternate regardless of colors
        const std::uint16_t odd_positions = 0b0101010101010101u & ((1u << n) - 1);
        bool ok = true;
        for (std::size_t b = 0; b < block_masks.size() && ok; ++b)
          ok = 2 * std::popcount(static_cast<unsigned>(block_masks[b] & odd_positions)) ==
               block_sizes[b];
        if (!ok) continue;
      }
      const std::vector<int> labels = sp.labels();
      for (unsigned colors = 0; colors < (1u << n); ++colors) {
        if ((preds & PredBalanced) && 2 * std::popcount(colors) != n) continue;
        if (preds & PredMatching) {
          bool ok = true;
          for (std::size_t b = 0; b < block_masks.size() && ok; ++b)
            ok = 2 * std::popcount(colors & block_masks[b]) == block_sizes[b];
          if (!ok) continue;
        }
        Cell cell = static_cast<Cell>(n) | (static_cast<Cell>(colors) << 4);
        for (int i = 0; i < n; ++i)
          cell |= static_cast<Cell>(labels[i]) << (16 + 4 * i);
        table.insert(cell);
      }
    }
  }
  return CategorySnapshot(std::move(table), "named:" + named_category_name(c), {});
}

std::vector<Partition> CategorySnapshot::cell(const ColorWord& upper,
                                              const ColorWord& lower) const {
  const int k = static_cast<int>(upper.size());
  const int total = k + static_cast<int>(lower.size());
  if (total > bound())
    throw OutOfBound("cell (" + format_color_word(upper) + ", " + format_color_word(lower) +
                     ") exceeds the snapshot bound");
  ColorWord word = lower;
  const ColorWord cu = conjugate(upper);
  word.insert(word.end(), cu.begin(), cu.end());
  std::vector<Partition> out;
  for (Cell c : table_.bucket(key_of_word(word))) out.push_back(unflatten(unpack_cell(c), k));
  std::sort(out.begin(), out.end());
  return out;
}

CategorySnapshot::Membership CategorySnapshot::contains(const Partition& p) const {
  if (p.legs() > bound()) throw OutOfBound("partition exceeds the snapshot bound");
  return table_.contains(pack_cell(p)) ? Membership::Member : Membership::NonMemberUpToBound;
}

std::string CategorySnapshot::to_json_string() const {
  nlohmann::json cells(nlohmann::json::value_t::object);
  for (Cell c : table_.sorted_cells()) {
    const Flattened f = unpack_cell(c);
    cells[format_color_word(f.word)].push_back(format_partition(unflatten(f, 0)));
  }
  nlohmann::json doc{{"kind", "category_snapshot"},
                     {"bound", bound()},
                     {"provenance", provenance_},
                     {"generators", generator_literals_},
                     {"cells", cells}};
  return doc.dump(2);
}

CategorySnapshot CategorySnapshot::from_json_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid snapshot JSON: ") + e.what(),
                     static_cast<std::size_t>(e.byte));
  }
  if (!doc.is_object() || doc.value("kind", "") != "category_snapshot")
    throw ParseError("not a category snapshot document", 0);
  const int bound = doc.at("bound").get<int>();
  CellTable table(bound);
  for (const auto& [word, literals] : doc.at("cells").items()) {
    const ColorWord w = parse_color_word(word);
    for (const auto& lit : literals) {
      const Partition p = parse_partition(lit.get<std::string>());
      if (p.k() != 0 || p.lower != w)
        throw ParseError("cell literal does not match its word key: " + lit.get<std::string>(),
                         0);
      table.insert(pack_cell(p));
    }
  }
  std::vector<std::string> gens;
  if (doc.contains("generators"))
    for (const auto& g : doc.at("generators")) gens.push_back(g.get<std::string>());
  return CategorySnapshot(std::move(table), doc.value("provenance", "unknown"), std::move(gens));
}

void CategorySnapshot::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write snapshot file: " + path);
  out << to_json_string() << '\n';
}

CategorySnapshot CategorySnapshot::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read snapshot file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

CategorySnapshot intersect(const CategorySnapshot& a, const CategorySnapshot& b) {
  if (a.bound() != b.bound())
    throw BoundMismatch("intersect needs equal bounds, got " + std::to_string(a.bound()) +
                        " and " + std::to_string(b.bound()));
  CellTable table(a.bound());
  for (Cell c : a.cells().sorted_cells())
    if (b.cells().contains(c)) table.insert(c);
  return CategorySnapshot::from_cells(
      std::move(table), "intersect(" + a.provenance() + ", " + b.provenance() + ")");
}

CategorySnapshot generate_join(const CategorySnapshot& a, const CategorySnapshot& b, int bound,
                               std::uint64_t max_cells) {
  if (a.bound() != b.bound())
    throw BoundMismatch("join needs equal bounds, got " + std::to_string(a.bound()) + " and " +
                        std::to_string(b.bound()));
  std::vector<Cell> seeds = a.cells().sorted_cells();
  const std::vector<Cell> more = b.cells().sorted_cells();
  seeds.insert(seeds.end(), more.begin(), more.end());
  return CategorySnapshot::from_cells(
      close_cells(seeds, bound, max_cells),
      "join(" + a.provenance() + ", " + b.provenance() + ")");
}

namespace {

bool cell_is_pairing(Cell c) {
  std::array<int, kMaxCellLegs> count{};
  const int n = cell_length(c);
  for (int i = 0; i < n; ++i) ++count[cell_label(c, i)];
  for (int i = 0; i < n; ++i)
    if (count[cell_label(c, i)] != 2) return false;
  return true;
}

std::vector<std::string> difference_literals(const CellTable& a, const CellTable& b) {
  std::vector<std::string> out;
  for (Cell c : a.sorted_cells())
    if (!b.contains(c)) out.push_back(format_partition(unflatten(unpack_cell(c), 0)));
  return out;
}

void trim_witnesses(std::vector<std::string>& v) {
  constexpr std::size_t kMaxWitnesses = 5;
  if (v.size() > kMaxWitnesses) v.resize(kMaxWitnesses);
}

}  // namespace

PairAxiomReport check_pair_axioms(const CategorySnapshot& d, const CategorySnapshot& e) {
  if (d.bound() != e.bound())
    throw BoundMismatch("pair axioms need equal bounds, got " + std::to_string(d.bound()) +
                        " and " + std::to_string(e.bound()));
  const int bound = d.bound();
  PairAxiomReport report;

  CellTable e_pairings(bound);
  for (Cell c : e.cells().sorted_cells())
    if (cell_is_pairing(c)) e_pairings.insert(c);
  report.d_eq = d.cells() == e_pairings;
  if (!report.d_eq) {
    report.d_witnesses = difference_literals(d.cells(), e_pairings);
    auto extra = difference_literals(e_pairings, d.cells());
    report.d_witnesses.insert(report.d_witnesses.end(), extra.begin(), extra.end());
    trim_witnesses(report.d_witnesses);
  }

  std::vector<Cell> seeds = d.cells().sorted_cells();
  const CategorySnapshot minimal_even = CategorySnapshot::named(NamedCategory::MNCeven, bound);
  const std::vector<Cell> more = minimal_even.cells().sorted_cells();
  seeds.insert(seeds.end(), more.begin(), more.end());
  const CellTable generated = close_cells(seeds, bound);
  report.e_eq = e.cells() == generated;
  if (!report.e_eq) {
    report.e_witnesses = difference_literals(e.cells(), generated);
    auto extra = difference_literals(generated, e.cells());
    report.e_witnesses.insert(report.e_witnesses.end(), extra.begin(), extra.end());
    trim_witnesses(report.e_witnesses);
  }
  return report;
}

}  // namespace partcat
