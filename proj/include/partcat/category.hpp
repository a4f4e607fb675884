#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partcat/onerow.hpp"

namespace partcat {

// the eighteen classes cut out by predicate conjunctions: rows
// {matching, balanced, plain} x columns {plain, alternating, noncrossing},
// for the pairing family and the even family
enum class NamedCategory {
  P2, P2Star, NC2, P2Bar, P2BarStar, NC2Bar, MP2, MP2Star, MNC2,
  Peven, PevenStar, NCeven, PevenBar, PevenBarStar, NCevenBar,
  MPeven, MPevenStar, MNCeven,
};

const std::vector<NamedCategory>& all_named_categories();
NamedCategory parse_named_category(const std::string& name);  // UnknownName
std::string named_category_name(NamedCategory c);
unsigned named_category_predicates(NamedCategory c);

std::vector<Partition> named_category_cell(NamedCategory c, const ColorWord& upper,
                                           const ColorWord& lower, int cap = 12);

struct GeneratorSet {
  std::vector<Partition> generators;
  std::string label = "custom";
};

// quantum-group style presets: the nine pairing-side geometries
// {ON, ON*, ON+, TON, TON*, TON+, UN, UN*, UN+} and their reflection
// partners {HN, ..., KN+}, which add the one-block four-leg generator
GeneratorSet preset_generators(const std::string& name);  // UnknownName
NamedCategory preset_category(const std::string& name);
const std::vector<std::string>& geometry_preset_names();
std::string reflection_partner(const std::string& geometry_preset);
bool is_preset_name(const std::string& name);

class CategorySnapshot {
 public:
  static CategorySnapshot close(const GeneratorSet& gens, int bound,
                                std::uint64_t max_cells = 0);
  static CategorySnapshot named(NamedCategory c, int bound);
  static CategorySnapshot from_cells(CellTable cells, std::string provenance,
                                     std::vector<std::string> generator_literals = {});

  int bound() const { return table_.bound(); }
  const std::string& provenance() const { return provenance_; }
  const std::vector<std::string>& generator_literals() const { return generator_literals_; }
  std::uint64_t cell_count() const { return table_.size(); }
  const CellTable& cells() const { return table_; }

  std::vector<Partition> cell(const ColorWord& upper, const ColorWord& lower) const;
  enum class Membership { Member, NonMemberUpToBound };
  Membership contains(const Partition& p) const;
  bool same_cells(const CategorySnapshot& other) const { return table_ == other.table_; }

  std::string to_json_string() const;
  static CategorySnapshot from_json_string(const std::string& text);
  void save(const std::string& path) const;
  static CategorySnapshot load(const std::string& path);

 private:
  CategorySnapshot(CellTable table, std::string provenance,
                   std::vector<std::string> generator_literals);
  CellTable table_;
  std::string provenance_;
  std::vector<std::string> generator_literals_;
};

CategorySnapshot intersect(const CategorySnapshot& a, const CategorySnapshot& b);
CategorySnapshot generate_join(const CategorySnapshot& a, const CategorySnapshot& b, int bound,
                               std::uint64_t max_cells = 0);

// the two axioms tying a pairing category D to its even partner E:
// D equals the pairings of E, and E is generated by D plus the minimal
// even category
struct PairAxiomReport {
  bool d_eq = false;
  bool e_eq = false;
  std::vector<std::string> d_witnesses;
  std::vector<std::string> e_witnesses;
};
PairAxiomReport check_pair_axioms(const CategorySnapshot& d, const CategorySnapshot& e);

}  // namespace partcat
