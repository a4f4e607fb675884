#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "partcat/diagram_ops.hpp"

namespace partcat {

// One-row partitions packed into 64 bits: categories are rotation-closed, so a
// two-row cell is stored as its flattened form and recovered by unflatten.
// Layout: bits 0..3 leg count, bits 4..15 colors (1 = black), bits 16+4i the
// block label of leg i in first-occurrence order.
using Cell = std::uint64_t;

inline constexpr int kMaxCellLegs = 12;

Cell pack_cell(const Flattened& f);
Cell pack_cell(const Partition& p);
Flattened unpack_cell(Cell c);

inline int cell_length(Cell c) { return static_cast<int>(c & 0xF); }
inline std::uint16_t cell_word_key(Cell c) { return static_cast<std::uint16_t>(c & 0xFFFF); }
inline int cell_label(Cell c, int leg) {
  return static_cast<int>((c >> (16 + 4 * leg)) & 0xF);
}
inline int cell_color_bit(Cell c, int leg) { return static_cast<int>((c >> (4 + leg)) & 1); }

std::uint16_t key_of_word(const ColorWord& w);
ColorWord word_of_key(std::uint16_t key);

Cell cell_tensor(Cell a, Cell b);
Cell cell_rotate(Cell a);   // first leg wraps to the end, colors unchanged
Cell cell_reflect(Cell a);  // left-right mirror

// contract a's last t legs against b's first t, innermost pair first:
// a leg (n1-1-s) joins b leg s, which requires opposite colors
struct CellGlue {
  Cell cell = 0;
  int loops = 0;
  bool ok = false;
};
CellGlue cell_glue(Cell a, Cell b, int t);
bool glue_colors_ok(std::uint16_t wa, std::uint16_t wb, int t);

// the minimal category's cells: noncrossing pairings joining ∘ to •
std::vector<Cell> matched_noncrossing_pairings(const ColorWord& w);

// cells bucketed by word with O(1) membership; buckets keep insertion order
class CellTable {
 public:
  explicit CellTable(int bound);

  int bound() const { return bound_; }
  std::uint64_t size() const { return all_.size(); }
  bool insert(Cell c);
  bool contains(Cell c) const { return all_.count(c) != 0; }
  const std::vector<Cell>& bucket(std::uint16_t key) const { return buckets_[key]; }
  const std::vector<std::uint16_t>& nonempty_keys() const { return keys_; }
  std::vector<Cell> sorted_cells() const;
  bool operator==(const CellTable& other) const;

 private:
  int bound_;
  std::vector<std::vector<Cell>> buckets_;
  std::vector<std::uint16_t> keys_;
  std::unordered_set<Cell> all_;
};

// least fixpoint of the seeds under tensor, cyclic rotation, reflection and
// glue, discarding anything above the bound; max_cells 0 means unlimited
CellTable close_cells(const std::vector<Cell>& seeds, int bound, std::uint64_t max_cells = 0);

// one non-inserting sweep: true when no operation escapes the table
bool closure_sweep_adds_nothing(const CellTable& table);

}  // namespace partcat
