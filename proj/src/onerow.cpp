#include "partcat/onerow.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "partcat/errors.hpp"

namespace partcat {

namespace {

constexpr int kMaxNodes = 2 * kMaxCellLegs;

struct Legs {
  int n = 0;
  std::array<std::uint8_t, kMaxCellLegs> color{};
  std::array<std::uint8_t, kMaxNodes> label{};
};

Legs split_cell(Cell c) {
  Legs g;
  g.n = cell_length(c);
  for (int i = 0; i < g.n; ++i) {
    g.color[i] = static_cast<std::uint8_t>(cell_color_bit(c, i));
    g.label[i] = static_cast<std::uint8_t>(cell_label(c, i));
  }
  return g;
}

// labels may be any values < kMaxNodes here; packing renames them in
// first-occurrence order, which is the canonical form
Cell join_canonical(const Legs& g) {
  std::array<std::int8_t, kMaxNodes> remap;
  remap.fill(-1);
  Cell out = static_cast<Cell>(g.n);
  int next = 0;
  for (int i = 0; i < g.n; ++i) {
    out |= static_cast<Cell>(g.color[i]) << (4 + i);
    if (remap[g.label[i]] < 0) remap[g.label[i]] = static_cast<std::int8_t>(next++);
    out |= static_cast<Cell>(remap[g.label[i]]) << (16 + 4 * i);
  }
  return out;
}

int block_count_of(const Legs& g) {
  int b = 0;
  for (int i = 0; i < g.n; ++i) b = std::max(b, g.label[i] + 1);
  return b;
}

}  // namespace

Cell pack_cell(const Flattened& f) {
  const int n = static_cast<int>(f.word.size());
  if (n > kMaxCellLegs)
    throw OutOfBound("one-row cell has " + std::to_string(n) + " legs, max is " +
                     std::to_string(kMaxCellLegs));
  if (f.part.n != n) throw ArityMismatch("word length does not match partition size");
  Legs g;
  g.n = n;
  const std::vector<int> lab = f.part.labels();
  for (int i = 0; i < n; ++i) {
    g.color[i] = f.word[i] == Color::Black ? 1 : 0;
    g.label[i] = static_cast<std::uint8_t>(lab[i]);
  }
  return join_canonical(g);
}

Cell pack_cell(const Partition& p) { return pack_cell(flatten(p)); }

Flattened unpack_cell(Cell c) {
  const int n = cell_length(c);
  Flattened f;
  std::vector<int> lab(n);
  for (int i = 0; i < n; ++i) {
    f.word.push_back(cell_color_bit(c, i) ? Color::Black : Color::White);
    lab[i] = cell_label(c, i);
  }
  f.part = SetPartition::from_labels(lab);
  return f;
}

std::uint16_t key_of_word(const ColorWord& w) {
  const int n = static_cast<int>(w.size());
  if (n > kMaxCellLegs)
    throw OutOfBound("word has " + std::to_string(n) + " legs, max is " +
                     std::to_string(kMaxCellLegs));
  std::uint16_t key = static_cast<std::uint16_t>(n);
  for (int i = 0; i < n; ++i)
    if (w[i] == Color::Black) key |= static_cast<std::uint16_t>(1u << (4 + i));
  return key;
}

ColorWord word_of_key(std::uint16_t key) {
  const int n = key & 0xF;
  ColorWord w;
  for (int i = 0; i < n; ++i)
    w.push_back((key >> (4 + i)) & 1 ? Color::Black : Color::White);
  return w;
}

Cell cell_tensor(Cell a, Cell b) {
  const Legs ga = split_cell(a);
  const Legs gb = split_cell(b);
  if (ga.n + gb.n > kMaxCellLegs) throw OutOfBound("tensor result exceeds cell capacity");
  Legs r;
  r.n = ga.n + gb.n;
  const int shift = block_count_of(ga);
  for (int i = 0; i < ga.n; ++i) {
    r.color[i] = ga.color[i];
    r.label[i] = ga.label[i];
  }
  for (int i = 0; i < gb.n; ++i) {
    r.color[ga.n + i] = gb.color[i];
    r.label[ga.n + i] = static_cast<std::uint8_t>(gb.label[i] + shift);
  }
  return join_canonical(r);
}

Cell cell_rotate(Cell a) {
  Legs g = split_cell(a);
  if (g.n == 0) return a;
  Legs r;
  r.n = g.n;
  for (int i = 0; i < g.n; ++i) {
    r.color[i] = g.color[(i + 1) % g.n];
    r.label[i] = g.label[(i + 1) % g.n];
  }
  return join_canonical(r);
}

Cell cell_reflect(Cell a) {
  Legs g = split_cell(a);
  Legs r;
  r.n = g.n;
  for (int i = 0; i < g.n; ++i) {
    r.color[i] = g.color[g.n - 1 - i];
    r.label[i] = g.label[g.n - 1 - i];
  }
  return join_canonical(r);
}

bool glue_colors_ok(std::uint16_t wa, std::uint16_t wb, int t) {
  const int na = wa & 0xF;
  const int nb = wb & 0xF;
  if (t < 0 || t > na || t > nb) return false;
  for (int s = 0; s < t; ++s) {
    const int ca = (wa >> (4 + na - 1 - s)) & 1;
    const int cb = (wb >> (4 + s)) & 1;
    if (ca == cb) return false;  // glued legs must carry opposite colors
  }
  return true;
}

CellGlue cell_glue(Cell a, Cell b, int t) {
  if (!glue_colors_ok(cell_word_key(a), cell_word_key(b), t)) return {};
  const Legs ga = split_cell(a);
  const Legs gb = split_cell(b);
  const int ba = block_count_of(ga);
  const int bb = block_count_of(gb);
  const int nodes = ba + bb;

  std::array<std::uint8_t, kMaxNodes> parent;
  for (int i = 0; i < nodes; ++i) parent[i] = static_cast<std::uint8_t>(i);
  auto find = [&parent](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (int s = 0; s < t; ++s) {
    const int ra = find(ga.label[ga.n - 1 - s]);
    const int rb = find(ba + gb.label[s]);
    if (ra != rb) parent[rb] = static_cast<std::uint8_t>(ra);
  }

  Legs r;
  r.n = ga.n - t + gb.n - t;
  int idx = 0;
  for (int i = 0; i < ga.n - t; ++i, ++idx) {
    r.color[idx] = ga.color[i];
    r.label[idx] = static_cast<std::uint8_t>(find(ga.label[i]));
  }
  for (int i = t; i < gb.n; ++i, ++idx) {
    r.color[idx] = gb.color[i];
    r.label[idx] = static_cast<std::uint8_t>(find(ba + gb.label[i]));
  }

  std::array<bool, kMaxNodes> open{};
  for (int i = 0; i < r.n; ++i) open[r.label[i]] = true;
  int loops = 0;
  for (int v = 0; v < nodes; ++v)
    if (find(v) == v && !open[v]) ++loops;

  return {join_canonical(r), loops, true};
}

namespace {

void matched_pairings_rec(const ColorWord& w, int lo, int hi,
                          std::vector<std::pair<int, int>>& picked,
                          std::vector<std::vector<std::pair<int, int>>>& out) {
  if (lo > hi) {
    out.push_back(picked);
    return;
  }
  for (int m = lo + 1; m <= hi; m += 2) {
    if (w[lo] == w[m]) continue;
    picked.emplace_back(lo, m);
    // the partner splits the interval, which keeps the pairing noncrossing
    std::vector<std::vector<std::pair<int, int>>> inner;
    matched_pairings_rec(w, lo + 1, m - 1, picked, inner);
    for (auto& half : inner) {
      std::vector<std::pair<int, int>> saved = picked;
      picked = std::move(half);
      matched_pairings_rec(w, m + 1, hi, picked, out);
      picked = std::move(saved);
    }
    picked.pop_back();
  }
}

}  // namespace

std::vector<Cell> matched_noncrossing_pairings(const ColorWord& w) {
  const int n = static_cast<int>(w.size());
  if (n > kMaxCellLegs) throw OutOfBound("word exceeds cell capacity");
  std::vector<Cell> cells;
  if (n % 2) return cells;
  std::vector<std::vector<std::pair<int, int>>> pairings;
  std::vector<std::pair<int, int>> picked;
  matched_pairings_rec(w, 0, n - 1, picked, pairings);
  for (const auto& pairing : pairings) {
    std::vector<std::vector<int>> blocks;
    for (auto [x, y] : pairing) blocks.push_back({x, y});
    cells.push_back(pack_cell(Flattened{w, SetPartition::from_blocks(n, blocks)}));
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

CellTable::CellTable(int bound) : bound_(bound), buckets_(1u << 16) {
  if (bound < 0 || bound > kMaxCellLegs)
    throw OutOfBound("bound must lie in [0, " + std::to_string(kMaxCellLegs) + "]");
  all_.reserve(1u << 12);
}

bool CellTable::insert(Cell c) {
  if (cell_length(c) > bound_) throw OutOfBound("cell exceeds the table bound");
  if (!all_.insert(c).second) return false;
  const std::uint16_t key = cell_word_key(c);
  if (buckets_[key].empty()) keys_.push_back(key);
  buckets_[key].push_back(c);
  return true;
}

std::vector<Cell> CellTable::sorted_cells() const {
  std::vector<Cell> out(all_.begin(), all_.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool CellTable::operator==(const CellTable& other) const {
  if (all_.size() != other.all_.size()) return false;
  for (Cell c : all_)
    if (!other.contains(c)) return false;
  return true;
}

CellTable close_cells(const std::vector<Cell>& seeds, int bound, std::uint64_t max_cells) {
  CellTable table(bound);
  std::vector<std::vector<std::uint32_t>> ids(1u << 16);
  std::deque<std::pair<Cell, std::uint32_t>> work;
  std::uint32_t next_id = 0;

  auto add = [&](Cell c) {
    if (cell_length(c) > bound) return;
    if (!table.insert(c)) return;
    if (max_cells && table.size() > max_cells)
      throw BudgetExceeded("closure exceeded " + std::to_string(max_cells) + " cells");
    ids[cell_word_key(c)].push_back(next_id);
    work.emplace_back(c, next_id);
    ++next_id;
  };

  for (Cell s : seeds) {
    if (cell_length(s) > bound)
      throw BoundTooSmall("generator has " + std::to_string(cell_length(s)) +
                          " legs, above the closure bound " + std::to_string(bound));
    add(s);
  }

  while (!work.empty()) {
    const auto [x, xid] = work.front();
    work.pop_front();
    const int nx = cell_length(x);
    const std::uint16_t kx = cell_word_key(x);
    if (nx > 0) {
      add(cell_rotate(x));
      add(cell_reflect(x));
    }
    // pair x against everything inserted no later than itself; later cells
    // will see x when their own turn comes, so each pair runs exactly once
    const auto& keylist = table.nonempty_keys();
    for (std::size_t ki = 0; ki < keylist.size(); ++ki) {
      const std::uint16_t ky = keylist[ki];
      const int ny = ky & 0xF;
      const auto& bid = ids[ky];
      const std::size_t cnt =
          static_cast<std::size_t>(std::upper_bound(bid.begin(), bid.end(), xid) - bid.begin());
      if (cnt == 0) continue;
      if (nx + ny <= bound) {
        for (std::size_t i = 0; i < cnt; ++i) {
          const Cell y = table.bucket(ky)[i];
          add(cell_tensor(x, y));
          add(cell_tensor(y, x));
        }
      }
      const int tmin = std::max(1, (nx + ny - bound + 1) / 2);
      const int tmax = std::min(nx, ny);
      for (int t = tmin; t <= tmax; ++t) {
        const bool xy = glue_colors_ok(kx, ky, t);
        const bool yx = glue_colors_ok(ky, kx, t);
        if (!xy && !yx) continue;
        for (std::size_t i = 0; i < cnt; ++i) {
          const Cell y = table.bucket(ky)[i];
          if (xy) add(cell_glue(x, y, t).cell);
          if (yx) add(cell_glue(y, x, t).cell);
        }
      }
    }
  }
  return table;
}

bool closure_sweep_adds_nothing(const CellTable& table) {
  const int bound = table.bound();
  auto inside = [&table, bound](Cell c) {
    return cell_length(c) > bound || table.contains(c);
  };
  const auto& keys = table.nonempty_keys();
  for (std::uint16_t kx : keys) {
    for (Cell x : table.bucket(kx)) {
      if (cell_length(x) > 0) {
        if (!inside(cell_rotate(x)) || !inside(cell_reflect(x))) return false;
      }
      const int nx = cell_length(x);
      for (std::uint16_t ky : keys) {
        const int ny = ky & 0xF;
        for (Cell y : table.bucket(ky)) {
          if (nx + ny <= bound && !inside(cell_tensor(x, y))) return false;
          for (int t = 1; t <= std::min(nx, ny); ++t) {
            if (!glue_colors_ok(kx, ky, t)) continue;
            if (!inside(cell_glue(x, y, t).cell)) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace partcat
