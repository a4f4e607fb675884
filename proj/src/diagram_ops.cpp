#include "partcat/diagram_ops.hpp"

#include <algorithm>
#include <numeric>

namespace partcat {

namespace {

// rebuild a partition from an old-leg -> new-leg map (-1 drops the leg)
Partition remap(const ColorWord& upper, const ColorWord& lower,
                const SetPartition& old_blocks, const std::vector<int>& leg_map,
                int new_legs) {
  std::vector<int> lab(new_legs, -1);
  std::vector<int> old_lab = old_blocks.labels();
  for (size_t t = 0; t < leg_map.size(); ++t)
    if (leg_map[t] >= 0) lab[leg_map[t]] = old_lab[t];
  Partition p;
  p.upper = upper;
  p.lower = lower;
  p.blocks = SetPartition::from_labels(lab);
  return p;
}

}  // namespace

Partition tensor(const Partition& p, const Partition& q) {
  int k1 = p.k(), l1 = p.l(), k2 = q.k(), l2 = q.l();
  ColorWord upper = concat(p.upper, q.upper);
  ColorWord lower = concat(p.lower, q.lower);
  std::vector<int> lab(k1 + k2 + l1 + l2, -1);
  std::vector<int> pl = p.blocks.labels(), ql = q.blocks.labels();
  int shift = p.blocks.block_count();
  for (int t = 0; t < k1; ++t) lab[t] = pl[t];
  for (int t = 0; t < l1; ++t) lab[k1 + k2 + t] = pl[k1 + t];
  for (int t = 0; t < k2; ++t) lab[k1 + t] = shift + ql[t];
  for (int t = 0; t < l2; ++t) lab[k1 + k2 + l1 + t] = shift + ql[k2 + t];
  Partition r;
  r.upper = std::move(upper);
  r.lower = std::move(lower);
  r.blocks = SetPartition::from_labels(lab);
  return r;
}

Composed compose(const Partition& top, const Partition& bottom) {
  if (top.lower != bottom.upper)
    throw WordMismatch("middle colored words differ in composition");
  int k = top.k(), m = top.l(), l2 = bottom.l();
  // nodes: top legs, then bottom legs
  int total = top.legs() + bottom.legs();
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (const auto& blk : top.blocks.blocks)
    for (size_t i = 1; i < blk.size(); ++i) unite(blk[0], blk[i]);
  int off = top.legs();
  for (const auto& blk : bottom.blocks.blocks)
    for (size_t i = 1; i < blk.size(); ++i) unite(off + blk[0], off + blk[i]);
  for (int t = 0; t < m; ++t) unite(k + t, off + t);

  // outer legs: top's upper row and bottom's lower row
  std::vector<int> lab(k + l2);
  std::vector<char> touches_outer(total, 0);
  for (int t = 0; t < k; ++t) {
    lab[t] = find(t);
    touches_outer[lab[t]] = 1;
  }
  for (int t = 0; t < l2; ++t) {
    lab[k + t] = find(off + m + t);
    touches_outer[lab[k + t]] = 1;
  }
  // closed loops: middle components reaching no outer leg
  int loops = 0;
  for (int t = 0; t < m; ++t) {
    int r = find(k + t);
    if (!touches_outer[r]) {
      ++loops;
      touches_outer[r] = 1;  // count each component once
    }
  }
  Composed c;
  c.result.upper = top.upper;
  c.result.lower = bottom.lower;
  c.result.blocks = SetPartition::from_labels(lab);
  c.loops = loops;
  return c;
}

Partition involute(const Partition& p) {
  int k = p.k(), l = p.l();
  std::vector<int> leg_map(k + l);
  for (int t = 0; t < k; ++t) leg_map[t] = l + t;
  for (int t = 0; t < l; ++t) leg_map[k + t] = t;
  return remap(flipped(p.lower), flipped(p.upper), p.blocks, leg_map, k + l);
}

Partition rotate(const Partition& p, RotateStep step) {
  int k = p.k(), l = p.l();
  std::vector<int> leg_map(k + l);
  ColorWord upper = p.upper, lower = p.lower;
  switch (step) {
    case RotateStep::FirstUpperDown: {
      if (k == 0) throw EmptyRow("no upper leg to rotate down");
      Color c = flip(upper.front());
      upper.erase(upper.begin());
      lower.insert(lower.begin(), c);
      leg_map[0] = k - 1;
      for (int t = 1; t < k; ++t) leg_map[t] = t - 1;
      for (int t = 0; t < l; ++t) leg_map[k + t] = k + t;
      break;
    }
    case RotateStep::LastUpperDown: {
      if (k == 0) throw EmptyRow("no upper leg to rotate down");
      Color c = flip(upper.back());
      upper.pop_back();
      lower.push_back(c);
      leg_map[k - 1] = k - 1 + l;
      for (int t = 0; t < k - 1; ++t) leg_map[t] = t;
      for (int t = 0; t < l; ++t) leg_map[k + t] = k - 1 + t;
      break;
    }
    case RotateStep::FirstLowerUp: {
      if (l == 0) throw EmptyRow("no lower leg to rotate up");
      Color c = flip(lower.front());
      lower.erase(lower.begin());
      upper.insert(upper.begin(), c);
      leg_map[k] = 0;
      for (int t = 0; t < k; ++t) leg_map[t] = 1 + t;
      for (int t = 1; t < l; ++t) leg_map[k + t] = k + t;
      break;
    }
    case RotateStep::LastLowerUp: {
      if (l == 0) throw EmptyRow("no lower leg to rotate up");
      Color c = flip(lower.back());
      lower.pop_back();
      upper.push_back(c);
      leg_map[k + l - 1] = k;
      for (int t = 0; t < k; ++t) leg_map[t] = t;
      for (int t = 0; t < l - 1; ++t) leg_map[k + t] = k + 1 + t;
      break;
    }
  }
  return remap(upper, lower, p.blocks, leg_map, k + l);
}

Flattened flatten(const Partition& p) {
  int k = p.k(), l = p.l();
  Flattened f;
  f.word = concat(p.lower, conjugate(p.upper));
  std::vector<int> lab(k + l);
  std::vector<int> old_lab = p.blocks.labels();
  for (int t = 0; t < l; ++t) lab[t] = old_lab[k + t];
  for (int t = 0; t < k; ++t) lab[l + t] = old_lab[k - 1 - t];
  f.part = SetPartition::from_labels(lab);
  return f;
}

Partition unflatten(const Flattened& f, int upper_legs) {
  int n = static_cast<int>(f.word.size());
  if (upper_legs < 0 || upper_legs > n)
    throw ArityMismatch("upper row length outside the flattened word");
  int k = upper_legs, l = n - k;
  ColorWord upper(k), lower(l);
  for (int j = 0; j < l; ++j) lower[j] = f.word[j];
  for (int i = 0; i < k; ++i) upper[i] = flip(f.word[l + (k - 1 - i)]);
  std::vector<int> lab(n);
  std::vector<int> old_lab = f.part.labels();
  for (int j = 0; j < l; ++j) lab[k + j] = old_lab[j];
  for (int t = 0; t < k; ++t) lab[k - 1 - t] = old_lab[l + t];
  Partition p;
  p.upper = std::move(upper);
  p.lower = std::move(lower);
  p.blocks = SetPartition::from_labels(lab);
  return p;
}

ClassFlags classify(const Flattened& f) {
  ClassFlags flags;
  flags.even = even_blocks(f.part);
  flags.pairing = is_pairing(f.part);
  flags.noncrossing = noncrossing(f.part);

  flags.matching = true;
  for (const auto& blk : f.part.blocks) {
    int bal = 0;
    for (int x : blk) bal += f.word[x] == Color::White ? 1 : -1;
    if (bal != 0) flags.matching = false;
  }

  int total = 0;
  for (Color c : f.word) total += c == Color::White ? 1 : -1;
  flags.balanced = total == 0;

  // discard colors, relabel positions alternately white/black
  flags.alt_balanced = true;
  for (const auto& blk : f.part.blocks) {
    int bal = 0;
    for (int x : blk) bal += x % 2 == 0 ? 1 : -1;
    if (bal != 0) flags.alt_balanced = false;
  }
  return flags;
}

ClassFlags classify(const Partition& p) { return classify(flatten(p)); }

bool satisfies(const ClassFlags& flags, unsigned predicates) {
  if ((predicates & PredEven) && !flags.even) return false;
  if ((predicates & PredPairing) && !flags.pairing) return false;
  if ((predicates & PredNoncrossing) && !flags.noncrossing) return false;
  if ((predicates & PredMatching) && !flags.matching) return false;
  if ((predicates & PredBalanced) && !flags.balanced) return false;
  if ((predicates & PredAltBalanced) && !flags.alt_balanced) return false;
  return true;
}

int delta(const Partition& p, const std::vector<int>& i, const std::vector<int>& j) {
  if (static_cast<int>(i.size()) != p.k() || static_cast<int>(j.size()) != p.l())
    throw ArityMismatch("index tuple lengths must match the rows");
  std::vector<int> values = i;
  values.insert(values.end(), j.begin(), j.end());
  for (const auto& blk : p.blocks.blocks)
    for (size_t t = 1; t < blk.size(); ++t)
      if (values[blk[t]] != values[blk[0]]) return 0;
  return 1;
}

int signature(const Partition& p) { return signature(flatten(p).part); }

std::vector<Partition> enumerate(const ColorWord& upper, const ColorWord& lower,
                                 unsigned predicates, int cap) {
  int n = static_cast<int>(upper.size() + lower.size());
  if (n > cap) throw CapExceeded("enumeration above the configured leg cap");
  std::vector<Partition> out;
  for (SetPartition& sp : all_set_partitions(n)) {
    Partition p;
    p.upper = upper;
    p.lower = lower;
    p.blocks = std::move(sp);
    if (satisfies(classify(p), predicates)) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace partcat
