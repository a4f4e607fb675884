#include "partcat/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace partcat {

std::vector<ColorWord> all_color_words(size_t n) {
  std::vector<ColorWord> words;
  words.reserve(size_t{1} << n);
  for (size_t bits = 0; bits < (size_t{1} << n); ++bits) {
    ColorWord w(n);
    for (size_t i = 0; i < n; ++i)
      w[i] = (bits >> (n - 1 - i)) & 1 ? Color::Black : Color::White;
    words.push_back(std::move(w));
  }
  return words;
}

SetPartition SetPartition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
  std::vector<char> seen(n, 0);
  for (auto& b : blocks) {
    if (b.empty()) throw Error("empty block");
    std::sort(b.begin(), b.end());
    for (int x : b) {
      if (x < 0 || x >= n) throw Error("leg out of range");
      if (seen[x]) throw Error("leg in two blocks");
      seen[x] = 1;
    }
  }
  for (int x = 0; x < n; ++x)
    if (!seen[x]) throw Error("leg missing from blocks");
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  SetPartition p;
  p.n = n;
  p.blocks = std::move(blocks);
  return p;
}

SetPartition SetPartition::from_labels(const std::vector<int>& label_of) {
  std::map<int, std::vector<int>> by_label;
  for (size_t i = 0; i < label_of.size(); ++i)
    by_label[label_of[i]].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_label.size());
  for (auto& [lab, legs] : by_label) blocks.push_back(std::move(legs));
  return from_blocks(static_cast<int>(label_of.size()), std::move(blocks));
}

SetPartition SetPartition::singletons(int n) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(n);
  for (int i = 0; i < n; ++i) blocks.push_back({i});
  SetPartition p;
  p.n = n;
  p.blocks = std::move(blocks);
  return p;
}

std::vector<int> SetPartition::labels() const {
  std::vector<int> lab(n, -1);
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int x : blocks[b]) lab[x] = static_cast<int>(b);
  return lab;
}

int SetPartition::block_of(int point) const {
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int x : blocks[b])
      if (x == point) return static_cast<int>(b);
  throw IndexOutOfRange("point outside partition");
}

bool SetPartition::operator<(const SetPartition& o) const {
  if (n != o.n) return n < o.n;
  return labels() < o.labels();
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

SetPartition join(const SetPartition& a, const SetPartition& b) {
  if (a.n != b.n) throw ArityMismatch("join of partitions on different ground sets");
  UnionFind uf(a.n);
  for (const auto& blk : a.blocks)
    for (size_t i = 1; i < blk.size(); ++i) uf.unite(blk[0], blk[i]);
  for (const auto& blk : b.blocks)
    for (size_t i = 1; i < blk.size(); ++i) uf.unite(blk[0], blk[i]);
  std::vector<int> lab(a.n);
  for (int x = 0; x < a.n; ++x) lab[x] = uf.find(x);
  return SetPartition::from_labels(lab);
}

bool coarsens(const SetPartition& coarse, const SetPartition& fine) {
  if (coarse.n != fine.n) return false;
  std::vector<int> lab = coarse.labels();
  for (const auto& blk : fine.blocks)
    for (size_t i = 1; i < blk.size(); ++i)
      if (lab[blk[i]] != lab[blk[0]]) return false;
  return true;
}

std::vector<SetPartition> coarsenings(const SetPartition& p) {
  int m = p.block_count();
  std::vector<SetPartition> result;
  for (const SetPartition& grouping : all_set_partitions(m)) {
    std::vector<int> lab(p.n);
    std::vector<int> group_of = grouping.labels();
    for (int b = 0; b < m; ++b)
      for (int x : p.blocks[b]) lab[x] = group_of[b];
    result.push_back(SetPartition::from_labels(lab));
  }
  std::sort(result.begin(), result.end());
  return result;
}

SetPartition kernel(const std::vector<int>& upper, const std::vector<int>& lower) {
  std::vector<int> values = upper;
  values.insert(values.end(), lower.begin(), lower.end());
  return SetPartition::from_labels(values);
}

bool even_blocks(const SetPartition& p) {
  for (const auto& b : p.blocks)
    if (b.size() % 2) return false;
  return true;
}

bool is_pairing(const SetPartition& p) {
  for (const auto& b : p.blocks)
    if (b.size() != 2) return false;
  return true;
}

namespace {

// two blocks cross iff their merged leg sequence alternates at least A B A B
bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  int runs = 0, last = -1;
  while (i < a.size() || j < b.size()) {
    int side = (j == b.size() || (i < a.size() && a[i] < b[j])) ? 0 : 1;
    if (side == 0) ++i; else ++j;
    if (side != last) { ++runs; last = side; }
  }
  return runs >= 4;
}

}  // namespace

bool noncrossing(const SetPartition& p) {
  for (size_t x = 0; x < p.blocks.size(); ++x)
    for (size_t y = x + 1; y < p.blocks.size(); ++y)
      if (blocks_cross(p.blocks[x], p.blocks[y])) return false;
  return true;
}

int crossing_count(const SetPartition& p) {
  int c = 0;
  for (size_t x = 0; x < p.blocks.size(); ++x)
    for (size_t y = x + 1; y < p.blocks.size(); ++y)
      if (blocks_cross(p.blocks[x], p.blocks[y])) ++c;
  return c;
}

int signature(const SetPartition& p) {
  if (!even_blocks(p))
    throw NotEven("signature requires all blocks of even size");
  // Adjacent switches of legs in distinct blocks flip the inversion parity of
  // the block-label word, and noncrossing arrangements have even inversion
  // count, so the switch count equals this parity for every valid sequence.
  std::vector<int> lab = p.labels();
  int inv = 0;
  for (size_t i = 0; i < lab.size(); ++i)
    for (size_t j = i + 1; j < lab.size(); ++j)
      if (lab[i] > lab[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

namespace {

void rgs_rec(int n, int pos, int max_used, std::vector<int>& lab,
             std::vector<SetPartition>& out) {
  if (pos == n) {
    out.push_back(SetPartition::from_labels(lab));
    return;
  }
  for (int v = 0; v <= max_used + 1; ++v) {
    lab[pos] = v;
    rgs_rec(n, pos + 1, std::max(max_used, v), lab, out);
  }
}

void pairings_rec(int n, std::vector<int>& lab, int next_id,
                  std::vector<SetPartition>& out) {
  int first = -1;
  for (int i = 0; i < n; ++i)
    if (lab[i] < 0) { first = i; break; }
  if (first < 0) {
    out.push_back(SetPartition::from_labels(lab));
    return;
  }
  lab[first] = next_id;
  for (int j = first + 1; j < n; ++j) {
    if (lab[j] >= 0) continue;
    lab[j] = next_id;
    pairings_rec(n, lab, next_id + 1, out);
    lab[j] = -1;
  }
  lab[first] = -1;
}

}  // namespace

std::vector<SetPartition> all_set_partitions(int n) {
  std::vector<SetPartition> out;
  if (n == 0) {
    out.push_back(SetPartition{});
    return out;
  }
  std::vector<int> lab(n, 0);
  rgs_rec(n, 1, 0, lab, out);
  return out;
}

std::vector<SetPartition> all_pairings(int n) {
  std::vector<SetPartition> out;
  if (n % 2) return out;
  if (n == 0) {
    out.push_back(SetPartition{});
    return out;
  }
  std::vector<int> lab(n, -1);
  pairings_rec(n, lab, 0, out);
  return out;
}

Partition Partition::make(ColorWord upper, ColorWord lower,
                          std::vector<std::vector<int>> blocks) {
  Partition p;
  p.upper = std::move(upper);
  p.lower = std::move(lower);
  p.blocks = SetPartition::from_blocks(p.k() + p.l(), std::move(blocks));
  return p;
}

bool Partition::operator<(const Partition& o) const {
  if (upper != o.upper) return upper < o.upper;
  if (lower != o.lower) return lower < o.lower;
  return blocks < o.blocks;
}

Partition empty_partition() { return Partition{}; }

namespace {

// leg name u<i> or l<j>, 1-based, relative to row lengths k and l
int parse_leg(const std::string& tok, int k, int l, size_t pos) {
  if (tok.size() < 2 || (tok[0] != 'u' && tok[0] != 'l'))
    throw ParseError("expected leg name like u1 or l2", pos);
  int idx = 0;
  for (size_t i = 1; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9')
      throw ParseError("bad digit in leg name", pos + i);
    idx = idx * 10 + (tok[i] - '0');
  }
  if (idx < 1) throw ParseError("leg indices are 1-based", pos);
  if (tok[0] == 'u') {
    if (idx > k) throw ParseError("upper leg index exceeds row length", pos);
    return idx - 1;
  }
  if (idx > l) throw ParseError("lower leg index exceeds row length", pos);
  return k + idx - 1;
}

}  // namespace

Partition parse_partition(const std::string& text) {
  size_t bar = text.find('|');
  if (bar == std::string::npos)
    throw ParseError("partition literal needs a '|' between the rows", 0);
  size_t semi = text.find(';', bar);
  std::string upper_s = text.substr(0, bar);
  std::string lower_s = text.substr(bar + 1, (semi == std::string::npos ? text.size() : semi) - bar - 1);
  ColorWord upper = parse_color_word(upper_s, 0);
  ColorWord lower = parse_color_word(lower_s, bar + 1);
  int k = static_cast<int>(upper.size()), l = static_cast<int>(lower.size());

  std::vector<std::vector<int>> blocks;
  size_t cursor = semi;
  while (cursor != std::string::npos) {
    size_t next = text.find(';', cursor + 1);
    std::string body = text.substr(cursor + 1, (next == std::string::npos ? text.size() : next) - cursor - 1);
    std::vector<int> block;
    size_t at = 0;
    while (at < body.size()) {
      size_t sp = body.find(' ', at);
      std::string tok = body.substr(at, (sp == std::string::npos ? body.size() : sp) - at);
      if (tok.empty()) throw ParseError("empty leg name", cursor + 1 + at);
      block.push_back(parse_leg(tok, k, l, cursor + 1 + at));
      at = (sp == std::string::npos) ? body.size() : sp + 1;
    }
    if (block.empty()) throw ParseError("empty block", cursor + 1);
    blocks.push_back(std::move(block));
    cursor = next;
  }
  try {
    return Partition::make(std::move(upper), std::move(lower), std::move(blocks));
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string format_partition(const Partition& p) {
  std::string s = format_color_word(p.upper);
  s += '|';
  s += format_color_word(p.lower);
  for (const auto& blk : p.blocks.blocks) {
    s += ';';
    for (size_t i = 0; i < blk.size(); ++i) {
      if (i) s += ' ';
      if (blk[i] < p.k())
        s += "u" + std::to_string(blk[i] + 1);
      else
        s += "l" + std::to_string(blk[i] - p.k() + 1);
    }
  }
  return s;
}

}  // namespace partcat
