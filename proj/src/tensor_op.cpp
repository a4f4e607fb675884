#include "partcat/tensor_op.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "partcat/diagram_ops.hpp"
#include "partcat/errors.hpp"
#include "partcat/rational.hpp"

namespace partcat {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) throw BudgetExceeded("index space overflows");
    out *= base;
  }
  return out;
}

std::uint64_t SparseIntegerOperator::rows() const {
  return pow_u64(static_cast<std::uint64_t>(N), static_cast<int>(lower.size()));
}

std::uint64_t SparseIntegerOperator::cols() const {
  return pow_u64(static_cast<std::uint64_t>(N), static_cast<int>(upper.size()));
}

long long SparseIntegerOperator::at(std::uint64_t row, std::uint64_t col) const {
  const Entry probe{row, col, 0};
  auto it = std::lower_bound(entries.begin(), entries.end(), probe,
                             [](const Entry& a, const Entry& b) {
                               return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                             });
  if (it != entries.end() && it->row == row && it->col == col) return it->value;
  return 0;
}

std::uint64_t encode_tuple(const std::vector<int>& tuple, int N) {
  std::uint64_t idx = 0;
  std::uint64_t radix = 1;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 1 || tuple[i] > N)
      throw IndexOutOfRange("tuple entry " + std::to_string(tuple[i]) + " outside 1.." +
                            std::to_string(N));
    idx += static_cast<std::uint64_t>(tuple[i] - 1) * radix;
    radix *= static_cast<std::uint64_t>(N);
  }
  return idx;
}

std::vector<int> decode_tuple(std::uint64_t index, int N, int len) {
  std::vector<int> tuple(len);
  for (int i = 0; i < len; ++i) {
    tuple[i] = static_cast<int>(index % static_cast<std::uint64_t>(N)) + 1;
    index /= static_cast<std::uint64_t>(N);
  }
  if (index != 0) throw IndexOutOfRange("index exceeds the tuple space");
  return tuple;
}

namespace {

void sort_entries(std::vector<SparseIntegerOperator::Entry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseIntegerOperator::Entry& a, const SparseIntegerOperator::Entry& b) {
              return std::tie(a.row, a.col) < std::tie(b.row, b.col);
            });
}

// every nonzero entry corresponds to one assignment of values to blocks
template <typename ValueFn>
SparseIntegerOperator realize_by_blocks(const Partition& p, int N, std::uint64_t budget,
                                        bool twisted, ValueFn value_of) {
  if (N < 1) throw IndexOutOfRange("N must be at least 1");
  const int nblocks = p.blocks.block_count();
  const std::uint64_t nonzeros = pow_u64(static_cast<std::uint64_t>(N), nblocks);
  if (nonzeros > budget)
    throw BudgetExceeded("operator would hold " + std::to_string(nonzeros) +
                         " nonzeros, budget is " + std::to_string(budget));

  SparseIntegerOperator op;
  op.N = N;
  op.upper = p.upper;
  op.lower = p.lower;
  op.twisted = twisted;
  op.entries.reserve(nonzeros);

  const int k = p.k();
  const int l = p.l();
  const std::vector<int> labels = p.blocks.labels();
  std::vector<int> assign(nblocks, 1);
  std::vector<int> i_tuple(k), j_tuple(l);
  while (true) {
    for (int t = 0; t < k; ++t) i_tuple[t] = assign[labels[t]];
    for (int t = 0; t < l; ++t) j_tuple[t] = assign[labels[k + t]];
    const long long v = value_of(i_tuple, j_tuple);
    if (v != 0)
      op.entries.push_back({encode_tuple(j_tuple, N), encode_tuple(i_tuple, N), v});
    int pos = nblocks - 1;
    while (pos >= 0 && assign[pos] == N) assign[pos--] = 1;
    if (pos < 0) break;
    ++assign[pos];
  }
  sort_entries(op.entries);
  return op;
}

}  // namespace

SparseIntegerOperator realize(const Partition& p, int N, std::uint64_t budget) {
  return realize_by_blocks(p, N, budget, false,
                           [](const std::vector<int>&, const std::vector<int>&) { return 1LL; });
}

SparseIntegerOperator realize_twisted(const Partition& p, int N, std::uint64_t budget) {
  if (!classify(p).even)
    throw NotEven("twisted realization needs an even partition: " + format_partition(p));
  return realize_by_blocks(
      p, N, budget, true,
      [&p](const std::vector<int>& i_tuple, const std::vector<int>& j_tuple) {
        Partition shaped;
        shaped.upper = p.upper;
        shaped.lower = p.lower;
        shaped.blocks = kernel(i_tuple, j_tuple);
        return static_cast<long long>(signature(shaped));
      });
}

SparseIntegerOperator op_tensor(const SparseIntegerOperator& a, const SparseIntegerOperator& b,
                                std::uint64_t budget) {
  if (a.N != b.N) throw ArityMismatch("operators live over different N");
  const std::uint64_t count =
      static_cast<std::uint64_t>(a.entries.size()) * static_cast<std::uint64_t>(b.entries.size());
  if (count > budget) throw BudgetExceeded("tensor product exceeds the nonzero budget");

  SparseIntegerOperator op;
  op.N = a.N;
  op.upper = concat(a.upper, b.upper);
  op.lower = concat(a.lower, b.lower);
  op.twisted = a.twisted || b.twisted;
  op.entries.reserve(count);
  const std::uint64_t arows = a.rows();
  const std::uint64_t acols = a.cols();
  for (const auto& ea : a.entries)
    for (const auto& eb : b.entries)
      op.entries.push_back(
          {ea.row + arows * eb.row, ea.col + acols * eb.col, ea.value * eb.value});
  sort_entries(op.entries);
  return op;
}

SparseIntegerOperator op_compose(const SparseIntegerOperator& top,
                                 const SparseIntegerOperator& bottom, std::uint64_t budget) {
  if (top.N != bottom.N) throw ArityMismatch("operators live over different N");
  if (bottom.upper != top.lower)
    throw WordMismatch("bottom expects word " + format_color_word(bottom.upper) +
                       ", top produces " + format_color_word(top.lower));

  // index the top by output row, then join against the bottom's input column
  std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> top_rows;
  for (std::size_t i = 0; i < top.entries.size();) {
    std::size_t j = i;
    while (j < top.entries.size() && top.entries[j].row == top.entries[i].row) ++j;
    top_rows[top.entries[i].row] = {i, j};
    i = j;
  }

  std::map<std::pair<std::uint64_t, std::uint64_t>, long long> acc;
  std::uint64_t work = 0;
  for (const auto& eb : bottom.entries) {
    auto it = top_rows.find(eb.col);
    if (it == top_rows.end()) continue;
    for (std::size_t i = it->second.first; i < it->second.second; ++i) {
      if (++work > budget) throw BudgetExceeded("composition exceeds the work budget");
      acc[{eb.row, top.entries[i].col}] += eb.value * top.entries[i].value;
    }
  }

  SparseIntegerOperator op;
  op.N = top.N;
  op.upper = top.upper;
  op.lower = bottom.lower;
  op.twisted = top.twisted || bottom.twisted;
  for (const auto& [key, value] : acc)
    if (value != 0) op.entries.push_back({key.first, key.second, value});
  return op;
}

SparseIntegerOperator op_adjoint(const SparseIntegerOperator& a) {
  SparseIntegerOperator op;
  op.N = a.N;
  op.upper = flipped(a.lower);
  op.lower = flipped(a.upper);
  op.twisted = a.twisted;
  op.entries.reserve(a.entries.size());
  for (const auto& e : a.entries) op.entries.push_back({e.col, e.row, e.value});
  sort_entries(op.entries);
  return op;
}

SparseIntegerOperator op_scale(SparseIntegerOperator a, long long factor) {
  if (factor == 0) {
    a.entries.clear();
    return a;
  }
  for (auto& e : a.entries) e.value *= factor;
  return a;
}

CategoricalReport verify_categorical(const std::vector<Partition>& pool, int N,
                                     std::uint64_t budget) {
  CategoricalReport report;
  // cache only the pool members; derived partitions (tensor products,
  // composites, involutes) are realized on the fly so the footprint stays
  // linear in the pool even when the pair loop visits millions of products
  std::map<std::pair<Partition, bool>, SparseIntegerOperator> cache;
  for (const Partition& p : pool) {
    cache.emplace(std::make_pair(p, false), realize(p, N, budget));
    cache.emplace(std::make_pair(p, true), realize_twisted(p, N, budget));
  }
  auto fresh = [&](const Partition& q, bool tw) {
    return tw ? realize_twisted(q, N, budget) : realize(q, N, budget);
  };
  auto T = [&](const Partition& q, bool tw) -> const SparseIntegerOperator& {
    return cache.at(std::make_pair(q, tw));
  };
  const char* flavor_name[2] = {"plain", "twisted"};

  for (const Partition& p : pool) {
    for (bool tw : {false, true}) {
      ++report.checks;
      if (op_adjoint(T(p, tw)) != fresh(involute(p), tw))
        report.failures.push_back(std::string("adjoint identity failed (") +
                                  flavor_name[tw] + "): " + format_partition(p));
    }
  }
  for (const Partition& p : pool) {
    for (const Partition& q : pool) {
      const Partition prod = tensor(p, q);
      for (bool tw : {false, true}) {
        ++report.checks;
        if (op_tensor(T(p, tw), T(q, tw), budget) != fresh(prod, tw))
          report.failures.push_back(std::string("tensor identity failed (") + flavor_name[tw] +
                                    "): " + format_partition(p) + " with " +
                                    format_partition(q));
      }
      if (p.lower == q.upper) {
        const Composed comp = compose(p, q);
        const long long factor =
            static_cast<long long>(pow_u64(static_cast<std::uint64_t>(N), comp.loops));
        for (bool tw : {false, true}) {
          ++report.checks;
          if (op_compose(T(p, tw), T(q, tw), budget) != op_scale(fresh(comp.result, tw), factor))
            report.failures.push_back(std::string("composition identity failed (") +
                                      flavor_name[tw] + "): " + format_partition(p) + " then " +
                                      format_partition(q));
        }
      }
    }
  }
  return report;
}

namespace {

void require_same_word(const std::vector<Partition>& basis) {
  for (const Partition& p : basis) {
    if (p.k() != 0)
      throw WordMismatch("gram basis must be one-row partitions, got " + format_partition(p));
    if (p.lower != basis.front().lower)
      throw WordMismatch("gram basis mixes words " + format_color_word(basis.front().lower) +
                         " and " + format_color_word(p.lower));
  }
}

}  // namespace

std::vector<std::vector<long long>> gram_matrix(const std::vector<Partition>& basis, int N) {
  require_same_word(basis);
  const std::size_t m = basis.size();
  std::vector<std::vector<long long>> g(m, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const SetPartition meet = join(basis[i].blocks, basis[j].blocks);
      g[i][j] = static_cast<long long>(
          pow_u64(static_cast<std::uint64_t>(N), meet.block_count()));
    }
  return g;
}

std::vector<std::vector<long long>> gram_matrix_brute(const std::vector<Partition>& basis,
                                                      int N) {
  require_same_word(basis);
  const std::size_t m = basis.size();
  const int n = basis.empty() ? 0 : basis.front().l();
  const std::uint64_t total = pow_u64(static_cast<std::uint64_t>(N), n);
  std::vector<std::vector<char>> hits(m, std::vector<char>(total, 0));
  for (std::size_t b = 0; b < m; ++b) {
    const std::vector<int> labels = basis[b].blocks.labels();
    for (std::uint64_t t = 0; t < total; ++t) {
      const std::vector<int> tuple = decode_tuple(t, N, n);
      bool ok = true;
      for (int x = 0; x < n && ok; ++x)
        for (int y = x + 1; y < n && ok; ++y)
          if (labels[x] == labels[y] && tuple[x] != tuple[y]) ok = false;
      hits[b][t] = ok ? 1 : 0;
    }
  }
  std::vector<std::vector<long long>> g(m, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      long long sum = 0;
      for (std::uint64_t t = 0; t < total; ++t) sum += hits[i][t] && hits[j][t] ? 1 : 0;
      g[i][j] = sum;
    }
  return g;
}

int hom_rank(const CategorySnapshot& D, const ColorWord& upper, const ColorWord& lower, int N,
             std::uint64_t budget) {
  const std::vector<Partition> cell = D.cell(upper, lower);
  if (cell.empty()) return 0;
  const std::uint64_t dim =
      pow_u64(static_cast<std::uint64_t>(N), static_cast<int>(upper.size() + lower.size()));
  if (dim * cell.size() > budget)
    throw BudgetExceeded("rank computation needs " + std::to_string(dim * cell.size()) +
                         " coefficients, budget is " + std::to_string(budget));
  RationalMatrix rows;
  for (const Partition& p : cell) {
    const SparseIntegerOperator op = realize(p, N, budget);
    std::vector<Rational> vec(dim, 0);
    for (const auto& e : op.entries) vec[e.row * op.cols() + e.col] = e.value;
    rows.push_back(std::move(vec));
  }
  return static_cast<int>(rational_rank(rows));
}

std::string operator_to_text(const SparseIntegerOperator& op) {
  std::ostringstream out;
  out << "N=" << op.N << " upper=" << format_color_word(op.upper)
      << " lower=" << format_color_word(op.lower) << " twisted=" << (op.twisted ? 1 : 0)
      << " nonzeros=" << op.entries.size() << '\n';
  for (const auto& e : op.entries) out << e.row << ' ' << e.col << ' ' << e.value << '\n';
  return out.str();
}

std::string operator_to_json(const SparseIntegerOperator& op) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : op.entries) entries.push_back({e.row, e.col, e.value});
  nlohmann::json doc{{"kind", "operator"},
                     {"N", op.N},
                     {"upper", format_color_word(op.upper)},
                     {"lower", format_color_word(op.lower)},
                     {"twisted", op.twisted},
                     {"rows", op.rows()},
                     {"cols", op.cols()},
                     {"entries", entries}};
  return doc.dump(2);
}

}  // namespace partcat
