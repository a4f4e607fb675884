#include "partcat/sphere_span.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "partcat/diagram_ops.hpp"
#include "partcat/errors.hpp"
#include "partcat/partition.hpp"
#include "json.hpp"

namespace partcat {

namespace {

void add_term(SpherePoly& p, const std::string& m, const Rational& c) {
  auto it = p.find(m);
  if (it == p.end()) {
    if (c != 0) p.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) p.erase(it);
}

// row -= c * pivot; the multiplier is taken by value because it usually
// aliases an entry of row that the loop erases
void axpy(SpherePoly& row, Rational c, const SpherePoly& pivot) {
  for (const auto& [m, v] : pivot) add_term(row, m, -c * v);
}

std::string leading_monomial(const SpherePoly& p) {
  const std::string* best = nullptr;
  for (const auto& [m, v] : p) {
    if (best == nullptr || graded_lex_less(*best, m)) best = &m;
  }
  return *best;
}

std::size_t max_length(const SpherePoly& p) {
  std::size_t n = 0;
  for (const auto& [m, v] : p) n = std::max(n, m.size());
  return n;
}

std::string monomial_text(const std::string& m) {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i > 0) out += ' ';
    int code = m[i] - 'a';
    out += 'x';
    out += std::to_string(code / 2 + 1);
    if (code & 1) out += '*';
  }
  return out;
}

// odometer over assignments of sphere indices to the distinct block labels
bool next_assignment(std::vector<int>& digits, int N) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < N) return true;
    digits[i] = 0;
  }
  return false;
}

std::string word_monomial(const std::vector<int>& blocks, const std::vector<int>& exps,
                          const std::vector<int>& assign) {
  std::string m;
  m.reserve(blocks.size());
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    m += sphere_letter(assign[blocks[t]], exps[t] < 0);
  }
  return m;
}

int block_count(const SphereRelation& r) {
  int b = 0;
  for (int x : r.upper_blocks) b = std::max(b, x + 1);
  for (int x : r.lower_blocks) b = std::max(b, x + 1);
  return b;
}

ColorWord colors_from_exponents(const std::vector<int>& exps) {
  ColorWord w;
  w.reserve(exps.size());
  for (int e : exps) w.push_back(e > 0 ? Color::White : Color::Black);
  return w;
}

std::vector<int> assigned_values(const std::vector<int>& blocks, const std::vector<int>& assign) {
  std::vector<int> v(blocks.size());
  for (std::size_t t = 0; t < blocks.size(); ++t) v[t] = assign[blocks[t]];
  return v;
}

// signature of the kernel cut out by one assignment, matching the values the
// twisted realization puts into its entries
int instance_sign(const SphereRelation& r, const std::vector<int>& assign) {
  Partition shaped;
  shaped.upper = colors_from_exponents(r.upper_exponents);
  shaped.lower = colors_from_exponents(r.lower_exponents);
  shaped.blocks = kernel(assigned_values(r.upper_blocks, assign),
                         assigned_values(r.lower_blocks, assign));
  return signature(shaped);
}

}  // namespace

std::string sphere_letter(int var, bool star) {
  if (var < 0 || var >= 13) throw IndexOutOfRange("sphere_letter: variable out of range");
  return std::string(1, static_cast<char>('a' + 2 * var + (star ? 1 : 0)));
}

bool graded_lex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

SpherePoly sphere_poly_mul(const SpherePoly& a, const SpherePoly& b) {
  SpherePoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) add_term(out, ma + mb, ca * cb);
  }
  return out;
}

SpherePoly sphere_poly_adjoint(const SpherePoly& p) {
  SpherePoly out;
  for (const auto& [m, c] : p) {
    std::string rev(m.rbegin(), m.rend());
    for (char& ch : rev) ch = static_cast<char>('a' + ((ch - 'a') ^ 1));
    add_term(out, rev, c);
  }
  return out;
}

std::string sphere_poly_text(const SpherePoly& p) {
  if (p.empty()) return "0";
  std::vector<const std::string*> keys;
  keys.reserve(p.size());
  for (const auto& [m, c] : p) keys.push_back(&m);
  std::sort(keys.begin(), keys.end(),
            [](const std::string* a, const std::string* b) { return graded_lex_less(*b, *a); });
  std::ostringstream out;
  bool first = true;
  for (const std::string* m : keys) {
    Rational c = p.at(*m);
    bool neg = c < 0;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    Rational mag = neg ? Rational(-c) : c;
    if (mag != 1 || m->empty()) {
      out << rational_to_string(mag);
      if (!m->empty()) out << " ";
    }
    if (!m->empty()) out << monomial_text(*m);
  }
  return out.str();
}

BoundedSpan::BoundedSpan(int N, int degree) : N_(N), degree_(degree) {
  if (N < 1 || N > 13) throw IndexOutOfRange("BoundedSpan: dimension out of range");
  if (degree < 0) throw IndexOutOfRange("BoundedSpan: negative degree");
}

void BoundedSpan::add_generator(const SpherePoly& g) {
  if (static_cast<int>(max_length(g)) > degree_) return;  // cannot meet the cap
  insert_row(g);
}

void BoundedSpan::insert_row(SpherePoly row) {
  while (!row.empty()) {
    std::string lead = leading_monomial(row);
    auto it = pivots_.find(lead);
    if (it == pivots_.end()) {
      Rational c = row.at(lead);
      for (auto& [m, v] : row) v /= c;
      bool expandable = static_cast<int>(max_length(row)) < degree_;
      auto ins = pivots_.emplace(std::move(lead), std::move(row));
      if (expandable) worklist_.push_back(ins.first->first);
      return;
    }
    axpy(row, row.at(lead), it->second);
  }
}

void BoundedSpan::saturate() const {
  while (!worklist_.empty()) {
    std::string key = worklist_.front();
    worklist_.pop_front();
    SpherePoly row = pivots_.at(key);
    for (int v = 0; v < N_; ++v) {
      for (int star = 0; star < 2; ++star) {
        std::string letter = sphere_letter(v, star != 0);
        SpherePoly left, right;
        for (const auto& [m, c] : row) {
          left.emplace(letter + m, c);
          right.emplace(m + letter, c);
        }
        const_cast<BoundedSpan*>(this)->insert_row(std::move(left));
        const_cast<BoundedSpan*>(this)->insert_row(std::move(right));
      }
    }
  }
}

bool BoundedSpan::contains(const SpherePoly& p) const {
  saturate();
  SpherePoly row = p;
  while (!row.empty()) {
    std::string lead = leading_monomial(row);
    auto it = pivots_.find(lead);
    if (it == pivots_.end()) return false;
    axpy(row, row.at(lead), it->second);
  }
  return true;
}

std::size_t BoundedSpan::rank() const {
  saturate();
  return pivots_.size();
}

SpherePoly one_row_poly(const SphereRelation& r, int N, bool twisted) {
  SpherePoly p;
  int b = block_count(r);
  std::vector<int> assign(b, 0);
  do {
    Rational c = twisted ? Rational(instance_sign(r, assign)) : Rational(1);
    add_term(p, word_monomial(r.lower_blocks, r.lower_exponents, assign), c);
  } while (next_assignment(assign, N));
  add_term(p, std::string(), -1);
  return p;
}

std::vector<SpherePoly> two_row_instance_polys(const SphereRelation& r, int N, bool twisted) {
  std::vector<SpherePoly> out;
  int b = block_count(r);
  std::vector<int> assign(b, 0);
  do {
    SpherePoly p;
    Rational c = twisted ? Rational(instance_sign(r, assign)) : Rational(1);
    add_term(p, word_monomial(r.upper_blocks, r.upper_exponents, assign), c);
    add_term(p, word_monomial(r.lower_blocks, r.lower_exponents, assign), -1);
    out.push_back(std::move(p));
  } while (next_assignment(assign, N));
  return out;
}

SpherePoly two_row_certificate_poly(const SphereRelation& r, int N, bool twisted) {
  SpherePoly total;
  for (const SpherePoly& inst : two_row_instance_polys(r, N, twisted)) {
    for (const auto& [m, c] : sphere_poly_mul(inst, sphere_poly_adjoint(inst))) {
      add_term(total, m, c);
    }
  }
  return total;
}

std::vector<SpherePoly> sphere_unit_polys(int N) {
  SpherePoly plain, starred;
  for (int v = 0; v < N; ++v) {
    add_term(plain, sphere_letter(v, false) + sphere_letter(v, true), 1);
    add_term(starred, sphere_letter(v, true) + sphere_letter(v, false), 1);
  }
  add_term(plain, std::string(), -1);
  add_term(starred, std::string(), -1);
  return {plain, starred};
}

SphereEquivalenceReport check_sphere_equivalence(const CategorySnapshot& D, int N, int degree,
                                                 bool twisted) {
  SphereRelationSet one = sphere_relations(D, N, degree, twisted);
  SphereRelationSet two = sphere_relations_two_row(D, N, degree, twisted);

  SphereEquivalenceReport rep;
  rep.N = N;
  rep.degree = degree;
  rep.twisted = twisted;
  rep.source = D.provenance();

  BoundedSpan span_one(N, degree);
  BoundedSpan span_two(N, degree);
  for (const SpherePoly& u : sphere_unit_polys(N)) {
    span_one.add_generator(u);
    span_two.add_generator(u);
  }
  for (const SphereRelation& r : one.relations) span_one.add_generator(one_row_poly(r, N, twisted));
  for (const SphereRelation& r : two.relations) {
    for (const SpherePoly& inst : two_row_instance_polys(r, N, twisted))
      span_two.add_generator(inst);
  }

  for (const SphereRelation& r : one.relations) {
    ++rep.one_row_relations;
    if (span_two.contains(one_row_poly(r, N, twisted))) {
      ++rep.one_row_in_span;
    } else {
      rep.failures.push_back("one-row not derivable: " + r.partition);
    }
  }

  for (const SphereRelation& r : two.relations) {
    ++rep.two_row_schemas;
    bool direct = true;
    for (const SpherePoly& inst : two_row_instance_polys(r, N, twisted)) {
      if (!span_one.contains(inst)) {
        direct = false;
        break;
      }
    }
    if (direct) {
      ++rep.two_row_direct;
    } else if (span_one.contains(two_row_certificate_poly(r, N, twisted))) {
      ++rep.two_row_certified;
      rep.certified_partitions.push_back(r.partition);
    } else {
      rep.failures.push_back("two-row not derivable: " + r.partition);
    }
  }

  rep.one_row_rank = span_one.rank();
  rep.two_row_rank = span_two.rank();
  rep.equivalent = rep.one_row_in_span == rep.one_row_relations &&
                   rep.two_row_direct + rep.two_row_certified == rep.two_row_schemas;
  return rep;
}

std::string sphere_equivalence_to_json(const SphereEquivalenceReport& rep) {
  nlohmann::json j;
  j["kind"] = "sphere_equivalence";
  j["N"] = rep.N;
  j["degree"] = rep.degree;
  j["twisted"] = rep.twisted;
  j["source"] = rep.source;
  j["one_row_relations"] = rep.one_row_relations;
  j["one_row_in_span"] = rep.one_row_in_span;
  j["two_row_schemas"] = rep.two_row_schemas;
  j["two_row_direct"] = rep.two_row_direct;
  j["two_row_certified"] = rep.two_row_certified;
  j["one_row_rank"] = rep.one_row_rank;
  j["two_row_rank"] = rep.two_row_rank;
  j["certified_partitions"] = rep.certified_partitions;
  j["failures"] = rep.failures;
  j["equivalent"] = rep.equivalent;
  return j.dump(2);
}

}  // namespace partcat
