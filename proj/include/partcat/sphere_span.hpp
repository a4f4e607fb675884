#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "partcat/category.hpp"
#include "partcat/presentations.hpp"
#include "partcat/rational.hpp"

namespace partcat {

// Noncommutative *-polynomials in the sphere coordinates x_1..x_N. A monomial
// is a word over 2N letters encoded one byte per factor: 'a' + 2*v stands for
// x_{v+1} and 'a' + 2*v + 1 for its adjoint. Words compare graded-lex, shorter
// first. The zero polynomial is the empty map and coefficients are exact.
using SpherePoly = std::map<std::string, Rational>;

std::string sphere_letter(int var, bool star);  // IndexOutOfRange past 13 vars
bool graded_lex_less(const std::string& a, const std::string& b);

SpherePoly sphere_poly_mul(const SpherePoly& a, const SpherePoly& b);
SpherePoly sphere_poly_adjoint(const SpherePoly& p);
std::string sphere_poly_text(const SpherePoly& p);

// Row space of the products m1*g*m2 over all generators g and all monomials
// m1, m2 that keep every term within the degree cap. Rows are kept in sparse
// echelon form keyed by graded-lex leading monomials; closure under the
// one-letter multiplications is taken lazily before the first query.
class BoundedSpan {
 public:
  BoundedSpan(int N, int degree);  // IndexOutOfRange on a bad dimension

  void add_generator(const SpherePoly& g);
  bool contains(const SpherePoly& p) const;
  std::size_t rank() const;

  int N() const { return N_; }
  int degree() const { return degree_; }

 private:
  void insert_row(SpherePoly row);
  void saturate() const;

  int N_ = 0;
  int degree_ = 0;
  mutable std::map<std::string, SpherePoly> pivots_;
  mutable std::deque<std::string> worklist_;
};

// Generator polynomials read off the relation schemas. A one-row relation
// contributes the summed instance minus one; a two-row relation contributes
// one difference per assignment of sphere indices to its strands, and the
// certificate is the hermitian square summed over all assignments. The
// twisted flag weights every instance by the signature of its kernel, the
// same values the twisted tensor realization carries.
SpherePoly one_row_poly(const SphereRelation& r, int N, bool twisted = false);
std::vector<SpherePoly> two_row_instance_polys(const SphereRelation& r, int N,
                                               bool twisted = false);
SpherePoly two_row_certificate_poly(const SphereRelation& r, int N, bool twisted = false);
std::vector<SpherePoly> sphere_unit_polys(int N);

// Mutual derivability of the one-row and two-row relation sets at a fixed
// degree. Every one-row relation must land in the span generated by the
// two-row instances plus the unit sphere relations. Each two-row schema
// counts as direct when all of its instances land in the one-row span, and
// as certified when its summed hermitian square does, which forces every
// instance to vanish in any representation by positivity.
struct SphereEquivalenceReport {
  int N = 0;
  int degree = 0;
  bool twisted = false;
  std::string source;
  std::uint64_t one_row_relations = 0;
  std::uint64_t one_row_in_span = 0;
  std::uint64_t two_row_schemas = 0;
  std::uint64_t two_row_direct = 0;
  std::uint64_t two_row_certified = 0;
  std::size_t one_row_rank = 0;
  std::size_t two_row_rank = 0;
  std::vector<std::string> certified_partitions;
  std::vector<std::string> failures;
  bool equivalent = false;
};

SphereEquivalenceReport check_sphere_equivalence(const CategorySnapshot& D, int N, int degree,
                                                 bool twisted = false);
std::string sphere_equivalence_to_json(const SphereEquivalenceReport& rep);

}  // namespace partcat
