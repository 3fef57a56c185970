#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "brauer/field.hpp"
#include "brauer/linalg.hpp"

namespace brauer {

/// Dense exponent vector, one byte per variable.
using Exponents = std::vector<std::uint8_t>;
/// Canonical term order: lexicographically descending exponents (x1^d first).
using TermMap = std::map<Exponents, Elem, std::greater<Exponents>>;

/// Homogeneous polynomial over F_q. Degree 0 forms are constants.
class Form {
 public:
  Form() = default;
  Form(FieldPtr field, int nvars, int degree);

  static Form variable(FieldPtr field, int nvars, int i);
  static Form constant(FieldPtr field, int nvars, Elem c);
  static Form monomial(FieldPtr field, int nvars, const Exponents& e, Elem c);
  /// Linear form sum_i c_i x_i.
  static Form linear(FieldPtr field, std::span<const Elem> coeffs);

  const FieldPtr& field_ptr() const { return field_; }
  const FqField& field() const { return *field_; }
  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Elem coeff(const Exponents& e) const;
  /// Adds c to the coefficient of x^e, dropping it if it cancels.
  void add_term(const Exponents& e, Elem c);

  Elem eval(std::span<const Elem> x) const;
  /// Variables that occur in some term.
  std::vector<bool> occurring() const;

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator*(const Form& o) const;
  Form scaled(Elem c) const;

  bool operator==(const Form& o) const;

 private:
  FieldPtr field_;
  int nvars_ = 0;
  int degree_ = 0;
  TermMap terms_;
};

/// Non-increasing degree tuple ordered lexicographically (a proper prefix
/// is smaller).
class MultiDegree {
 public:
  MultiDegree() = default;
  /// Sorts into non-increasing order; every entry must be >= 1.
  explicit MultiDegree(std::vector<int> entries);

  const std::vector<int>& entries() const { return entries_; }
  std::size_t len() const { return entries_.size(); }
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const MultiDegree& a, const MultiDegree& b);
  friend bool operator==(const MultiDegree& a, const MultiDegree& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<int> entries_;
};

/// Ordered forms f_1..f_r sharing field and dimension, degrees non-increasing.
class FormTuple {
 public:
  FormTuple() = default;
  FormTuple(FieldPtr field, int nvars, std::vector<Form> forms);
  /// Stable-sorts by degree (descending) before construction.
  static FormTuple sorted(FieldPtr field, int nvars, std::vector<Form> forms);

  const FieldPtr& field_ptr() const { return field_; }
  const FqField& field() const { return *field_; }
  int nvars() const { return nvars_; }
  const std::vector<Form>& forms() const { return forms_; }
  std::size_t size() const { return forms_.size(); }
  const Form& operator[](std::size_t i) const { return forms_[i]; }
  /// Degrees of the tuple; zero-degree members are not allowed here.
  MultiDegree multidegree() const;

 private:
  FieldPtr field_;
  int nvars_ = 0;
  std::vector<Form> forms_;
};

/// Linearly independent vectors spanning a subspace of F_q^ambient.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldPtr field, int ambient, Mat basis);
  static Subspace zero(FieldPtr field, int ambient) { return Subspace(std::move(field), ambient, {}); }
  static Subspace full(FieldPtr field, int ambient);

  const FieldPtr& field_ptr() const { return field_; }
  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const Mat& basis() const { return basis_; }
  /// Throws DependentVectors unless the sum is direct.
  Subspace direct_sum(const Subspace& o) const;
  /// sum_i coords_i * basis_i.
  Vec embed(std::span<const Elem> coords) const;

 private:
  FieldPtr field_;
  int ambient_ = 0;
  Mat basis_;
};

/// g(t) = f(sum_j t_j basis_j); basis vectors have length f.nvars().
Form pullback(const Form& f, const Mat& basis);
/// f|_W in dim(W) variables.
Form restrict(const Form& f, const Subspace& W);

/// c_0..c_d with f(x v + y w) = sum_e c_e x^e y^(d-e).
Vec plane_coeffs(const Form& f, std::span<const Elem> v, std::span<const Elem> w);

/// Piece of f(v + w) of degree a in v, as a form on V + V (v coordinates first).
Form bidegree_piece(const Form& f, int a);
/// Bi-degree (1, d-1) piece of f(v + w).
Form d_operator(const Form& f);
/// Bi-degree (2, d-2) piece of f(v + w).
Form d2_operator(const Form& f);

/// Groups the terms of f by their exponents in the first k variables; each
/// value is a form in the remaining nvars - k variables.
std::map<Exponents, Form, std::greater<Exponents>> split_leading(const Form& f, int k);

/// Rewrites f in a larger variable set: variable i becomes target[i].
Form relabel(const Form& f, int nvars, std::span<const int> target);

/// Formal partial derivative.
Form partial(const Form& f, int i);

/// The same form with coefficients mapped into a larger field.
Form base_change(const Form& f, const FieldEmbedding& emb);

/// All exponent vectors of total degree d in n variables, in canonical order.
std::vector<Exponents> monomials(int nvars, int degree);

/// Terms of minimal weight sum_i w_i e_i.
Form initial_form(const Form& f, std::span<const int> weights);

/// Exponent vector of x_i^power.
Exponents unit_exponents(int nvars, int i, int power);

// Text formats ---------------------------------------------------------------

/// `poly <nvars> <degree>: <coeff> <e1,...,en>; ...`
std::string format_form(const Form& f);
/// Human-readable infix, e.g. `x1^2+2*x1*x2`.
std::string format_infix(const Form& f);
/// Parses the canonical format or infix (`x1^2 + 2*x2*x3`). For infix input
/// the variable count is the largest index used unless nvars is given.
Form parse_form(const FieldPtr& field, std::string_view text, int nvars = -1);

/// A field header plus forms, one per line; see FORMAT.md.
struct System {
  FieldPtr field;
  int nvars = 0;
  std::vector<Form> forms;
};

System parse_system(std::string_view text);
std::string format_system(const System& sys);

}  // namespace brauer
