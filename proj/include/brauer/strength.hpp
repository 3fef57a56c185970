#pragma once

#include <climits>
#include <utility>
#include <vector>

#include "brauer/budget.hpp"
#include "brauer/poly.hpp"

namespace brauer {

inline constexpr int kInfiniteStrength = INT_MAX;

struct StrengthResult {
  enum class Kind { Exact, LowerBound };
  Kind kind = Kind::Exact;
  int value = 0;
  /// Pairs (g_i, h_i) with sum g_i h_i equal to the decomposed form.
  std::vector<std::pair<Form, Form>> witness;
  /// For tuples: coefficients of the minimising combination over the members.
  std::vector<Elem> combination;

  bool infinite() const { return value == kInfiniteStrength; }
  bool exact() const { return kind == Kind::Exact; }
};

/// Exact strength by breadth-first search over the number of products.
/// The zero form has strength 0 and linear forms strength infinity. When the
/// node budget runs out the result is a lower bound (one more than the last
/// fully searched level).
StrengthResult strength_exhaustive(const Form& f, const Budget& budget = {});

/// Minimum strength over nontrivial same-degree combinations; empty tuple
/// has strength infinity.
StrengthResult tuple_strength(const FormTuple& ft, const Budget& budget = {});

/// ceil(n/2) for a diagonal form with n nonzero terms. Throws NotDiagonal or
/// CharDividesDegree.
int diagonal_rank_bound(const Form& f);

struct CodimEstimate {
  int codim = 0;
  /// True when every partial derivative is linear and the value is a rank.
  bool exact_linear = false;
  /// Always false: the estimate never feeds certificates.
  bool certified = false;
  std::uint32_t sample_field_order = 0;
  long trials = 0;
  long hits = 0;
};

/// Estimates the codimension of the common zero locus of the partial
/// derivatives of f by sampling over an extension field.
CodimEstimate jacobian_codim_probe(const Form& f, long trials, std::uint64_t seed = 1);

/// Checks f == sum g_i h_i with every factor of degree strictly between 0 and deg f.
bool verify_decomposition(const Form& f, const std::vector<std::pair<Form, Form>>& pairs);

}  // namespace brauer
