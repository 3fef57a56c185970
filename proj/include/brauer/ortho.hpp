#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brauer/budget.hpp"
#include "brauer/poly.hpp"
#include "brauer/rng.hpp"

namespace brauer {

struct SolveOptions {
  /// Allow the Chevalley-Warning leaf: exhaustive search over the first
  /// sum(d_i)+1 coordinates, which always holds a nonzero common zero.
  bool use_leaf = true;
};

/// Nonzero common zero of the forms, built by induction on the multi-degree:
/// an orthogonal sequence for the top-degree forms on which the lower-degree
/// forms vanish, followed by a simultaneous diagonal solve. Throws
/// NoSolutionFound or BudgetExceeded; NoSolution when exhaustion proves there
/// is no nonzero zero.
Vec brauer_solve(const FieldPtr& field, int nvars, const std::vector<Form>& forms, const Budget& budget = {},
                 const SolveOptions& opts = {});
Vec brauer_solve(const FormTuple& ft, const Budget& budget = {}, const SolveOptions& opts = {});

/// Coefficient forms of f(sum_k x_k S_k + u), u in span(comp), one per
/// exponent a of x with lo <= |a| < hi, written in the comp coordinates.
std::vector<Form> coefficient_forms(const Form& f, const Mat& S, const Mat& comp, int lo, int hi);

/// Symbolic check that f(v_1 + ... + v_n) = f(v_1) + ... + f(v_n) for v_k in
/// the k-th space.
bool is_orthogonal(const Form& f, const std::vector<Subspace>& spaces);

/// n linearly independent, pairwise f-orthogonal vectors, independent from
/// `avoid`. Throws BudgetExceeded / NoSolutionFound.
Mat orthogonal_sequence(const Form& f, int n, const Subspace& avoid, const Budget& budget = {},
                        const SolveOptions& opts = {});

/// A vector v spanning a line L with: L + F direct; L f_j-orthogonal to F for
/// j >= i; f_j(v) = 0 for j > i; f_i(v) != 0. Indices are 0-based.
Vec orth_line(const FormTuple& ft, std::size_t i, const Subspace& F, const Budget& budget, Rng& rng);

/// Three-dimensional E with basis (x, y, z) on which a form equals
/// x*y^(d-1) + a*y^d + b*z^d, b != 0.
struct GoodFormWitness {
  Mat basis;  // x, y, z directions, in ambient coordinates
  Elem a;
  Elem b;
  int degree = 0;
};

/// Good specialisation of a diagonal form (diagonal in the standard
/// coordinates). Needs p not dividing d (CharTooSmall otherwise).
GoodFormWitness good_from_diagonal(const Form& f, const Budget& budget, Rng& rng);

enum class AtomicCase { ZeroCoefficient, EZero, EFull, CharNotDividingE, CharNotDividingDMinusE, CharDividingD };
std::string to_string(AtomicCase c);

struct AtomicPair {
  Vec x, y;
  AtomicCase dispatched;
};

/// x, y with sum a_j x_j^e y_j^(d-e) = 0 and sum b_j x_j y_j^(d-1) != 0.
/// e in {0..d} minus {1}; every b_j nonzero. When the case construction runs
/// out (small fields), falls back to a direct search over (x, y).
AtomicPair atomic_pair(const FieldPtr& field, const Vec& a, const Vec& b, int e, int d, const Budget& budget, Rng& rng);

/// Which case the dispatcher picks for (p, d, e) with no zero coefficient.
AtomicCase atomic_case(std::uint32_t p, int d, int e);

struct Plane {
  Vec v, w;
};

struct AdaptedPlane {
  Vec v, w;            // ambient vectors
  Vec alpha, beta;     // v = sum alpha_j v_j, w = sum beta_j w_j over the parent planes
};

/// Adapted subplane M of the sum of the given f-orthogonal planes with
/// c_e(forms[0]|M) = [e == 1] and forms[k]|M = 0 for k >= 1. All forms share
/// one degree. Throws HypothesisViolated / BudgetExceeded.
AdaptedPlane adapted_subplane(const std::vector<Plane>& planes, const std::vector<Form>& forms, const Budget& budget,
                              Rng& rng);

/// Plane M = span(v, w) with: M + F direct; F and M f_j-orthogonal for
/// j >= i; f_j|M = 0 when d_j < d_i; c_1(f_j|M) = 0 for j > i with d_j = d_i;
/// c_1(f_i|M) != 0.
Plane orth_plane(const FormTuple& ft, std::size_t i, const Subspace& F, const Budget& budget, Rng& rng);

enum class Route { Auto, Diagonal, Planes };

/// Three-dimensional E with: E + F direct; E and F f_j-orthogonal for j >= i;
/// f_j|E = 0 for j > i; f_i|E good. Route A (diagonal) needs p > d_i.
GoodFormWitness good_subspace(const FormTuple& ft, std::size_t i, const Subspace& F, const Budget& budget, Rng& rng,
                              Route route = Route::Auto);

/// Names of the good-subspace conditions that fail (empty when all hold).
std::vector<std::string> check_good_subspace(const FormTuple& ft, std::size_t i, const Subspace& F,
                                             const GoodFormWitness& w);

/// Does g (3 variables) equal x*y^(d-1) + a*y^d + b*z^d exactly, b != 0?
bool is_good_template(const Form& g, Elem a, Elem b);

/// The form x*y^(d-1) + a*y^d + b*z^d placed on variables (ix, iy, iz).
Form good_template(const FieldPtr& field, int nvars, int d, int ix, int iy, int iz, Elem a, Elem b);

}  // namespace brauer
