#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brauer/budget.hpp"
#include "brauer/ortho.hpp"
#include "brauer/poly.hpp"
#include "brauer/rng.hpp"

namespace brauer {

/// A small subspace F together with a point of Z(f) in F where g is nonzero.
struct Section {
  Subspace F;
  Vec witness;  // ambient coordinates; zero when g is a nonzero constant
};

/// Throws NoWitness when no point of Z(f) with g != 0 is found within budget.
Section nonvanishing_section(const FormTuple& ft, const Form& g, const Budget& budget, Rng& rng);

/// W with coordinates (x_1, y_1, z_1, ..., x_r, y_r, z_r, w_1, ..., w_m) on
/// which f_i = x_i y_i^(d_i-1) + a_i y_i^(d_i) + b_i z_i^(d_i) + h_i, where h_i
/// only involves the coordinates after z_i.
struct NormalFormData {
  FormTuple ft;
  Mat basis;  // W basis in coordinate order, ambient vectors
  std::vector<int> degrees;
  Vec a, b;
  std::vector<Form> h;  // in the dim(W) coordinates of W
  Vec witness;          // W coordinates of a point of Z with g != 0

  int r() const { return static_cast<int>(degrees.size()); }
  int dim() const { return static_cast<int>(basis.size()); }
  int m() const { return dim() - 3 * r(); }
  int x_index(int i) const { return 3 * i; }
  int y_index(int i) const { return 3 * i + 1; }
  int z_index(int i) const { return 3 * i + 2; }
  int w_index(int j) const { return 3 * r() + j; }
};

/// Good subspaces E_r, ..., E_1 built in descending order on top of the
/// section F. Errors name the failing stage.
NormalFormData normal_form(const FormTuple& ft, const Form& g, const Budget& budget, Rng& rng,
                           Route route = Route::Auto);

/// Names of failed checks of the normal-form identities (empty when valid).
std::vector<std::string> check_normal_form(const NormalFormData& nf);

/// Initial forms of f_i|W for the weights (1,1,1,2,2,2,...,r+1,...) equal the
/// good templates.
bool check_initial_forms(const NormalFormData& nf);

/// One chart point: parameters (y_1..y_r, z_1..z_r, w_1..w_m), W coordinates
/// and the ambient point.
struct ChartPoint {
  Vec params;
  Vec coords;
  Vec point;
};

/// Solves x_r, ..., x_1 in turn; nullopt when some y_i is zero.
std::optional<ChartPoint> chart_point(const NormalFormData& nf, const Vec& params);

/// Visits chart points with parameters in the fixed order (y over nonzero
/// elements, z and w over all elements, last coordinate fastest) until
/// `visit` returns true or `limit` points were produced. Returns the count.
long sweep_chart(const NormalFormData& nf, long limit, const std::function<bool(const ChartPoint&)>& visit);
std::vector<ChartPoint> chart_points(const NormalFormData& nf, long limit);

struct DensePoint {
  NormalFormData nf;
  ChartPoint chart;
  long visited = 0;
};

/// A point of Z(f) with g != 0 taken from the normal-form chart: the ordered
/// parameter sweep first, random parameters afterwards.
DensePoint dense_point(const FormTuple& ft, const Form& g, const Budget& budget, Rng& rng, Route route = Route::Auto);

/// Nonzero x with sum a_i x_i^d = 1, through the homogenisation
/// sum a_i x_i^d - x_{n+1}^d with g = x_{n+1}.
Vec solve_affine_diagonal(const FieldPtr& field, const Vec& a, int d, const Budget& budget, Rng& rng);

/// A point of Z(f) at which g does not vanish, where f_1..f_i have degree
/// >= deg g and the rest lower degree (i counts the high-degree forms). Tries
/// direct search first, then regularises the low-degree tail and runs
/// dense_point on the combined tuple.
Vec lowdeg_point(const FormTuple& ft, const Form& g, std::size_t i, const Budget& budget, Rng& rng);

// Regularization ------------------------------------------------------------

/// Threshold function on multi-degrees.
struct Phi {
  std::function<int(const MultiDegree&)> fn;
  std::string text;
  static Phi constant(int k);
  /// Parses `const:K`.
  static Phi parse(const std::string& text);
  int operator()(const MultiDegree& md) const { return fn(md); }
};

/// Polynomial in tuple members: monomial (sorted member ids) -> coefficient.
using Expr = std::map<std::vector<int>, Elem>;

struct RegularizeResult {
  FormTuple g;
  std::vector<Form> members;      // every form ever created, by id
  std::vector<int> final_ids;     // ids of g's members, in g's order
  std::vector<Expr> expressions;  // one per input form, in final ids
  std::vector<MultiDegree> trail; // multi-degree before the first split and after each one
  int splits = 0;
};

/// Replaces a low-strength combination by its factors until the tuple has
/// strength > phi(multi-degree). Every expression is checked by expansion.
RegularizeResult regularize(const FormTuple& ft, const Phi& phi, const Budget& budget);

/// sum_monomials c * prod members[id].
Form expand(const Expr& e, const std::vector<Form>& members, int degree);

struct ClosureBound {
  RegularizeResult reg;
  int bound = 0;
  bool contained = false;  // every expression has zero constant term
  std::optional<NormalFormData> chart;
};

/// Z' = Z(g) inside Z(f) with codim(Z') <= len(g).
ClosureBound closure_codim_bound(const FormTuple& ft, const Phi& phi, const Budget& budget, Rng& rng,
                                 bool with_chart = true);

}  // namespace brauer
