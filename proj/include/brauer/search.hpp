#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "brauer/budget.hpp"
#include "brauer/poly.hpp"
#include "brauer/rng.hpp"

namespace brauer {

/// A point search: every form in `zeros` must vanish, every form in `nonzero`
/// must not, and `accept` (when set) must return true.
struct PointQuery {
  std::vector<Form> zeros;
  std::vector<Form> nonzero;
  std::function<bool(const Vec&)> accept;
};

/// Budgeted search for a nonzero vector satisfying the query. Strategies, in
/// order: reduction to the kernel of the linear equations; vectors supported
/// on variables absent from every equation; low-support vectors; exhaustive
/// sweep of small spaces; Brauer's construction on random subspaces; random
/// sampling. Deterministic for a fixed generator state.
std::optional<Vec> find_point(const FieldPtr& field, int nvars, const PointQuery& query, const Budget& budget,
                              Rng& rng);

/// Does x satisfy the query (x nonzero, zeros vanish, nonzero forms do not)?
bool satisfies(const PointQuery& query, const Vec& x);

/// Visits nonzero vectors of F_q^n with first nonzero entry 1, ordered by
/// support size and then lexicographically, up to `max_support` nonzero
/// entries and `cap` visits. Returns the first vector accepted.
std::optional<Vec> sweep_low_support(const FqField& field, int n, int max_support, long cap,
                                     const std::function<bool(const Vec&)>& visit);

/// Visits every projective point of F_q^n (first nonzero entry 1) in the
/// fixed order; nullopt if none is accepted. Throws BudgetExceeded when the
/// space has more than `cap` points.
std::optional<Vec> sweep_projective(const FqField& field, int n, long cap, const std::function<bool(const Vec&)>& visit);

}  // namespace brauer
