#include "brauer/search.hpp"

#include <algorithm>
#include <numeric>

#include "brauer/error.hpp"
#include "brauer/ortho.hpp"

namespace brauer {

bool satisfies(const PointQuery& query, const Vec& x) {
  if (is_zero_vec(x)) return false;
  for (const auto& f : query.zeros)
    if (f.eval(x).code != 0) return false;
  for (const auto& g : query.nonzero)
    if (g.eval(x).code == 0) return false;
  return !query.accept || query.accept(x);
}

std::optional<Vec> sweep_low_support(const FqField& field, int n, int max_support, long cap,
                                     const std::function<bool(const Vec&)>& visit) {
  const std::uint32_t q = field.q();
  long visited = 0;
  for (int s = 1; s <= std::min(max_support, n); ++s) {
    std::vector<int> pos(s);
    std::iota(pos.begin(), pos.end(), 0);
    while (true) {
      // entries on pos[1..]: nonzero codes 1..q-1, odometer with the last fastest
      std::vector<std::uint32_t> vals(s, 1);
      while (true) {
        if (++visited > cap) return std::nullopt;
        Vec x(n, field.zero());
        for (int k = 0; k < s; ++k) x[pos[k]] = field.from_code(vals[k]);
        if (visit(x)) return x;
        int k = s - 1;
        while (k >= 1 && vals[k] == q - 1) vals[k--] = 1;
        if (k < 1) break;
        ++vals[k];
      }
      int k = s - 1;
      while (k >= 0 && pos[k] == n - s + k) --k;
      if (k < 0) break;
      ++pos[k];
      for (int j = k + 1; j < s; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return std::nullopt;
}

std::optional<Vec> sweep_projective(const FqField& field, int n, long cap,
                                    const std::function<bool(const Vec&)>& visit) {
  const std::uint32_t q = field.q();
  double total = 0;
  for (int i = 0; i < n; ++i) total = total * q + 1;
  if (total > static_cast<double>(cap))
    fail(ErrorKind::BudgetExceeded, "projective sweep of dimension " + std::to_string(n) + " over " +
                                        field.descriptor() + " exceeds the enumeration cap");
  for (int lead = n - 1; lead >= 0; --lead) {
    std::vector<std::uint32_t> tail(n - 1 - lead, 0);
    while (true) {
      Vec x(n, field.zero());
      x[lead] = field.one();
      for (std::size_t k = 0; k < tail.size(); ++k) x[lead + 1 + k] = field.from_code(tail[k]);
      if (visit(x)) return x;
      int k = static_cast<int>(tail.size()) - 1;
      while (k >= 0 && tail[k] == q - 1) tail[k--] = 0;
      if (k < 0) break;
      ++tail[k];
    }
  }
  return std::nullopt;
}

namespace {

bool small_space(const FqField& field, int n, long cap) {
  double total = 1;
  for (int i = 0; i < n; ++i) {
    total *= field.q();
    if (total > static_cast<double>(cap)) return false;
  }
  return true;
}

Vec random_vec(const FqField& field, int n, Rng& rng) {
  Vec x(n);
  for (auto& c : x) c = field.from_code(static_cast<std::uint32_t>(rng.below(field.q())));
  return x;
}

PointQuery pulled_back(const PointQuery& query, const Mat& basis) {
  PointQuery out;
  for (const auto& f : query.zeros) out.zeros.push_back(pullback(f, basis));
  for (const auto& g : query.nonzero) out.nonzero.push_back(pullback(g, basis));
  return out;
}

}  // namespace

std::optional<Vec> find_point(const FieldPtr& fp, int nvars, const PointQuery& query, const Budget& budget,
                              Rng& rng) {
  const FqField& field = *fp;
  if (nvars <= 0) return std::nullopt;

  PointQuery q;
  q.accept = query.accept;
  Mat linear;
  for (const auto& f : query.zeros) {
    if (f.is_zero()) continue;
    if (f.degree() == 0) return std::nullopt;
    if (f.degree() == 1) {
      Vec row(nvars, field.zero());
      for (const auto& [e, c] : f.terms())
        for (int i = 0; i < nvars; ++i)
          if (e[i]) row[i] = c;
      linear.push_back(std::move(row));
    } else {
      q.zeros.push_back(f);
    }
  }
  for (const auto& g : query.nonzero) {
    if (g.is_zero()) return std::nullopt;
    if (g.degree() == 0) continue;
    q.nonzero.push_back(g);
  }

  if (!linear.empty()) {
    Mat K = kernel_basis(field, linear, nvars);
    if (K.empty()) return std::nullopt;
    if (static_cast<int>(K.size()) < nvars) {
      PointQuery sub;
      for (const auto& f : q.zeros) sub.zeros.push_back(pullback(f, K));
      for (const auto& g : q.nonzero) sub.nonzero.push_back(pullback(g, K));
      if (q.accept) {
        auto accept = q.accept;
        sub.accept = [accept, K, fp, nvars](const Vec& t) { return accept(combine(*fp, K, t, nvars)); };
      }
      auto t = find_point(fp, static_cast<int>(K.size()), sub, budget, rng);
      if (!t) return std::nullopt;
      return combine(field, K, *t, nvars);
    }
  }

  auto ok = [&](const Vec& x) { return satisfies(q, x); };

  // Variables absent from every equation give free solutions.
  std::vector<int> free_vars;
  {
    std::vector<bool> used(nvars, false);
    for (const auto& f : q.zeros) {
      auto occ = f.occurring();
      for (int i = 0; i < nvars; ++i) used[i] = used[i] || occ[i];
    }
    for (int i = 0; i < nvars; ++i)
      if (!used[i]) free_vars.push_back(i);
  }
  if (!free_vars.empty() && !q.zeros.empty()) {
    PointQuery sub;
    Mat units;
    for (int i : free_vars) {
      Vec u(nvars, field.zero());
      u[i] = field.one();
      units.push_back(std::move(u));
    }
    for (const auto& g : q.nonzero) sub.nonzero.push_back(pullback(g, units));
    if (q.accept) {
      auto accept = q.accept;
      sub.accept = [accept, units, fp, nvars](const Vec& t) { return accept(combine(*fp, units, t, nvars)); };
    }
    const int k = static_cast<int>(units.size());
    std::optional<Vec> t;
    if (small_space(field, k, budget.enum_points))
      t = sweep_projective(field, k, budget.enum_points, [&](const Vec& y) { return satisfies(sub, y); });
    else
      t = sweep_low_support(field, k, 2, budget.enum_points / 8, [&](const Vec& y) { return satisfies(sub, y); });
    if (t) return combine(field, units, *t, nvars);
  }

  if (small_space(field, nvars, budget.enum_points)) return sweep_projective(field, nvars, budget.enum_points, ok);

  if (auto x = sweep_low_support(field, nvars, 3, budget.enum_points / 4, ok)) return x;

  // Random subspaces small enough to sweep completely.
  int k = 1;
  while (k + 1 < nvars && small_space(field, k + 1, 4096)) ++k;
  const long rounds = std::max<long>(1, budget.tries / 64);
  for (long r = 0; r < rounds; ++r) {
    Mat basis;
    while (static_cast<int>(basis.size()) < k) {
      Vec v = random_vec(field, nvars, rng);
      basis.push_back(v);
      if (!independent(field, basis, nvars)) basis.pop_back();
    }
    PointQuery sub = pulled_back(q, basis);
    sub.accept = [&](const Vec& t) { return ok(combine(field, basis, t, nvars)); };
    if (auto t = sweep_projective(field, k, budget.enum_points, [&](const Vec& y) { return satisfies(sub, y); }))
      return combine(field, basis, *t, nvars);
  }

  // The inductive construction gives a common zero that may or may not meet
  // the side conditions.
  if (!q.zeros.empty() && budget.max_depth > 0) {
    try {
      Budget inner = budget;
      inner.max_depth = budget.max_depth - 1;
      Vec x = brauer_solve(fp, nvars, q.zeros, inner);
      if (ok(x)) return x;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded && e.kind() != ErrorKind::NoSolutionFound &&
          e.kind() != ErrorKind::NoSolution)
        throw;
      if (e.kind() == ErrorKind::NoSolution) return std::nullopt;
    }
  }

  for (long t = 0; t < budget.tries; ++t) {
    Vec x = random_vec(field, nvars, rng);
    if (ok(x)) return x;
  }
  return std::nullopt;
}

}  // namespace brauer
