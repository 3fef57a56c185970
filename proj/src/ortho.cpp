#include "brauer/ortho.hpp"

#include <algorithm>
#include <numeric>

#include "brauer/error.hpp"
#include "brauer/search.hpp"

namespace brauer {

namespace {

bool recoverable(const Error& e) {
  return e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::NoSolutionFound ||
         e.kind() == ErrorKind::NoSolution;
}

bool fits(const FqField& F, int n, long cap) {
  double total = 1;
  for (int i = 0; i < n; ++i) {
    total *= F.q();
    if (total > static_cast<double>(cap)) return false;
  }
  return true;
}

Mat unit_vectors(const FqField& F, int n, const std::vector<std::size_t>& idx) {
  Mat out;
  for (auto i : idx) {
    Vec u(n, F.zero());
    u[i] = F.one();
    out.push_back(std::move(u));
  }
  return out;
}

Mat concat(const Mat& a, const Mat& b) {
  Mat out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool common_zero(const std::vector<Form>& forms, const Vec& x) {
  for (const auto& f : forms)
    if (f.eval(x).code != 0) return false;
  return true;
}

int degree_sum(const std::vector<Form>& forms) {
  int s = 0;
  for (const auto& f : forms) s += f.degree();
  return s;
}

}  // namespace

std::vector<Form> coefficient_forms(const Form& f, const Mat& S, const Mat& comp, int lo, int hi) {
  Form g = pullback(f, concat(S, comp));
  std::vector<Form> out;
  for (auto& [a, h] : split_leading(g, static_cast<int>(S.size()))) {
    int s = 0;
    for (auto x : a) s += x;
    if (s >= lo && s < hi && !h.is_zero()) out.push_back(h);
  }
  return out;
}

namespace {

class Solver {
 public:
  Solver(FieldPtr fp, const Budget& budget, const SolveOptions& opts)
      : fp_(std::move(fp)), F_(*fp_), budget_(budget), opts_(opts) {}

  Vec solve(int n, const std::vector<Form>& input, int depth) {
    if (n <= 0) fail(ErrorKind::NoSolution, "no nonzero vector in a zero-dimensional space");
    std::vector<Form> forms;
    Mat linear;
    for (const auto& f : input) {
      if (f.is_zero()) continue;
      if (f.degree() == 0) fail(ErrorKind::NoSolution, "nonzero constant equation");
      if (f.degree() == 1) {
        Vec row(n, F_.zero());
        for (const auto& [e, c] : f.terms())
          for (int i = 0; i < n; ++i)
            if (e[i]) row[i] = c;
        linear.push_back(std::move(row));
      } else {
        forms.push_back(f);
      }
    }
    if (!linear.empty()) {
      Mat K = kernel_basis(F_, linear, n);
      if (K.empty()) fail(ErrorKind::NoSolution, "linear equations have only the zero solution");
      if (static_cast<int>(K.size()) < n) {
        std::vector<Form> pulled;
        for (const auto& f : forms) pulled.push_back(pullback(f, K));
        Vec t = solve(static_cast<int>(K.size()), pulled, depth);
        return combine(F_, K, t, n);
      }
    }
    if (forms.empty()) {
      Vec u(n, F_.zero());
      u[0] = F_.one();
      return u;
    }
    {
      std::vector<bool> used(n, false);
      for (const auto& f : forms) {
        auto occ = f.occurring();
        for (int i = 0; i < n; ++i) used[i] = used[i] || occ[i];
      }
      for (int i = 0; i < n; ++i)
        if (!used[i]) {
          Vec u(n, F_.zero());
          u[i] = F_.one();
          return u;
        }
    }
    auto zero_of_all = [&](const Vec& x) { return common_zero(forms, x); };
    if (fits(F_, n, budget_.enum_points)) {
      if (auto x = sweep_projective(F_, n, budget_.enum_points, zero_of_all)) return *x;
      fail(ErrorKind::NoSolution, "exhaustive search found no nonzero common zero");
    }
    if (auto x = sweep_low_support(F_, n, 2, budget_.enum_points / 16, zero_of_all)) return *x;

    const int cw = degree_sum(forms) + 1;
    const bool leaf_ok = opts_.use_leaf && cw <= n && fits(F_, cw, budget_.enum_points);
    if (leaf_ok && depth >= 1) return leaf(n, forms, cw);
    if (depth >= budget_.max_depth) {
      if (leaf_ok) return leaf(n, forms, cw);
      fail(ErrorKind::BudgetExceeded, "construction depth limit " + std::to_string(budget_.max_depth) + " reached");
    }
    try {
      return construct(n, forms, depth);
    } catch (const Error& e) {
      if (!recoverable(e) || !leaf_ok) throw;
      return leaf(n, forms, cw);
    }
  }

  /// Nonzero solution of the simultaneous diagonal system
  /// sum_k vals[j][k] y_k^D = 0 for every row j.
  std::optional<Vec> diagonal_system(const std::vector<Vec>& vals, int D) {
    const std::size_t t = vals.size();
    const std::size_t k = vals[0].size();
    for (std::size_t c = 0; c < k; ++c) {
      bool all_zero = true;
      for (std::size_t j = 0; j < t; ++j) all_zero = all_zero && vals[j][c].code == 0;
      if (all_zero) {
        Vec y(k, F_.zero());
        y[c] = F_.one();
        return y;
      }
    }
    DiagonalOptions dopts;
    dopts.enum_points = budget_.enum_points;
    if (t == 1) {
      try {
        return try_solve_diagonal(F_, vals[0], D, dopts);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        return std::nullopt;
      }
    }
    const int m = static_cast<int>(std::min<std::size_t>(k, t * D + 1));
    if (fits(F_, m, budget_.enum_points)) {
      auto hit = sweep_projective(F_, m, budget_.enum_points, [&](const Vec& y) {
        for (const auto& row : vals)
          if (eval_diagonal(F_, std::span(row).first(m), y, D).code != 0) return false;
        return true;
      });
      if (hit) {
        Vec y(k, F_.zero());
        std::copy(hit->begin(), hit->end(), y.begin());
        return y;
      }
      if (static_cast<std::size_t>(m) == k) return std::nullopt;
    }
    // Disjoint blocks solving the first row; the remaining rows stay diagonal
    // in the block multipliers.
    std::vector<std::pair<std::size_t, Vec>> blocks;
    std::size_t start = 0;
    while (start < k) {
      bool found = false;
      for (std::size_t len = 1; start + len <= k; ++len) {
        std::span<const Elem> sub(vals[0].data() + start, len);
        std::optional<Vec> sol;
        try {
          sol = try_solve_diagonal(F_, sub, D, dopts);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::BudgetExceeded) throw;
        }
        if (sol) {
          blocks.emplace_back(start, *sol);
          start += len;
          found = true;
          break;
        }
      }
      if (!found) break;
    }
    if (blocks.empty()) return std::nullopt;
    std::vector<Vec> reduced(t - 1, Vec(blocks.size(), F_.zero()));
    for (std::size_t j = 1; j < t; ++j)
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& [off, sol] = blocks[b];
        reduced[j - 1][b] = eval_diagonal(F_, std::span(vals[j]).subspan(off, sol.size()), sol, D);
      }
    auto z = diagonal_system(reduced, D);
    if (!z) return std::nullopt;
    Vec y(k, F_.zero());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& [off, sol] = blocks[b];
      for (std::size_t i = 0; i < sol.size(); ++i) y[off + i] = F_.mul((*z)[b], sol[i]);
    }
    return y;
  }

 private:
  Vec leaf(int n, const std::vector<Form>& forms, int m) {
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    Mat units = unit_vectors(F_, n, idx);
    std::vector<Form> sub;
    for (const auto& f : forms) sub.push_back(pullback(f, units));
    auto hit = sweep_projective(F_, m, budget_.enum_points, [&](const Vec& y) { return common_zero(sub, y); });
    require(hit.has_value(), ErrorKind::HypothesisViolated, "degree-sum bound violated on the leaf subspace");
    return combine(F_, units, *hit, n);
  }

  Vec construct(int n, const std::vector<Form>& forms, int depth) {
    int D = 0;
    for (const auto& f : forms) D = std::max(D, f.degree());
    std::vector<Form> top, lower;
    for (const auto& f : forms) (f.degree() == D ? top : lower).push_back(f);

    Mat S;
    std::vector<Vec> vals(top.size());
    const int limit = std::min(n, budget_.dim);
    std::string stop = "dimension budget " + std::to_string(budget_.dim) + " exhausted";
    while (static_cast<int>(S.size()) < limit) {
      Mat comp = unit_vectors(F_, n, complement_indices(F_, S, n));
      std::vector<Form> conds;
      for (const auto& f : top)
        for (auto& h : coefficient_forms(f, S, comp, 1, D)) conds.push_back(std::move(h));
      for (const auto& f : lower)
        for (auto& h : coefficient_forms(f, S, comp, 0, f.degree())) conds.push_back(std::move(h));
      Vec u;
      try {
        u = solve(static_cast<int>(comp.size()), conds, depth + 1);
      } catch (const Error& e) {
        if (!recoverable(e)) throw;
        stop = "could not extend the orthogonal sequence past length " + std::to_string(S.size()) + " (" +
               e.what() + ")";
        break;
      }
      Vec s = combine(F_, comp, u, n);
      bool top_zero = true;
      for (std::size_t j = 0; j < top.size(); ++j) {
        Elem v = top[j].eval(s);
        vals[j].push_back(v);
        top_zero = top_zero && v.code == 0;
      }
      if (top_zero) {
        require(common_zero(forms, s), ErrorKind::HypothesisViolated, "sequence vector fails the lower forms");
        return s;
      }
      S.push_back(std::move(s));
      if (auto y = diagonal_system(vals, D)) {
        Vec x = combine(F_, S, *y, n);
        require(common_zero(forms, x), ErrorKind::HypothesisViolated, "diagonal solve does not lift");
        return x;
      }
    }
    fail(ErrorKind::NoSolutionFound, stop);
  }

  FieldPtr fp_;
  const FqField& F_;
  Budget budget_;
  SolveOptions opts_;
};

}  // namespace

Vec brauer_solve(const FieldPtr& field, int nvars, const std::vector<Form>& forms, const Budget& budget,
                 const SolveOptions& opts) {
  for (const auto& f : forms) {
    require(f.nvars() == nvars, ErrorKind::DimensionMismatch, "form has " + std::to_string(f.nvars()) +
                                                                  " variables, expected " + std::to_string(nvars));
    require(f.field().same_as(*field), ErrorKind::InvalidArgument, "form over a different field");
  }
  Solver solver(field, budget, opts);
  Vec x = solver.solve(nvars, forms, 0);
  require(!is_zero_vec(x) && common_zero(forms, x), ErrorKind::HypothesisViolated,
          "brauer_solve produced a non-solution");
  return x;
}

Vec brauer_solve(const FormTuple& ft, const Budget& budget, const SolveOptions& opts) {
  return brauer_solve(ft.field_ptr(), ft.nvars(), ft.forms(), budget, opts);
}

Vec solve_diagonal_ext(const FieldExtension& ext, std::span<const Elem> coeffs, int d, const Budget& budget) {
  const int n = static_cast<int>(coeffs.size());
  const FqField& K = ext.base();
  std::vector<Form> parts;
  for (int i = 0; i < ext.degree; ++i) {
    Form f(ext.embedding.base, n, d);
    for (int j = 0; j < n; ++j) {
      Elem c = ext.coords[coeffs[j].code][i];
      if (c.code) f.add_term(unit_exponents(n, j, d), c);
    }
    parts.push_back(std::move(f));
  }
  Vec x = brauer_solve(ext.embedding.base, n, parts, budget);
  Vec lifted;
  for (auto c : x) lifted.push_back(ext.embedding(c));
  require(eval_diagonal(ext.ext(), coeffs, lifted, d).code == 0, ErrorKind::HypothesisViolated,
          "extension solution does not verify");
  (void)K;
  return x;
}

bool is_orthogonal(const Form& f, const std::vector<Subspace>& spaces) {
  Mat all;
  std::vector<int> block;
  for (std::size_t s = 0; s < spaces.size(); ++s)
    for (const auto& v : spaces[s].basis()) {
      all.push_back(v);
      block.push_back(static_cast<int>(s));
    }
  if (all.empty()) return true;
  Form g = pullback(f, all);
  for (const auto& [e, c] : g.terms()) {
    int seen = -1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (seen == -1) seen = block[i];
      else if (seen != block[i]) return false;
    }
  }
  return true;
}

Mat orthogonal_sequence(const Form& f, int n, const Subspace& avoid, const Budget& budget, const SolveOptions& opts) {
  const FqField& F = f.field();
  const int N = f.nvars();
  require(avoid.ambient() == N || avoid.dim() == 0, ErrorKind::DimensionMismatch,
          "avoided subspace lives in another space");
  require(n >= 0 && n + avoid.dim() <= N, ErrorKind::DimensionMismatch, "not enough room for the sequence");
  Solver solver(f.field_ptr(), budget, opts);
  Mat S;
  while (static_cast<int>(S.size()) < n) {
    Mat comp = unit_vectors(F, N, complement_indices(F, concat(avoid.basis(), S), N));
    std::vector<Form> conds = coefficient_forms(f, S, comp, 1, f.degree());
    Vec u;
    try {
      u = solver.solve(static_cast<int>(comp.size()), conds, 1);
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      fail(e.kind() == ErrorKind::NoSolution ? ErrorKind::NoSolutionFound : e.kind(),
           "orthogonal sequence stuck at length " + std::to_string(S.size()) + ": " + e.what());
    }
    S.push_back(combine(F, comp, u, N));
  }
  std::vector<Subspace> lines;
  for (const auto& v : S) lines.emplace_back(f.field_ptr(), N, Mat{v});
  require(is_orthogonal(f, lines), ErrorKind::HypothesisViolated, "orthogonal sequence fails its identity");
  return S;
}

Vec orth_line(const FormTuple& ft, std::size_t i, const Subspace& Fs, const Budget& budget, Rng& rng) {
  require(i < ft.size(), ErrorKind::InvalidArgument, "form index out of range");
  const FqField& F = ft.field();
  const int N = ft.nvars();
  Mat comp = unit_vectors(F, N, complement_indices(F, Fs.basis(), N));
  require(!comp.empty(), ErrorKind::DimensionMismatch, "no room for a line outside F");
  PointQuery query;
  for (std::size_t j = i; j < ft.size(); ++j) {
    const Form& f = ft[j];
    for (auto& h : coefficient_forms(f, Fs.basis(), comp, 1, f.degree())) query.zeros.push_back(std::move(h));
    if (j > i) query.zeros.push_back(pullback(f, comp));
  }
  query.nonzero.push_back(pullback(ft[i], comp));
  auto u = find_point(ft.field_ptr(), static_cast<int>(comp.size()), query, budget, rng);
  if (!u) fail(ErrorKind::NoSolutionFound, "no orthogonal line for form " + std::to_string(i + 1));
  Vec v = combine(F, comp, *u, N);

  Subspace L(ft.field_ptr(), N, Mat{v});
  for (std::size_t j = i; j < ft.size(); ++j) {
    require(is_orthogonal(ft[j], {Fs, L}), ErrorKind::HypothesisViolated, "orthogonal line fails orthogonality");
    if (j > i) require(ft[j].eval(v).code == 0, ErrorKind::HypothesisViolated, "orthogonal line fails vanishing");
  }
  require(ft[i].eval(v).code != 0, ErrorKind::HypothesisViolated, "orthogonal line fails non-vanishing");
  return v;
}

Form good_template(const FieldPtr& field, int nvars, int d, int ix, int iy, int iz, Elem a, Elem b) {
  Form g(field, nvars, d);
  Exponents e(nvars, 0);
  e[ix] = 1;
  e[iy] = static_cast<std::uint8_t>(e[iy] + d - 1);
  g.add_term(e, field->one());
  g.add_term(unit_exponents(nvars, iy, d), a);
  g.add_term(unit_exponents(nvars, iz, d), b);
  return g;
}

bool is_good_template(const Form& g, Elem a, Elem b) {
  if (g.nvars() != 3 || b.code == 0) return false;
  return g == good_template(g.field_ptr(), 3, g.degree(), 0, 1, 2, a, b);
}

GoodFormWitness good_from_diagonal(const Form& f, const Budget& budget, Rng& rng) {
  const FqField& F = f.field();
  const int n = f.nvars();
  const int d = f.degree();
  require(d >= 2, ErrorKind::InvalidArgument, "diagonal good specialisation needs degree >= 2");
  if (d % static_cast<int>(F.p()) == 0)
    fail(ErrorKind::CharTooSmall, "characteristic " + std::to_string(F.p()) + " divides the degree " +
                                      std::to_string(d) + ", so the x*y^(d-1) coefficient vanishes");
  Vec c(n, F.zero());
  for (const auto& [e, coef] : f.terms()) {
    int at = -1;
    for (int i = 0; i < n; ++i)
      if (e[i]) {
        require(at == -1 && e[i] == d, ErrorKind::NotDiagonal, "form is not diagonal in these coordinates");
        at = i;
      }
    c[at] = coef;
  }
  std::vector<int> support;
  for (int i = 0; i < n; ++i)
    if (c[i].code) support.push_back(i);
  if (support.size() < 3)
    fail(ErrorKind::BudgetExceeded, "diagonal rank " + std::to_string(support.size()) + " is too small");
  const int iz = support.back();
  support.pop_back();

  // v: block solutions of f on disjoint pieces of the support.
  Vec v(n, F.zero());
  DiagonalOptions dopts;
  dopts.enum_points = budget.enum_points;
  std::size_t start = 0;
  while (start < support.size()) {
    bool found = false;
    for (std::size_t len = 2; start + len <= support.size(); ++len) {
      Vec sub;
      for (std::size_t k = start; k < start + len; ++k) sub.push_back(c[support[k]]);
      std::optional<Vec> sol;
      try {
        sol = try_solve_diagonal(F, sub, d, dopts);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
      }
      if (sol) {
        for (std::size_t k = 0; k < len; ++k) v[support[start + k]] = (*sol)[k];
        start += len;
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  if (is_zero_vec(v)) fail(ErrorKind::BudgetExceeded, "no block of the diagonal form has a zero");

  // f(xv + yw) = sum_j f_j(w) x^(d-j) y^j with f_j(w) = C(d,j) sum_k c_k v_k^(d-j) w_k^j.
  std::vector<Form> fj(d + 1);
  std::vector<std::size_t> idx(support.begin(), support.end());
  const int m = static_cast<int>(idx.size());
  long long binom = 1;
  for (int j = 1; j <= d; ++j) {
    binom = binom * (d - j + 1) / j;
    Form g(f.field_ptr(), m, j);
    for (int k = 0; k < m; ++k) {
      Elem coef = F.mul(F.from_int(binom), F.mul(c[idx[k]], F.pow(v[idx[k]], d - j)));
      if (coef.code) g.add_term(unit_exponents(m, k, j), coef);
    }
    fj[j] = std::move(g);
  }
  PointQuery query;
  for (int j = 1; j <= d - 2; ++j) query.zeros.push_back(fj[j]);
  query.nonzero = {fj[d - 1], fj[d]};
  auto wc = find_point(f.field_ptr(), m, query, budget, rng);
  if (!wc) fail(ErrorKind::NoSolutionFound, "no second vector w for the diagonal specialisation");
  Vec w(n, F.zero());
  for (int k = 0; k < m; ++k) w[idx[k]] = (*wc)[k];

  const Elem cc = fj[d - 1].eval(*wc);
  Vec vs = scaled(F, v, F.inv(cc));
  Vec ez(n, F.zero());
  ez[iz] = F.one();
  GoodFormWitness out{{vs, w, ez}, f.eval(w), c[iz], d};
  require(is_good_template(pullback(f, out.basis), out.a, out.b), ErrorKind::HypothesisViolated,
          "diagonal specialisation is not good");
  return out;
}

namespace {

GoodFormWitness good_linear(const FormTuple& ft, std::size_t i, const Subspace& Fs) {
  const FqField& F = ft.field();
  const int N = ft.nvars();
  auto row = [&](const Form& f) {
    Vec r(N, F.zero());
    for (const auto& [e, c] : f.terms())
      for (int k = 0; k < N; ++k)
        if (e[k]) r[k] = c;
    return r;
  };
  Mat rows;
  for (std::size_t j = i + 1; j < ft.size(); ++j) rows.push_back(row(ft[j]));
  Mat K = rows.empty() ? Subspace::full(ft.field_ptr(), N).basis() : kernel_basis(F, rows, N);
  Mat chosen = Fs.basis();
  Mat picks;
  for (const auto& k : K) {
    chosen.push_back(k);
    if (independent(F, chosen, N)) picks.push_back(k);
    else chosen.pop_back();
  }
  const Vec fi = row(ft[i]);
  auto val = [&](const Vec& x) {
    Elem s = F.zero();
    for (int k = 0; k < N; ++k) s = F.add(s, F.mul(fi[k], x[k]));
    return s;
  };
  auto lead = std::find_if(picks.begin(), picks.end(), [&](const Vec& x) { return val(x).code != 0; });
  if (picks.size() < 3 || lead == picks.end())
    fail(ErrorKind::BudgetExceeded, "not enough room for a good subspace of a linear form");
  Vec u1 = scaled(F, *lead, F.inv(val(*lead)));
  Mat rest;
  for (auto it = picks.begin(); it != picks.end() && rest.size() < 2; ++it)
    if (it != lead) rest.push_back(added(F, *it, scaled(F, u1, F.neg(val(*it)))));
  return GoodFormWitness{{u1, rest[0], added(F, rest[1], u1)}, F.zero(), F.one(), 1};
}

GoodFormWitness good_route_a(const FormTuple& ft, std::size_t i, const Subspace& Fs, const Budget& budget, Rng& rng) {
  const FqField& F = ft.field();
  const int N = ft.nvars();
  Mat lines;
  std::string last = "no attempt";
  while (static_cast<int>(lines.size()) < budget.dim) {
    Subspace cur(ft.field_ptr(), N, concat(Fs.basis(), lines));
    if (cur.dim() >= N) break;
    try {
      lines.push_back(orth_line(ft, i, cur, budget, rng));
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      last = e.what();
      break;
    }
    if (lines.size() < 3) continue;
    Form diag = pullback(ft[i], lines);
    try {
      GoodFormWitness g = good_from_diagonal(diag, budget, rng);
      Mat amb;
      for (const auto& b : g.basis) amb.push_back(combine(F, lines, b, N));
      g.basis = std::move(amb);
      return g;
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      last = e.what();
    }
  }
  fail(ErrorKind::BudgetExceeded,
       "diagonal route gave up after " + std::to_string(lines.size()) + " orthogonal lines: " + last);
}

GoodFormWitness good_route_b(const FormTuple& ft, std::size_t i, const Subspace& Fs, const Budget& budget, Rng& rng) {
  const FqField& F = ft.field();
  const int N = ft.nvars();
  const int d = ft[i].degree();
  std::vector<Form> same{ft[i]};
  for (std::size_t j = i + 1; j < ft.size(); ++j)
    if (ft[j].degree() == d) same.push_back(ft[j]);
  std::vector<Plane> planes;
  Mat span = Fs.basis();
  std::string last = "no attempt";
  while (static_cast<int>(2 * planes.size()) < budget.dim && static_cast<int>(span.size()) + 2 <= N) {
    try {
      Plane P = orth_plane(ft, i, Subspace(ft.field_ptr(), N, span), budget, rng);
      span.push_back(P.v);
      span.push_back(P.w);
      planes.push_back(std::move(P));
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      last = e.what();
      break;
    }
    AdaptedPlane M;
    try {
      M = adapted_subplane(planes, same, budget, rng);
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      last = e.what();
      continue;
    }
    try {
      Subspace FM(ft.field_ptr(), N, concat(Fs.basis(), Mat{M.v, M.w}));
      Vec l = orth_line(ft, i, FM, budget, rng);
      return GoodFormWitness{{M.v, M.w, l}, F.zero(), ft[i].eval(l), d};
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      last = e.what();
    }
  }
  fail(ErrorKind::BudgetExceeded,
       "plane route gave up after " + std::to_string(planes.size()) + " orthogonal planes: " + last);
}

}  // namespace

std::vector<std::string> check_good_subspace(const FormTuple& ft, std::size_t i, const Subspace& Fs,
                                             const GoodFormWitness& w) {
  std::vector<std::string> failed;
  const FqField& F = ft.field();
  const int N = ft.nvars();
  if (w.basis.size() != 3 || !independent(F, concat(Fs.basis(), w.basis), N)) {
    failed.push_back("independence");
    return failed;
  }
  Subspace E(ft.field_ptr(), N, w.basis);
  for (std::size_t j = i; j < ft.size(); ++j)
    if (!is_orthogonal(ft[j], {Fs, E})) {
      failed.push_back("orthogonality");
      break;
    }
  for (std::size_t j = i + 1; j < ft.size(); ++j)
    if (!restrict(ft[j], E).is_zero()) {
      failed.push_back("vanishing");
      break;
    }
  if (!is_good_template(restrict(ft[i], E), w.a, w.b)) failed.push_back("template");
  return failed;
}

GoodFormWitness good_subspace(const FormTuple& ft, std::size_t i, const Subspace& Fs, const Budget& budget, Rng& rng,
                              Route route) {
  require(i < ft.size(), ErrorKind::InvalidArgument, "form index out of range");
  const int d = ft[i].degree();
  const std::uint32_t p = ft.field().p();
  GoodFormWitness w;
  if (d == 1) {
    w = good_linear(ft, i, Fs);
  } else {
    if (route == Route::Auto) route = p > static_cast<std::uint32_t>(d) ? Route::Diagonal : Route::Planes;
    if (route == Route::Diagonal && p <= static_cast<std::uint32_t>(d))
      fail(ErrorKind::CharTooSmall, "diagonal route needs characteristic > " + std::to_string(d));
    w = route == Route::Diagonal ? good_route_a(ft, i, Fs, budget, rng) : good_route_b(ft, i, Fs, budget, rng);
  }
  auto failed = check_good_subspace(ft, i, Fs, w);
  if (!failed.empty()) fail(ErrorKind::HypothesisViolated, "good subspace check failed: " + failed.front());
  return w;
}

}  // namespace brauer
