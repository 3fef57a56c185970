#include "brauer/normalform.hpp"

#include <algorithm>

#include "brauer/error.hpp"
#include "brauer/search.hpp"

namespace brauer {

namespace {

bool recoverable(const Error& e) {
  return e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::NoSolutionFound ||
         e.kind() == ErrorKind::NoSolution || e.kind() == ErrorKind::NoWitness;
}

Elem eval_any(const Form& g, const Vec& x) {
  if (g.degree() == 0) return g.is_zero() ? g.field().zero() : g.terms().begin()->second;
  return g.eval(x);
}

}  // namespace

Section nonvanishing_section(const FormTuple& ft, const Form& g, const Budget& budget, Rng& rng) {
  const int N = ft.nvars();
  if (g.is_zero()) fail(ErrorKind::NoWitness, "g is the zero polynomial");
  if (g.degree() == 0) return {Subspace::zero(ft.field_ptr(), N), Vec(N, ft.field().zero())};
  PointQuery q;
  q.zeros = ft.forms();
  q.nonzero.push_back(g);
  auto x = find_point(ft.field_ptr(), N, q, budget, rng);
  if (!x) fail(ErrorKind::NoWitness, "no point of Z with g != 0 found within budget");
  return {Subspace(ft.field_ptr(), N, Mat{*x}), *x};
}

NormalFormData normal_form(const FormTuple& ft, const Form& g, const Budget& budget, Rng& rng, Route route) {
  const int N = ft.nvars();
  const int r = static_cast<int>(ft.size());
  Section sec = nonvanishing_section(ft, g, budget, rng);
  std::vector<GoodFormWitness> E(r);
  Mat outer = sec.F.basis();
  for (int i = r - 1; i >= 0; --i) {
    try {
      E[i] = good_subspace(ft, i, Subspace(ft.field_ptr(), N, outer), budget, rng, route);
    } catch (const Error& e) {
      throw Error(e.kind(), "stage E_" + std::to_string(i + 1) + ": " + e.what());
    }
    Mat next = E[i].basis;
    next.insert(next.end(), outer.begin(), outer.end());
    outer = std::move(next);
  }

  NormalFormData nf;
  nf.ft = ft;
  nf.basis = outer;
  for (int i = 0; i < r; ++i) {
    nf.degrees.push_back(ft[i].degree());
    nf.a.push_back(E[i].a);
    nf.b.push_back(E[i].b);
  }
  const int dim = nf.dim();
  for (int i = 0; i < r; ++i) {
    Form t = good_template(ft.field_ptr(), dim, nf.degrees[i], nf.x_index(i), nf.y_index(i), nf.z_index(i), nf.a[i],
                           nf.b[i]);
    nf.h.push_back(pullback(ft[i], nf.basis) - t);
  }
  nf.witness = Vec(dim, ft.field().zero());
  if (sec.F.dim() == 1) nf.witness[nf.w_index(0)] = ft.field().one();

  auto failed = check_normal_form(nf);
  if (!failed.empty()) fail(ErrorKind::HypothesisViolated, "normal form check failed: " + failed.front());
  return nf;
}

std::vector<std::string> check_normal_form(const NormalFormData& nf) {
  std::vector<std::string> failed;
  const FqField& F = nf.ft.field();
  const int dim = nf.dim();
  if (!independent(F, nf.basis, nf.ft.nvars())) failed.push_back("independence");
  for (int i = 0; i < nf.r(); ++i) {
    const std::string tag = "f" + std::to_string(i + 1);
    if (nf.b[i].code == 0) failed.push_back(tag + " b nonzero");
    Form t = good_template(nf.ft.field_ptr(), dim, nf.degrees[i], nf.x_index(i), nf.y_index(i), nf.z_index(i),
                           nf.a[i], nf.b[i]);
    if (!(pullback(nf.ft[i], nf.basis) == t + nf.h[i])) failed.push_back(tag + " template");
    for (const auto& [e, c] : nf.h[i].terms())
      for (int k = 0; k <= nf.z_index(i); ++k)
        if (e[k]) {
          failed.push_back(tag + " residual support");
          goto next;
        }
  next:;
  }
  Vec pt = combine(F, nf.basis, nf.witness, nf.ft.nvars());
  for (const auto& f : nf.ft.forms())
    if (f.eval(pt).code != 0) {
      failed.push_back("witness on Z");
      break;
    }
  return failed;
}

bool check_initial_forms(const NormalFormData& nf) {
  std::vector<int> weights(nf.dim());
  for (int k = 0; k < nf.dim(); ++k) weights[k] = k < 3 * nf.r() ? k / 3 + 1 : nf.r() + 1;
  for (int i = 0; i < nf.r(); ++i) {
    Form t = good_template(nf.ft.field_ptr(), nf.dim(), nf.degrees[i], nf.x_index(i), nf.y_index(i), nf.z_index(i),
                           nf.a[i], nf.b[i]);
    if (!(initial_form(pullback(nf.ft[i], nf.basis), weights) == t)) return false;
  }
  return true;
}

std::optional<ChartPoint> chart_point(const NormalFormData& nf, const Vec& params) {
  const FqField& F = nf.ft.field();
  const int r = nf.r();
  require(static_cast<int>(params.size()) == 2 * r + nf.m(), ErrorKind::DimensionMismatch,
          "chart parameters have wrong length");
  Vec coords(nf.dim(), F.zero());
  for (int i = 0; i < r; ++i) {
    if (params[i].code == 0) return std::nullopt;
    coords[nf.y_index(i)] = params[i];
    coords[nf.z_index(i)] = params[r + i];
  }
  for (int j = 0; j < nf.m(); ++j) coords[nf.w_index(j)] = params[2 * r + j];
  for (int i = r - 1; i >= 0; --i) {
    const int d = nf.degrees[i];
    const Elem y = coords[nf.y_index(i)], z = coords[nf.z_index(i)];
    Elem rest = F.add(F.mul(nf.a[i], F.pow(y, d)), F.mul(nf.b[i], F.pow(z, d)));
    rest = F.add(rest, nf.h[i].eval(coords));
    coords[nf.x_index(i)] = F.neg(F.div(rest, F.pow(y, d - 1)));
  }
  ChartPoint out{params, coords, combine(F, nf.basis, coords, nf.ft.nvars())};
  for (const auto& f : nf.ft.forms())
    require(f.eval(out.point).code == 0, ErrorKind::HypothesisViolated, "chart point is not on Z");
  return out;
}

long sweep_chart(const NormalFormData& nf, long limit, const std::function<bool(const ChartPoint&)>& visit) {
  const FqField& F = nf.ft.field();
  const int r = nf.r();
  const int k = 2 * r + nf.m();
  std::vector<std::uint32_t> digit(k, 0);
  for (int i = 0; i < r; ++i) digit[i] = 1;
  long count = 0;
  while (count < limit) {
    Vec params(k);
    for (int i = 0; i < k; ++i) params[i] = F.from_code(digit[i]);
    auto pt = chart_point(nf, params);
    ++count;
    if (visit(*pt)) break;
    int i = k - 1;
    while (i >= 0 && digit[i] == F.q() - 1) {
      digit[i] = i < r ? 1 : 0;
      --i;
    }
    if (i < 0) break;
    ++digit[i];
  }
  return count;
}

std::vector<ChartPoint> chart_points(const NormalFormData& nf, long limit) {
  std::vector<ChartPoint> out;
  sweep_chart(nf, limit, [&](const ChartPoint& p) {
    out.push_back(p);
    return false;
  });
  return out;
}

DensePoint dense_point(const FormTuple& ft, const Form& g, const Budget& budget, Rng& rng, Route route) {
  DensePoint out;
  out.nf = normal_form(ft, g, budget, rng, route);
  const NormalFormData& nf = out.nf;
  const FqField& F = ft.field();
  bool found = false;
  out.visited = sweep_chart(nf, budget.enum_points, [&](const ChartPoint& p) {
    if (eval_any(g, p.point).code == 0) return false;
    out.chart = p;
    found = true;
    return true;
  });
  const int k = 2 * nf.r() + nf.m();
  for (long t = 0; !found && t < budget.tries; ++t) {
    Vec params(k);
    for (int i = 0; i < k; ++i) {
      std::uint32_t c = static_cast<std::uint32_t>(rng.below(i < nf.r() ? F.q() - 1 : F.q()));
      params[i] = F.from_code(i < nf.r() ? c + 1 : c);
    }
    auto p = chart_point(nf, params);
    ++out.visited;
    if (eval_any(g, p->point).code != 0) {
      out.chart = *p;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::BudgetExceeded, "no chart point with g != 0 among " + std::to_string(out.visited));
  return out;
}

Vec solve_affine_diagonal(const FieldPtr& fp, const Vec& a, int d, const Budget& budget, Rng& rng) {
  const FqField& F = *fp;
  const int n = static_cast<int>(a.size());
  Form f(fp, n + 1, d);
  for (int i = 0; i < n; ++i)
    if (a[i].code) f.add_term(unit_exponents(n + 1, i, d), a[i]);
  f.add_term(unit_exponents(n + 1, n, d), F.neg(F.one()));
  Form g = Form::variable(fp, n + 1, n);
  DensePoint dp = dense_point(FormTuple(fp, n + 1, {f}), g, budget, rng);
  const Elem t = dp.chart.point[n];
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = F.div(dp.chart.point[i], t);
  require(eval_diagonal(F, a, x, d) == F.one(), ErrorKind::HypothesisViolated, "dehomogenised point is not a solution");
  return x;
}

Vec lowdeg_point(const FormTuple& ft, const Form& g, std::size_t i, const Budget& budget, Rng& rng) {
  require(i <= ft.size(), ErrorKind::InvalidArgument, "split index out of range");
  for (std::size_t j = 0; j < ft.size(); ++j)
    require((j < i) == (ft[j].degree() >= g.degree()), ErrorKind::InvalidArgument,
            "degrees are not split at the given index");
  if (budget.max_depth <= 0) fail(ErrorKind::BudgetExceeded, "nesting depth exhausted before lowdeg search");
  Budget inner = budget;
  inner.max_depth = budget.max_depth - 1;

  PointQuery q;
  q.zeros = ft.forms();
  q.nonzero.push_back(g);
  if (auto x = find_point(ft.field_ptr(), ft.nvars(), q, inner, rng)) return *x;

  std::vector<Form> combined(ft.forms().begin(), ft.forms().begin() + i);
  if (i < ft.size()) {
    FormTuple tail(ft.field_ptr(), ft.nvars(), std::vector<Form>(ft.forms().begin() + i, ft.forms().end()));
    RegularizeResult reg = regularize(tail, Phi::constant(1), inner);
    combined.insert(combined.end(), reg.g.forms().begin(), reg.g.forms().end());
  }
  FormTuple z = FormTuple::sorted(ft.field_ptr(), ft.nvars(), combined);
  Vec x;
  try {
    x = dense_point(z, g, inner, rng).chart.point;
  } catch (const Error& e) {
    if (!recoverable(e)) throw;
    throw Error(e.kind(), std::string("lowdeg: ") + e.what());
  }
  require(satisfies(q, x), ErrorKind::HypothesisViolated, "lowdeg point fails its conditions");
  return x;
}

}  // namespace brauer
