// Plane constructions for arbitrary characteristic: the two-variable atomic
// solver, adapted subplanes and orthogonal planes.

#include <algorithm>
#include <optional>

#include "brauer/error.hpp"
#include "brauer/normalform.hpp"
#include "brauer/ortho.hpp"
#include "brauer/search.hpp"

namespace brauer {

namespace {

bool recoverable(const Error& e) {
  return e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::NoSolutionFound ||
         e.kind() == ErrorKind::NoSolution || e.kind() == ErrorKind::NoWitness;
}

Budget inner_budget(const Budget& b, int shrink) {
  Budget out = b;
  out.tries = std::max<long>(16, b.tries / shrink);
  out.enum_points = std::max<long>(1024, b.enum_points / shrink);
  return out;
}

/// P(v, w) with the first k coordinates fixed to v; P must be homogeneous in
/// those coordinates.
Form substitute_prefix(const Form& P, const Vec& v) {
  const FqField& F = P.field();
  const int k = static_cast<int>(v.size());
  const int rest = P.nvars() - k;
  int vdeg = -1;
  Form out;
  for (const auto& [e, c] : P.terms()) {
    int s = 0;
    Elem coef = c;
    for (int i = 0; i < k; ++i)
      if (e[i]) {
        s += e[i];
        coef = F.mul(coef, F.pow(v[i], e[i]));
      }
    if (vdeg == -1) {
      vdeg = s;
      out = Form(P.field_ptr(), rest, P.degree() - s);
    }
    require(s == vdeg, ErrorKind::InvalidArgument, "substitution needs a bihomogeneous form");
    if (coef.code) out.add_term(Exponents(e.begin() + k, e.end()), coef);
  }
  if (vdeg == -1) out = Form(P.field_ptr(), rest, 0);
  return out;
}

/// sum_j coef_j scale_j^e_pow y_j^(d - e_pow) as a form in y.
Form diagonal_pair_form(const FieldPtr& fp, const Vec& coef, const Vec& scale, int e_pow, int d) {
  const FqField& F = *fp;
  const int n = static_cast<int>(coef.size());
  Form f(fp, n, d - e_pow);
  for (int j = 0; j < n; ++j) {
    Elem c = F.mul(coef[j], F.pow(scale[j], e_pow));
    if (c.code) f.add_term(unit_exponents(n, j, d - e_pow), c);
  }
  return f;
}

Elem atomic_f(const FqField& F, const Vec& a, const Vec& x, const Vec& y, int e, int d) {
  Elem s = F.zero();
  for (std::size_t j = 0; j < a.size(); ++j) s = F.add(s, F.mul(a[j], F.mul(F.pow(x[j], e), F.pow(y[j], d - e))));
  return s;
}

Elem atomic_g(const FqField& F, const Vec& b, const Vec& x, const Vec& y, int d) {
  Elem s = F.zero();
  for (std::size_t j = 0; j < b.size(); ++j) s = F.add(s, F.mul(b[j], F.mul(x[j], F.pow(y[j], d - 1))));
  return s;
}

}  // namespace

std::string to_string(AtomicCase c) {
  switch (c) {
    case AtomicCase::ZeroCoefficient: return "zero-coefficient";
    case AtomicCase::EZero: return "e=0";
    case AtomicCase::EFull: return "e=d";
    case AtomicCase::CharNotDividingE: return "p!|e";
    case AtomicCase::CharNotDividingDMinusE: return "p!|d-e";
    case AtomicCase::CharDividingD: return "p|d";
  }
  return "?";
}

AtomicCase atomic_case(std::uint32_t p, int d, int e) {
  require(e >= 0 && e <= d && e != 1, ErrorKind::InvalidArgument, "exponent must lie in {0..d} minus {1}");
  const int pp = static_cast<int>(p);
  if (e == 0) return AtomicCase::EZero;
  if (e == d) return AtomicCase::EFull;
  if (e % pp != 0) return AtomicCase::CharNotDividingE;
  if ((d - e) % pp != 0) return AtomicCase::CharNotDividingDMinusE;
  // p | e and p | d-e force p | d.
  require(d % pp == 0, ErrorKind::HypothesisViolated, "case analysis is not exhaustive");
  return AtomicCase::CharDividingD;
}

AtomicPair atomic_pair(const FieldPtr& fp, const Vec& a, const Vec& b, int e, int d, const Budget& budget, Rng& rng) {
  const FqField& F = *fp;
  const int n = static_cast<int>(a.size());
  require(n >= 1 && b.size() == a.size(), ErrorKind::DimensionMismatch, "coefficient vectors must match");
  require(d >= 2, ErrorKind::InvalidArgument, "atomic pair needs degree >= 2");
  for (auto c : b) require(c.code != 0, ErrorKind::InvalidArgument, "every b_j must be nonzero");
  const AtomicCase kind = atomic_case(F.p(), d, e);

  auto unit = [&](int i) {
    Vec u(n, F.zero());
    u[i] = F.one();
    return u;
  };
  auto finish = [&](Vec x, Vec y, AtomicCase c) {
    require(atomic_f(F, a, x, y, e, d).code == 0 && atomic_g(F, b, x, y, d).code != 0, ErrorKind::HypothesisViolated,
            "atomic pair failed its own check");
    return AtomicPair{std::move(x), std::move(y), c};
  };

  for (int i = 0; i < n; ++i)
    if (a[i].code == 0) return finish(unit(i), unit(i), AtomicCase::ZeroCoefficient);

  DiagonalOptions dopts;
  dopts.enum_points = budget.enum_points;
  const Vec ones(n, F.one());
  auto by_case = [&]() -> AtomicPair {
    switch (kind) {
      case AtomicCase::EZero:
      case AtomicCase::EFull: {
        auto s = try_solve_diagonal(F, a, d, dopts);
        if (!s) fail(ErrorKind::BudgetExceeded, "diagonal part has no zero in " + std::to_string(n) + " variables");
        int j = 0;
        while ((*s)[j].code == 0) ++j;
        // e = 0: f depends on y only; e = d: on x only.
        return kind == AtomicCase::EZero ? finish(unit(j), *s, kind) : finish(*s, unit(j), kind);
      }
      case AtomicCase::CharNotDividingE: {
        // y = (1..1): f_y(x) = sum a_j x_j^e and g_y(x) = sum b_j x_j.
        PointQuery q;
        Form fy(fp, n, e);
        for (int j = 0; j < n; ++j) fy.add_term(unit_exponents(n, j, e), a[j]);
        q.zeros.push_back(std::move(fy));
        q.nonzero.push_back(Form::linear(fp, b));
        auto x = find_point(fp, n, q, budget, rng);
        if (!x) fail(ErrorKind::BudgetExceeded, "no x for the e-side in " + std::to_string(n) + " variables");
        return finish(*x, ones, kind);
      }
      case AtomicCase::CharNotDividingDMinusE: {
        if (n < 2) fail(ErrorKind::BudgetExceeded, "root separation needs two coordinates");
        const int m = d - e;
        const int nn = d - 1;
        Vec x = ones;
        bool chosen = false;
        for (std::uint32_t c1 = 1; c1 < F.q() && !chosen; ++c1)
          for (std::uint32_t c2 = 1; c2 < F.q() && !chosen; ++c2) {
            Elem x1 = F.from_code(c1), x2 = F.from_code(c2);
            // Roots t = y1/y2 of the binary f^x satisfy t^m = alpha; all of them
            // are roots of g^x iff m | nn and alpha^(nn/m) = beta.
            Elem alpha = F.neg(F.div(F.mul(a[1], F.pow(x2, e)), F.mul(a[0], F.pow(x1, e))));
            Elem beta = F.neg(F.div(F.mul(b[1], x2), F.mul(b[0], x1)));
            bool bad = nn % m == 0 && F.pow(alpha, nn / m) == beta;
            if (!bad) {
              x[0] = x1;
              x[1] = x2;
              chosen = true;
            }
          }
        if (!chosen) fail(ErrorKind::NoSolutionFound, "every (x1, x2) makes the binary forms share their roots");
        PointQuery q;
        q.zeros.push_back(diagonal_pair_form(fp, a, x, e, d));
        q.nonzero.push_back(diagonal_pair_form(fp, b, x, 1, d));
        auto y = find_point(fp, n, q, budget, rng);
        if (!y) fail(ErrorKind::BudgetExceeded, "no y for the (d-e)-side in " + std::to_string(n) + " variables");
        return finish(x, *y, kind);
      }
      case AtomicCase::CharDividingD: {
        FormTuple tail(fp, n, {diagonal_pair_form(fp, a, ones, e, d)});
        Form g = diagonal_pair_form(fp, b, ones, 1, d);
        Vec y = lowdeg_point(tail, g, 0, budget, rng);
        return finish(ones, y, kind);
      }
      case AtomicCase::ZeroCoefficient: break;
    }
    fail(ErrorKind::HypothesisViolated, "unreachable atomic case");
  };
  try {
    return by_case();
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::BudgetExceeded && err.kind() != ErrorKind::NoSolutionFound &&
        err.kind() != ErrorKind::NoWitness)
      throw;
  }
  // Small fields can defeat the case constructions; search (x, y) directly.
  Form f2(fp, 2 * n, d), g2(fp, 2 * n, d);
  for (int j = 0; j < n; ++j) {
    Exponents fe(2 * n, 0), ge(2 * n, 0);
    fe[j] = static_cast<std::uint8_t>(e);
    fe[n + j] = static_cast<std::uint8_t>(d - e);
    ge[j] = 1;
    ge[n + j] = static_cast<std::uint8_t>(d - 1);
    f2.add_term(fe, a[j]);
    g2.add_term(ge, b[j]);
  }
  PointQuery q;
  q.zeros.push_back(std::move(f2));
  q.nonzero.push_back(std::move(g2));
  auto xy = find_point(fp, 2 * n, q, budget, rng);
  if (!xy) fail(ErrorKind::BudgetExceeded, "no atomic pair in " + std::to_string(n) + " coordinates");
  return finish(Vec(xy->begin(), xy->begin() + n), Vec(xy->begin() + n, xy->end()), kind);
}

AdaptedPlane adapted_subplane(const std::vector<Plane>& planes, const std::vector<Form>& forms, const Budget& budget,
                              Rng& rng) {
  require(!planes.empty() && !forms.empty(), ErrorKind::InvalidArgument, "need planes and forms");
  const FieldPtr fp = forms[0].field_ptr();
  const FqField& F = *fp;
  const int N = forms[0].nvars();
  const int d = forms[0].degree();
  const std::size_t n = planes.size();
  const std::size_t r = forms.size();
  for (const auto& f : forms)
    require(f.degree() == d && f.nvars() == N, ErrorKind::InvalidArgument, "forms must share degree and space");

  std::vector<Subspace> spaces;
  for (const auto& P : planes) spaces.emplace_back(fp, N, Mat{P.v, P.w});
  for (std::size_t i = 0; i < r; ++i)
    require(is_orthogonal(forms[i], spaces), ErrorKind::HypothesisViolated,
            "planes are not orthogonal for form " + std::to_string(i + 1));
  // C[i][j][e] = c_e(f_i | M_j)
  std::vector<std::vector<Vec>> C(r, std::vector<Vec>(n));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) C[i][j] = plane_coeffs(forms[i], planes[j].v, planes[j].w);
  for (std::size_t j = 0; j < n; ++j) {
    require(C[0][j][1].code != 0, ErrorKind::HypothesisViolated, "c_1 of the first form vanishes on a plane");
    for (std::size_t i = 1; i < r; ++i)
      require(C[i][j][1].code == 0, ErrorKind::HypothesisViolated, "c_1 of a later form is nonzero on a plane");
  }

  struct Cur {
    Vec alpha, beta;
    std::vector<Vec> c;  // c[i][e]
  };
  auto coeffs_of = [&](const Vec& alpha, const Vec& beta) {
    std::vector<Vec> c(r, Vec(d + 1, F.zero()));
    for (std::size_t i = 0; i < r; ++i)
      for (int e = 0; e <= d; ++e)
        for (std::size_t j = 0; j < n; ++j) {
          if (C[i][j][e].code == 0) continue;
          Elem t = F.mul(C[i][j][e], F.mul(F.pow(alpha[j], e), F.pow(beta[j], d - e)));
          c[i][e] = F.add(c[i][e], t);
        }
    return c;
  };
  std::vector<Cur> cur;
  for (std::size_t j = 0; j < n; ++j) {
    Vec al(n, F.zero()), be(n, F.zero());
    al[j] = F.one();
    be[j] = F.one();
    cur.push_back({al, be, coeffs_of(al, be)});
  }

  const Budget inner = inner_budget(budget, 4);
  std::string blocked;
  auto blocking = [&]() -> std::optional<Cur> {
    std::vector<std::pair<std::size_t, int>> done;
    for (std::size_t l = 0; l < r; ++l)
      for (int e = 0; e <= d; ++e) {
        if (e == 1) continue;
        bool already = std::all_of(cur.begin(), cur.end(), [&](const Cur& P) { return P.c[l][e].code == 0; });
        if (!already) {
          std::vector<Cur> next;
          std::size_t s = 0;
          while (s < cur.size()) {
            bool made = false;
            for (std::size_t len = 1; s + len <= cur.size() && len <= 16; ++len) {
              Vec a, b;
              for (std::size_t t = s; t < s + len; ++t) {
                a.push_back(cur[t].c[l][e]);
                b.push_back(cur[t].c[0][1]);
              }
              AtomicPair xy;
              try {
                xy = atomic_pair(fp, a, b, e, d, inner, rng);
              } catch (const Error& err) {
                if (!recoverable(err)) throw;
                continue;
              }
              Vec al(n, F.zero()), be(n, F.zero());
              for (std::size_t t = 0; t < len; ++t) {
                al = added(F, al, scaled(F, cur[s + t].alpha, xy.x[t]));
                be = added(F, be, scaled(F, cur[s + t].beta, xy.y[t]));
              }
              next.push_back({al, be, coeffs_of(al, be)});
              s += len;
              made = true;
              break;
            }
            if (!made) break;
          }
          if (next.empty()) {
            blocked = "blocking ran out of planes at coefficient c_" + std::to_string(e) + " of form " +
                      std::to_string(l + 1) + " (" + std::to_string(n) + " planes supplied)";
            return std::nullopt;
          }
          cur = std::move(next);
        }
        done.emplace_back(l, e);
        for (const auto& P : cur) {
          for (auto [dl, de] : done)
            require(P.c[dl][de].code == 0, ErrorKind::HypothesisViolated, "a killed coefficient came back");
          require(P.c[0][1].code != 0, ErrorKind::HypothesisViolated, "c_1 of the first form vanished");
        }
      }
    return cur.front();
  };

  // All coefficient conditions at once: alpha from the e = d equations, then
  // beta from the remaining ones, which are diagonal in beta once alpha is fixed.
  auto direct = [&]() -> std::optional<Cur> {
    PointQuery qa;
    for (std::size_t l = 0; l < r; ++l) {
      Vec coef(n);
      for (std::size_t j = 0; j < n; ++j) coef[j] = C[l][j][d];
      Form fa = diagonal_pair_form(fp, coef, Vec(n, F.one()), 0, d);
      if (!fa.is_zero()) qa.zeros.push_back(std::move(fa));
    }
    Vec found_beta;
    qa.accept = [&](const Vec& alpha) {
      PointQuery qb;
      for (std::size_t l = 0; l < r; ++l)
        for (int e = 0; e < d; ++e) {
          if (e == 1) continue;
          Vec coef(n);
          for (std::size_t j = 0; j < n; ++j) coef[j] = C[l][j][e];
          Form fb = diagonal_pair_form(fp, coef, alpha, e, d);
          if (!fb.is_zero()) qb.zeros.push_back(std::move(fb));
        }
      Vec c1(n);
      for (std::size_t j = 0; j < n; ++j) c1[j] = C[0][j][1];
      Form g = diagonal_pair_form(fp, c1, alpha, 1, d);
      if (g.is_zero()) return false;
      qb.nonzero.push_back(std::move(g));
      auto beta = find_point(fp, static_cast<int>(n), qb, inner, rng);
      if (!beta) return false;
      found_beta = *beta;
      return true;
    };
    auto alpha = find_point(fp, static_cast<int>(n), qa, budget, rng);
    if (!alpha) return std::nullopt;
    return Cur{*alpha, found_beta, coeffs_of(*alpha, found_beta)};
  };

  std::optional<Cur> res = blocking();
  if (!res) res = direct();
  if (!res) fail(ErrorKind::BudgetExceeded, blocked + "; direct search found no adapted subplane either");
  Cur P = *res;
  Vec alpha = scaled(F, P.alpha, F.inv(P.c[0][1]));
  AdaptedPlane out;
  out.alpha = alpha;
  out.beta = P.beta;
  out.v = Vec(N, F.zero());
  out.w = Vec(N, F.zero());
  for (std::size_t j = 0; j < n; ++j) {
    out.v = added(F, out.v, scaled(F, planes[j].v, alpha[j]));
    out.w = added(F, out.w, scaled(F, planes[j].w, P.beta[j]));
  }
  for (std::size_t i = 0; i < r; ++i) {
    Vec c = plane_coeffs(forms[i], out.v, out.w);
    for (int e = 0; e <= d; ++e) {
      Elem want = (i == 0 && e == 1) ? F.one() : F.zero();
      require(c[e] == want, ErrorKind::HypothesisViolated, "adapted subplane fails its coefficient check");
    }
  }
  return out;
}

Plane orth_plane(const FormTuple& ft, std::size_t i, const Subspace& Fs, const Budget& budget, Rng& rng) {
  require(i < ft.size(), ErrorKind::InvalidArgument, "form index out of range");
  const FieldPtr fp = ft.field_ptr();
  const FqField& F = *fp;
  const int N = ft.nvars();
  const int d = ft[i].degree();
  require(d >= 1, ErrorKind::InvalidArgument, "orthogonal planes need positive degree");
  auto idx = complement_indices(F, Fs.basis(), N);
  Mat comp;
  for (auto k : idx) {
    Vec u(N, F.zero());
    u[k] = F.one();
    comp.push_back(std::move(u));
  }
  const int c = static_cast<int>(comp.size());
  require(c >= 2, ErrorKind::DimensionMismatch, "no room for a plane outside F");

  // Conditions on (v, w) in W x W, v coordinates first.
  std::vector<Form> pair_zeros;
  auto add_all_pieces = [&](const Form& h) {
    for (int b = 0; b <= h.degree(); ++b) {
      Form piece = bidegree_piece(h, b);
      if (!piece.is_zero()) pair_zeros.push_back(std::move(piece));
    }
  };
  for (std::size_t j = i; j < ft.size(); ++j)
    for (const auto& h : coefficient_forms(ft[j], Fs.basis(), comp, 1, ft[j].degree())) add_all_pieces(h);
  for (std::size_t j = i + 1; j < ft.size(); ++j) {
    Form fw = pullback(ft[j], comp);
    if (ft[j].degree() < d) add_all_pieces(fw);
    else {
      Form D = d_operator(fw);
      if (!D.is_zero()) pair_zeros.push_back(std::move(D));
    }
  }
  const Form Dfi = d_operator(pullback(ft[i], comp));
  if (Dfi.is_zero()) fail(ErrorKind::NoSolutionFound, "D f_i vanishes identically on the complement");

  Mat vpart;
  for (int k = 0; k < c; ++k) {
    Vec u(2 * c, F.zero());
    u[k] = F.one();
    vpart.push_back(std::move(u));
  }
  PointQuery stage1;
  std::vector<Form> mixed;
  for (const auto& P : pair_zeros) {
    // P is bihomogeneous; a term with no w coordinate means it is pure in v.
    const auto& e0 = P.terms().begin()->first;
    int wdeg = 0;
    for (int k = c; k < 2 * c; ++k) wdeg += e0[k];
    if (wdeg == 0) stage1.zeros.push_back(pullback(P, vpart));
    else mixed.push_back(P);
  }
  const Budget inner = inner_budget(budget, 8);
  Vec found_w;
  stage1.accept = [&](const Vec& v) {
    Form g = substitute_prefix(Dfi, v);
    if (g.is_zero()) return false;
    PointQuery stage2;
    for (const auto& P : mixed) stage2.zeros.push_back(substitute_prefix(P, v));
    stage2.nonzero.push_back(std::move(g));
    stage2.accept = [&](const Vec& w) { return independent(F, Mat{v, w}, c); };
    auto w = find_point(fp, c, stage2, inner, rng);
    if (!w) return false;
    found_w = *w;
    return true;
  };
  auto v = find_point(fp, c, stage1, budget, rng);
  if (!v) fail(ErrorKind::NoSolutionFound, "no orthogonal plane for form " + std::to_string(i + 1));

  Plane M{combine(F, comp, *v, N), combine(F, comp, found_w, N)};
  Subspace Ms(fp, N, Mat{M.v, M.w});
  require(independent(F, [&] {
            Mat all = Fs.basis();
            all.push_back(M.v);
            all.push_back(M.w);
            return all;
          }(), N),
          ErrorKind::HypothesisViolated, "orthogonal plane meets F");
  for (std::size_t j = i; j < ft.size(); ++j) {
    require(is_orthogonal(ft[j], {Fs, Ms}), ErrorKind::HypothesisViolated, "orthogonal plane fails orthogonality");
    Vec cj = plane_coeffs(ft[j], M.v, M.w);
    if (ft[j].degree() < d)
      require(restrict(ft[j], Ms).is_zero(), ErrorKind::HypothesisViolated, "lower form survives on the plane");
    else if (j > i)
      require(cj[1].code == 0, ErrorKind::HypothesisViolated, "c_1 of a later form is nonzero on the plane");
    else
      require(cj[1].code != 0, ErrorKind::HypothesisViolated, "c_1 of f_i vanishes on the plane");
  }
  return M;
}

}  // namespace brauer
