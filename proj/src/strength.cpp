#include "brauer/strength.hpp"

#include <cmath>
#include <map>

#include "brauer/error.hpp"
#include "brauer/rng.hpp"

namespace brauer {

namespace {

struct NodeCounter {
  long used = 0;
  long limit = 0;
  bool exhausted = false;
  bool take() {
    if (++used > limit) exhausted = true;
    return !exhausted;
  }
};

// Solves f = sum_k g_k h_k for the h_k, or returns nullopt.
std::optional<std::vector<std::pair<Form, Form>>> solve_cofactors(const Form& f, const std::vector<Form>& gs) {
  const FqField& F = f.field();
  const int n = f.nvars();
  const int d = f.degree();
  auto rows_mon = monomials(n, d);
  std::map<Exponents, std::size_t, std::greater<Exponents>> row_of;
  for (std::size_t i = 0; i < rows_mon.size(); ++i) row_of[rows_mon[i]] = i;
  struct Col {
    std::size_t k;
    Exponents m;
  };
  std::vector<Col> cols;
  std::vector<Vec> colvecs;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    for (const auto& m : monomials(n, d - gs[k].degree())) {
      Vec col(rows_mon.size(), F.zero());
      Form prod = gs[k] * Form::monomial(f.field_ptr(), n, m, F.one());
      for (const auto& [e, c] : prod.terms()) col[row_of.at(e)] = c;
      cols.push_back({k, m});
      colvecs.push_back(std::move(col));
    }
  }
  Mat A(rows_mon.size(), Vec(cols.size(), F.zero()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows_mon.size(); ++i) A[i][j] = colvecs[j][i];
  }
  Vec rhs(rows_mon.size(), F.zero());
  for (const auto& [e, c] : f.terms()) rhs[row_of.at(e)] = c;
  auto x = solve_linear(F, A, rhs, cols.size());
  if (!x) return std::nullopt;
  std::vector<std::pair<Form, Form>> out;
  for (std::size_t k = 0; k < gs.size(); ++k) out.emplace_back(gs[k], Form(f.field_ptr(), n, d - gs[k].degree()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if ((*x)[j].code != 0) out[cols[j].k].second.add_term(cols[j].m, (*x)[j]);
  }
  std::erase_if(out, [](const auto& pr) { return pr.second.is_zero(); });
  return out;
}

// Visits every s x n matrix in reduced row echelon form with s pivots.
// The visitor returns true to stop.
bool for_each_rref(const FqField& F, int n, int s, NodeCounter& nodes, const std::function<bool(const Mat&)>& visit) {
  std::vector<int> pivots(s);
  std::function<bool(int, int)> choose = [&](int row, int start) -> bool {
    if (row == s) {
      // Free slots: entries right of each pivot in non-pivot columns.
      std::vector<std::pair<int, int>> slots;
      std::vector<bool> is_pivot(n, false);
      for (int p : pivots) is_pivot[p] = true;
      for (int r = 0; r < s; ++r) {
        for (int c = pivots[r] + 1; c < n; ++c) {
          if (!is_pivot[c]) slots.emplace_back(r, c);
        }
      }
      Mat m(s, Vec(n, F.zero()));
      for (int r = 0; r < s; ++r) m[r][pivots[r]] = F.one();
      std::vector<std::uint32_t> digit(slots.size(), 0);
      while (true) {
        if (!nodes.take()) return true;
        for (std::size_t t = 0; t < slots.size(); ++t) m[slots[t].first][slots[t].second] = Elem{digit[t]};
        if (visit(m)) return true;
        std::size_t t = slots.size();
        while (t > 0 && digit[t - 1] == F.q() - 1) digit[--t] = 0;
        if (t == 0) break;
        ++digit[t - 1];
      }
      return false;
    }
    for (int c = start; c <= n - (s - row); ++c) {
      pivots[row] = c;
      if (choose(row + 1, c + 1)) return true;
    }
    return false;
  };
  return choose(0, 0);
}

// Normalised (leading coefficient 1) nonzero forms of degree a, by index.
class NormalisedForms {
 public:
  NormalisedForms(const FieldPtr& field, int n, int a) : field_(field), n_(n), a_(a), mons_(monomials(n, a)) {
    const double q = field->q();
    double total = (std::pow(q, static_cast<double>(mons_.size())) - 1) / (q - 1);
    count_ = total > 1e15 ? -1 : static_cast<long long>(std::llround(total));
  }
  long long count() const { return count_; }
  int degree() const { return a_; }

  // The index enumerates leading position then trailing digits.
  Form at(long long idx) const {
    const std::uint32_t q = field_->q();
    const std::size_t N = mons_.size();
    std::size_t lead = 0;
    long long block = 0;
    for (lead = 0; lead < N; ++lead) {
      block = 1;
      for (std::size_t k = lead + 1; k < N; ++k) block *= q;
      if (idx < block) break;
      idx -= block;
    }
    Form f(field_, n_, a_);
    f.add_term(mons_[lead], field_->one());
    for (std::size_t k = N; k-- > lead + 1;) {
      f.add_term(mons_[k], Elem{static_cast<std::uint32_t>(idx % q)});
      idx /= q;
    }
    return f;
  }

 private:
  FieldPtr field_;
  int n_, a_;
  std::vector<Exponents> mons_;
  long long count_;
};

}  // namespace

bool verify_decomposition(const Form& f, const std::vector<std::pair<Form, Form>>& pairs) {
  Form sum(f.field_ptr(), f.nvars(), f.degree());
  for (const auto& [g, h] : pairs) {
    if (g.degree() <= 0 || g.degree() >= f.degree() || h.degree() <= 0 || h.degree() >= f.degree()) return false;
    if (g.degree() + h.degree() != f.degree() || g.nvars() != f.nvars() || h.nvars() != f.nvars()) return false;
    sum = sum + g * h;
  }
  return sum == f;
}

StrengthResult strength_exhaustive(const Form& f, const Budget& budget) {
  StrengthResult res;
  if (f.is_zero()) return res;
  if (f.degree() <= 1) {
    res.value = kInfiniteStrength;
    return res;
  }
  const FqField& F = f.field();
  const int n = f.nvars();
  const int d = f.degree();
  NodeCounter nodes{0, budget.strength_nodes};

  if (d <= 3) {
    // Every product has a linear factor, so f has strength <= s iff it
    // vanishes on the kernel of some s linearly independent linear forms.
    for (int s = 1; s <= n; ++s) {
      std::optional<std::vector<std::pair<Form, Form>>> found;
      for_each_rref(F, n, s, nodes, [&](const Mat& rows) {
        Mat ker = kernel_basis(F, rows, n);
        if (!pullback(f, ker).is_zero()) return false;
        std::vector<Form> gs;
        for (const auto& r : rows) gs.push_back(Form::linear(f.field_ptr(), r));
        found = solve_cofactors(f, gs);
        require(found.has_value(), ErrorKind::InvalidArgument, "strength: ideal membership without cofactors");
        return true;
      });
      if (found) {
        res.value = static_cast<int>(found->size());
        res.witness = std::move(*found);
        require(verify_decomposition(f, res.witness), ErrorKind::InvalidArgument, "strength witness failed");
        return res;
      }
      if (nodes.exhausted) {
        res.kind = StrengthResult::Kind::LowerBound;
        res.value = s;
        return res;
      }
    }
    fail(ErrorKind::InvalidArgument, "strength search exceeded the number of variables");
  }

  // General degree: tuples of distinct normalised factors of degree <= d/2.
  std::vector<NormalisedForms> families;
  long long total = 0;
  for (int a = 1; a <= d / 2; ++a) {
    families.emplace_back(f.field_ptr(), n, a);
    if (families.back().count() < 0) total = -1;
    if (total >= 0) total += families.back().count();
  }
  auto candidate = [&](long long idx) {
    for (const auto& fam : families) {
      if (idx < fam.count()) return fam.at(idx);
      idx -= fam.count();
    }
    fail(ErrorKind::InvalidArgument, "candidate index out of range");
  };
  for (int s = 1; s <= n; ++s) {
    if (total < 0 || total < s) break;
    std::vector<long long> idx(s);
    for (int k = 0; k < s; ++k) idx[k] = k;
    while (true) {
      if (!nodes.take()) {
        res.kind = StrengthResult::Kind::LowerBound;
        res.value = s;
        return res;
      }
      std::vector<Form> gs;
      for (auto i : idx) gs.push_back(candidate(i));
      if (auto found = solve_cofactors(f, gs)) {
        res.value = static_cast<int>(found->size());
        res.witness = std::move(*found);
        require(verify_decomposition(f, res.witness), ErrorKind::InvalidArgument, "strength witness failed");
        return res;
      }
      int k = s - 1;
      while (k >= 0 && idx[k] == total - s + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  res.kind = StrengthResult::Kind::LowerBound;
  res.value = n;
  return res;
}

StrengthResult tuple_strength(const FormTuple& ft, const Budget& budget) {
  StrengthResult best;
  best.value = kInfiniteStrength;
  std::optional<int> lower;  // smallest lower bound seen among inexact combinations
  const FqField& F = ft.field();
  std::map<int, std::vector<std::size_t>, std::greater<int>> groups;
  for (std::size_t i = 0; i < ft.size(); ++i) groups[ft[i].degree()].push_back(i);
  for (const auto& [deg, members] : groups) {
    const std::size_t t = members.size();
    // Nontrivial combinations with first nonzero coefficient 1.
    for (std::size_t lead = 0; lead < t; ++lead) {
      std::vector<std::uint32_t> digit(t - lead - 1, 0);
      while (true) {
        std::vector<Elem> comb(ft.size(), F.zero());
        comb[members[lead]] = F.one();
        for (std::size_t k = 0; k < digit.size(); ++k) comb[members[lead + 1 + k]] = Elem{digit[k]};
        Form u(ft.field_ptr(), ft.nvars(), deg);
        for (auto m : members) {
          if (comb[m].code != 0) u = u + ft[m].scaled(comb[m]);
        }
        StrengthResult r = strength_exhaustive(u, budget);
        if (r.exact() && r.value < best.value) {
          best = r;
          best.combination = comb;
          if (best.value == 0) return best;
        } else if (!r.exact() && (!lower || r.value < *lower)) {
          lower = r.value;
          if (best.combination.empty()) best.combination = comb;
        }
        std::size_t k = digit.size();
        while (k > 0 && digit[k - 1] == F.q() - 1) digit[--k] = 0;
        if (k == 0) break;
        ++digit[k - 1];
      }
    }
  }
  if (lower && *lower < best.value) {
    StrengthResult lb;
    lb.kind = StrengthResult::Kind::LowerBound;
    lb.value = *lower;
    lb.combination = best.combination;
    return lb;
  }
  return best;
}

int diagonal_rank_bound(const Form& f) {
  require(f.degree() >= 1 && !f.is_zero(), ErrorKind::NotDiagonal, "diagonal form needs positive degree");
  for (const auto& [e, c] : f.terms()) {
    int nonzero = 0;
    for (auto x : e) nonzero += x != 0;
    require(nonzero == 1, ErrorKind::NotDiagonal, "term is not a pure power: " + format_infix(f));
  }
  require(f.degree() % f.field().p() != 0, ErrorKind::CharDividesDegree,
          "degree " + std::to_string(f.degree()) + " is a multiple of the characteristic");
  const int n = static_cast<int>(f.size());
  return (n + 1) / 2;
}

CodimEstimate jacobian_codim_probe(const Form& f, long trials, std::uint64_t seed) {
  CodimEstimate out;
  const FqField& F = f.field();
  const int n = f.nvars();
  std::vector<Form> partials;
  for (int i = 0; i < n; ++i) {
    Form p = partial(f, i);
    if (!p.is_zero()) partials.push_back(std::move(p));
  }
  if (partials.empty()) return out;
  if (partials.front().degree() == 0) {
    // A nonzero constant partial: the locus is empty.
    out.codim = n;
    out.exact_linear = true;
    return out;
  }
  if (partials.front().degree() == 1) {
    Mat rows;
    for (const auto& p : partials) {
      Vec r(n, F.zero());
      for (const auto& [e, c] : p.terms()) {
        for (int i = 0; i < n; ++i) {
          if (e[i]) r[i] = c;
        }
      }
      rows.push_back(std::move(r));
    }
    out.codim = static_cast<int>(rank(F, rows, n));
    out.exact_linear = true;
    return out;
  }
  int m = 1;
  std::uint64_t Q = F.q();
  while (Q < 32 && Q * F.q() <= 65536) {
    Q *= F.q();
    ++m;
  }
  FieldExtension ext = make_extension(f.field_ptr(), m);
  std::vector<Form> lifted;
  for (const auto& p : partials) lifted.push_back(base_change(p, ext.embedding));
  Rng rng(seed);
  long hits = 0;
  Vec x(n);
  for (long t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i) x[i] = Elem{static_cast<std::uint32_t>(rng.below(Q))};
    bool all = true;
    for (const auto& p : lifted) {
      if (p.eval(x).code != 0) {
        all = false;
        break;
      }
    }
    hits += all;
  }
  out.sample_field_order = static_cast<std::uint32_t>(Q);
  out.trials = trials;
  out.hits = hits;
  double est;
  if (hits == 0) {
    est = std::log(static_cast<double>(std::max<long>(trials, 1))) / std::log(static_cast<double>(Q));
    est = std::ceil(est);
  } else {
    est = std::round(-std::log(static_cast<double>(hits) / static_cast<double>(trials)) / std::log(static_cast<double>(Q)));
  }
  out.codim = std::clamp(static_cast<int>(est), 0, n);
  return out;
}

}  // namespace brauer
