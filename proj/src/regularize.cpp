#include <algorithm>
#include <charconv>

#include "brauer/error.hpp"
#include "brauer/normalform.hpp"
#include "brauer/strength.hpp"

namespace brauer {

Phi Phi::constant(int k) {
  return Phi{[k](const MultiDegree&) { return k; }, "const:" + std::to_string(k)};
}

Phi Phi::parse(const std::string& text) {
  const std::string prefix = "const:";
  if (text.rfind(prefix, 0) == 0) {
    int k = 0;
    const char* b = text.data() + prefix.size();
    const char* e = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(b, e, k);
    if (ec == std::errc() && ptr == e && b != e && k >= 0) return constant(k);
  }
  fail(ErrorKind::ParseError, "unsupported threshold '" + text + "' (expected const:K)");
}

namespace {

using Monomial = std::vector<int>;

void add_into(const FqField& F, Expr& acc, const Monomial& m, Elem c) {
  if (c.code == 0) return;
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second = F.add(it->second, c);
    if (it->second.code == 0) acc.erase(it);
  }
}

Expr mul(const FqField& F, const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m;
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      add_into(F, out, m, F.mul(ca, cb));
    }
  return out;
}

// Replaces every occurrence of member `id` by `repl`.
Expr substitute(const FqField& F, const Expr& e, int id, const Expr& repl) {
  Expr out;
  for (const auto& [m, c] : e) {
    Monomial rest;
    int k = 0;
    for (int x : m) (x == id ? ++k : (rest.push_back(x), 0));
    Expr term{{rest, c}};
    for (int j = 0; j < k; ++j) term = mul(F, term, repl);
    for (const auto& [tm, tc] : term) add_into(F, out, tm, tc);
  }
  return out;
}

struct LowCombination {
  std::vector<Elem> comb;
  StrengthResult strength;
};

// First same-degree combination (first nonzero coefficient 1) of strength at
// most `threshold`. Throws BudgetExceeded when an undecided combination could
// still be that small.
std::optional<LowCombination> low_combination(const FormTuple& ft, int threshold, const Budget& budget) {
  const FqField& F = ft.field();
  std::map<int, std::vector<std::size_t>, std::greater<int>> groups;
  for (std::size_t i = 0; i < ft.size(); ++i) groups[ft[i].degree()].push_back(i);
  for (const auto& [deg, members] : groups) {
    const std::size_t t = members.size();
    for (std::size_t lead = 0; lead < t; ++lead) {
      std::vector<std::uint32_t> digit(t - lead - 1, 0);
      while (true) {
        std::vector<Elem> comb(ft.size(), F.zero());
        comb[members[lead]] = F.one();
        for (std::size_t k = 0; k < digit.size(); ++k) comb[members[lead + 1 + k]] = F.from_code(digit[k]);
        Form u(ft.field_ptr(), ft.nvars(), deg);
        for (auto m : members)
          if (comb[m].code != 0) u = u + ft[m].scaled(comb[m]);
        StrengthResult r = strength_exhaustive(u, budget);
        if (r.exact() && r.value <= threshold) return LowCombination{comb, r};
        if (!r.exact() && r.value <= threshold)
          fail(ErrorKind::BudgetExceeded, "strength of a combination in degree " + std::to_string(deg) +
                                              " undecided at threshold " + std::to_string(threshold));
        std::size_t k = digit.size();
        while (k > 0 && digit[k - 1] == F.q() - 1) digit[--k] = 0;
        if (k == 0) break;
        ++digit[k - 1];
      }
    }
  }
  return std::nullopt;
}

FormTuple tuple_of(const FormTuple& ft, const std::vector<Form>& members, std::vector<int>& ids) {
  std::stable_sort(ids.begin(), ids.end(),
                   [&](int a, int b) { return members[a].degree() > members[b].degree(); });
  std::vector<Form> forms;
  for (int id : ids) forms.push_back(members[id]);
  return FormTuple(ft.field_ptr(), ft.nvars(), std::move(forms));
}

}  // namespace

Form expand(const Expr& e, const std::vector<Form>& members, int degree) {
  require(!members.empty(), ErrorKind::InvalidArgument, "no members to expand over");
  const FieldPtr& fp = members.front().field_ptr();
  const int n = members.front().nvars();
  Form out(fp, n, degree);
  for (const auto& [m, c] : e) {
    Form term = Form::constant(fp, n, c);
    for (int id : m) term = term * members.at(id);
    require(term.degree() == degree || term.is_zero(), ErrorKind::DimensionMismatch,
            "expression monomial has the wrong degree");
    out = out + term;
  }
  return out;
}

RegularizeResult regularize(const FormTuple& ft, const Phi& phi, const Budget& budget) {
  const FqField& F = ft.field();
  RegularizeResult res;
  res.members = ft.forms();
  std::vector<int> ids(ft.size());
  for (std::size_t i = 0; i < ft.size(); ++i) {
    ids[i] = static_cast<int>(i);
    res.expressions.push_back(Expr{{Monomial{static_cast<int>(i)}, F.one()}});
  }
  FormTuple cur = tuple_of(ft, res.members, ids);
  res.trail.push_back(cur.multidegree());

  while (true) {
    const MultiDegree md = cur.multidegree();
    auto low = low_combination(cur, phi(md), budget);
    if (!low) break;

    std::size_t b = cur.size();
    for (std::size_t k = 0; k < cur.size(); ++k)
      if (low->comb[k].code != 0) b = k;
    const int old_id = ids[b];
    const Elem cb_inv = F.inv(low->comb[b]);

    // f_b = c_b^{-1} (sum g_j h_j - sum_{a != b} c_a f_a)
    Expr repl;
    std::vector<int> new_ids;
    for (const auto& [g, h] : low->strength.witness) {
      const int gi = static_cast<int>(res.members.size());
      res.members.push_back(g);
      const int hi = gi + 1;
      res.members.push_back(h);
      new_ids.push_back(gi);
      new_ids.push_back(hi);
      add_into(F, repl, Monomial{std::min(gi, hi), std::max(gi, hi)}, cb_inv);
    }
    for (std::size_t a = 0; a < cur.size(); ++a)
      if (a != b && low->comb[a].code != 0)
        add_into(F, repl, Monomial{ids[a]}, F.neg(F.mul(cb_inv, low->comb[a])));

    require(expand(repl, res.members, res.members[old_id].degree()) == res.members[old_id],
            ErrorKind::HypothesisViolated, "replacement does not reproduce the split member");
    for (auto& e : res.expressions) e = substitute(F, e, old_id, repl);

    ids.erase(ids.begin() + static_cast<long>(b));
    ids.insert(ids.end(), new_ids.begin(), new_ids.end());
    cur = tuple_of(ft, res.members, ids);
    ++res.splits;
    const MultiDegree next = cur.multidegree();
    require(next < md, ErrorKind::HypothesisViolated,
            "multi-degree did not decrease: " + md.to_string() + " -> " + next.to_string());
    res.trail.push_back(next);
  }

  res.g = cur;
  res.final_ids = ids;
  for (std::size_t i = 0; i < ft.size(); ++i) {
    for (const auto& [m, c] : res.expressions[i])
      for (int id : m)
        require(std::find(ids.begin(), ids.end(), id) != ids.end(), ErrorKind::HypothesisViolated,
                "expression uses a retired member");
    require(expand(res.expressions[i], res.members, ft[i].degree()) == ft[i], ErrorKind::HypothesisViolated,
            "expression for f" + std::to_string(i + 1) + " does not expand back");
  }
  return res;
}

ClosureBound closure_codim_bound(const FormTuple& ft, const Phi& phi, const Budget& budget, Rng& rng,
                                 bool with_chart) {
  ClosureBound out;
  out.reg = regularize(ft, phi, budget);
  out.bound = static_cast<int>(out.reg.g.size());
  out.contained = true;
  for (const auto& e : out.reg.expressions)
    if (e.count(Monomial{})) out.contained = false;
  require(out.contained, ErrorKind::HypothesisViolated, "an expression has a constant term");
  if (with_chart && out.reg.g.size() > 0) {
    try {
      Form one = Form::constant(ft.field_ptr(), ft.nvars(), ft.field().one());
      out.chart = normal_form(out.reg.g, one, budget, rng);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded && e.kind() != ErrorKind::NoSolutionFound &&
          e.kind() != ErrorKind::NoWitness && e.kind() != ErrorKind::CharTooSmall)
        throw;
    }
  }
  return out;
}

}  // namespace brauer
