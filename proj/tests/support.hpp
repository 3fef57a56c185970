#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance binary. Nothing here calls the search code under test.

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "brauer/field.hpp"
#include "brauer/poly.hpp"

namespace brauer::testing {

inline FieldPtr field_of_order(std::uint32_t q) {
  std::uint32_t p = 2;
  while (q % p) ++p;
  std::uint32_t e = 0;
  for (std::uint32_t r = q; r > 1; r /= p) ++e;
  return FqField::make(p, e);
}

/// Form flattened for fast repeated evaluation.
struct FlatForm {
  const FqField* field;
  std::vector<std::pair<Exponents, Elem>> terms;

  explicit FlatForm(const Form& f) : field(&f.field()) {
    for (const auto& [e, c] : f.terms()) terms.emplace_back(e, c);
  }
  Elem operator()(const Vec& x) const {
    Elem s = field->zero();
    for (const auto& [e, c] : terms) {
      Elem t = c;
      for (std::size_t i = 0; i < e.size() && t.code != 0; ++i)
        if (e[i]) t = field->mul(t, field->pow(x[i], e[i]));
      s = field->add(s, t);
    }
    return s;
  }
};

/// Visits F_q^n in code order, last coordinate fastest; stops when visit
/// returns true and reports whether it did.
inline bool odometer(const FqField& F, int n, const std::function<bool(const Vec&)>& visit) {
  std::vector<Elem> elems = F.elements();
  std::vector<std::size_t> digit(n, 0);
  Vec x(n, F.zero());
  while (true) {
    if (visit(x)) return true;
    int k = n - 1;
    while (k >= 0 && ++digit[k] == elems.size()) {
      digit[k] = 0;
      x[k] = elems[0];
      --k;
    }
    if (k < 0) return false;
    x[k] = elems[digit[k]];
  }
}

/// Every point of F_q^n where all forms vanish.
inline std::set<Vec> zero_set(const FormTuple& ft) {
  std::vector<FlatForm> fs;
  for (const auto& f : ft.forms()) fs.emplace_back(f);
  std::set<Vec> out;
  odometer(ft.field(), ft.nvars(), [&](const Vec& x) {
    for (const auto& f : fs)
      if (f(x).code != 0) return false;
    out.insert(x);
    return false;
  });
  return out;
}

/// Does sum a_i x_i^d have a nonzero zero?
inline bool diagonal_solvable_brute(const FqField& F, const Vec& a, int d) {
  std::vector<Elem> pw(F.q());
  for (Elem x : F.elements()) pw[x.code] = F.pow(x, d);
  const int n = static_cast<int>(a.size());
  return odometer(F, n, [&](const Vec& x) {
    if (is_zero_vec(x)) return false;
    Elem s = F.zero();
    for (int i = 0; i < n; ++i) s = F.add(s, F.mul(a[i], pw[x[i].code]));
    return s.code == 0;
  });
}

/// Non-decreasing sequences of length n over the alphabet.
inline void for_each_multiset(const std::vector<Elem>& alphabet, int n, const std::function<void(const Vec&)>& visit) {
  Vec cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == n) {
      visit(cur);
      return;
    }
    for (std::size_t k = from; k < alphabet.size(); ++k) {
      cur.push_back(alphabet[k]);
      rec(k);
      cur.pop_back();
    }
  };
  rec(0);
}

/// Representatives of the d-th power classes, computed by orbit search.
inline std::vector<Elem> power_class_reps_brute(const FqField& F, int d) {
  std::vector<Elem> reps;
  std::set<Elem> covered;
  std::set<Elem> powers;
  for (Elem x : F.elements())
    if (x.code) powers.insert(F.pow(x, d));
  for (Elem a : F.elements()) {
    if (a.code == 0 || covered.count(a)) continue;
    reps.push_back(a);
    for (Elem s : powers) covered.insert(F.mul(a, s));
  }
  return reps;
}

/// Least N such that every diagonal degree-d form with nonzero coefficients
/// in more than N variables has a nonzero zero.
inline int nkd_brute(const FqField& F, int d) {
  std::vector<Elem> reps = power_class_reps_brute(F, d);
  int best = 0;
  for (int n = 1; n <= d + 1; ++n) {
    bool some_unsolvable = false;
    for_each_multiset(reps, n, [&](const Vec& a) {
      if (!some_unsolvable && !diagonal_solvable_brute(F, a, d)) some_unsolvable = true;
    });
    if (some_unsolvable) best = n;
  }
  return best;
}

/// Random form with every monomial coefficient uniform.
template <class R>
Form random_form(const FieldPtr& fp, int nvars, int d, R& rng) {
  Form f(fp, nvars, d);
  for (const auto& e : monomials(nvars, d)) f.add_term(e, fp->from_code(static_cast<std::uint32_t>(rng.below(fp->q()))));
  return f;
}

/// Random diagonal form with nonzero coefficients.
template <class R>
Form random_diagonal(const FieldPtr& fp, int nvars, int d, R& rng) {
  Form f(fp, nvars, d);
  for (int i = 0; i < nvars; ++i)
    f.add_term(unit_exponents(nvars, i, d), fp->from_code(1 + static_cast<std::uint32_t>(rng.below(fp->q() - 1))));
  return f;
}

/// Sum over coordinate pairs (x_{2k+1}, x_{2k+2}) of random binary forms.
template <class R>
Form random_block_form(const FieldPtr& fp, int nvars, int d, R& rng) {
  Form f(fp, nvars, d);
  for (int b = 0; b + 1 < nvars; b += 2)
    for (const auto& e2 : monomials(2, d)) {
      Exponents e(nvars, 0);
      e[b] = e2[0];
      e[b + 1] = e2[1];
      f.add_term(e, fp->from_code(static_cast<std::uint32_t>(rng.below(fp->q()))));
    }
  return f;
}

}  // namespace brauer::testing
