#include "brauer/poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "brauer/error.hpp"

namespace brauer {

Form::Form(FieldPtr field, int nvars, int degree) : field_(std::move(field)), nvars_(nvars), degree_(degree) {
  require(field_ != nullptr, ErrorKind::InvalidArgument, "form needs a field");
  require(nvars >= 0 && degree >= 0, ErrorKind::InvalidArgument, "negative form shape");
  require(degree <= 255, ErrorKind::InvalidArgument, "degree too large");
}

Exponents unit_exponents(int nvars, int i, int power) {
  Exponents e(nvars, 0);
  e[i] = static_cast<std::uint8_t>(power);
  return e;
}

Form Form::variable(FieldPtr field, int nvars, int i) {
  require(i >= 0 && i < nvars, ErrorKind::InvalidArgument, "variable index out of range");
  Form f(std::move(field), nvars, 1);
  f.add_term(unit_exponents(nvars, i, 1), f.field().one());
  return f;
}

Form Form::constant(FieldPtr field, int nvars, Elem c) {
  Form f(std::move(field), nvars, 0);
  f.add_term(Exponents(nvars, 0), c);
  return f;
}

Form Form::monomial(FieldPtr field, int nvars, const Exponents& e, Elem c) {
  int d = std::accumulate(e.begin(), e.end(), 0);
  Form f(std::move(field), nvars, d);
  f.add_term(e, c);
  return f;
}

Form Form::linear(FieldPtr field, std::span<const Elem> coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Form f(std::move(field), n, 1);
  for (int i = 0; i < n; ++i) f.add_term(unit_exponents(n, i, 1), coeffs[i]);
  return f;
}

Elem Form::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Elem{0} : it->second;
}

void Form::add_term(const Exponents& e, Elem c) {
  require(static_cast<int>(e.size()) == nvars_, ErrorKind::DimensionMismatch, "exponent vector has wrong length");
  if (c.code == 0) return;
  int d = 0;
  for (auto x : e) d += x;
  require(d == degree_, ErrorKind::InvalidArgument,
          "term of degree " + std::to_string(d) + " in a form of degree " + std::to_string(degree_));
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = field_->add(it->second, c);
    if (it->second.code == 0) terms_.erase(it);
  }
}

Elem Form::eval(std::span<const Elem> x) const {
  require(static_cast<int>(x.size()) == nvars_, ErrorKind::DimensionMismatch, "evaluation point has wrong length");
  const FqField& F = *field_;
  const std::uint32_t q1 = F.q() - 1;
  Elem s = F.zero();
  for (const auto& [e, c] : terms_) {
    // Multiply via discrete logs; any zero base with positive exponent kills the term.
    std::uint64_t lg = F.log(c);
    bool zero = false;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (x[i].code == 0) {
        zero = true;
        break;
      }
      lg += static_cast<std::uint64_t>(F.log(x[i])) * e[i];
    }
    if (!zero) s = F.add(s, F.exp(lg % q1));
  }
  return s;
}

std::vector<bool> Form::occurring() const {
  std::vector<bool> out(nvars_, false);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) {
      if (e[i]) out[i] = true;
    }
  }
  return out;
}

Form Form::operator+(const Form& o) const {
  require(nvars_ == o.nvars_ && degree_ == o.degree_, ErrorKind::DimensionMismatch, "adding forms of different shape");
  Form out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Form Form::operator-(const Form& o) const { return *this + o.scaled(field_->neg(field_->one())); }

Form Form::operator*(const Form& o) const {
  require(nvars_ == o.nvars_, ErrorKind::DimensionMismatch, "multiplying forms in different dimensions");
  Form out(field_, nvars_, degree_ + o.degree_);
  Exponents e(nvars_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = static_cast<std::uint8_t>(a[i] + b[i]);
      out.add_term(e, field_->mul(ca, cb));
    }
  }
  return out;
}

Form Form::scaled(Elem c) const {
  Form out(field_, nvars_, degree_);
  if (c.code == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, field_->mul(v, c));
  return out;
}

bool Form::operator==(const Form& o) const {
  if (nvars_ != o.nvars_ || degree_ != o.degree_) return false;
  if (field_ && o.field_ && !field_->same_as(*o.field_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  return std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first && a.second == b.second; });
}

// ---------------------------------------------------------------------------

MultiDegree::MultiDegree(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int d : entries_) require(d >= 1, ErrorKind::InvalidArgument, "multi-degree entries must be >= 1");
  std::sort(entries_.begin(), entries_.end(), std::greater<int>());
}

std::string MultiDegree::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i]);
  }
  return out + ")";
}

std::strong_ordering operator<=>(const MultiDegree& a, const MultiDegree& b) {
  return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                b.entries_.end());
}

FormTuple::FormTuple(FieldPtr field, int nvars, std::vector<Form> forms)
    : field_(std::move(field)), nvars_(nvars), forms_(std::move(forms)) {
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    require(forms_[i].nvars() == nvars_, ErrorKind::DimensionMismatch, "tuple members must share nvars");
    require(forms_[i].field().same_as(*field_), ErrorKind::InvalidArgument, "tuple members must share the field");
    if (i) {
      require(forms_[i].degree() <= forms_[i - 1].degree(), ErrorKind::InvalidArgument,
              "tuple degrees must be non-increasing");
    }
  }
}

FormTuple FormTuple::sorted(FieldPtr field, int nvars, std::vector<Form> forms) {
  std::stable_sort(forms.begin(), forms.end(), [](const Form& a, const Form& b) { return a.degree() > b.degree(); });
  return FormTuple(std::move(field), nvars, std::move(forms));
}

MultiDegree FormTuple::multidegree() const {
  std::vector<int> d;
  for (const auto& f : forms_) d.push_back(f.degree());
  return MultiDegree(std::move(d));
}

Subspace::Subspace(FieldPtr field, int ambient, Mat basis)
    : field_(std::move(field)), ambient_(ambient), basis_(std::move(basis)) {
  for (const auto& v : basis_) {
    require(static_cast<int>(v.size()) == ambient_, ErrorKind::DimensionMismatch, "basis vector has wrong length");
  }
  require(independent(*field_, basis_, ambient_), ErrorKind::DependentVectors, "subspace basis is dependent");
}

Subspace Subspace::full(FieldPtr field, int ambient) {
  Mat basis;
  for (int i = 0; i < ambient; ++i) {
    Vec e(ambient, field->zero());
    e[i] = field->one();
    basis.push_back(std::move(e));
  }
  return Subspace(std::move(field), ambient, std::move(basis));
}

Subspace Subspace::direct_sum(const Subspace& o) const {
  require(ambient_ == o.ambient_, ErrorKind::DimensionMismatch, "subspaces live in different spaces");
  Mat b = basis_;
  b.insert(b.end(), o.basis_.begin(), o.basis_.end());
  return Subspace(field_, ambient_, std::move(b));
}

Vec Subspace::embed(std::span<const Elem> coords) const { return combine(*field_, basis_, coords, ambient_); }

// ---------------------------------------------------------------------------

namespace {

using Sparse = TermMap;

Sparse sparse_mul(const FqField& F, const Sparse& a, const Sparse& b, std::size_t width) {
  Sparse out;
  Exponents e(width);
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      for (std::size_t i = 0; i < width; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      Elem c = F.mul(ca, cb);
      auto [it, inserted] = out.try_emplace(e, c);
      if (!inserted) {
        it->second = F.add(it->second, c);
        if (it->second.code == 0) out.erase(it);
      }
    }
  }
  return out;
}

}  // namespace

Form pullback(const Form& f, const Mat& basis) {
  const FqField& F = f.field();
  const int n = f.nvars();
  const int k = static_cast<int>(basis.size());
  for (const auto& b : basis) {
    require(static_cast<int>(b.size()) == n, ErrorKind::DimensionMismatch, "pullback basis vector has wrong length");
  }
  std::vector<Sparse> lin(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      if (basis[j][i].code != 0) lin[i].emplace(unit_exponents(k, j, 1), basis[j][i]);
    }
  }
  std::vector<std::vector<Sparse>> powers(n);
  auto power = [&](int i, int e) -> const Sparse& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(Sparse{{Exponents(k, 0), F.one()}});
    while (static_cast<int>(p.size()) <= e) p.push_back(sparse_mul(F, p.back(), lin[i], k));
    return p[e];
  };
  Form out(f.field_ptr(), k, f.degree());
  for (const auto& [e, c] : f.terms()) {
    Sparse acc{{Exponents(k, 0), c}};
    for (int i = 0; i < n && !acc.empty(); ++i) {
      if (e[i] == 0) continue;
      if (lin[i].empty()) {
        acc.clear();
        break;
      }
      acc = sparse_mul(F, acc, power(i, e[i]), k);
    }
    for (const auto& [te, tc] : acc) out.add_term(te, tc);
  }
  return out;
}

Form restrict(const Form& f, const Subspace& W) {
  require(W.ambient() == f.nvars(), ErrorKind::DimensionMismatch,
          "restrict: subspace ambient dimension " + std::to_string(W.ambient()) + " vs " + std::to_string(f.nvars()) +
              " variables");
  return pullback(f, W.basis());
}

Vec plane_coeffs(const Form& f, std::span<const Elem> v, std::span<const Elem> w) {
  const FqField& F = f.field();
  Mat vw{Vec(v.begin(), v.end()), Vec(w.begin(), w.end())};
  require(static_cast<int>(v.size()) == f.nvars() && static_cast<int>(w.size()) == f.nvars(),
          ErrorKind::DimensionMismatch, "plane vectors have wrong length");
  require(independent(F, vw, f.nvars()), ErrorKind::DependentVectors, "plane vectors are dependent");
  Form g = pullback(f, vw);
  const int d = f.degree();
  Vec c(d + 1, F.zero());
  Elem total = F.zero();
  for (int e = 0; e <= d; ++e) {
    c[e] = g.coeff(Exponents{static_cast<std::uint8_t>(e), static_cast<std::uint8_t>(d - e)});
    total = F.add(total, c[e]);
  }
  require(c[d] == f.eval(v) && c[0] == f.eval(w) && total == f.eval(added(F, v, w)), ErrorKind::InvalidArgument,
          "plane coefficient identities failed");
  return c;
}

Form bidegree_piece(const Form& f, int a) {
  const int n = f.nvars();
  Mat doubled;
  for (int j = 0; j < 2 * n; ++j) {
    Vec b(n, f.field().zero());
    b[j % n] = f.field().one();
    doubled.push_back(std::move(b));
  }
  Form full = pullback(f, doubled);
  Form out(f.field_ptr(), 2 * n, f.degree());
  for (const auto& [e, c] : full.terms()) {
    int vdeg = 0;
    for (int i = 0; i < n; ++i) vdeg += e[i];
    if (vdeg == a) out.add_term(e, c);
  }
  return out;
}

Form d_operator(const Form& f) {
  require(f.degree() >= 1, ErrorKind::InvalidArgument, "D needs degree >= 1");
  return bidegree_piece(f, 1);
}

Form d2_operator(const Form& f) {
  require(f.degree() >= 2, ErrorKind::InvalidArgument, "D2 needs degree >= 2");
  return bidegree_piece(f, 2);
}

std::map<Exponents, Form, std::greater<Exponents>> split_leading(const Form& f, int k) {
  require(k >= 0 && k <= f.nvars(), ErrorKind::DimensionMismatch, "split_leading: bad split point");
  std::map<Exponents, Form, std::greater<Exponents>> out;
  const int rest = f.nvars() - k;
  for (const auto& [e, c] : f.terms()) {
    Exponents head(e.begin(), e.begin() + k);
    Exponents tail(e.begin() + k, e.end());
    int hd = 0;
    for (auto x : head) hd += x;
    auto it = out.find(head);
    if (it == out.end()) it = out.emplace(head, Form(f.field_ptr(), rest, f.degree() - hd)).first;
    it->second.add_term(tail, c);
  }
  return out;
}

Form relabel(const Form& f, int nvars, std::span<const int> target) {
  require(static_cast<int>(target.size()) == f.nvars(), ErrorKind::DimensionMismatch, "relabel map has wrong length");
  Form out(f.field_ptr(), nvars, f.degree());
  for (const auto& [e, c] : f.terms()) {
    Exponents ne(nvars, 0);
    for (int i = 0; i < f.nvars(); ++i) {
      if (e[i] == 0) continue;
      require(target[i] >= 0 && target[i] < nvars, ErrorKind::DimensionMismatch, "relabel target out of range");
      ne[target[i]] = static_cast<std::uint8_t>(ne[target[i]] + e[i]);
    }
    out.add_term(ne, c);
  }
  return out;
}

Form partial(const Form& f, int i) {
  require(i >= 0 && i < f.nvars(), ErrorKind::InvalidArgument, "partial: variable out of range");
  Form out(f.field_ptr(), f.nvars(), std::max(0, f.degree() - 1));
  if (f.degree() == 0) return out;
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponents ne = e;
    --ne[i];
    out.add_term(ne, f.field().mul(c, f.field().from_int(e[i])));
  }
  return out;
}

Form initial_form(const Form& f, std::span<const int> weights) {
  require(static_cast<int>(weights.size()) == f.nvars(), ErrorKind::DimensionMismatch, "weight vector has wrong length");
  long best = std::numeric_limits<long>::max();
  auto weight = [&](const Exponents& e) {
    long w = 0;
    for (int i = 0; i < f.nvars(); ++i) w += static_cast<long>(weights[i]) * e[i];
    return w;
  };
  for (const auto& [e, c] : f.terms()) best = std::min(best, weight(e));
  Form out(f.field_ptr(), f.nvars(), f.degree());
  for (const auto& [e, c] : f.terms()) {
    if (weight(e) == best) out.add_term(e, c);
  }
  return out;
}

}  // namespace brauer

namespace brauer {

Form base_change(const Form& f, const FieldEmbedding& emb) {
  require(f.field().same_as(*emb.base), ErrorKind::InvalidArgument, "base_change: form is not over the base field");
  Form out(emb.ext, f.nvars(), f.degree());
  for (const auto& [e, c] : f.terms()) out.add_term(e, emb(c));
  return out;
}

std::vector<Exponents> monomials(int nvars, int degree) {
  std::vector<Exponents> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponents e(nvars, 0);
  // Descending lexicographic: put as much weight as possible on early variables.
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      e[i] = static_cast<std::uint8_t>(left);
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = static_cast<std::uint8_t>(k);
      rec(i + 1, left - k);
    }
  };
  rec(0, degree);
  return out;
}

}  // namespace brauer
