#include "brauer/oracle.hpp"

#include <algorithm>
#include <map>

#include "brauer/error.hpp"
#include "brauer/linalg.hpp"
#include "brauer/strength.hpp"

namespace brauer {

long for_each_point(const FqField& field, int n, long cap, const std::function<void(const Vec&)>& visit) {
  double total = 1;
  for (int i = 0; i < n; ++i) total *= field.q();
  if (total > static_cast<double>(cap))
    fail(ErrorKind::BudgetExceeded, "enumerating " + field.descriptor() + "^" + std::to_string(n) +
                                        " exceeds the enumeration cap");
  std::vector<std::uint32_t> digit(n, 0);
  long count = 0;
  while (true) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = field.from_code(digit[i]);
    visit(x);
    ++count;
    int k = n - 1;
    while (k >= 0 && digit[k] == field.q() - 1) digit[k--] = 0;
    if (k < 0) break;
    ++digit[k];
  }
  return count;
}

ZeroLocus enumerate_zero_locus(const FormTuple& ft, const Budget& budget) {
  ZeroLocus z{ft.field_ptr(), ft.nvars(), {}};
  for_each_point(ft.field(), ft.nvars(), budget.enum_points, [&](const Vec& x) {
    for (const auto& f : ft.forms())
      if (f.eval(x).code != 0) return;
    z.points.push_back(x);
  });
  return z;
}

std::string VerifyReport::first_failure() const {
  for (const auto& [name, ok] : checks)
    if (!ok) return name;
  return {};
}

namespace {

using Checks = std::vector<std::pair<std::string, bool>>;

std::string idx(const char* prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

const std::string& need_witness(const Certificate& c, const std::string& key) {
  const std::string* v = c.find_witness(key);
  if (!v) fail(ErrorKind::MalformedCertificate, "missing witness entry '" + key + "'");
  return *v;
}

const std::string& need_input(const Certificate& c, const std::string& key) {
  const std::string* v = c.find_input(key);
  if (!v) fail(ErrorKind::MalformedCertificate, "missing input entry '" + key + "'");
  return *v;
}

int parse_count(const std::string& s) {
  std::size_t used = 0;
  int v = std::stoi(s, &used);
  if (used != s.size() || v < 0) fail(ErrorKind::ParseError, "bad count '" + s + "'");
  return v;
}

std::vector<Form> input_forms(const Certificate& c, const FieldPtr& fp) {
  std::vector<Form> out;
  for (std::size_t i = 0;; ++i) {
    const std::string* t = c.find_input(idx("f", i));
    if (!t) break;
    out.push_back(parse_form(fp, *t, c.nvars));
  }
  return out;
}

Vec parse_point(const FqField& F, const std::string& text, int n) {
  Vec v = parse_vec(F, text);
  if (static_cast<int>(v.size()) != n) fail(ErrorKind::ParseError, "vector has wrong length");
  return v;
}

bool is_nonzero_at(const Form& g, const Vec& x) {
  if (g.degree() == 0) return !g.is_zero();
  return g.eval(x).code != 0;
}

// Template x*y^(d-1) + a*y^d + b*z^d built term by term.
Form template_form(const FieldPtr& fp, int n, int d, int ix, int iy, int iz, Elem a, Elem b) {
  Form t(fp, n, d);
  Exponents e(n, 0);
  e[ix] += 1;
  e[iy] += static_cast<std::uint8_t>(d - 1);
  t.add_term(e, fp->one());
  t.add_term(unit_exponents(n, iy, d), a);
  t.add_term(unit_exponents(n, iz, d), b);
  return t;
}

// Every monomial of f pulled back onto the concatenated blocks involves one
// block only.
bool block_orthogonal(const Form& f, const std::vector<Mat>& blocks) {
  Mat all;
  std::vector<int> owner;
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (const auto& v : blocks[k]) {
      all.push_back(v);
      owner.push_back(static_cast<int>(k));
    }
  Form p = pullback(f, all);
  for (const auto& [e, c] : p.terms()) {
    int seen = -1;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j]) {
        if (seen >= 0 && seen != owner[j]) return false;
        seen = owner[j];
      }
  }
  return true;
}

struct NormalFormReplay {
  Mat basis;
  std::vector<int> degrees;
  Vec a, b;
  std::vector<Form> h;
  int r = 0, dim = 0;
};

NormalFormReplay replay_normal_form(const Certificate& c, const FieldPtr& fp, const std::vector<Form>& fs,
                                    const Form& g, Checks& out) {
  const FqField& F = *fp;
  NormalFormReplay nf;
  nf.r = static_cast<int>(fs.size());
  nf.dim = parse_count(need_witness(c, "dim"));
  if (nf.dim < 3 * nf.r) fail(ErrorKind::ParseError, "W too small for the forms");
  for (int k = 0; k < nf.dim; ++k) nf.basis.push_back(parse_point(F, need_witness(c, idx("basis", k)), c.nvars));
  for (int i = 0; i < nf.r; ++i) {
    nf.degrees.push_back(fs[i].degree());
    nf.a.push_back(F.parse_elem(need_witness(c, idx("a", i))));
    nf.b.push_back(F.parse_elem(need_witness(c, idx("b", i))));
    nf.h.push_back(parse_form(fp, need_witness(c, idx("h", i)), nf.dim));
  }
  out.emplace_back("basis independent", rank(F, nf.basis, c.nvars) == static_cast<std::size_t>(nf.dim));
  std::vector<int> weights(nf.dim);
  for (int k = 0; k < nf.dim; ++k) weights[k] = k < 3 * nf.r ? k / 3 + 1 : nf.r + 1;
  for (int i = 0; i < nf.r; ++i) {
    const std::string tag = idx("f", i);
    out.emplace_back(idx("b", i) + " nonzero", nf.b[i].code != 0);
    Form restricted = pullback(fs[i], nf.basis);
    Form t = template_form(fp, nf.dim, nf.degrees[i], 3 * i, 3 * i + 1, 3 * i + 2, nf.a[i], nf.b[i]);
    out.emplace_back(tag + " template", restricted == t + nf.h[i] && nf.h[i].degree() == nf.degrees[i]);
    bool support = true;
    for (const auto& [e, coef] : nf.h[i].terms())
      for (int k = 0; k <= 3 * i + 2; ++k) support = support && e[k] == 0;
    out.emplace_back(tag + " residual support", support);
    out.emplace_back(tag + " initial form", initial_form(restricted, weights) == t);
  }
  Vec w = parse_point(F, need_witness(c, "witness"), nf.dim);
  Vec pt = combine(F, nf.basis, w, c.nvars);
  bool on_z = true;
  for (const auto& f : fs) on_z = on_z && f.eval(pt).code == 0;
  out.emplace_back("witness on Z", on_z);
  out.emplace_back("witness g nonzero", g.degree() == 0 ? !g.is_zero() : is_nonzero_at(g, pt));
  return nf;
}

void replay_point(const std::vector<Form>& fs, const Vec& x, Checks& out) {
  out.emplace_back("point nonzero", !is_zero_vec(x));
  for (std::size_t i = 0; i < fs.size(); ++i) out.emplace_back(idx("f", i) + "(point)=0", fs[i].eval(x).code == 0);
}

void replay_kind(const Certificate& c, Checks& out) {
  FieldPtr fp = FqField::parse(c.field);
  const FqField& F = *fp;
  std::vector<Form> fs = input_forms(c, fp);
  out.emplace_back("forms have non-increasing degrees",
                   std::is_sorted(fs.begin(), fs.end(),
                                  [](const Form& a, const Form& b) { return a.degree() > b.degree(); }));

  if (c.kind == "nonzero-point") {
    Vec x = parse_point(F, need_witness(c, "point"), c.nvars);
    replay_point(fs, x, out);
    for (std::size_t k = 0;; ++k) {
      const std::string* t = c.find_input(idx("nonzero", k));
      if (!t) break;
      out.emplace_back(idx("nonzero", k) + "(point)!=0", is_nonzero_at(parse_form(fp, *t, c.nvars), x));
    }
  } else if (c.kind == "normal-form") {
    Form g = parse_form(fp, need_input(c, "g"), c.nvars);
    replay_normal_form(c, fp, fs, g, out);
  } else if (c.kind == "dense-point") {
    Form g = parse_form(fp, need_input(c, "g"), c.nvars);
    (void)std::stoull(need_witness(c, "seed"));
    NormalFormReplay nf = replay_normal_form(c, fp, fs, g, out);
    const int m = nf.dim - 3 * nf.r;
    Vec params = parse_point(F, need_witness(c, "params"), 2 * nf.r + m);
    Vec coords = parse_point(F, need_witness(c, "coords"), nf.dim);
    Vec x = parse_point(F, need_witness(c, "point"), c.nvars);
    bool chart = true;
    for (int i = 0; i < nf.r; ++i) {
      const Elem y = params[i], z = params[nf.r + i];
      chart = chart && y.code != 0 && coords[3 * i + 1] == y && coords[3 * i + 2] == z;
    }
    for (int j = 0; j < m; ++j) chart = chart && coords[3 * nf.r + j] == params[2 * nf.r + j];
    // x_i * y_i^(d-1) = -(a y^d + b z^d + h_i)
    for (int i = 0; chart && i < nf.r; ++i) {
      const int d = nf.degrees[i];
      const Elem y = coords[3 * i + 1], z = coords[3 * i + 2];
      Elem lhs = F.mul(coords[3 * i], F.pow(y, d - 1));
      Elem rhs = F.add(F.add(F.mul(nf.a[i], F.pow(y, d)), F.mul(nf.b[i], F.pow(z, d))), nf.h[i].eval(coords));
      chart = F.add(lhs, rhs).code == 0;
    }
    out.emplace_back("chart coordinates", chart);
    out.emplace_back("point = basis * coords", combine(F, nf.basis, coords, c.nvars) == x);
    replay_point(fs, x, out);
    out.emplace_back("g(point)!=0", is_nonzero_at(g, x));
  } else if (c.kind == "good-subspace") {
    const int i = parse_count(need_input(c, "index")) - 1;
    if (i < 0 || i >= static_cast<int>(fs.size())) fail(ErrorKind::ParseError, "index out of range");
    Mat Fb;
    for (std::size_t k = 0;; ++k) {
      const std::string* t = c.find_input(idx("F", k));
      if (!t) break;
      Fb.push_back(parse_point(F, *t, c.nvars));
    }
    Mat E{parse_point(F, need_witness(c, "x"), c.nvars), parse_point(F, need_witness(c, "y"), c.nvars),
          parse_point(F, need_witness(c, "z"), c.nvars)};
    const Elem a = F.parse_elem(need_witness(c, "a"));
    const Elem b = F.parse_elem(need_witness(c, "b"));
    Mat all = E;
    all.insert(all.end(), Fb.begin(), Fb.end());
    out.emplace_back("independence", rank(F, all, c.nvars) == all.size());
    const int d = fs[i].degree();
    out.emplace_back("template", b.code != 0 && pullback(fs[i], E) == template_form(fp, 3, d, 0, 1, 2, a, b));
    bool vanish = true;
    for (std::size_t j = i + 1; j < fs.size(); ++j) vanish = vanish && pullback(fs[j], E).is_zero();
    out.emplace_back("vanishing", vanish);
    out.emplace_back("orthogonality", block_orthogonal(fs[i], {E, Fb}));
  } else if (c.kind == "closure-bound") {
    Phi phi = Phi::parse(need_input(c, "phi"));
    std::vector<Form> gs;
    for (std::size_t j = 0;; ++j) {
      const std::string* t = c.find_witness(idx("g", j));
      if (!t) break;
      gs.push_back(parse_form(fp, *t, c.nvars));
    }
    bool sorted = std::is_sorted(gs.begin(), gs.end(),
                                 [](const Form& x, const Form& y) { return x.degree() > y.degree(); });
    bool positive = std::all_of(gs.begin(), gs.end(), [](const Form& x) { return x.degree() >= 1; });
    out.emplace_back("g degrees non-increasing and positive", sorted && positive);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Expr e = decode_expr(F, need_witness(c, idx("expr", i)));
      bool in_range = true;
      for (const auto& [mono, coef] : e)
        for (int j : mono) in_range = in_range && j < static_cast<int>(gs.size());
      bool expands = false;
      if (in_range) {
        Form acc(fp, c.nvars, fs[i].degree());
        bool degrees_ok = true;
        for (const auto& [mono, coef] : e) {
          Form term = Form::constant(fp, c.nvars, coef);
          for (int j : mono) term = term * gs[j];
          degrees_ok = degrees_ok && term.degree() == fs[i].degree();
          if (degrees_ok) acc = acc + term;
        }
        expands = degrees_ok && acc == fs[i];
      }
      out.emplace_back(idx("expr", i) + " expands to " + idx("f", i), expands);
      out.emplace_back(idx("expr", i) + " has no constant term", !e.count({}));
    }
    out.emplace_back("bound = length of g", parse_count(need_witness(c, "bound")) == static_cast<int>(gs.size()));
    bool strong = true;
    if (!gs.empty() && sorted && positive) {
      FormTuple gt(fp, c.nvars, gs);
      StrengthResult s = tuple_strength(gt, Budget{});
      strong = s.value > phi(gt.multidegree());
    }
    out.emplace_back("strength of g exceeds phi", strong && sorted && positive);
  } else if (c.kind == "strength") {
    Form f = parse_form(fp, need_input(c, "f"), c.nvars);
    const std::string& result = need_witness(c, "result");
    const std::string& value = need_witness(c, "value");
    if (result != "exact" && result != "lower-bound") fail(ErrorKind::ParseError, "bad result kind");
    std::vector<std::pair<Form, Form>> pairs;
    for (std::size_t k = 0;; ++k) {
      const std::string* g = c.find_witness(idx("g", k));
      if (!g) break;
      pairs.emplace_back(parse_form(fp, *g, c.nvars), parse_form(fp, need_witness(c, idx("h", k)), c.nvars));
    }
    if (value == "inf") {
      out.emplace_back("infinite strength only for nonzero linear forms",
                       f.degree() == 1 && !f.is_zero() && pairs.empty());
    } else {
      const int v = parse_count(value);
      if (result == "exact") {
        Form acc(fp, c.nvars, f.degree());
        bool factors = true;
        for (const auto& [g, h] : pairs) {
          factors = factors && g.degree() >= 1 && h.degree() >= 1 && g.degree() + h.degree() == f.degree();
          if (factors) acc = acc + g * h;
        }
        out.emplace_back("decomposition sums to f", factors && acc == f);
        out.emplace_back("value = number of products", v == static_cast<int>(pairs.size()));
      } else {
        out.emplace_back("lower bound carries no decomposition", pairs.empty());
      }
    }
  } else {
    fail(ErrorKind::MalformedCertificate, "unknown certificate kind '" + c.kind + "'");
  }
}

}  // namespace

std::vector<std::pair<std::string, bool>> replay_checks(const Certificate& cert) {
  Checks out;
  try {
    replay_kind(cert, out);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::MalformedCertificate) throw;
    out.emplace_back(std::string("data parses (") + e.what() + ")", false);
  } catch (const std::exception& e) {
    out.emplace_back(std::string("data parses (") + e.what() + ")", false);
  }
  return out;
}

VerifyReport verify_certificate(const Certificate& cert) {
  VerifyReport rep;
  rep.checks.emplace_back("inputs digest", cert.recorded_input_digest == cert.input_digest());
  rep.checks.emplace_back("witness digest", cert.recorded_witness_digest == cert.witness_digest());
  Checks replay = replay_checks(cert);
  bool same = replay.size() == cert.checks.size();
  for (std::size_t k = 0; same && k < replay.size(); ++k)
    same = replay[k].first == cert.checks[k].key && (replay[k].second ? "pass" : "fail") == cert.checks[k].value;
  rep.checks.insert(rep.checks.end(), replay.begin(), replay.end());
  rep.checks.emplace_back("recorded checks match replay", same);
  for (const auto& [name, ok] : rep.checks) rep.ok = rep.ok && ok;
  return rep;
}

VerifyReport verify_certificate_text(std::string_view text) { return verify_certificate(Certificate::parse(text)); }

IrreducibilityProbe irreducibility_probe(const FormTuple& ft, int max_ext, const Budget& budget) {
  require(max_ext >= 1, ErrorKind::InvalidArgument, "max_ext must be at least 1");
  IrreducibilityProbe out;
  for (int m = 1; m <= max_ext; ++m) {
    FieldPtr ext = ft.field_ptr();
    std::vector<Form> forms = ft.forms();
    if (m > 1) {
      FieldExtension fe = make_extension(ft.field_ptr(), m);
      ext = fe.embedding.ext;
      for (auto& f : forms) f = base_change(f, fe.embedding);
    }
    long count = 0;
    for_each_point(*ext, ft.nvars(), budget.enum_points, [&](const Vec& x) {
      for (const auto& f : forms)
        if (f.eval(x).code != 0) return;
      ++count;
    });
    out.counts.push_back(count);
  }
  return out;
}

namespace {

// Incremental row echelon basis over F.
class RowSpace {
 public:
  RowSpace(const FqField& F, std::size_t cols) : F_(F), cols_(cols) {}
  bool add(Vec row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Elem c = row[pivots_[k]];
      if (c.code == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) row[j] = F_.sub(row[j], F_.mul(c, rows_[k][j]));
    }
    std::size_t p = 0;
    while (p < cols_ && row[p].code == 0) ++p;
    if (p == cols_) return false;
    const Elem inv = F_.inv(row[p]);
    for (auto& x : row) x = F_.mul(x, inv);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Elem c = rows_[k][p];
      if (c.code == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) rows_[k][j] = F_.sub(rows_[k][j], F_.mul(c, row[j]));
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
  }
  std::size_t rank() const { return rows_.size(); }
  const Mat& rows() const { return rows_; }

 private:
  const FqField& F_;
  std::size_t cols_;
  Mat rows_;
  std::vector<std::size_t> pivots_;
};

Vec monomial_row(const FqField& F, const std::vector<Exponents>& monos, const Vec& x) {
  Vec row(monos.size());
  for (std::size_t j = 0; j < monos.size(); ++j) {
    Elem v = F.one();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (monos[j][i]) v = F.mul(v, F.pow(x[i], monos[j][i]));
    row[j] = v;
  }
  return row;
}

}  // namespace

DensityReport density_proxy_check(const FormTuple& ft, const std::vector<Vec>& points, int bound,
                                  const Budget& budget) {
  const FqField& F = ft.field();
  DensityReport rep;
  ZeroLocus z = enumerate_zero_locus(ft, budget);
  rep.locus_size = static_cast<long>(z.points.size());
  rep.points = static_cast<long>(points.size());
  for (const auto& p : points)
    for (const auto& f : ft.forms())
      require(f.eval(p).code == 0, ErrorKind::HypothesisViolated, "generated point is not on Z");
  for (int e = 1; e <= bound; ++e) {
    auto monos = monomials(ft.nvars(), e);
    DensityRow row;
    row.degree = e;
    row.monomials = static_cast<long>(monos.size());
    RowSpace on_points(F, monos.size()), on_locus(F, monos.size());
    for (const auto& p : points) {
      if (on_points.rank() == monos.size()) break;
      on_points.add(monomial_row(F, monos, p));
    }
    for (const auto& p : z.points) {
      if (on_locus.rank() == monos.size()) break;
      on_locus.add(monomial_row(F, monos, p));
    }
    row.rank_points = static_cast<long>(on_points.rank());
    row.rank_locus = static_cast<long>(on_locus.rank());
    row.pass = row.rank_points == row.rank_locus;
    if (!row.pass) {
      Mat ker = kernel_basis(F, on_points.rows(), monos.size());
      for (const auto& v : ker) {
        bool vanishes = true;
        for (const auto& r : on_locus.rows()) {
          Elem dot = F.zero();
          for (std::size_t j = 0; j < monos.size(); ++j) dot = F.add(dot, F.mul(r[j], v[j]));
          vanishes = vanishes && dot.code == 0;
        }
        if (!vanishes) {
          Form g(ft.field_ptr(), ft.nvars(), e);
          for (std::size_t j = 0; j < monos.size(); ++j)
            if (v[j].code) g.add_term(monos[j], v[j]);
          row.counterexample = g;
          break;
        }
      }
    }
    rep.ok = rep.ok && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

DensityReport density_proxy_check(const NormalFormData& nf, int bound, const Budget& budget) {
  std::vector<Form> pulled;
  for (const auto& f : nf.ft.forms()) pulled.push_back(pullback(f, nf.basis));
  FormTuple on_w(nf.ft.field_ptr(), nf.dim(), pulled);
  std::vector<Vec> pts;
  for (const auto& p : chart_points(nf, budget.enum_points)) pts.push_back(p.coords);
  return density_proxy_check(on_w, pts, bound, budget);
}

}  // namespace brauer
