#include "brauer/certificate.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <sstream>

#include "brauer/error.hpp"
#include "brauer/oracle.hpp"

namespace brauer {

namespace {

constexpr std::string_view kHeader = "brauer-certificate v1";

std::string lines_of(const std::vector<CertEntry>& entries) {
  std::string out;
  for (const auto& e : entries) out += e.key + " " + e.value + "\n";
  return out;
}

std::string trim_copy(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

CertEntry split_entry(const std::string& line, int lineno) {
  auto sp = line.find(' ');
  if (sp == std::string::npos || sp == 0)
    fail(ErrorKind::MalformedCertificate, "line " + std::to_string(lineno) + ": expected 'key value'");
  return {line.substr(0, sp), line.substr(sp + 1)};
}

std::string idx(const char* prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

void add_forms(Certificate& c, const FormTuple& ft) {
  for (std::size_t i = 0; i < ft.size(); ++i) c.inputs.push_back({idx("f", i), format_form(ft[i])});
}

Certificate start(const std::string& kind, const FormTuple& ft) {
  Certificate c;
  c.kind = kind;
  c.field = ft.field().descriptor();
  c.nvars = ft.nvars();
  add_forms(c, ft);
  return c;
}

void seal(Certificate& c) {
  c.checks.clear();
  for (const auto& [name, ok] : replay_checks(c)) c.checks.push_back({name, ok ? "pass" : "fail"});
}

void add_normal_form_witness(Certificate& c, const NormalFormData& nf) {
  const FqField& F = nf.ft.field();
  c.witness.push_back({"dim", std::to_string(nf.dim())});
  for (int k = 0; k < nf.dim(); ++k) c.witness.push_back({idx("basis", k), format_vec(F, nf.basis[k])});
  for (int i = 0; i < nf.r(); ++i) {
    c.witness.push_back({idx("a", i), F.format(nf.a[i])});
    c.witness.push_back({idx("b", i), F.format(nf.b[i])});
    c.witness.push_back({idx("h", i), format_form(nf.h[i])});
  }
  c.witness.push_back({"witness", format_vec(F, nf.witness)});
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::InvalidArgument, "SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string Certificate::input_digest() const {
  return sha256_hex("kind " + kind + "\nfield " + field + "\nnvars " + std::to_string(nvars) + "\n" +
                    lines_of(inputs));
}

std::string Certificate::witness_digest() const { return sha256_hex(lines_of(witness)); }

std::string Certificate::serialize() const {
  std::string out(kHeader);
  out += "\nkind " + kind + "\nfield " + field + "\nnvars " + std::to_string(nvars) + "\n";
  out += "inputs-sha256 " + input_digest() + "\n";
  out += "[inputs]\n" + lines_of(inputs);
  out += "[witness]\n" + lines_of(witness);
  out += "witness-sha256 " + witness_digest() + "\n";
  out += "[verify]\n";
  for (const auto& c : checks) out += c.value + " " + c.key + "\n";
  out += "end\n";
  return out;
}

Certificate Certificate::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    // Byte-exact format: anything but printable ASCII is malformed, so no
    // edit can survive parsing with the entries unchanged.
    for (unsigned char ch : line)
      if (ch < 0x20 || ch > 0x7e)
        fail(ErrorKind::MalformedCertificate, "line " + std::to_string(lineno) + ": non-printable byte");
    return true;
  };
  auto expect_key = [&](std::string_view key) -> std::string {
    if (!next()) fail(ErrorKind::MalformedCertificate, "unexpected end, expected '" + std::string(key) + "'");
    CertEntry e = split_entry(line, lineno);
    if (e.key != key)
      fail(ErrorKind::MalformedCertificate,
           "line " + std::to_string(lineno) + ": expected '" + std::string(key) + "', got '" + e.key + "'");
    return e.value;
  };

  Certificate c;
  if (!next() || line != kHeader) fail(ErrorKind::MalformedCertificate, "missing header line");
  c.kind = expect_key("kind");
  c.field = expect_key("field");
  {
    std::string n = expect_key("nvars");
    try {
      std::size_t used = 0;
      c.nvars = std::stoi(n, &used);
      if (used != n.size() || c.nvars < 0) throw std::invalid_argument(n);
    } catch (const std::exception&) {
      fail(ErrorKind::MalformedCertificate, "bad nvars '" + n + "'");
    }
  }
  c.recorded_input_digest = expect_key("inputs-sha256");
  if (!next() || line != "[inputs]") fail(ErrorKind::MalformedCertificate, "missing [inputs] section");
  while (true) {
    if (!next()) fail(ErrorKind::MalformedCertificate, "missing [witness] section");
    if (line == "[witness]") break;
    c.inputs.push_back(split_entry(line, lineno));
  }
  while (true) {
    if (!next()) fail(ErrorKind::MalformedCertificate, "missing witness digest");
    CertEntry e = split_entry(line, lineno);
    if (e.key == "witness-sha256") {
      c.recorded_witness_digest = e.value;
      break;
    }
    c.witness.push_back(std::move(e));
  }
  if (!next() || line != "[verify]") fail(ErrorKind::MalformedCertificate, "missing [verify] section");
  while (true) {
    if (!next()) fail(ErrorKind::MalformedCertificate, "missing 'end'");
    if (line == "end") break;
    CertEntry e = split_entry(line, lineno);
    if (e.key != "pass" && e.key != "fail")
      fail(ErrorKind::MalformedCertificate, "line " + std::to_string(lineno) + ": check must start with pass or fail");
    c.checks.push_back({e.value, e.key});
  }
  if (next()) fail(ErrorKind::MalformedCertificate, "content after 'end'");
  if (!text.empty() && text.back() != '\n') fail(ErrorKind::MalformedCertificate, "missing final newline");
  return c;
}

const std::string* Certificate::find_input(std::string_view key) const {
  for (const auto& e : inputs)
    if (e.key == key) return &e.value;
  return nullptr;
}

const std::string* Certificate::find_witness(std::string_view key) const {
  for (const auto& e : witness)
    if (e.key == key) return &e.value;
  return nullptr;
}

std::vector<std::string> Certificate::all_inputs(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& e : inputs)
    if (e.key == key) out.push_back(e.value);
  return out;
}

std::vector<std::string> Certificate::all_witness(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& e : witness)
    if (e.key == key) out.push_back(e.value);
  return out;
}

std::string encode_expr(const FqField& field, const Expr& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : e) {
    if (!out.empty()) out += " + ";
    out += field.format(c);
    for (int j : m) out += "*g" + std::to_string(j + 1);
  }
  return out;
}

Expr decode_expr(const FqField& field, std::string_view text) {
  Expr out;
  std::string s = trim_copy(text);
  if (s == "0") return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find(" + ", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::vector<std::string> parts;
    std::size_t p = 0;
    while (true) {
      std::size_t star = term.find('*', p);
      parts.push_back(trim_copy(term.substr(p, star == std::string::npos ? std::string::npos : star - p)));
      if (star == std::string::npos) break;
      p = star + 1;
    }
    Elem c = field.parse_elem(parts[0]);
    std::vector<int> mono;
    for (std::size_t k = 1; k < parts.size(); ++k) {
      const std::string& v = parts[k];
      if (v.size() < 2 || v[0] != 'g') fail(ErrorKind::ParseError, "bad factor '" + v + "' in expression");
      int j = 0;
      try {
        j = std::stoi(v.substr(1));
      } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "bad factor '" + v + "' in expression");
      }
      if (j < 1) fail(ErrorKind::ParseError, "factor index must be positive");
      mono.push_back(j - 1);
    }
    std::sort(mono.begin(), mono.end());
    if (out.count(mono)) fail(ErrorKind::ParseError, "repeated monomial in expression");
    if (c.code) out[mono] = c;
    if (end == std::string::npos) break;
    pos = end + 3;
  }
  return out;
}

Certificate nonzero_point_certificate(const FormTuple& ft, const std::vector<Form>& nonzero, const Vec& point) {
  Certificate c = start("nonzero-point", ft);
  for (std::size_t k = 0; k < nonzero.size(); ++k) c.inputs.push_back({idx("nonzero", k), format_form(nonzero[k])});
  c.witness.push_back({"point", format_vec(ft.field(), point)});
  seal(c);
  return c;
}

Certificate normal_form_certificate(const NormalFormData& nf, const Form& g) {
  Certificate c = start("normal-form", nf.ft);
  c.inputs.push_back({"g", format_form(g)});
  add_normal_form_witness(c, nf);
  seal(c);
  return c;
}

Certificate dense_point_certificate(const FormTuple& ft, const Form& g, const DensePoint& dp, std::uint64_t seed) {
  Certificate c = start("dense-point", ft);
  c.inputs.push_back({"g", format_form(g)});
  c.witness.push_back({"seed", std::to_string(seed)});
  add_normal_form_witness(c, dp.nf);
  const FqField& F = ft.field();
  c.witness.push_back({"params", format_vec(F, dp.chart.params)});
  c.witness.push_back({"coords", format_vec(F, dp.chart.coords)});
  c.witness.push_back({"point", format_vec(F, dp.chart.point)});
  seal(c);
  return c;
}

Certificate good_subspace_certificate(const FormTuple& ft, std::size_t i, const Subspace& F,
                                      const GoodFormWitness& w) {
  Certificate c = start("good-subspace", ft);
  const FqField& K = ft.field();
  c.inputs.push_back({"index", std::to_string(i + 1)});
  for (int k = 0; k < F.dim(); ++k) c.inputs.push_back({idx("F", k), format_vec(K, F.basis()[k])});
  c.witness.push_back({"x", format_vec(K, w.basis.at(0))});
  c.witness.push_back({"y", format_vec(K, w.basis.at(1))});
  c.witness.push_back({"z", format_vec(K, w.basis.at(2))});
  c.witness.push_back({"a", K.format(w.a)});
  c.witness.push_back({"b", K.format(w.b)});
  seal(c);
  return c;
}

Certificate closure_certificate(const FormTuple& ft, const Phi& phi, const ClosureBound& cb) {
  Certificate c = start("closure-bound", ft);
  const FqField& F = ft.field();
  c.inputs.push_back({"phi", phi.text});
  const auto& reg = cb.reg;
  std::vector<int> position(reg.members.size(), -1);
  for (std::size_t j = 0; j < reg.final_ids.size(); ++j) position[reg.final_ids[j]] = static_cast<int>(j);
  for (std::size_t j = 0; j < reg.g.size(); ++j) c.witness.push_back({idx("g", j), format_form(reg.g[j])});
  for (std::size_t i = 0; i < reg.expressions.size(); ++i) {
    Expr e;
    for (const auto& [m, coef] : reg.expressions[i]) {
      std::vector<int> mono;
      for (int id : m) mono.push_back(position.at(id));
      std::sort(mono.begin(), mono.end());
      e[mono] = coef;
    }
    c.witness.push_back({idx("expr", i), encode_expr(F, e)});
  }
  c.witness.push_back({"bound", std::to_string(cb.bound)});
  c.witness.push_back({"splits", std::to_string(reg.splits)});
  seal(c);
  return c;
}

Certificate strength_certificate(const Form& f, const StrengthResult& res) {
  Certificate c;
  c.kind = "strength";
  c.field = f.field().descriptor();
  c.nvars = f.nvars();
  c.inputs.push_back({"f", format_form(f)});
  c.witness.push_back({"result", res.exact() ? "exact" : "lower-bound"});
  c.witness.push_back({"value", res.infinite() ? "inf" : std::to_string(res.value)});
  for (std::size_t k = 0; k < res.witness.size(); ++k) {
    c.witness.push_back({idx("g", k), format_form(res.witness[k].first)});
    c.witness.push_back({idx("h", k), format_form(res.witness[k].second)});
  }
  seal(c);
  return c;
}

}  // namespace brauer
