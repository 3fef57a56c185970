#include <cctype>
#include <sstream>

#include "brauer/error.hpp"
#include "brauer/poly.hpp"

namespace brauer {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void parse_fail(std::size_t column, const std::string& what) {
  fail(ErrorKind::ParseError, "column " + std::to_string(column + 1) + ": " + what);
}

int parse_small_int(std::string_view s, std::size_t column) {
  std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    parse_fail(column, "expected a non-negative integer, got '" + t + "'");
  }
  if (t.size() > 6) parse_fail(column, "integer too large");
  return std::stoi(t);
}

Form parse_canonical(const FieldPtr& field, std::string_view text, int nvars_hint) {
  // poly <nvars> <degree>: <coeff> <e1,...,en>; ...
  auto colon = text.find(':');
  if (colon == std::string_view::npos) parse_fail(0, "missing ':' after poly header");
  std::istringstream header(std::string(text.substr(4, colon - 4)));
  std::string ns, ds, extra;
  header >> ns >> ds;
  if (ds.empty() || (header >> extra)) parse_fail(0, "header must be 'poly <nvars> <degree>:'");
  int nvars = parse_small_int(ns, 5);
  int degree = parse_small_int(ds, 5);
  if (nvars_hint >= 0 && nvars_hint != nvars) {
    parse_fail(0, "form has " + std::to_string(nvars) + " variables, expected " + std::to_string(nvars_hint));
  }
  if (degree > 255) parse_fail(0, "degree too large");
  Form f(field, nvars, degree);
  std::size_t pos = colon + 1;
  while (pos < text.size()) {
    auto semi = text.find(';', pos);
    std::size_t end = semi == std::string_view::npos ? text.size() : semi;
    std::string term = trim(text.substr(pos, end - pos));
    if (!term.empty()) {
      std::size_t sp = 0;
      while (sp < term.size() && !std::isspace(static_cast<unsigned char>(term[sp]))) ++sp;
      std::string coeff = term.substr(0, sp);
      std::string exps = trim(term.substr(sp));
      Elem c;
      try {
        c = field->parse_elem(coeff);
      } catch (const Error& e) {
        parse_fail(pos, e.what());
      }
      Exponents ex;
      if (!exps.empty()) {
        std::stringstream es(exps);
        std::string part;
        while (std::getline(es, part, ',')) {
          int v = parse_small_int(part, pos);
          if (v > 255) parse_fail(pos, "exponent too large");
          ex.push_back(static_cast<std::uint8_t>(v));
        }
      }
      if (static_cast<int>(ex.size()) != nvars) {
        parse_fail(pos, "term '" + term + "' has " + std::to_string(ex.size()) + " exponents, expected " +
                            std::to_string(nvars));
      }
      int sum = 0;
      for (auto x : ex) sum += x;
      if (sum != degree) parse_fail(pos, "term '" + term + "' has degree " + std::to_string(sum));
      f.add_term(ex, c);
    }
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return f;
}

struct InfixTerm {
  Elem coeff;
  std::map<int, int> powers;  // variable index -> exponent
  std::size_t column;
};

class InfixParser {
 public:
  InfixParser(const FqField& field, std::string_view text) : field_(field), s_(text) {}

  std::vector<InfixTerm> parse() {
    std::vector<InfixTerm> terms;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      bool negative = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        negative = s_[pos_] == '-';
        ++pos_;
        skip();
      } else if (!first) {
        parse_fail(pos_, "expected '+' or '-'");
      }
      InfixTerm t = term();
      if (negative) t.coeff = field_.neg(t.coeff);
      terms.push_back(std::move(t));
      first = false;
      skip();
    }
    if (terms.empty()) parse_fail(0, "empty form");
    return terms;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) parse_fail(pos_, "expected digits");
    if (pos_ - start > 6) parse_fail(start, "integer too large");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  InfixTerm term() {
    InfixTerm t{field_.one(), {}, pos_};
    bool any = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.coeff = field_.mul(t.coeff, field_.from_int(integer()));
      } else if (c == '[') {
        auto close = s_.find(']', pos_);
        if (close == std::string_view::npos) parse_fail(pos_, "unterminated '['");
        try {
          t.coeff = field_.mul(t.coeff, field_.parse_elem(s_.substr(pos_, close - pos_ + 1)));
        } catch (const Error& e) {
          parse_fail(pos_, e.what());
        }
        pos_ = close + 1;
      } else if (c == 'x') {
        ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '_') ++pos_;
        int idx = integer();
        if (idx < 1) parse_fail(pos_, "variables are numbered from x1");
        int power = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          power = integer();
        }
        t.powers[idx - 1] += power;
      } else {
        parse_fail(pos_, std::string("unexpected '") + c + "'");
      }
      any = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        skip();
        if (pos_ >= s_.size()) parse_fail(pos_, "dangling '*'");
        continue;
      }
      if (pos_ >= s_.size() || s_[pos_] == '+' || s_[pos_] == '-') break;
    }
    if (!any) parse_fail(pos_, "empty term");
    return t;
  }

  const FqField& field_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

Form parse_infix(const FieldPtr& field, std::string_view text, int nvars_hint) {
  InfixParser parser(*field, text);
  auto terms = parser.parse();
  int maxvar = 0;
  int degree = -1;
  for (const auto& t : terms) {
    int d = 0;
    for (const auto& [i, p] : t.powers) {
      d += p;
      maxvar = std::max(maxvar, i + 1);
    }
    if (degree < 0) degree = d;
    if (d != degree) parse_fail(t.column, "form is not homogeneous (term of degree " + std::to_string(d) +
                                              ", expected " + std::to_string(degree) + ")");
  }
  if (degree > 255) parse_fail(0, "degree too large");
  int nvars = nvars_hint >= 0 ? nvars_hint : maxvar;
  if (maxvar > nvars) parse_fail(0, "variable x" + std::to_string(maxvar) + " exceeds " + std::to_string(nvars));
  Form f(field, nvars, degree);
  for (const auto& t : terms) {
    Exponents e(nvars, 0);
    for (const auto& [i, p] : t.powers) {
      if (p > 255) parse_fail(t.column, "exponent too large");
      e[i] = static_cast<std::uint8_t>(p);
    }
    f.add_term(e, t.coeff);
  }
  return f;
}

}  // namespace

std::string format_form(const Form& f) {
  std::string out = "poly " + std::to_string(f.nvars()) + " " + std::to_string(f.degree()) + ":";
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    out += first ? " " : "; ";
    first = false;
    out += f.field().format(c);
    out += " ";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(e[i]);
    }
  }
  return out;
}

std::string format_infix(const Form& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : f.terms()) {
    if (!out.empty()) out += "+";
    bool constant = f.degree() == 0;
    if (c != f.field().one() || constant) {
      out += f.field().format(c);
      if (!constant) out += "*";
    }
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first) out += "*";
      first = false;
      out += "x" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

Form parse_form(const FieldPtr& field, std::string_view text, int nvars) {
  std::string t = trim(text);
  if (t.rfind("poly", 0) == 0 && (t.size() == 4 || std::isspace(static_cast<unsigned char>(t[4])))) {
    return parse_canonical(field, t, nvars);
  }
  return parse_infix(field, t, nvars);
}

System parse_system(std::string_view text) {
  System sys;
  int declared = -1;
  struct Line {
    std::size_t number;
    std::string body;
  };
  std::vector<Line> forms;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto at = [&](const Error& e) { return "line " + std::to_string(number) + ": " + e.what(); };
    try {
      if (line.rfind("field", 0) == 0 && line.size() > 5 && std::isspace(static_cast<unsigned char>(line[5]))) {
        if (sys.field) fail(ErrorKind::ParseError, "duplicate field line");
        sys.field = FqField::parse(trim(line.substr(5)));
      } else if (line.rfind("nvars", 0) == 0 && line.size() > 5 && std::isspace(static_cast<unsigned char>(line[5]))) {
        declared = parse_small_int(line.substr(5), 6);
      } else {
        if (!sys.field) fail(ErrorKind::ParseError, "form before the field line");
        forms.push_back({number, line});
      }
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, at(e));
    }
  }
  if (!sys.field) fail(ErrorKind::ParseError, "missing 'field GF(q)' line");
  std::vector<Form> parsed;
  int nvars = declared;
  for (const auto& l : forms) {
    try {
      Form f = parse_form(sys.field, l.body, -1);
      if (declared >= 0 && f.nvars() > declared) fail(ErrorKind::ParseError, "form uses more than nvars variables");
      nvars = std::max(nvars, f.nvars());
      parsed.push_back(std::move(f));
    } catch (const Error& e) {
      fail(ErrorKind::ParseError, "line " + std::to_string(l.number) + ": " + e.what());
    }
  }
  if (nvars < 0) nvars = 0;
  for (std::size_t k = 0; k < parsed.size(); ++k) {
    bool canonical = forms[k].body.rfind("poly", 0) == 0;
    if (canonical && parsed[k].nvars() != nvars) {
      fail(ErrorKind::ParseError, "line " + std::to_string(forms[k].number) + ": form has " +
                                      std::to_string(parsed[k].nvars()) + " variables, system has " +
                                      std::to_string(nvars));
    }
    if (parsed[k].nvars() < nvars) {
      std::vector<int> ident(parsed[k].nvars());
      for (int i = 0; i < parsed[k].nvars(); ++i) ident[i] = i;
      parsed[k] = relabel(parsed[k], nvars, ident);
    }
  }
  sys.nvars = nvars;
  sys.forms = std::move(parsed);
  return sys;
}

std::string format_system(const System& sys) {
  std::string out = "field " + sys.field->descriptor() + "\n";
  out += "nvars " + std::to_string(sys.nvars) + "\n";
  for (const auto& f : sys.forms) out += format_form(f) + "\n";
  return out;
}

}  // namespace brauer
