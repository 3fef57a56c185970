#include "brauer/field.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "brauer/error.hpp"

namespace brauer {

namespace {

using Digits = std::vector<std::uint32_t>;

// Remainder of a modulo monic m over F_p, both low coefficient first.
Digits poly_mod(Digits a, std::span<const std::uint32_t> m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dm; ++i) {
        a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

Digits poly_mulmod(const Digits& a, const Digits& b, std::span<const std::uint32_t> m, std::uint32_t p) {
  Digits prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(prod), m, p);
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

long long parse_integer(std::string_view text) {
  std::string t = trim(text);
  if (t.empty()) fail(ErrorKind::ParseError, "expected integer");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "bad integer '" + t + "'");
  }
  if (pos != t.size()) fail(ErrorKind::ParseError, "bad integer '" + t + "'");
  return v;
}

// Parses a univariate polynomial in x with integer coefficients, e.g. "x^2+2x+1".
Digits parse_univariate(std::string_view text, std::uint32_t p) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) fail(ErrorKind::ParseError, "empty modulus");
  Digits out;
  std::size_t i = 0;
  while (i < s.size()) {
    long long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    long long coeff = 1;
    bool have_coeff = false;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) {
      coeff = std::stoll(s.substr(start, i - start));
      have_coeff = true;
    }
    if (i < s.size() && s[i] == '*') ++i;
    std::uint32_t power = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail(ErrorKind::ParseError, "missing exponent in modulus");
        power = static_cast<std::uint32_t>(std::stoul(s.substr(start, i - start)));
      }
    } else if (!have_coeff) {
      fail(ErrorKind::ParseError, "bad modulus term in '" + std::string(text) + "'");
    }
    if (out.size() <= power) out.resize(power + 1, 0);
    long long c = (sign * coeff) % static_cast<long long>(p);
    if (c < 0) c += p;
    out[power] = static_cast<std::uint32_t>((out[power] + c) % p);
    if (i < s.size() && s[i] != '+' && s[i] != '-') {
      fail(ErrorKind::ParseError, "unexpected '" + std::string(1, s[i]) + "' in modulus");
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::string format_univariate(std::span<const std::uint32_t> coeffs) {
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    std::uint32_t c = coeffs[k];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic) {
  const std::size_t deg = monic.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t dd = 1; dd <= deg / 2; ++dd) {
    // Every monic divisor candidate of degree dd, low coefficients varying.
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < dd; ++k) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Digits div(dd + 1, 0);
      std::uint64_t c = code;
      for (std::size_t k = 0; k < dd; ++k) {
        div[k] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      div[dd] = 1;
      Digits rem = poly_mod(Digits(monic.begin(), monic.end()), div, p);
      if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t x) { return x == 0; })) return false;
    }
  }
  return true;
}

FqField::FqField(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus, bool is_default)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)), default_modulus_(is_default) {
  for (std::uint32_t k = 0; k < e; ++k) q_ *= p;
  auto to_digits = [&](std::uint32_t code) {
    Digits d(e_, 0);
    for (std::uint32_t k = 0; k < e_; ++k) {
      d[k] = code % p_;
      code /= p_;
    }
    return d;
  };
  auto to_code = [&](const Digits& d) {
    std::uint32_t code = 0;
    for (std::size_t k = d.size(); k-- > 0;) code = code * p_ + d[k];
    return code;
  };
  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  // Smallest generator in code order.
  for (std::uint32_t g = 1; g < q_; ++g) {
    Digits gd = to_digits(g);
    Digits cur = to_digits(1);
    std::uint32_t k = 0;
    bool ok = true;
    do {
      exp_[k] = to_code(cur);
      ++k;
      cur = poly_mulmod(cur, gd, modulus_, p_);
      cur.resize(e_, 0);
      if (to_code(cur) == 1 && k < q_ - 1) {
        ok = false;
        break;
      }
    } while (k < q_ - 1);
    if (ok && to_code(cur) == 1) break;
    if (g + 1 == q_) fail(ErrorKind::InvalidArgument, "no primitive element; modulus not irreducible");
  }
  if (q_ == 2) exp_[0] = 1;
  for (std::uint32_t k = 0; k < q_ - 1; ++k) {
    exp_[k + q_ - 1] = exp_[k];
    log_[exp_[k]] = k;
  }
  if (e_ > 1 && q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      Digits da = to_digits(a);
      for (std::uint32_t b = 0; b < q_; ++b) {
        Digits db = to_digits(b);
        Digits s(e_);
        for (std::uint32_t k = 0; k < e_; ++k) s[k] = (da[k] + db[k]) % p_;
        add_table_[static_cast<std::size_t>(a) * q_ + b] = to_code(s);
      }
    }
  }
}

FieldPtr FqField::make(std::uint32_t p, std::uint32_t e) {
  require(is_prime(p), ErrorKind::InvalidArgument, "characteristic " + std::to_string(p) + " is not prime");
  require(e >= 1, ErrorKind::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t k = 0; k < e; ++k) q *= p;
  require(q <= (1u << 16), ErrorKind::InvalidArgument, "field too large");
  if (e == 1) return FieldPtr(new FqField(p, 1, {0, 1}, true));
  std::uint64_t count = q;
  for (std::uint64_t code = 0; code < count; ++code) {
    Digits m(e + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t k = 0; k < e; ++k) {
      m[k] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    m[e] = 1;
    if (is_irreducible(p, m)) return FieldPtr(new FqField(p, e, m, true));
  }
  fail(ErrorKind::InvalidArgument, "no irreducible modulus found");
}

FieldPtr FqField::make_with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  require(is_prime(p), ErrorKind::InvalidArgument, "characteristic is not prime");
  while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
  require(modulus.size() >= 2 && modulus.back() == 1, ErrorKind::InvalidArgument, "modulus must be monic of degree >= 1");
  for (auto& c : modulus) c %= p;
  require(is_irreducible(p, modulus), ErrorKind::InvalidArgument,
          "modulus " + format_univariate(modulus) + " is reducible over F_" + std::to_string(p));
  auto e = static_cast<std::uint32_t>(modulus.size() - 1);
  FieldPtr def = make(p, e);
  bool is_default = def->modulus() == modulus;
  if (e == 1) return def;
  return FieldPtr(new FqField(p, e, std::move(modulus), is_default));
}

FieldPtr FqField::parse(std::string_view descriptor) {
  std::string s = trim(descriptor);
  if (s.rfind("GF(", 0) != 0 || s.back() != ')') {
    fail(ErrorKind::ParseError, "field descriptor must look like GF(q): '" + s + "'");
  }
  std::string body = s.substr(3, s.size() - 4);
  std::string order_part = body, modulus_part;
  if (auto semi = body.find(';'); semi != std::string::npos) {
    order_part = body.substr(0, semi);
    modulus_part = body.substr(semi + 1);
  }
  order_part = trim(order_part);
  std::uint64_t q = 0;
  if (auto caret = order_part.find('^'); caret != std::string::npos) {
    long long p = parse_integer(order_part.substr(0, caret));
    long long e = parse_integer(order_part.substr(caret + 1));
    if (p < 2 || e < 1 || e > 16) fail(ErrorKind::ParseError, "bad field order '" + order_part + "'");
    q = 1;
    for (long long k = 0; k < e; ++k) q *= static_cast<std::uint64_t>(p);
  } else {
    long long v = parse_integer(order_part);
    if (v < 2) fail(ErrorKind::ParseError, "bad field order '" + order_part + "'");
    q = static_cast<std::uint64_t>(v);
  }
  if (q > (1u << 16)) fail(ErrorKind::ParseError, "field order too large");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint64_t rest = q;
  std::uint32_t e = 0;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) fail(ErrorKind::ParseError, "field order " + std::to_string(q) + " is not a prime power");
  if (trim(modulus_part).empty()) return make(p, e);
  Digits m = parse_univariate(modulus_part, p);
  if (m.size() != e + 1) fail(ErrorKind::ParseError, "modulus degree does not match field order");
  try {
    return make_with_modulus(p, m);
  } catch (const Error& err) {
    fail(ErrorKind::ParseError, err.what());
  }
}

Elem FqField::from_code(std::uint32_t code) const {
  require(code < q_, ErrorKind::InvalidArgument, "element code out of range");
  return Elem{code};
}

Elem FqField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

std::vector<std::uint32_t> FqField::digits(Elem a) const {
  std::vector<std::uint32_t> d(e_, 0);
  std::uint32_t code = a.code;
  for (std::uint32_t k = 0; k < e_; ++k) {
    d[k] = code % p_;
    code /= p_;
  }
  return d;
}

Elem FqField::from_digits(std::span<const std::uint32_t> d) const {
  std::uint32_t code = 0;
  for (std::size_t k = d.size(); k-- > 0;) code = code * p_ + d[k] % p_;
  return Elem{code};
}

Elem FqField::add(Elem a, Elem b) const {
  if (e_ == 1) {
    std::uint32_t s = a.code + b.code;
    return Elem{s >= p_ ? s - p_ : s};
  }
  if (!add_table_.empty()) return Elem{add_table_[static_cast<std::size_t>(a.code) * q_ + b.code]};
  std::uint32_t x = a.code, y = b.code, out = 0, place = 1;
  for (std::uint32_t k = 0; k < e_; ++k) {
    out += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return Elem{out};
}

Elem FqField::neg(Elem a) const {
  if (e_ == 1) return Elem{a.code == 0 ? 0 : p_ - a.code};
  std::uint32_t x = a.code, out = 0, place = 1;
  for (std::uint32_t k = 0; k < e_; ++k) {
    out += ((p_ - x % p_) % p_) * place;
    x /= p_;
    place *= p_;
  }
  return Elem{out};
}

Elem FqField::inv(Elem a) const {
  require(a.code != 0, ErrorKind::InvalidArgument, "division by zero");
  return Elem{exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
}

Elem FqField::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return one();
  if (a.code == 0) return zero();
  std::uint64_t idx = (static_cast<std::uint64_t>(log_[a.code]) * (k % (q_ - 1))) % (q_ - 1);
  return Elem{exp_[idx]};
}

std::uint64_t FqField::order(Elem a) const {
  require(a.code != 0, ErrorKind::InvalidArgument, "zero has no multiplicative order");
  return (q_ - 1) / std::gcd<std::uint64_t, std::uint64_t>(log_[a.code], q_ - 1);
}

std::vector<Elem> FqField::elements() const {
  std::vector<Elem> out(q_);
  for (std::uint32_t c = 0; c < q_; ++c) out[c] = Elem{c};
  return out;
}

std::string FqField::descriptor() const {
  std::string out = "GF(" + std::to_string(q_);
  if (!default_modulus_) out += "; " + format_univariate(modulus_);
  return out + ")";
}

std::string FqField::format(Elem a) const {
  if (e_ == 1) return std::to_string(a.code);
  auto d = digits(a);
  std::string out = "[";
  for (std::size_t k = d.size(); k-- > 0;) {
    out += std::to_string(d[k]);
    if (k != 0) out += ",";
  }
  return out + "]";
}

Elem FqField::parse_elem(std::string_view text) const {
  std::string s = trim(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty field element");
  if (s.front() != '[') return from_int(parse_integer(s));
  if (s.back() != ']') fail(ErrorKind::ParseError, "unterminated element '" + s + "'");
  std::vector<std::uint32_t> high_first;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string part;
  while (std::getline(ss, part, ',')) {
    long long v = parse_integer(part);
    if (v < 0 || v >= static_cast<long long>(p_)) fail(ErrorKind::ParseError, "coordinate out of range in '" + s + "'");
    high_first.push_back(static_cast<std::uint32_t>(v));
  }
  if (high_first.size() != e_) fail(ErrorKind::ParseError, "element '" + s + "' needs " + std::to_string(e_) + " coordinates");
  std::reverse(high_first.begin(), high_first.end());
  return from_digits(high_first);
}

// ---------------------------------------------------------------------------

namespace {

std::mutex cache_mutex;
std::map<std::string, std::shared_ptr<const PowerClassTable>> class_cache;
std::map<std::string, std::shared_ptr<const LevelWitness>> level_cache;

std::string cache_key(const FqField& field, int d) { return field.descriptor() + "#" + std::to_string(d); }

std::shared_ptr<const PowerClassTable> cached_classes(const FqField& field, int d) {
  std::string key = cache_key(field, d);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = class_cache.find(key); it != class_cache.end()) return it->second;
  }
  auto table = std::make_shared<const PowerClassTable>(power_classes(field, d));
  std::lock_guard<std::mutex> lock(cache_mutex);
  class_cache.emplace(key, table);
  return table;
}

std::shared_ptr<const LevelWitness> cached_level(const FqField& field, int d) {
  std::string key = cache_key(field, d);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = level_cache.find(key); it != level_cache.end()) return it->second;
  }
  auto lw = std::make_shared<const LevelWitness>(level_witness(field, d));
  std::lock_guard<std::mutex> lock(cache_mutex);
  level_cache.emplace(key, lw);
  return lw;
}

}  // namespace

PowerClassTable power_classes(const FqField& field, int d) {
  require(d >= 1, ErrorKind::InvalidArgument, "degree must be >= 1");
  const std::uint32_t q1 = field.q() - 1;
  const auto n = static_cast<std::uint32_t>(std::gcd<std::uint64_t, std::uint64_t>(d, q1));
  PowerClassTable t;
  t.d = d;
  t.class_of.assign(field.q(), -1);
  t.witness.assign(field.q(), field.zero());
  // log(u) mod n labels the coset of u; representatives are the smallest codes.
  std::vector<Elem> smallest(n, Elem{0});
  std::vector<bool> seen(n, false);
  for (std::uint32_t code = 1; code < field.q(); ++code) {
    std::uint32_t cls = field.log(Elem{code}) % n;
    if (!seen[cls]) {
      seen[cls] = true;
      smallest[cls] = Elem{code};
    }
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return smallest[a] < smallest[b]; });
  std::vector<int> rank(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    rank[order[k]] = static_cast<int>(k);
    t.reps.push_back(smallest[order[k]]);
  }
  const std::uint32_t m = q1 / n;
  // d t = L (mod q-1) with n | L: t = (L/n) * (d/n)^{-1} mod m.
  std::uint64_t dn_inv = 0;
  if (m > 1) {
    std::uint64_t dn = (static_cast<std::uint64_t>(d) / n) % m;
    for (std::uint64_t c = 1; c < m; ++c) {
      if ((dn * c) % m == 1) {
        dn_inv = c;
        break;
      }
    }
  }
  for (std::uint32_t code = 1; code < field.q(); ++code) {
    Elem u{code};
    std::uint32_t cls = field.log(u) % n;
    t.class_of[code] = rank[cls];
    Elem quotient = field.div(u, smallest[cls]);
    std::uint64_t L = field.log(quotient);
    std::uint64_t tt = m > 1 ? ((L / n) % m) * dn_inv % m : 0;
    Elem w = field.exp(tt);
    require(field.mul(smallest[cls], field.pow(w, d)) == u, ErrorKind::InvalidArgument,
            "power class witness failed to verify");
    t.witness[code] = w;
  }
  return t;
}

LevelWitness level_witness(const FqField& field, int d) {
  require(d >= 1, ErrorKind::InvalidArgument, "degree must be >= 1");
  const Elem target = field.neg(field.one());
  std::vector<Elem> powers;  // distinct nonzero d-th powers with smallest root
  std::vector<Elem> root_of(field.q(), Elem{0});
  std::vector<bool> is_power(field.q(), false);
  for (std::uint32_t c = 1; c < field.q(); ++c) {
    Elem v = field.pow(Elem{c}, d);
    if (!is_power[v.code]) {
      is_power[v.code] = true;
      root_of[v.code] = Elem{c};
      powers.push_back(v);
    }
  }
  // Breadth-first over sum values; pred records (previous sum, added power).
  std::vector<int> depth(field.q(), -1);
  std::vector<std::pair<Elem, Elem>> pred(field.q());
  std::vector<Elem> frontier;
  for (Elem v : powers) {
    if (depth[v.code] < 0) {
      depth[v.code] = 1;
      pred[v.code] = {Elem{0}, v};
      frontier.push_back(v);
    }
  }
  std::sort(frontier.begin(), frontier.end());
  int level = 1;
  while (depth[target.code] < 0) {
    require(!frontier.empty(), ErrorKind::NoSolution, "-1 is not a sum of d-th powers");
    std::vector<Elem> next;
    for (Elem s : frontier) {
      for (Elem v : powers) {
        Elem t = field.add(s, v);
        if (depth[t.code] < 0) {
          depth[t.code] = level + 1;
          pred[t.code] = {s, v};
          next.push_back(t);
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
    ++level;
  }
  LevelWitness lw;
  lw.d = d;
  Elem cur = target;
  for (int k = depth[target.code]; k > 0; --k) {
    auto [prev, v] = pred[cur.code];
    lw.terms.push_back(root_of[v.code]);
    cur = prev;
  }
  std::sort(lw.terms.begin(), lw.terms.end());
  Elem check = field.zero();
  for (Elem c : lw.terms) check = field.add(check, field.pow(c, d));
  require(check == target, ErrorKind::InvalidArgument, "level witness failed to verify");
  return lw;
}

namespace {

// Is sum_i b_i x_i^d isotropic? Exhausts d-th power values per coordinate.
bool diagonal_isotropic(const FqField& field, std::span<const Elem> coeffs, std::span<const Elem> power_values) {
  const std::uint32_t q = field.q();
  std::vector<char> some(q, 0);  // sums reachable with at least one nonzero coordinate
  for (Elem b : coeffs) {
    std::vector<char> next(q, 0);
    for (Elem t : power_values) {
      Elem bt = field.mul(b, t);
      if (t.code != 0) next[bt.code] = 1;  // all previous coordinates zero
      for (std::uint32_t s = 0; s < q; ++s) {
        if (some[s]) next[field.add(Elem{s}, bt).code] = 1;
      }
    }
    some = std::move(next);
  }
  return some[0] != 0;
}

}  // namespace

int nkd_exact(const FqField& field, int d, int n_max) {
  require(d >= 1, ErrorKind::InvalidArgument, "degree must be >= 1");
  auto classes = cached_classes(field, d);
  std::vector<Elem> values;
  {
    std::vector<bool> seen(field.q(), false);
    for (Elem x : field.elements()) {
      Elem v = field.pow(x, d);
      if (!seen[v.code]) {
        seen[v.code] = true;
        values.push_back(v);
      }
    }
  }
  const int c = classes->count();
  for (int n = 1; n <= n_max; ++n) {
    // Multisets of n class representatives, as non-decreasing index tuples.
    std::vector<int> idx(n, 0);
    bool all_isotropic = true;
    while (true) {
      Vec coeffs(n);
      for (int k = 0; k < n; ++k) coeffs[k] = classes->reps[idx[k]];
      if (!diagonal_isotropic(field, coeffs, values)) {
        all_isotropic = false;
        break;
      }
      int k = n - 1;
      while (k >= 0 && idx[k] == c - 1) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < n; ++j) idx[j] = idx[k];
    }
    if (all_isotropic) return n - 1;
  }
  fail(ErrorKind::BudgetExceeded, "nkd_exact: no confirmation up to n_max=" + std::to_string(n_max));
}

Elem eval_diagonal(const FqField& field, std::span<const Elem> coeffs, std::span<const Elem> x, int d) {
  Elem s = field.zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) s = field.add(s, field.mul(coeffs[i], field.pow(x[i], d)));
  return s;
}

bool is_zero_vec(std::span<const Elem> v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e.code == 0; });
}

std::optional<Vec> try_solve_diagonal(const FqField& field, std::span<const Elem> coeffs, int d,
                                      const DiagonalOptions& opts) {
  require(d >= 1, ErrorKind::InvalidArgument, "degree must be >= 1");
  const std::size_t n = coeffs.size();
  if (n == 0) return std::nullopt;
  auto verified = [&](Vec x) -> Vec {
    require(!is_zero_vec(x) && eval_diagonal(field, coeffs, x, d) == field.zero(), ErrorKind::InvalidArgument,
            "diagonal solution failed to verify");
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs[i].code == 0) {
      Vec x(n, field.zero());
      x[i] = field.one();
      return verified(std::move(x));
    }
  }
  if (opts.use_pigeonhole) {
    auto classes = cached_classes(field, d);
    auto level = cached_level(field, d);
    const std::size_t m = level->terms.size();
    std::vector<std::vector<std::size_t>> members(classes->count());
    for (std::size_t i = 0; i < n; ++i) {
      auto& bucket = members[classes->class_of[coeffs[i].code]];
      bucket.push_back(i);
      if (bucket.size() == m + 1) {
        // a_i = b_s (a_i')^d; x_i = c_i / a_i' for the first m, 1 / a' for the last.
        Vec x(n, field.zero());
        for (std::size_t t = 0; t <= m; ++t) {
          std::size_t j = bucket[t];
          Elem root = classes->witness[coeffs[j].code];
          Elem numer = t < m ? level->terms[t] : field.one();
          x[j] = field.div(numer, root);
        }
        return verified(std::move(x));
      }
    }
  }
  if (!opts.use_exhaustive) return std::nullopt;
  // Projective sweep in the fixed order: leading coordinate 1, later lead first.
  const std::uint32_t q = field.q();
  double total = 0;
  for (std::size_t k = 0; k < n; ++k) total += std::pow(static_cast<double>(q), static_cast<double>(k));
  if (total > static_cast<double>(opts.enum_points)) {
    fail(ErrorKind::BudgetExceeded, "solve_diagonal exhaustive search over " + std::to_string(n) + " variables");
  }
  Vec pw(q);
  for (std::uint32_t c = 0; c < q; ++c) pw[c] = field.pow(Elem{c}, d);
  for (std::size_t lead = n; lead-- > 0;) {
    Vec x(n, field.zero());
    x[lead] = field.one();
    const std::size_t tail = n - lead - 1;
    while (true) {
      Elem s = field.zero();
      for (std::size_t i = lead; i < n; ++i) s = field.add(s, field.mul(coeffs[i], pw[x[i].code]));
      if (s.code == 0) return verified(std::move(x));
      std::size_t k = n;
      while (k > lead + 1 && x[k - 1].code == q - 1) {
        x[k - 1] = field.zero();
        --k;
      }
      if (k == lead + 1 || tail == 0) break;
      x[k - 1] = Elem{x[k - 1].code + 1};
    }
  }
  return std::nullopt;
}

Vec solve_diagonal(const FqField& field, std::span<const Elem> coeffs, int d, const DiagonalOptions& opts) {
  auto x = try_solve_diagonal(field, coeffs, d, opts);
  if (!x) fail(ErrorKind::NoSolution, "diagonal form has only the trivial zero");
  return *x;
}

FieldEmbedding embed(const FieldPtr& base, const FieldPtr& ext) {
  require(base->p() == ext->p() && ext->e() % base->e() == 0, ErrorKind::InvalidArgument,
          base->descriptor() + " does not embed in " + ext->descriptor());
  const auto& m = base->modulus();
  // Smallest root of the base modulus in ext.
  Elem root{0};
  bool found = false;
  for (Elem x : ext->elements()) {
    Elem acc = ext->zero();
    for (std::size_t k = m.size(); k-- > 0;) acc = ext->add(ext->mul(acc, x), ext->from_int(m[k]));
    if (acc.code == 0) {
      root = x;
      found = true;
      break;
    }
  }
  require(found, ErrorKind::InvalidArgument, "base modulus has no root in extension");
  FieldEmbedding emb{base, ext, Vec(base->q())};
  for (Elem a : base->elements()) {
    auto dg = base->digits(a);
    Elem acc = ext->zero();
    for (std::size_t k = dg.size(); k-- > 0;) acc = ext->add(ext->mul(acc, root), ext->from_int(dg[k]));
    emb.image[a.code] = acc;
  }
  return emb;
}

FieldExtension make_extension(const FieldPtr& base, int m) {
  require(m >= 1, ErrorKind::InvalidArgument, "extension degree must be >= 1");
  FieldPtr ext = FqField::make(base->p(), base->e() * static_cast<std::uint32_t>(m));
  FieldExtension out;
  out.embedding = embed(base, ext);
  out.degree = m;
  // Powers of a generator of ext^x span ext over base.
  Elem theta = ext->primitive();
  Elem acc = ext->one();
  for (int k = 0; k < m; ++k) {
    out.basis.push_back(acc);
    acc = ext->mul(acc, theta);
  }
  out.coords.assign(ext->q(), Vec());
  std::vector<Elem> combo(m, base->zero());
  std::uint64_t total = 1;
  for (int k = 0; k < m; ++k) total *= base->q();
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    Elem value = ext->zero();
    for (int k = 0; k < m; ++k) {
      combo[k] = Elem{static_cast<std::uint32_t>(c % base->q())};
      c /= base->q();
      value = ext->add(value, ext->mul(out.embedding(combo[k]), out.basis[k]));
    }
    require(out.coords[value.code].empty(), ErrorKind::DependentVectors, "extension basis is not independent");
    out.coords[value.code] = combo;
  }
  return out;
}

std::string format_vec(const FqField& field, std::span<const Elem> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += field.format(v[i]);
  }
  return out + ")";
}

Vec parse_vec(const FqField& field, std::string_view text) {
  std::string s = trim(text);
  if (s.size() < 2 || (s.front() != '(' && s.front() != '[') || (s.back() != ')' && s.back() != ']')) {
    fail(ErrorKind::ParseError, "vector must be parenthesised: '" + s + "'");
  }
  Vec out;
  std::string body = s.substr(1, s.size() - 2);
  if (trim(body).empty()) return out;
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(field.parse_elem(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(field.parse_elem(cur));
  return out;
}

}  // namespace brauer
