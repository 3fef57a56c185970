#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brauer/budget.hpp"

namespace brauer {

/// An element of F_q, identified by its code sum_i c_i p^i where the element
/// is sum_i c_i t^i in F_p[t]/(modulus). Code order is the fixed total order:
/// lexicographic on the coordinate tuple written highest power first.
struct Elem {
  std::uint32_t code = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

using Vec = std::vector<Elem>;

class FqField;
using FieldPtr = std::shared_ptr<const FqField>;

/// Exact arithmetic in F_q = F_p[t]/(modulus). Immutable after construction.
class FqField {
 public:
  /// F_{p^e} with the smallest irreducible monic modulus of degree e.
  static FieldPtr make(std::uint32_t p, std::uint32_t e = 1);
  /// F_{p^e} with an explicit monic modulus given low coefficient first.
  static FieldPtr make_with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);
  /// Parses `GF(q)`, `GF(p^e)` or `GF(q; x^2+1)`.
  static FieldPtr parse(std::string_view descriptor);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool default_modulus() const { return default_modulus_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem from_code(std::uint32_t code) const;
  /// Image of an integer in the prime subfield.
  Elem from_int(long long n) const;
  /// Coordinates c_0..c_{e-1} of an element.
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> digits) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a.code == 0 || b.code == 0) return zero();
    std::uint32_t s = log_[a.code] + log_[b.code];
    return Elem{exp_[s]};
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  /// The unique p-th root (Frobenius is bijective on a finite field).
  Elem pth_root(Elem a) const { return pow(a, q_ / p_); }

  /// Smallest generator of the multiplicative group.
  Elem primitive() const { return Elem{exp_[1]}; }
  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Elem a) const { return log_[a.code]; }
  Elem exp(std::uint64_t k) const { return Elem{exp_[k % (q_ - 1)]}; }
  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Elem a) const;

  /// All elements in the fixed total order.
  std::vector<Elem> elements() const;

  std::string descriptor() const;
  std::string format(Elem a) const;
  /// Integer (prime-subfield image) or a coordinate tuple such as `[2,1]`.
  Elem parse_elem(std::string_view text) const;
  bool same_as(const FqField& other) const {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
  }

 private:
  FqField(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus, bool is_default);

  std::uint32_t p_, e_, q_;
  std::vector<std::uint32_t> modulus_;
  bool default_modulus_;
  std::vector<std::uint32_t> exp_;  // 2(q-1) entries
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> add_table_;  // q*q entries when small, else empty
};

/// Is a monic polynomial over F_p (low coefficient first) irreducible? Trial
/// division by every monic polynomial of lower positive degree.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic);

/// Representatives of k^x / (k^x)^d with d-th root witnesses.
struct PowerClassTable {
  int d = 1;
  std::vector<Elem> reps;
  /// class_of[code] for nonzero codes; -1 at zero.
  std::vector<int> class_of;
  /// witness[code] = w with element = reps[class_of] * w^d.
  std::vector<Elem> witness;

  int count() const { return static_cast<int>(reps.size()); }
};

PowerClassTable power_classes(const FqField& field, int d);

/// -1 written as a sum of m nonzero d-th powers, m minimal.
struct LevelWitness {
  int d = 1;
  std::vector<Elem> terms;
  int m() const { return static_cast<int>(terms.size()); }
};

LevelWitness level_witness(const FqField& field, int d);

/// Least N such that every diagonal degree-d form in more than N variables has
/// a nontrivial zero, by exhausting coefficient vectors up to power classes.
int nkd_exact(const FqField& field, int d, int n_max);

struct DiagonalOptions {
  bool use_pigeonhole = true;
  bool use_exhaustive = true;
  long enum_points = 1L << 22;
};

/// Nonzero x with sum_i a_i x_i^d = 0, or nullopt when none exists.
/// Throws BudgetExceeded when the exhaustive fallback exceeds its cap.
std::optional<Vec> try_solve_diagonal(const FqField& field, std::span<const Elem> coeffs, int d,
                                      const DiagonalOptions& opts = {});
/// As try_solve_diagonal, throwing NoSolution instead of returning nullopt.
Vec solve_diagonal(const FqField& field, std::span<const Elem> coeffs, int d,
                   const DiagonalOptions& opts = {});

/// Field embedding base -> ext (same characteristic, e(base) | e(ext)).
struct FieldEmbedding {
  FieldPtr base;
  FieldPtr ext;
  std::vector<Elem> image;  // indexed by base code

  Elem operator()(Elem a) const { return image[a.code]; }
};

FieldEmbedding embed(const FieldPtr& base, const FieldPtr& ext);

/// A degree-m extension with an explicit basis over the base field.
struct FieldExtension {
  FieldEmbedding embedding;
  int degree = 1;
  std::vector<Elem> basis;  // in ext
  /// coords[ext code] = coefficients over base in `basis`.
  std::vector<Vec> coords;

  const FqField& base() const { return *embedding.base; }
  const FqField& ext() const { return *embedding.ext; }
};

FieldExtension make_extension(const FieldPtr& base, int m);

/// Nonzero x in base^n with sum_j a_j x_j^d = 0 in the extension, found by
/// splitting the equation into `degree` base-field forms and solving them as a
/// system. Throws NoSolution / BudgetExceeded.
Vec solve_diagonal_ext(const FieldExtension& ext, std::span<const Elem> coeffs, int d,
                       const Budget& budget = {});

/// Evaluates sum_i a_i x_i^d.
Elem eval_diagonal(const FqField& field, std::span<const Elem> coeffs, std::span<const Elem> x, int d);

std::string format_vec(const FqField& field, std::span<const Elem> v);
Vec parse_vec(const FqField& field, std::string_view text);
bool is_zero_vec(std::span<const Elem> v);

}  // namespace brauer
