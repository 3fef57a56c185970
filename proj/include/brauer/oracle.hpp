#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brauer/budget.hpp"
#include "brauer/certificate.hpp"
#include "brauer/normalform.hpp"
#include "brauer/poly.hpp"

namespace brauer {

/// Every F_q-point of Z(f), including the origin, in the fixed element order.
struct ZeroLocus {
  FieldPtr field;
  int nvars = 0;
  std::vector<Vec> points;
};

/// Throws BudgetExceeded when q^nvars exceeds budget.enum_points.
ZeroLocus enumerate_zero_locus(const FormTuple& ft, const Budget& budget);
/// Visits every F_q^n point in order; returns the number of points visited.
long for_each_point(const FqField& field, int n, long cap, const std::function<void(const Vec&)>& visit);

struct VerifyReport {
  bool ok = true;
  std::vector<std::pair<std::string, bool>> checks;
  std::string first_failure() const;
};

/// Replays every identity from the serialized data alone: digests, point
/// evaluations, template equalities, orthogonality expansions. Also compares
/// the recorded check list with the replay.
VerifyReport verify_certificate(const Certificate& cert);
/// Parses first; malformed text throws MalformedCertificate.
VerifyReport verify_certificate_text(std::string_view text);
/// The replay without the recorded-list comparison; used by the builders.
std::vector<std::pair<std::string, bool>> replay_checks(const Certificate& cert);

/// |Z(F_{q^m})| for m = 1..max_ext. A sanity probe only, never a decision.
struct IrreducibilityProbe {
  std::vector<long> counts;
  bool certified = false;
};
IrreducibilityProbe irreducibility_probe(const FormTuple& ft, int max_ext, const Budget& budget);

/// Finite-field stand-in for density. For each degree e <= bound, compares
/// the rank of the evaluation matrix of degree-e monomials on the generated
/// points with its rank on all of Z: equal ranks mean every degree-e form
/// nonzero somewhere on Z is nonzero at some generated point.
struct DensityRow {
  int degree = 0;
  long monomials = 0;
  long rank_locus = 0;
  long rank_points = 0;
  bool pass = false;
  std::optional<Form> counterexample;  // vanishes on the points, not on Z
};
struct DensityReport {
  bool ok = true;
  long locus_size = 0;
  long points = 0;
  std::vector<DensityRow> rows;
};
DensityReport density_proxy_check(const FormTuple& ft, const std::vector<Vec>& points, int bound,
                                  const Budget& budget);
/// Same check inside W: Z(f) ∩ W in W coordinates against every chart point.
DensityReport density_proxy_check(const NormalFormData& nf, int bound, const Budget& budget);

}  // namespace brauer
