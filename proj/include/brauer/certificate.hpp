#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "brauer/normalform.hpp"
#include "brauer/ortho.hpp"
#include "brauer/poly.hpp"
#include "brauer/strength.hpp"

namespace brauer {

/// `key value` line inside a certificate section.
struct CertEntry {
  std::string key;
  std::string value;
  friend bool operator==(const CertEntry&, const CertEntry&) = default;
};

/// Self-contained witness data, replayable by evaluation alone. The text form
/// is documented in FORMAT.md.
struct Certificate {
  std::string kind;  // nonzero-point, dense-point, normal-form, good-subspace, closure-bound, strength
  std::string field;
  int nvars = 0;
  std::vector<CertEntry> inputs;
  std::vector<CertEntry> witness;
  std::vector<CertEntry> checks;  // check name -> pass | fail

  /// Recorded digests; filled by parse, recomputed by serialize.
  std::string recorded_input_digest;
  std::string recorded_witness_digest;

  std::string input_digest() const;
  std::string witness_digest() const;

  std::string serialize() const;
  /// Throws MalformedCertificate on structural errors. Digest mismatches are
  /// not structural; verification reports them.
  static Certificate parse(std::string_view text);

  const std::string* find_input(std::string_view key) const;
  const std::string* find_witness(std::string_view key) const;
  std::vector<std::string> all_inputs(std::string_view key) const;
  std::vector<std::string> all_witness(std::string_view key) const;
};

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

// Builders. Each fills inputs and witness, then records the oracle replay
// of every check.

Certificate nonzero_point_certificate(const FormTuple& ft, const std::vector<Form>& nonzero, const Vec& point);
Certificate dense_point_certificate(const FormTuple& ft, const Form& g, const DensePoint& dp, std::uint64_t seed);
Certificate normal_form_certificate(const NormalFormData& nf, const Form& g);
Certificate good_subspace_certificate(const FormTuple& ft, std::size_t i, const Subspace& F, const GoodFormWitness& w);
Certificate closure_certificate(const FormTuple& ft, const Phi& phi, const ClosureBound& cb);
Certificate strength_certificate(const Form& f, const StrengthResult& res);

// Encoding helpers shared with the oracle.

std::string encode_expr(const FqField& field, const Expr& e);
Expr decode_expr(const FqField& field, std::string_view text);

}  // namespace brauer
