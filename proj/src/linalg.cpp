#include "brauer/linalg.hpp"

#include "brauer/error.hpp"

namespace brauer {

std::vector<std::size_t> rref(const FqField& field, Mat& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t pr = r;
    while (pr < rows.size() && rows[pr][c].code == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    Elem inv = field.inv(rows[r][c]);
    for (std::size_t k = c; k < ncols; ++k) rows[r][k] = field.mul(rows[r][k], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].code == 0) continue;
      Elem factor = rows[i][c];
      for (std::size_t k = c; k < ncols; ++k) {
        if (rows[r][k].code != 0) rows[i][k] = field.sub(rows[i][k], field.mul(factor, rows[r][k]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t rank(const FqField& field, Mat rows, std::size_t ncols) { return rref(field, rows, ncols).size(); }

bool independent(const FqField& field, const Mat& vectors, std::size_t ncols) {
  return rank(field, vectors, ncols) == vectors.size();
}

Mat kernel_basis(const FqField& field, const Mat& rows, std::size_t ncols) {
  Mat r = rows;
  auto pivots = rref(field, r, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Mat out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(ncols, field.zero());
    x[free] = field.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = field.neg(r[i][free]);
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<Vec> solve_linear(const FqField& field, const Mat& rows, const Vec& rhs, std::size_t ncols) {
  require(rows.size() == rhs.size(), ErrorKind::DimensionMismatch, "solve_linear: row count mismatch");
  Mat aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Vec row = rows[i];
    row.resize(ncols, field.zero());
    row.push_back(rhs[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = rref(field, aug, ncols + 1);
  if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
  Vec x(ncols, field.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][ncols];
  return x;
}

std::vector<std::size_t> complement_indices(const FqField& field, const Mat& vectors, std::size_t ncols) {
  Mat r = vectors;
  auto pivots = rref(field, r, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (!is_pivot[c]) out.push_back(c);
  }
  return out;
}

Vec combine(const FqField& field, const Mat& basis, std::span<const Elem> coeffs, std::size_t ncols) {
  require(basis.size() == coeffs.size(), ErrorKind::DimensionMismatch, "combine: coefficient count mismatch");
  Vec out(ncols, field.zero());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i].code == 0) continue;
    for (std::size_t k = 0; k < ncols; ++k) {
      if (basis[i][k].code != 0) out[k] = field.add(out[k], field.mul(coeffs[i], basis[i][k]));
    }
  }
  return out;
}

Vec scaled(const FqField& field, std::span<const Elem> v, Elem c) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = field.mul(v[i], c);
  return out;
}

Vec added(const FqField& field, std::span<const Elem> a, std::span<const Elem> b) {
  require(a.size() == b.size(), ErrorKind::DimensionMismatch, "vector length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.add(a[i], b[i]);
  return out;
}

bool in_span(const FqField& field, const Mat& vectors, std::span<const Elem> v, std::size_t ncols) {
  Mat with = vectors;
  with.emplace_back(v.begin(), v.end());
  return rank(field, with, ncols) == rank(field, vectors, ncols);
}

}  // namespace brauer
