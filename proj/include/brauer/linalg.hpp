#pragma once

#include <optional>
#include <span>
#include <vector>

#include "brauer/field.hpp"

namespace brauer {

/// Row-major matrix; also used as a list of vectors.
using Mat = std::vector<Vec>;

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(const FqField& field, Mat& rows, std::size_t ncols);

std::size_t rank(const FqField& field, Mat rows, std::size_t ncols);
bool independent(const FqField& field, const Mat& vectors, std::size_t ncols);

/// Basis of {x : A x = 0}, one vector per free column, free entry 1.
Mat kernel_basis(const FqField& field, const Mat& rows, std::size_t ncols);

/// Some x with A x = b, or nullopt when inconsistent.
std::optional<Vec> solve_linear(const FqField& field, const Mat& rows, const Vec& rhs, std::size_t ncols);

/// Standard basis indices whose unit vectors complete `vectors` to a basis
/// of the ambient space (greedy in index order).
std::vector<std::size_t> complement_indices(const FqField& field, const Mat& vectors, std::size_t ncols);

/// sum_i c_i * basis_i.
Vec combine(const FqField& field, const Mat& basis, std::span<const Elem> coeffs, std::size_t ncols);

Vec scaled(const FqField& field, std::span<const Elem> v, Elem c);
Vec added(const FqField& field, std::span<const Elem> a, std::span<const Elem> b);

/// Does v lie in span(vectors)?
bool in_span(const FqField& field, const Mat& vectors, std::span<const Elem> v, std::size_t ncols);

}  // namespace brauer
