#pragma once

// q-linear polynomials L(x) = Σ a_i x^{q^i} viewed as F_q-linear maps of F_{q^n}.

#include <cstdint>
#include <span>
#include <vector>

#include "permrf/fq_matrix.hpp"
#include "permrf/gf_core.hpp"

namespace permrf {

class LinearizedPoly {
 public:
  /// Coefficients a_0, a_1, ...; zero-padded to n. All must be top-level elements of one tower.
  explicit LinearizedPoly(std::vector<Element> coeffs);

  static LinearizedPoly zero(const FieldTower& tower);
  static LinearizedPoly identity(const FieldTower& tower);
  /// a·x
  static LinearizedPoly scalar(const Element& a);
  /// x^q - x
  static LinearizedPoly frobenius_minus_identity(const FieldTower& tower);
  static LinearizedPoly from_encodings(const FieldTower& tower, std::span<const std::uint64_t> enc);
  /// The unique q-linear polynomial whose power-basis matrix is `m`.
  static LinearizedPoly from_matrix(const FqMatrix& m);

  const FieldTower& tower() const noexcept { return *tower_; }
  std::span<const Element> coeffs() const noexcept { return coeffs_; }
  std::vector<std::uint64_t> encodings() const;
  bool is_identity() const;

  Element operator()(const Element& x) const;

  friend bool operator==(const LinearizedPoly& a, const LinearizedPoly& b) {
    return a.tower_ == b.tower_ && a.coeffs_ == b.coeffs_;
  }

 private:
  const FieldTower* tower_;
  std::vector<Element> coeffs_;
};

Element eval_lin(const LinearizedPoly& L, const Element& x);

/// Column j holds the power-basis coordinates of L(v^j).
FqMatrix matrix_of(const LinearizedPoly& L);

struct RankKernelImage {
  std::size_t rank = 0;
  std::vector<Element> kernel;
  /// Nonzero columns of the reduced column echelon form, in encoding order.
  std::vector<Element> image;
};

RankKernelImage rank_kernel_image(const LinearizedPoly& L);

/// Throws not_bijective when rank(L) < n.
LinearizedPoly invert_lin(const LinearizedPoly& L);

/// α with Tr(L(x)) = Tr(α x) for all x (the trace-form adjoint of L applied to 1).
Element trace_adjoint_one(const LinearizedPoly& L);

struct TracePair {
  Element alpha;
  Element beta;
};

/// L(x) = Σ α_i Tr(β_i x), α_i the image basis of rank_kernel_image.
std::vector<TracePair> trace_decompose(const LinearizedPoly& L);

/// Extend an independent family to a basis of F_{q^n}/F_q with lowest-encoding elements.
std::vector<Element> complete_basis(std::span<const Element> partial);

/// Rank over F_q of the coordinate vectors of `elems`.
std::size_t span_rank(std::span<const Element> elems);

}  // namespace permrf
