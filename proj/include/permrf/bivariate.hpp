#pragma once

// Dense polynomials in F_{q^n}[X, Y], the proof polynomials for n = 2, 3, and the
// point-count threshold predicate they are paired with.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permrf/gf_core.hpp"

namespace permrf {

class BivarPoly {
 public:
  /// The zero polynomial.
  explicit BivarPoly(const FieldTower& tower);

  static BivarPoly constant(const Element& a);
  static BivarPoly x(const FieldTower& tower);
  static BivarPoly y(const FieldTower& tower);

  const FieldTower& tower() const noexcept { return *tower_; }
  /// Degrees in X and Y; both 0 for constants, including zero.
  unsigned deg_x() const noexcept { return nx_ - 1; }
  unsigned deg_y() const noexcept { return ny_ - 1; }
  bool is_zero() const noexcept;

  /// Coefficient of X^i Y^j (zero outside the grid).
  Element coeff(unsigned i, unsigned j) const;
  void set(unsigned i, unsigned j, const Element& a);

  BivarPoly& operator+=(const BivarPoly& rhs);
  BivarPoly& operator-=(const BivarPoly& rhs);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const Element& s, const BivarPoly& f);

  Element eval(const Element& x, const Element& y) const;
  BivarPoly transposed() const;
  std::string render() const;

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.tower_ == b.tower_ && a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.a_ == b.a_;
  }

 private:
  BivarPoly(const FieldTower& tower, unsigned nx, unsigned ny);
  void grow(unsigned nx, unsigned ny);
  void trim();

  const FieldTower* tower_;
  unsigned nx_ = 1;
  unsigned ny_ = 1;
  std::vector<Element> a_;  // a_[i * ny_ + j] is the coefficient of X^i Y^j
};

/// σ_q^i applied to every coefficient.
BivarPoly apply_sigma(const BivarPoly& f, unsigned i);
bool is_fq_stable(const BivarPoly& f);
bool is_symmetric(const BivarPoly& f);
/// Π_i σ_q^i(f) and Σ_i σ_q^i(f).
BivarPoly norm(const BivarPoly& f);
BivarPoly trace(const BivarPoly& f);

/// N((X+b)(Y+b)) - Tr(c^q (X+b)(Y+b)), n = 2.
BivarPoly build_f2(const Element& b, const Element& c);
/// N((X+b)(Y+b)) - Tr(c^{q^2} (X+b)(X+b^q)(Y+b)(Y+b^q)), n = 3.
BivarPoly build_f3(const Element& b, const Element& c);
/// Tr(c^{q^2} (X+b)(X+b^q)(Y+b)(Y+b^q)), n = 3.
BivarPoly build_f3_kernel(const Element& b, const Element& c);

/// g = XY + βX + γY + δ
struct BilinearFactor {
  Element beta;
  Element gamma;
  Element delta;

  BivarPoly poly() const;
};

/// XY + bX + b^qY + Tr(b^2) - N(b), the n = 2 factor at the closed-form c.
BilinearFactor expected_factor_n2(const Element& b);
/// (X+b)(Y+b) - c, the n = 3 factor at the closed-form c.
BilinearFactor expected_factor_n3(const Element& b, const Element& c);

/// Searches g = XY + βX + γY + δ over F_{q^n}^3 with Π σ^i(g) = f exactly; the
/// first hit in (β, γ, δ) encoding order is returned.
std::optional<BilinearFactor> conjugate_factor_search(const BivarPoly& f, unsigned workers = 1);

/// #{(x0, y0) ∈ F_q^2 : f(x0, y0) = 0, x0 ≠ y0}
std::uint64_t count_offdiag_points(const BivarPoly& f);

/// q - (d-1)(d-2)√q - 2d + 1 > 0, decided in exact integer arithmetic.
bool weil_holds(std::uint64_t q, unsigned d);
/// Positive root s* of s^2 - (d-1)(d-2)s - (2d-1); weil_holds(q, d) ⟺ √q > s*.
double weil_threshold(unsigned d);
/// Smallest prime power q with weil_holds(q, d).
std::uint64_t weil_min_prime_power(unsigned d);

}  // namespace permrf
