#pragma once

// Exact arithmetic in the tower F_p ⊂ F_q = F_p[u]/(g) ⊂ F_{q^n} = F_q[v]/(h).
//
// Elements are small value types tied to the tower that created them. Every
// level stores a coefficient vector over the next-lower level:
//   prime: one residue mod p
//   base:  m digits over F_p (coefficients of 1, u, ..., u^{m-1})
//   top:   n base-field encodings (coefficients of 1, v, ..., v^{n-1})
// The canonical integer encoding reads the coefficient vector low-to-high as
// digits, so a base-field value keeps its encoding when embedded in the top.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permrf/error.hpp"

namespace permrf {

inline constexpr std::uint64_t kDefaultSizeBudget = std::uint64_t{1} << 24;
inline constexpr unsigned kMaxDegree = 32;
inline constexpr std::uint32_t kMaxBaseFieldSize = std::uint32_t{1} << 16;

enum class Level : std::uint8_t { prime, base, top };

using Coeff = std::uint16_t;

/// Parsed "p^m:n" field string.
struct FieldSpec {
  std::uint32_t p = 0;
  unsigned m = 0;
  unsigned n = 0;

  std::string to_string() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

FieldSpec parse_field_spec(std::string_view text);

/// Split a prime power q into (p, m). Throws not_prime when q is not a prime power.
FieldSpec prime_power_spec(std::uint64_t q, unsigned n);

bool is_prime(std::uint64_t v);
bool is_prime_power(std::uint64_t v);

struct TowerOptions {
  std::uint64_t size_budget = kDefaultSizeBudget;
  /// Low-to-high coefficients; empty selects the canonical modulus. The leading
  /// 1 may be included or left implicit.
  std::vector<std::uint32_t> modulus_g;
  std::vector<std::uint32_t> modulus_h;
};

class FieldTower;

class Element {
 public:
  Element() = default;

  const FieldTower& tower() const;
  bool has_tower() const noexcept { return tower_ != nullptr; }
  Level level() const noexcept { return level_; }
  unsigned degree() const noexcept { return degree_; }
  std::span<const Coeff> coeffs() const noexcept { return {c_.data(), degree_}; }
  Coeff coeff(unsigned i) const noexcept { return c_[i]; }

  bool is_zero() const noexcept;
  std::uint64_t encode() const;

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(const Element& rhs);
  Element& operator/=(const Element& rhs);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  friend Element operator/(Element a, const Element& b) { return a /= b; }
  friend Element operator-(const Element& a);

  friend bool operator==(const Element&, const Element&) = default;

 private:
  friend class FieldTower;

  Element(const FieldTower* tower, Level level, unsigned degree)
      : tower_(tower), level_(level), degree_(static_cast<std::uint8_t>(degree)) {}

  const FieldTower* tower_ = nullptr;
  Level level_ = Level::top;
  std::uint8_t degree_ = 0;
  std::array<Coeff, kMaxDegree> c_{};
};

/// Strict weak order by canonical encoding (level first).
struct ByEncoding {
  bool operator()(const Element& a, const Element& b) const {
    if (a.level() != b.level()) return a.level() < b.level();
    return a.encode() < b.encode();
  }
};

class FieldTower {
 public:
  FieldTower(const FieldTower&) = delete;
  FieldTower& operator=(const FieldTower&) = delete;

  std::uint32_t p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  unsigned n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint64_t size(Level level = Level::top) const noexcept;
  unsigned degree(Level level) const noexcept;
  std::uint64_t size_budget() const noexcept { return budget_; }
  FieldSpec spec() const { return {p_, m_, n_}; }

  /// Moduli low-to-high including the leading 1.
  const std::vector<std::uint32_t>& modulus_g() const noexcept { return g_; }
  const std::vector<std::uint32_t>& modulus_h() const noexcept { return h_; }

  Element zero(Level level = Level::top) const;
  Element one(Level level = Level::top) const;
  /// The class of v in F_q[v]/(h).
  Element generator() const;
  Element decode(std::uint64_t k, Level level = Level::top) const;
  /// Top-level element whose value is the base-field element with encoding `enc`.
  Element from_base(std::uint32_t enc) const;
  /// Top-level element with the given coordinates in the power basis of v.
  Element from_coords(std::span<const Coeff> coords) const;
  /// Lift a lower-level element into the top field.
  Element embed(const Element& a) const;
  /// Encoding of a top-level element known to lie in F_q.
  std::uint32_t to_base(const Element& a) const;
  bool in_base_field(const Element& a) const;

  /// All top-level elements of F_q in encoding order.
  std::vector<Element> base_field_elements() const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element inverse(const Element& a) const;
  Element pow(const Element& a, std::uint64_t e) const;

  Element frobenius(const Element& a, unsigned i) const;
  Element trace_rel(const Element& a, unsigned from, unsigned to) const;
  Element trace(const Element& a) const;
  /// Tr_{n,1}(a) as a base-field encoding; the hot path for criteria.
  Coeff trace_base(const Element& a) const;
  Element norm(const Element& a) const;
  bool is_in_subfield(const Element& a, unsigned d) const;

  /// Power-basis matrix of v ↦ v^{q^i}; column j holds the coordinates of σ^i(v^j).
  const std::vector<Coeff>& frobenius_matrix(unsigned i) const { return frob_[i]; }

  // F_q arithmetic on canonical encodings.
  Coeff base_add(Coeff a, Coeff b) const noexcept;
  Coeff base_sub(Coeff a, Coeff b) const noexcept;
  Coeff base_neg(Coeff a) const noexcept;
  Coeff base_mul(Coeff a, Coeff b) const noexcept;
  Coeff base_inv(Coeff a) const;

  /// Polynomial rendering: base-field values in u, top-level values in v.
  std::string render(const Element& a) const;
  std::string render_base(Coeff a) const;

 private:
  friend std::shared_ptr<const FieldTower> make_tower(std::uint32_t, unsigned, unsigned,
                                                      const TowerOptions&);
  FieldTower() = default;

  void init_base_field(const TowerOptions& opts);
  void init_top_field(const TowerOptions& opts);

  void require_same(const Element& a, const Element& b) const;
  void require_top(const Element& a, const char* op) const;

  void top_mul(const Coeff* a, const Coeff* b, Coeff* out) const noexcept;
  void apply_frobenius(const Coeff* a, unsigned i, Coeff* out) const noexcept;

  std::uint32_t p_ = 0;
  unsigned m_ = 0;
  unsigned n_ = 0;
  std::uint32_t q_ = 0;
  std::uint64_t size_ = 0;
  std::uint64_t budget_ = 0;
  std::vector<std::uint32_t> g_;
  std::vector<std::uint32_t> h_;

  std::vector<Coeff> exp_;       // length 2(q-1)
  std::vector<std::uint32_t> log_;
  std::vector<Coeff> add_table_;  // q*q, only for small odd composite q
  std::vector<std::uint32_t> pow_p_;

  std::vector<std::vector<Coeff>> frob_;  // n matrices, n*n each, row-major
  std::vector<Coeff> trace_of_basis_;     // Tr(v^j)
};

std::shared_ptr<const FieldTower> make_tower(std::uint32_t p, unsigned m, unsigned n,
                                             const TowerOptions& opts = {});
std::shared_ptr<const FieldTower> make_tower(const FieldSpec& spec, const TowerOptions& opts = {});

// Free-function spellings of the tower operations.
Element inverse(const Element& a);
Element pow(const Element& a, std::uint64_t e);
Element frobenius(const Element& a, unsigned i);
Element trace_rel(const Element& a, unsigned from, unsigned to);
Element trace(const Element& a);
Element norm(const Element& a);
std::uint64_t encode(const Element& a);
Element decode(const FieldTower& tower, std::uint64_t k, Level level = Level::top);
bool is_in_subfield(const Element& a, unsigned d);

/// Coordinates of a top-level element over F_q in the power basis of v.
std::vector<Coeff> coordinates(const Element& a);

/// Dual basis with respect to the trace form: Tr(α_i β_j) = δ_ij.
std::vector<Element> dual_basis(std::span<const Element> basis);

/// Determinant of the conjugate matrix [σ^i(w_j)] for w = (1, b^q+b, b^{q+1}) over
/// F_{q^3}. It lies in F_q and equals N(b)·Tr(b^{q-1} - b^{q^2-1}).
Element basis_det_b(const Element& b);

/// Determinant over F_q of the power-basis coordinate matrix of (1, b^q+b, b^{q+1}).
Element basis_coordinate_det_b(const Element& b);

/// N(b)·Tr(b^{q-1} - b^{q^2-1}).
Element basis_det_closed_form(const Element& b);

/// Calls fn(x) for every top-level element in encoding order.
void for_each_element(const FieldTower& tower, const std::function<void(const Element&)>& fn);

}  // namespace permrf
