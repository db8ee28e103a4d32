#include "permrf/gf_core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "permrf/fq_matrix.hpp"

namespace permrf {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::not_prime: return "NotPrime";
    case Errc::degree_zero: return "DegreeZero";
    case Errc::size_budget_exceeded: return "SizeBudgetExceeded";
    case Errc::not_irreducible: return "NotIrreducible";
    case Errc::level_mismatch: return "LevelMismatch";
    case Errc::tower_mismatch: return "TowerMismatch";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::non_divisor_degrees: return "NonDivisorDegrees";
    case Errc::not_in_subfield: return "NotInSubfield";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::not_a_basis: return "NotABasis";
    case Errc::b_in_base_field: return "BInBaseField";
    case Errc::b_zero: return "BZero";
    case Errc::c_zero: return "CZero";
    case Errc::not_bijective: return "NotBijective";
    case Errc::unsupported_degree: return "UnsupportedDegree";
    case Errc::bad_alpha: return "BadAlpha";
    case Errc::even_characteristic: return "EvenCharacteristic";
    case Errc::wrong_degree: return "WrongDegree";
    case Errc::not_over_base_field: return "NotOverBaseField";
    case Errc::degree_too_small: return "DegreeTooSmall";
    case Errc::usage: return "UsageError";
  }
  return "Unknown";
}

namespace {

using Poly = std::vector<std::uint32_t>;

struct PrimeOps {
  std::uint32_t p;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return (a + b) % p; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return (a + p - b) % p; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
  }
  std::uint32_t inv(std::uint32_t a) const {
    // Fermat; p is prime.
    std::uint64_t r = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }
};

struct BaseOps {
  const FieldTower* t;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return t->base_add(static_cast<Coeff>(a), static_cast<Coeff>(b));
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return t->base_sub(static_cast<Coeff>(a), static_cast<Coeff>(b));
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return t->base_mul(static_cast<Coeff>(a), static_cast<Coeff>(b));
  }
  std::uint32_t inv(std::uint32_t a) const { return t->base_inv(static_cast<Coeff>(a)); }
};

// Univariate polynomials over a field given by Ops, low-to-high.
template <class Ops>
struct PolyRing {
  Ops f;

  static void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  Poly mod(Poly a, const Poly& m) const {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = f.inv(m.back());
    while (a.size() > dm) {
      const std::uint32_t coef = f.mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t j = 0; j <= dm; ++j) {
        a[shift + j] = f.sub(a[shift + j], f.mul(coef, m[j]));
      }
      trim(a);
    }
    return a;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
      }
    }
    return mod(std::move(r), m);
  }

  Poly powmod(Poly a, std::uint64_t e, const Poly& m) const {
    Poly r = mod(Poly{1}, m);
    a = mod(std::move(a), m);
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      e >>= 1;
      if (e) a = mulmod(a, a, m);
    }
    return r;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  // gcd(X^{s^i} - X, f) = 1 for every i ≤ deg/2.
  bool is_irreducible(const Poly& f_poly, std::uint64_t s) const {
    if (f_poly.size() < 2) return false;
    const std::size_t d = f_poly.size() - 1;
    if (d == 1) return true;
    Poly x{0, 1};
    Poly xpow = mod(x, f_poly);
    for (std::size_t i = 1; i <= d / 2; ++i) {
      xpow = powmod(xpow, s, f_poly);
      Poly diff = xpow;
      if (diff.size() < 2) diff.resize(2, 0);
      diff[1] = f.sub(diff[1], 1);
      trim(diff);
      const Poly g = gcd(f_poly, diff);
      if (g.size() > 1) return false;
    }
    return true;
  }
};

// Monic irreducible of degree d whose low-to-high tuple is minimal as a base-s integer.
template <class Ops>
Poly canonical_modulus(const PolyRing<Ops>& ring, std::uint32_t s, unsigned d) {
  Poly f(d + 1, 0);
  f[d] = 1;
  while (true) {
    if (ring.is_irreducible(f, s)) return f;
    unsigned i = 0;
    while (i < d) {
      if (++f[i] < s) break;
      f[i] = 0;
      ++i;
    }
    if (i == d) throw Error(Errc::not_irreducible, "no irreducible polynomial found");
  }
}

Poly normalize_user_modulus(std::vector<std::uint32_t> coeffs, unsigned d, std::uint32_t s,
                            const char* name) {
  if (coeffs.size() == d) coeffs.push_back(1);
  if (coeffs.size() != d + 1 || coeffs.back() != 1) {
    throw Error(Errc::not_irreducible,
                std::string(name) + " must be monic of degree " + std::to_string(d));
  }
  for (auto c : coeffs) {
    if (c >= s) throw Error(Errc::out_of_range, std::string(name) + " coefficient out of range");
  }
  return coeffs;
}

unsigned parse_unsigned(std::string_view text, std::string_view what) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Error(Errc::usage, "malformed " + std::string(what) + " in field spec");
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field specs

std::string FieldSpec::to_string() const {
  return std::to_string(p) + "^" + std::to_string(m) + ":" + std::to_string(n);
}

FieldSpec parse_field_spec(std::string_view text) {
  const auto caret = text.find('^');
  const auto colon = text.find(':');
  if (caret == std::string_view::npos || colon == std::string_view::npos || colon < caret) {
    throw Error(Errc::usage, "field spec must look like p^m:n, got '" + std::string(text) + "'");
  }
  FieldSpec s;
  s.p = parse_unsigned(text.substr(0, caret), "p");
  s.m = parse_unsigned(text.substr(caret + 1, colon - caret - 1), "m");
  s.n = parse_unsigned(text.substr(colon + 1), "n");
  return s;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

bool is_prime_power(std::uint64_t v) {
  if (v < 2) return false;
  std::uint64_t p = 2;
  while (v % p != 0) ++p;
  while (v % p == 0) v /= p;
  return v == 1;
}

FieldSpec prime_power_spec(std::uint64_t q, unsigned n) {
  if (!is_prime_power(q)) throw Error(Errc::not_prime, std::to_string(q) + " is not a prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned m = 0;
  while (q > 1) {
    q /= p;
    ++m;
  }
  return {static_cast<std::uint32_t>(p), m, n};
}

// ---------------------------------------------------------------------------
// Construction

std::shared_ptr<const FieldTower> make_tower(std::uint32_t p, unsigned m, unsigned n,
                                             const TowerOptions& opts) {
  if (!is_prime(p)) throw Error(Errc::not_prime, std::to_string(p) + " is not prime");
  if (m == 0 || n == 0) throw Error(Errc::degree_zero, "extension degrees must be positive");

  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxBaseFieldSize) {
      throw Error(Errc::size_budget_exceeded, "base field larger than 2^16");
    }
  }
  if (n > kMaxDegree) throw Error(Errc::size_budget_exceeded, "top degree above 32");
  std::uint64_t size = 1;
  for (unsigned i = 0; i < n; ++i) {
    size *= q;
    if (size > opts.size_budget) {
      throw Error(Errc::size_budget_exceeded,
                  "q^n exceeds size budget " + std::to_string(opts.size_budget));
    }
  }

  std::shared_ptr<FieldTower> t(new FieldTower());
  t->p_ = p;
  t->m_ = m;
  t->n_ = n;
  t->q_ = static_cast<std::uint32_t>(q);
  t->size_ = size;
  t->budget_ = opts.size_budget;
  t->init_base_field(opts);
  t->init_top_field(opts);
  return t;
}

std::shared_ptr<const FieldTower> make_tower(const FieldSpec& spec, const TowerOptions& opts) {
  return make_tower(spec.p, spec.m, spec.n, opts);
}

void FieldTower::init_base_field(const TowerOptions& opts) {
  PolyRing<PrimeOps> ring{PrimeOps{p_}};
  if (opts.modulus_g.empty()) {
    g_ = canonical_modulus(ring, p_, m_);
  } else {
    g_ = normalize_user_modulus(opts.modulus_g, m_, p_, "modulus-g");
    if (!ring.is_irreducible(g_, p_)) throw Error(Errc::not_irreducible, "modulus-g is reducible");
  }

  pow_p_.assign(m_ + 1, 1);
  for (unsigned i = 1; i <= m_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;

  const auto to_digits = [&](std::uint32_t v) {
    Poly d(m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = v % p_;
      v /= p_;
    }
    return d;
  };
  const auto from_digits = [&](const Poly& d) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < d.size() && i < m_; ++i) v += d[i] * pow_p_[i];
    return v;
  };
  const auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    return from_digits(ring.mulmod(to_digits(a), to_digits(b), g_));
  };

  // Log/exp tables from the first primitive element in encoding order.
  const std::uint32_t order = q_ - 1;
  exp_.assign(2 * std::size_t{order}, 0);
  log_.assign(q_, 0);
  for (std::uint32_t cand = 1; cand < q_; ++cand) {
    std::uint32_t x = 1;
    bool primitive = true;
    for (std::uint32_t i = 0; i < order; ++i) {
      exp_[i] = static_cast<Coeff>(x);
      x = slow_mul(x, cand);
      if (x == 1 && i + 1 < order) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  for (std::uint32_t i = 0; i < order; ++i) {
    exp_[order + i] = exp_[i];
    log_[exp_[i]] = i;
  }

  if (p_ != 2 && m_ > 1 && q_ <= 1024) {
    add_table_.assign(std::size_t{q_} * q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::uint32_t r = 0;
        for (unsigned i = 0; i < m_; ++i) {
          r += ((a / pow_p_[i] + b / pow_p_[i]) % p_) * pow_p_[i];
        }
        add_table_[std::size_t{a} * q_ + b] = static_cast<Coeff>(r);
      }
    }
  }
}

void FieldTower::init_top_field(const TowerOptions& opts) {
  PolyRing<BaseOps> ring{BaseOps{this}};
  if (opts.modulus_h.empty()) {
    h_ = canonical_modulus(ring, q_, n_);
  } else {
    h_ = normalize_user_modulus(opts.modulus_h, n_, q_, "modulus-h");
    if (!ring.is_irreducible(h_, q_)) throw Error(Errc::not_irreducible, "modulus-h is reducible");
  }

  // Column j of the first Frobenius matrix is (v^q)^j mod h.
  const Poly vq = ring.powmod(Poly{0, 1}, q_, h_);
  frob_.assign(n_, std::vector<Coeff>(std::size_t{n_} * n_, 0));
  for (unsigned i = 0; i < n_; ++i) frob_[0][i * n_ + i] = 1;
  if (n_ > 1) {
    Poly col{1};
    for (unsigned j = 0; j < n_; ++j) {
      for (unsigned r = 0; r < col.size(); ++r) frob_[1][r * n_ + j] = static_cast<Coeff>(col[r]);
      col = ring.mulmod(col, vq, h_);
    }
    for (unsigned k = 2; k < n_; ++k) {
      for (unsigned r = 0; r < n_; ++r) {
        for (unsigned c = 0; c < n_; ++c) {
          Coeff acc = 0;
          for (unsigned t = 0; t < n_; ++t) {
            acc = base_add(acc, base_mul(frob_[1][r * n_ + t], frob_[k - 1][t * n_ + c]));
          }
          frob_[k][r * n_ + c] = acc;
        }
      }
    }
  }

  trace_of_basis_.assign(n_, 0);
  for (unsigned j = 0; j < n_; ++j) {
    Coeff acc = 0;
    for (unsigned k = 0; k < n_; ++k) acc = base_add(acc, frob_[k][j]);
    trace_of_basis_[j] = acc;
  }
}

// ---------------------------------------------------------------------------
// Base field

Coeff FieldTower::base_add(Coeff a, Coeff b) const noexcept {
  if (p_ == 2) return static_cast<Coeff>(a ^ b);
  if (m_ == 1) return static_cast<Coeff>((std::uint32_t{a} + b) % p_);
  if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
  std::uint32_t r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a / pow_p_[i] + b / pow_p_[i]) % p_) * pow_p_[i];
  }
  return static_cast<Coeff>(r);
}

Coeff FieldTower::base_neg(Coeff a) const noexcept {
  if (p_ == 2) return a;
  if (m_ == 1) return static_cast<Coeff>(a == 0 ? 0 : p_ - a);
  std::uint32_t r = 0;
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint32_t d = (a / pow_p_[i]) % p_;
    r += ((p_ - d) % p_) * pow_p_[i];
  }
  return static_cast<Coeff>(r);
}

Coeff FieldTower::base_sub(Coeff a, Coeff b) const noexcept { return base_add(a, base_neg(b)); }

Coeff FieldTower::base_mul(Coeff a, Coeff b) const noexcept {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Coeff FieldTower::base_inv(Coeff a) const {
  if (a == 0) throw Error(Errc::division_by_zero, "inverse of zero");
  const std::uint32_t order = q_ - 1;
  return exp_[(order - log_[a]) % order];
}

// ---------------------------------------------------------------------------
// Elements

std::uint64_t FieldTower::size(Level level) const noexcept {
  switch (level) {
    case Level::prime: return p_;
    case Level::base: return q_;
    case Level::top: return size_;
  }
  return 0;
}

unsigned FieldTower::degree(Level level) const noexcept {
  switch (level) {
    case Level::prime: return 1;
    case Level::base: return m_;
    case Level::top: return n_;
  }
  return 0;
}

Element FieldTower::zero(Level level) const { return Element(this, level, degree(level)); }

Element FieldTower::one(Level level) const {
  Element e = zero(level);
  e.c_[0] = 1;
  return e;
}

Element FieldTower::generator() const {
  Element e = zero();
  if (n_ == 1) {
    // v ≡ -h_0 when h is linear.
    e.c_[0] = base_neg(static_cast<Coeff>(h_[0]));
  } else {
    e.c_[1] = 1;
  }
  return e;
}

Element FieldTower::decode(std::uint64_t k, Level level) const {
  if (k >= size(level)) {
    throw Error(Errc::out_of_range, "encoding " + std::to_string(k) + " outside field of size " +
                                        std::to_string(size(level)));
  }
  Element e = zero(level);
  const std::uint64_t radix = level == Level::top ? q_ : p_;
  for (unsigned i = 0; i < e.degree_; ++i) {
    e.c_[i] = static_cast<Coeff>(k % radix);
    k /= radix;
  }
  return e;
}

std::uint64_t Element::encode() const {
  const std::uint64_t radix = level_ == Level::top ? tower().q() : tower().p();
  std::uint64_t r = 0;
  for (unsigned i = degree_; i-- > 0;) r = r * radix + c_[i];
  return r;
}

Element FieldTower::from_base(std::uint32_t enc) const {
  if (enc >= q_) throw Error(Errc::out_of_range, "base-field encoding out of range");
  Element e = zero();
  e.c_[0] = static_cast<Coeff>(enc);
  return e;
}

Element FieldTower::from_coords(std::span<const Coeff> coords) const {
  if (coords.size() != n_) throw Error(Errc::out_of_range, "coordinate vector has wrong length");
  Element e = zero();
  std::copy(coords.begin(), coords.end(), e.c_.begin());
  return e;
}

Element FieldTower::embed(const Element& a) const {
  if (a.tower_ != this) throw Error(Errc::tower_mismatch, "element from another tower");
  switch (a.level_) {
    case Level::top: return a;
    case Level::base: {
      std::uint32_t enc = 0;
      for (unsigned i = m_; i-- > 0;) enc = enc * p_ + a.c_[i];
      return from_base(enc);
    }
    case Level::prime: return from_base(a.c_[0]);
  }
  return a;
}

bool FieldTower::in_base_field(const Element& a) const {
  require_top(a, "in_base_field");
  for (unsigned i = 1; i < n_; ++i) {
    if (a.c_[i] != 0) return false;
  }
  return true;
}

std::uint32_t FieldTower::to_base(const Element& a) const {
  if (!in_base_field(a)) throw Error(Errc::not_in_subfield, "element is not in F_q");
  return a.c_[0];
}

std::vector<Element> FieldTower::base_field_elements() const {
  std::vector<Element> out;
  out.reserve(q_);
  for (std::uint32_t k = 0; k < q_; ++k) out.push_back(from_base(k));
  return out;
}

void FieldTower::require_same(const Element& a, const Element& b) const {
  if (a.tower_ != this || b.tower_ != this) {
    throw Error(Errc::tower_mismatch, "elements from different towers");
  }
  if (a.level_ != b.level_) throw Error(Errc::level_mismatch, "operands on different levels");
}

void FieldTower::require_top(const Element& a, const char* op) const {
  if (a.tower_ != this) throw Error(Errc::tower_mismatch, "element from another tower");
  if (a.level_ != Level::top) {
    throw Error(Errc::level_mismatch, std::string(op) + " requires a top-level element");
  }
}

Element FieldTower::add(const Element& a, const Element& b) const {
  require_same(a, b);
  Element r = a;
  if (a.level_ == Level::top) {
    for (unsigned i = 0; i < n_; ++i) r.c_[i] = base_add(a.c_[i], b.c_[i]);
  } else {
    for (unsigned i = 0; i < a.degree_; ++i) {
      r.c_[i] = static_cast<Coeff>((std::uint32_t{a.c_[i]} + b.c_[i]) % p_);
    }
  }
  return r;
}

Element FieldTower::neg(const Element& a) const {
  Element r = a;
  if (a.level_ == Level::top) {
    for (unsigned i = 0; i < n_; ++i) r.c_[i] = base_neg(a.c_[i]);
  } else {
    for (unsigned i = 0; i < a.degree_; ++i) r.c_[i] = static_cast<Coeff>((p_ - a.c_[i]) % p_);
  }
  return r;
}

Element FieldTower::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

void FieldTower::top_mul(const Coeff* a, const Coeff* b, Coeff* out) const noexcept {
  std::array<Coeff, 2 * kMaxDegree> prod{};
  for (unsigned i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] = base_add(prod[i + j], base_mul(a[i], b[j]));
    }
  }
  for (unsigned k = 2 * n_ - 2; k >= n_; --k) {
    const Coeff coef = prod[k];
    if (coef == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      prod[k - n_ + j] = base_sub(prod[k - n_ + j], base_mul(coef, static_cast<Coeff>(h_[j])));
    }
  }
  std::copy(prod.begin(), prod.begin() + n_, out);
}

Element FieldTower::mul(const Element& a, const Element& b) const {
  require_same(a, b);
  Element r = zero(a.level_);
  switch (a.level_) {
    case Level::top:
      if (n_ == 1) {
        r.c_[0] = base_mul(a.c_[0], b.c_[0]);
      } else {
        top_mul(a.c_.data(), b.c_.data(), r.c_.data());
      }
      break;
    case Level::base: {
      const Coeff prod = base_mul(static_cast<Coeff>(embed(a).c_[0]),
                                  static_cast<Coeff>(embed(b).c_[0]));
      return decode(prod, Level::base);
    }
    case Level::prime:
      r.c_[0] = static_cast<Coeff>(std::uint64_t{a.c_[0]} * b.c_[0] % p_);
      break;
  }
  return r;
}

void FieldTower::apply_frobenius(const Coeff* a, unsigned i, Coeff* out) const noexcept {
  const auto& mat = frob_[i];
  for (unsigned r = 0; r < n_; ++r) {
    Coeff acc = 0;
    for (unsigned c = 0; c < n_; ++c) {
      if (a[c] != 0) acc = base_add(acc, base_mul(mat[r * n_ + c], a[c]));
    }
    out[r] = acc;
  }
}

Element FieldTower::frobenius(const Element& a, unsigned i) const {
  require_top(a, "frobenius");
  i %= n_;
  if (i == 0) return a;
  Element r = zero();
  apply_frobenius(a.c_.data(), i, r.c_.data());
  return r;
}

Element FieldTower::inverse(const Element& a) const {
  if (a.tower_ != this) throw Error(Errc::tower_mismatch, "element from another tower");
  if (a.is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
  switch (a.level_) {
    case Level::prime:
      return decode(PrimeOps{p_}.inv(a.c_[0]), Level::prime);
    case Level::base:
      return decode(base_inv(static_cast<Coeff>(embed(a).c_[0])), Level::base);
    case Level::top:
      break;
  }
  // a^{-1} = N(a)^{-1} · σ(a)···σ^{n-1}(a)
  Element rest = one();
  Element conj = zero();
  for (unsigned i = 1; i < n_; ++i) {
    apply_frobenius(a.c_.data(), i, conj.c_.data());
    top_mul(rest.c_.data(), conj.c_.data(), rest.c_.data());
  }
  Element nrm = zero();
  if (n_ == 1) {
    nrm = a;
  } else {
    top_mul(a.c_.data(), rest.c_.data(), nrm.c_.data());
  }
  const Coeff scale = base_inv(nrm.c_[0]);
  for (unsigned i = 0; i < n_; ++i) rest.c_[i] = base_mul(rest.c_[i], scale);
  return rest;
}

Element FieldTower::pow(const Element& a, std::uint64_t e) const {
  Element r = one(a.level_);
  Element base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

Element FieldTower::trace_rel(const Element& a, unsigned from, unsigned to) const {
  require_top(a, "trace_rel");
  if (from == 0 || to == 0 || n_ % from != 0 || from % to != 0) {
    throw Error(Errc::non_divisor_degrees, "need to | from | n, got from=" + std::to_string(from) +
                                               " to=" + std::to_string(to));
  }
  if (!is_in_subfield(a, from)) {
    throw Error(Errc::not_in_subfield, "element is not in the degree-" + std::to_string(from) +
                                           " subfield");
  }
  Element r = zero();
  for (unsigned i = 0; i < from / to; ++i) r = add(r, frobenius(a, to * i));
  return r;
}

Coeff FieldTower::trace_base(const Element& a) const {
  Coeff acc = 0;
  for (unsigned j = 0; j < n_; ++j) {
    if (a.c_[j] != 0) acc = base_add(acc, base_mul(a.c_[j], trace_of_basis_[j]));
  }
  return acc;
}

Element FieldTower::trace(const Element& a) const {
  require_top(a, "trace");
  return from_base(trace_base(a));
}

Element FieldTower::norm(const Element& a) const {
  require_top(a, "norm");
  Element r = a;
  Element conj = zero();
  for (unsigned i = 1; i < n_; ++i) {
    apply_frobenius(a.c_.data(), i, conj.c_.data());
    top_mul(r.c_.data(), conj.c_.data(), r.c_.data());
  }
  return r;
}

bool FieldTower::is_in_subfield(const Element& a, unsigned d) const {
  require_top(a, "is_in_subfield");
  if (d == 0 || n_ % d != 0) {
    throw Error(Errc::non_divisor_degrees, std::to_string(d) + " does not divide " +
                                               std::to_string(n_));
  }
  return frobenius(a, d) == a;
}

std::string FieldTower::render_base(Coeff a) const {
  if (m_ == 1) return std::to_string(a);
  std::string out;
  for (unsigned i = m_; i-- > 0;) {
    const std::uint32_t d = (a / pow_p_[i]) % p_;
    if (d == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || d != 1) out += std::to_string(d);
    if (i >= 1) out += "u";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::string FieldTower::render(const Element& a) const {
  if (a.level_ != Level::top) return render_base(static_cast<Coeff>(embed(a).c_[0]));
  std::string out;
  for (unsigned i = n_; i-- > 0;) {
    const Coeff c = a.c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string coef = render_base(c);
    const bool compound = coef.find_first_of("+u") != std::string::npos;
    if (i == 0) {
      out += coef;
    } else {
      if (c != 1) out += compound ? "(" + coef + ")" : coef;
      out += "v";
      if (i >= 2) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Element operators and free functions

const FieldTower& Element::tower() const {
  if (tower_ == nullptr) throw Error(Errc::tower_mismatch, "element has no tower");
  return *tower_;
}

bool Element::is_zero() const noexcept {
  for (unsigned i = 0; i < degree_; ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

Element& Element::operator+=(const Element& rhs) { return *this = tower().add(*this, rhs); }
Element& Element::operator-=(const Element& rhs) { return *this = tower().sub(*this, rhs); }
Element& Element::operator*=(const Element& rhs) { return *this = tower().mul(*this, rhs); }
Element& Element::operator/=(const Element& rhs) {
  const auto& t = tower();
  return *this = t.mul(*this, t.inverse(rhs));
}
Element operator-(const Element& a) { return a.tower().neg(a); }

Element inverse(const Element& a) { return a.tower().inverse(a); }
Element pow(const Element& a, std::uint64_t e) { return a.tower().pow(a, e); }
Element frobenius(const Element& a, unsigned i) { return a.tower().frobenius(a, i); }
Element trace_rel(const Element& a, unsigned from, unsigned to) {
  return a.tower().trace_rel(a, from, to);
}
Element trace(const Element& a) { return a.tower().trace(a); }
Element norm(const Element& a) { return a.tower().norm(a); }
std::uint64_t encode(const Element& a) { return a.encode(); }
Element decode(const FieldTower& tower, std::uint64_t k, Level level) {
  return tower.decode(k, level);
}
bool is_in_subfield(const Element& a, unsigned d) { return a.tower().is_in_subfield(a, d); }

std::vector<Coeff> coordinates(const Element& a) {
  if (a.level() != Level::top) throw Error(Errc::level_mismatch, "coordinates need a top element");
  auto c = a.coeffs();
  return {c.begin(), c.end()};
}

void for_each_element(const FieldTower& tower, const std::function<void(const Element&)>& fn) {
  for (std::uint64_t k = 0; k < tower.size(); ++k) fn(tower.decode(k));
}

std::vector<Element> dual_basis(std::span<const Element> basis) {
  if (basis.empty()) throw Error(Errc::not_a_basis, "empty basis");
  const FieldTower& t = basis.front().tower();
  const unsigned n = t.n();
  if (basis.size() != n) {
    throw Error(Errc::not_a_basis, "expected " + std::to_string(n) + " elements");
  }
  FqMatrix gram(t, n, n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) gram(i, j) = t.trace_base(t.mul(basis[i], basis[j]));
  }
  const auto inv = gram.inverse();
  if (!inv) throw Error(Errc::not_a_basis, "elements are linearly dependent over F_q");
  std::vector<Element> dual;
  dual.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    Element acc = t.zero();
    for (unsigned k = 0; k < n; ++k) acc += t.from_base((*inv)(i, k)) * basis[k];
    dual.push_back(acc);
  }
  return dual;
}

namespace {

void require_cubic_b(const Element& b) {
  const FieldTower& t = b.tower();
  if (t.n() != 3) throw Error(Errc::unsupported_degree, "basis determinant needs n = 3");
  if (b.level() != Level::top) throw Error(Errc::level_mismatch, "b must be a top-level element");
  if (b.is_zero()) throw Error(Errc::b_zero, "b = 0");
  if (t.in_base_field(b)) throw Error(Errc::b_in_base_field, "b lies in F_q");
}

}  // namespace

Element basis_det_b(const Element& b) {
  require_cubic_b(b);
  const FieldTower& t = b.tower();
  const Element bq = frobenius(b, 1);
  const std::array<Element, 3> w{t.one(), bq + b, bq * b};
  std::array<std::array<Element, 3>, 3> m;
  for (unsigned i = 0; i < 3; ++i) {
    for (unsigned j = 0; j < 3; ++j) m[i][j] = frobenius(w[j], i);
  }
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Element basis_coordinate_det_b(const Element& b) {
  require_cubic_b(b);
  const FieldTower& t = b.tower();
  const Element bq = frobenius(b, 1);
  const std::array<Element, 3> w{t.one(), bq + b, bq * b};
  FqMatrix m(t, 3, 3);
  for (unsigned j = 0; j < 3; ++j) m.set_column(j, w[j].coeffs());
  return t.from_base(m.determinant());
}

Element basis_det_closed_form(const Element& b) {
  require_cubic_b(b);
  const std::uint64_t q = b.tower().q();
  return norm(b) * trace(pow(b, q - 1) - pow(b, q * q - 1));
}

}  // namespace permrf
