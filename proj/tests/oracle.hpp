#pragma once

// Slow reference implementations used to check the library. Everything here is
// schoolbook polynomial arithmetic on digit vectors; no tables, no Frobenius
// matrices, no shared code with src/.

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "permrf/gf_core.hpp"

namespace oracle {

using Digits = std::vector<std::uint32_t>;

/// F_{q^n} from the moduli a tower reports, operating on canonical encodings.
class NaiveField {
 public:
  NaiveField(std::uint32_t p, unsigned m, unsigned n, Digits g, Digits h)
      : p_(p), m_(m), n_(n), g_(std::move(g)), h_(std::move(h)) {
    q_ = 1;
    for (unsigned i = 0; i < m_; ++i) q_ *= p_;
    size_ = 1;
    for (unsigned i = 0; i < n_; ++i) size_ *= q_;
  }

  explicit NaiveField(const permrf::FieldTower& t)
      : NaiveField(t.p(), t.m(), t.n(), t.modulus_g(), t.modulus_h()) {}

  std::uint64_t q() const { return q_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    return enc_top(top_add(dec_top(a), dec_top(b)));
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }
  std::uint64_t neg(std::uint64_t a) const {
    auto t = dec_top(a);
    for (auto& x : t) x = base_neg(x);
    return enc_top(t);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return enc_top(top_mul(dec_top(a), dec_top(b)));
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// a^{size-2}: the inverse of a nonzero a, and 0 for a = 0.
  std::uint64_t inv(std::uint64_t a) const { return pow(a, size_ - 2); }
  std::uint64_t frob(std::uint64_t a, unsigned i) const {
    for (unsigned k = 0; k < i; ++k) a = pow(a, q_);
    return a;
  }
  std::uint64_t trace(std::uint64_t a) const {
    std::uint64_t s = 0;
    for (unsigned i = 0; i < n_; ++i) s = add(s, frob(a, i));
    return s;
  }
  std::uint64_t norm(std::uint64_t a) const {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < n_; ++i) s = mul(s, frob(a, i));
    return s;
  }

  /// True iff every nonzero element satisfies a^{size-1} = 1, i.e. the quotient ring is a field.
  bool is_field() const {
    for (std::uint64_t a = 1; a < size_; ++a) {
      if (pow(a, size_ - 1) != 1) return false;
    }
    return true;
  }

  /// The base field alone, F_p[u]/(g), as a NaiveField with n = 1.
  bool base_is_field() const {
    NaiveField base(p_, 1, m_, {0, 1}, g_);
    return base.is_field();
  }

 private:
  Digits dec_base(std::uint64_t k) const {
    Digits d(m_);
    for (unsigned i = 0; i < m_; ++i) {
      d[i] = static_cast<std::uint32_t>(k % p_);
      k /= p_;
    }
    return d;
  }
  std::uint64_t enc_base(const Digits& d) const {
    std::uint64_t k = 0;
    for (unsigned i = m_; i-- > 0;) k = k * p_ + d[i];
    return k;
  }
  std::uint64_t base_add(std::uint64_t a, std::uint64_t b) const {
    auto x = dec_base(a), y = dec_base(b);
    for (unsigned i = 0; i < m_; ++i) x[i] = (x[i] + y[i]) % p_;
    return enc_base(x);
  }
  std::uint64_t base_neg(std::uint64_t a) const {
    auto x = dec_base(a);
    for (auto& d : x) d = (p_ - d) % p_;
    return enc_base(x);
  }
  std::uint64_t base_mul(std::uint64_t a, std::uint64_t b) const {
    const auto x = dec_base(a), y = dec_base(b);
    Digits prod(2 * m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
      for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    }
    // g is monic of degree m (a single x when m = 1, where nothing reduces).
    const unsigned deg = static_cast<unsigned>(g_.size()) - 1;
    for (unsigned k = static_cast<unsigned>(prod.size()); k-- > deg;) {
      const std::uint32_t lead = prod[k];
      if (!lead) continue;
      for (unsigned i = 0; i <= deg; ++i) {
        prod[k - deg + i] = (prod[k - deg + i] + (p_ - lead) * g_[i]) % p_;
      }
    }
    prod.resize(m_);
    return enc_base(prod);
  }

  std::vector<std::uint64_t> dec_top(std::uint64_t k) const {
    std::vector<std::uint64_t> t(n_);
    for (unsigned i = 0; i < n_; ++i) {
      t[i] = k % q_;
      k /= q_;
    }
    return t;
  }
  std::uint64_t enc_top(const std::vector<std::uint64_t>& t) const {
    std::uint64_t k = 0;
    for (unsigned i = n_; i-- > 0;) k = k * q_ + t[i];
    return k;
  }
  std::vector<std::uint64_t> top_add(std::vector<std::uint64_t> a,
                                     const std::vector<std::uint64_t>& b) const {
    for (unsigned i = 0; i < n_; ++i) a[i] = base_add(a[i], b[i]);
    return a;
  }
  std::vector<std::uint64_t> top_mul(const std::vector<std::uint64_t>& a,
                                     const std::vector<std::uint64_t>& b) const {
    std::vector<std::uint64_t> prod(2 * n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
      for (unsigned j = 0; j < n_; ++j) prod[i + j] = base_add(prod[i + j], base_mul(a[i], b[j]));
    }
    for (unsigned k = 2 * n_; k-- > n_;) {
      const std::uint64_t lead = prod[k];
      if (!lead) continue;
      for (unsigned i = 0; i <= n_; ++i) {
        prod[k - n_ + i] = base_add(prod[k - n_ + i], base_neg(base_mul(lead, h_[i])));
      }
    }
    prod.resize(n_);
    return prod;
  }

  std::uint32_t p_;
  unsigned m_, n_;
  std::uint64_t q_, size_;
  Digits g_, h_;
};

/// Sparse bivariate polynomial over a NaiveField, keyed by (deg X, deg Y).
class NaiveBivar {
 public:
  using Terms = std::map<std::pair<unsigned, unsigned>, std::uint64_t>;

  NaiveBivar(const NaiveField& f, Terms t) : f_(&f), t_(std::move(t)) { prune(); }

  static NaiveBivar linear(const NaiveField& f, std::uint64_t cx, std::uint64_t cy,
                           std::uint64_t c0) {
    return NaiveBivar(f, {{{1, 0}, cx}, {{0, 1}, cy}, {{0, 0}, c0}});
  }

  const Terms& terms() const { return t_; }

  NaiveBivar operator*(const NaiveBivar& o) const {
    Terms r;
    for (auto& [k1, a] : t_) {
      for (auto& [k2, b] : o.t_) {
        auto& slot = r[{k1.first + k2.first, k1.second + k2.second}];
        slot = f_->add(slot, f_->mul(a, b));
      }
    }
    return NaiveBivar(*f_, r);
  }
  NaiveBivar operator+(const NaiveBivar& o) const {
    Terms r = t_;
    for (auto& [k, b] : o.t_) r[k] = f_->add(r[k], b);
    return NaiveBivar(*f_, r);
  }
  NaiveBivar operator-(const NaiveBivar& o) const {
    Terms r = t_;
    for (auto& [k, b] : o.t_) r[k] = f_->sub(r[k], b);
    return NaiveBivar(*f_, r);
  }
  NaiveBivar scaled(std::uint64_t s) const {
    Terms r = t_;
    for (auto& [k, a] : r) a = f_->mul(a, s);
    return NaiveBivar(*f_, r);
  }
  NaiveBivar frob(unsigned i) const {
    Terms r = t_;
    for (auto& [k, a] : r) a = f_->frob(a, i);
    return NaiveBivar(*f_, r);
  }
  std::uint64_t coeff(unsigned i, unsigned j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? 0 : it->second;
  }

 private:
  void prune() {
    for (auto it = t_.begin(); it != t_.end();) it = it->second ? std::next(it) : t_.erase(it);
  }
  const NaiveField* f_;
  Terms t_;
};

/// Brute-force bijectivity of an arbitrary map on [0, size).
template <class Fn>
bool is_bijection(std::uint64_t size, Fn&& fn) {
  std::vector<bool> seen(size, false);
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint64_t y = fn(x);
    if (y >= size || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

/// x + c/(Tr(x) + b) evaluated entirely in the naive field.
inline bool naive_rf_permutes(const NaiveField& f, std::uint64_t b, std::uint64_t c) {
  return is_bijection(f.size(), [&](std::uint64_t x) {
    return f.add(x, f.mul(c, f.inv(f.add(f.trace(x), b))));
  });
}

/// Towers small enough for exhaustive checks, as (p, m, n).
inline std::vector<permrf::FieldSpec> small_towers() {
  return {{2, 1, 2}, {3, 1, 2}, {2, 2, 2}, {5, 1, 2}, {7, 1, 2}, {2, 3, 2}, {3, 2, 2},
          {2, 1, 3}, {3, 1, 3}, {2, 2, 3}, {5, 1, 3}, {2, 1, 4}, {3, 1, 4}, {2, 1, 5},
          {2, 1, 6}, {2, 2, 4}, {2, 1, 10}, {2, 5, 2}, {31, 1, 2}, {11, 1, 2}};
}

}  // namespace oracle
