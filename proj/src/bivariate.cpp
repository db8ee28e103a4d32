#include "permrf/bivariate.hpp"

#include <algorithm>

#include "permrf/parallel.hpp"
#include "permrf/ratfunc.hpp"

namespace permrf {

BivarPoly::BivarPoly(const FieldTower& tower) : BivarPoly(tower, 1, 1) {}

BivarPoly::BivarPoly(const FieldTower& tower, unsigned nx, unsigned ny)
    : tower_(&tower), nx_(nx), ny_(ny), a_(std::size_t{nx} * ny, tower.zero()) {}

BivarPoly BivarPoly::constant(const Element& a) {
  if (a.level() != Level::top) throw Error(Errc::level_mismatch, "coefficients are top-level");
  BivarPoly f(a.tower());
  f.a_[0] = a;
  return f;
}

BivarPoly BivarPoly::x(const FieldTower& tower) {
  BivarPoly f(tower);
  f.set(1, 0, tower.one());
  return f;
}

BivarPoly BivarPoly::y(const FieldTower& tower) {
  BivarPoly f(tower);
  f.set(0, 1, tower.one());
  return f;
}

bool BivarPoly::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](const Element& e) { return e.is_zero(); });
}

Element BivarPoly::coeff(unsigned i, unsigned j) const {
  if (i >= nx_ || j >= ny_) return tower_->zero();
  return a_[std::size_t{i} * ny_ + j];
}

void BivarPoly::grow(unsigned nx, unsigned ny) {
  if (nx <= nx_ && ny <= ny_) return;
  nx = std::max(nx, nx_);
  ny = std::max(ny, ny_);
  std::vector<Element> a(std::size_t{nx} * ny, tower_->zero());
  for (unsigned i = 0; i < nx_; ++i) {
    for (unsigned j = 0; j < ny_; ++j) a[std::size_t{i} * ny + j] = a_[std::size_t{i} * ny_ + j];
  }
  a_ = std::move(a);
  nx_ = nx;
  ny_ = ny;
}

void BivarPoly::set(unsigned i, unsigned j, const Element& a) {
  if (&a.tower() != tower_ || a.level() != Level::top) {
    throw Error(Errc::level_mismatch, "coefficient must be a top-level element of this tower");
  }
  grow(i + 1, j + 1);
  a_[std::size_t{i} * ny_ + j] = a;
  trim();
}

void BivarPoly::trim() {
  unsigned nx = nx_, ny = ny_;
  const auto row_zero = [&](unsigned i) {
    for (unsigned j = 0; j < ny; ++j) {
      if (!a_[std::size_t{i} * ny_ + j].is_zero()) return false;
    }
    return true;
  };
  const auto col_zero = [&](unsigned j) {
    for (unsigned i = 0; i < nx; ++i) {
      if (!a_[std::size_t{i} * ny_ + j].is_zero()) return false;
    }
    return true;
  };
  while (nx > 1 && row_zero(nx - 1)) --nx;
  while (ny > 1 && col_zero(ny - 1)) --ny;
  if (nx == nx_ && ny == ny_) return;
  std::vector<Element> a(std::size_t{nx} * ny, tower_->zero());
  for (unsigned i = 0; i < nx; ++i) {
    for (unsigned j = 0; j < ny; ++j) a[std::size_t{i} * ny + j] = a_[std::size_t{i} * ny_ + j];
  }
  a_ = std::move(a);
  nx_ = nx;
  ny_ = ny;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& rhs) {
  if (rhs.tower_ != tower_) throw Error(Errc::tower_mismatch, "polynomials from different towers");
  grow(rhs.nx_, rhs.ny_);
  for (unsigned i = 0; i < rhs.nx_; ++i) {
    for (unsigned j = 0; j < rhs.ny_; ++j) a_[std::size_t{i} * ny_ + j] += rhs.a_[std::size_t{i} * rhs.ny_ + j];
  }
  trim();
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& rhs) {
  if (rhs.tower_ != tower_) throw Error(Errc::tower_mismatch, "polynomials from different towers");
  grow(rhs.nx_, rhs.ny_);
  for (unsigned i = 0; i < rhs.nx_; ++i) {
    for (unsigned j = 0; j < rhs.ny_; ++j) a_[std::size_t{i} * ny_ + j] -= rhs.a_[std::size_t{i} * rhs.ny_ + j];
  }
  trim();
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  if (a.tower_ != b.tower_) throw Error(Errc::tower_mismatch, "polynomials from different towers");
  BivarPoly r(*a.tower_, a.nx_ + b.nx_ - 1, a.ny_ + b.ny_ - 1);
  for (unsigned i1 = 0; i1 < a.nx_; ++i1) {
    for (unsigned j1 = 0; j1 < a.ny_; ++j1) {
      const Element& u = a.a_[std::size_t{i1} * a.ny_ + j1];
      if (u.is_zero()) continue;
      for (unsigned i2 = 0; i2 < b.nx_; ++i2) {
        for (unsigned j2 = 0; j2 < b.ny_; ++j2) {
          const Element& w = b.a_[std::size_t{i2} * b.ny_ + j2];
          if (w.is_zero()) continue;
          r.a_[std::size_t{i1 + i2} * r.ny_ + (j1 + j2)] += u * w;
        }
      }
    }
  }
  r.trim();
  return r;
}

BivarPoly operator*(const Element& s, const BivarPoly& f) {
  BivarPoly r = f;
  for (auto& e : r.a_) e = s * e;
  r.trim();
  return r;
}

Element BivarPoly::eval(const Element& x, const Element& y) const {
  Element acc = tower_->zero();
  for (unsigned i = nx_; i-- > 0;) {
    Element row = tower_->zero();
    for (unsigned j = ny_; j-- > 0;) row = row * y + a_[std::size_t{i} * ny_ + j];
    acc = acc * x + row;
  }
  return acc;
}

BivarPoly BivarPoly::transposed() const {
  BivarPoly r(*tower_, ny_, nx_);
  for (unsigned i = 0; i < nx_; ++i) {
    for (unsigned j = 0; j < ny_; ++j) r.a_[std::size_t{j} * nx_ + i] = a_[std::size_t{i} * ny_ + j];
  }
  return r;
}

std::string BivarPoly::render() const {
  std::string out;
  for (unsigned i = nx_; i-- > 0;) {
    for (unsigned j = ny_; j-- > 0;) {
      const Element& c = a_[std::size_t{i} * ny_ + j];
      if (c.is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string mono;
      if (i >= 1) mono += i == 1 ? "X" : "X^" + std::to_string(i);
      if (j >= 1) mono += j == 1 ? "Y" : "Y^" + std::to_string(j);
      const std::string coef = tower_->render(c);
      if (mono.empty()) {
        out += coef;
      } else if (coef == "1") {
        out += mono;
      } else {
        out += (coef.find('+') != std::string::npos ? "(" + coef + ")" : coef) + mono;
      }
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

BivarPoly apply_sigma(const BivarPoly& f, unsigned i) {
  const FieldTower& t = f.tower();
  BivarPoly r(t);
  for (unsigned a = 0; a <= f.deg_x(); ++a) {
    for (unsigned b = 0; b <= f.deg_y(); ++b) r.set(a, b, t.frobenius(f.coeff(a, b), i));
  }
  return r;
}

bool is_fq_stable(const BivarPoly& f) { return apply_sigma(f, 1) == f; }

bool is_symmetric(const BivarPoly& f) { return f.transposed() == f; }

BivarPoly norm(const BivarPoly& f) {
  BivarPoly r = f;
  for (unsigned i = 1; i < f.tower().n(); ++i) r = r * apply_sigma(f, i);
  return r;
}

BivarPoly trace(const BivarPoly& f) {
  BivarPoly r = f;
  for (unsigned i = 1; i < f.tower().n(); ++i) r += apply_sigma(f, i);
  return r;
}

namespace {

void require_build(const Element& b, const Element& c, unsigned n) {
  if (b.tower().n() != n) {
    throw Error(Errc::wrong_degree, "polynomial defined for n = " + std::to_string(n));
  }
  require_rf_params(b, c);
}

// (X + a)
BivarPoly x_plus(const Element& a) { return BivarPoly::x(a.tower()) + BivarPoly::constant(a); }
BivarPoly y_plus(const Element& a) { return BivarPoly::y(a.tower()) + BivarPoly::constant(a); }

}  // namespace

BivarPoly build_f2(const Element& b, const Element& c) {
  require_build(b, c, 2);
  const BivarPoly z = x_plus(b) * y_plus(b);
  return norm(z) - trace(frobenius(c, 1) * z);
}

BivarPoly build_f3_kernel(const Element& b, const Element& c) {
  require_build(b, c, 3);
  const Element bq = frobenius(b, 1);
  const BivarPoly z = x_plus(b) * x_plus(bq) * y_plus(b) * y_plus(bq);
  return trace(frobenius(c, 2) * z);
}

BivarPoly build_f3(const Element& b, const Element& c) {
  require_build(b, c, 3);
  return norm(x_plus(b) * y_plus(b)) - build_f3_kernel(b, c);
}

BivarPoly BilinearFactor::poly() const {
  const FieldTower& t = beta.tower();
  BivarPoly g = BivarPoly::x(t) * BivarPoly::y(t);
  g += beta * BivarPoly::x(t);
  g += gamma * BivarPoly::y(t);
  g += BivarPoly::constant(delta);
  return g;
}

BilinearFactor expected_factor_n2(const Element& b) {
  return {b, frobenius(b, 1), trace(b * b) - norm(b)};
}

BilinearFactor expected_factor_n3(const Element& b, const Element& c) {
  return {b, b, b * b - c};
}

std::optional<BilinearFactor> conjugate_factor_search(const BivarPoly& f, unsigned workers) {
  const FieldTower& t = f.tower();
  const unsigned n = t.n();
  if (n != 2 && n != 3) throw Error(Errc::wrong_degree, "factor search supports n = 2, 3");
  if (f.deg_x() != n || f.deg_y() != n) {
    throw Error(Errc::wrong_degree, "expected bidegree (" + std::to_string(n) + "," +
                                        std::to_string(n) + ")");
  }
  if (!is_fq_stable(f)) throw Error(Errc::not_over_base_field, "f must have F_q coefficients");
  const std::uint64_t size = t.size();
  if (size * size > t.size_budget() / size) {
    throw Error(Errc::size_budget_exceeded, "q^{3n} candidate space exceeds the size budget");
  }
  if (f.coeff(n, n) != t.one()) return std::nullopt;

  // Necessary conditions read off the top coefficients of Π σ^i(XY + βX + γY + δ):
  //   [X^n Y^{n-1}] = Tr(β),  [X^{n-1} Y^n] = Tr(γ),
  //   [X^{n-1} Y^{n-1}] = Tr(δ) + Tr(β)Tr(γ) - Tr(βγ).
  std::vector<std::vector<std::uint64_t>> by_trace(t.q());
  for (std::uint64_t k = 0; k < size; ++k) by_trace[t.trace_base(t.decode(k))].push_back(k);
  const Coeff tr_beta = static_cast<Coeff>(t.to_base(f.coeff(n, n - 1)));
  const Coeff tr_gamma = static_cast<Coeff>(t.to_base(f.coeff(n - 1, n)));
  const Coeff mid = static_cast<Coeff>(t.to_base(f.coeff(n - 1, n - 1)));

  const auto& betas = by_trace[tr_beta];
  std::vector<std::optional<BilinearFactor>> found(betas.size());
  parallel_for(betas.size(), workers, [&](std::uint64_t bi) {
    const Element beta = t.decode(betas[bi]);
    for (auto gk : by_trace[tr_gamma]) {
      const Element gamma = t.decode(gk);
      const Coeff tr_delta = t.base_add(
          t.base_sub(mid, t.base_mul(tr_beta, tr_gamma)), t.trace_base(beta * gamma));
      for (auto dk : by_trace[tr_delta]) {
        BilinearFactor g{beta, gamma, t.decode(dk)};
        if (norm(g.poly()) == f) {
          found[bi] = g;
          return;
        }
      }
    }
  });
  for (auto& g : found) {
    if (g) return g;
  }
  return std::nullopt;
}

std::uint64_t count_offdiag_points(const BivarPoly& f) {
  if (!is_fq_stable(f)) throw Error(Errc::not_over_base_field, "f must have F_q coefficients");
  const FieldTower& t = f.tower();
  std::uint64_t count = 0;
  for (std::uint32_t x0 = 0; x0 < t.q(); ++x0) {
    for (std::uint32_t y0 = 0; y0 < t.q(); ++y0) {
      if (x0 != y0 && f.eval(t.from_base(x0), t.from_base(y0)).is_zero()) ++count;
    }
  }
  return count;
}

}  // namespace permrf
