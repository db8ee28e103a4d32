#include "permrf/linmaps.hpp"

#include <algorithm>

namespace permrf {

namespace {

std::vector<Element> power_basis(const FieldTower& t) {
  std::vector<Element> e;
  e.reserve(t.n());
  for (unsigned j = 0; j < t.n(); ++j) {
    std::vector<Coeff> coords(t.n(), 0);
    coords[j] = 1;
    e.push_back(t.from_coords(coords));
  }
  return e;
}

}  // namespace

LinearizedPoly::LinearizedPoly(std::vector<Element> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(Errc::out_of_range, "linearized polynomial needs a coefficient");
  tower_ = &coeffs_.front().tower();
  const unsigned n = tower_->n();
  if (coeffs_.size() > n) {
    throw Error(Errc::out_of_range, "at most n = " + std::to_string(n) + " coefficients");
  }
  for (const auto& a : coeffs_) {
    if (&a.tower() != tower_) throw Error(Errc::tower_mismatch, "coefficients from different towers");
    if (a.level() != Level::top) throw Error(Errc::level_mismatch, "coefficients must be top-level");
  }
  coeffs_.resize(n, tower_->zero());
}

LinearizedPoly LinearizedPoly::zero(const FieldTower& tower) {
  return LinearizedPoly({tower.zero()});
}

LinearizedPoly LinearizedPoly::identity(const FieldTower& tower) {
  return LinearizedPoly({tower.one()});
}

LinearizedPoly LinearizedPoly::scalar(const Element& a) { return LinearizedPoly({a}); }

LinearizedPoly LinearizedPoly::frobenius_minus_identity(const FieldTower& tower) {
  if (tower.n() < 2) return zero(tower);
  return LinearizedPoly({-tower.one(), tower.one()});
}

LinearizedPoly LinearizedPoly::from_encodings(const FieldTower& tower,
                                              std::span<const std::uint64_t> enc) {
  std::vector<Element> coeffs;
  for (auto k : enc) coeffs.push_back(tower.decode(k));
  if (coeffs.empty()) coeffs.push_back(tower.zero());
  return LinearizedPoly(std::move(coeffs));
}

LinearizedPoly LinearizedPoly::from_matrix(const FqMatrix& m) {
  // T(x) = Σ_j T(e_j) Tr(e*_j x), so a_i = Σ_j T(e_j) σ^i(e*_j).
  const FieldTower& t = m.tower();
  const unsigned n = t.n();
  const auto basis = power_basis(t);
  const auto dual = dual_basis(basis);
  std::vector<Element> images;
  for (unsigned j = 0; j < n; ++j) images.push_back(t.from_coords(m.column(j)));
  std::vector<Element> coeffs(n, t.zero());
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) coeffs[i] += images[j] * frobenius(dual[j], i);
  }
  return LinearizedPoly(std::move(coeffs));
}

std::vector<std::uint64_t> LinearizedPoly::encodings() const {
  std::vector<std::uint64_t> out;
  for (const auto& a : coeffs_) out.push_back(a.encode());
  return out;
}

bool LinearizedPoly::is_identity() const { return *this == identity(*tower_); }

Element LinearizedPoly::operator()(const Element& x) const {
  if (x.level() != Level::top) throw Error(Errc::level_mismatch, "L evaluates top-level elements");
  Element acc = tower_->zero();
  for (unsigned i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    acc += coeffs_[i] * tower_->frobenius(x, i);
  }
  return acc;
}

Element eval_lin(const LinearizedPoly& L, const Element& x) { return L(x); }

FqMatrix matrix_of(const LinearizedPoly& L) {
  const FieldTower& t = L.tower();
  FqMatrix m(t, t.n(), t.n());
  const auto basis = power_basis(t);
  for (unsigned j = 0; j < t.n(); ++j) m.set_column(j, L(basis[j]).coeffs());
  return m;
}

RankKernelImage rank_kernel_image(const LinearizedPoly& L) {
  const FieldTower& t = L.tower();
  const FqMatrix m = matrix_of(L);
  RankKernelImage out;
  out.rank = m.rank();
  for (const auto& v : m.kernel_basis()) out.kernel.push_back(t.from_coords(v));
  const FqMatrix ech = m.column_echelon();
  for (std::size_t c = 0; c < ech.cols(); ++c) {
    const auto col = ech.column(c);
    if (std::all_of(col.begin(), col.end(), [](Coeff v) { return v == 0; })) continue;
    out.image.push_back(t.from_coords(col));
  }
  std::sort(out.image.begin(), out.image.end(), ByEncoding{});
  return out;
}

LinearizedPoly invert_lin(const LinearizedPoly& L) {
  const auto inv = matrix_of(L).inverse();
  if (!inv) throw Error(Errc::not_bijective, "L does not permute F_{q^n}");
  return LinearizedPoly::from_matrix(*inv);
}

Element trace_adjoint_one(const LinearizedPoly& L) {
  // Tr(a_k x^{q^k}) = Tr(σ^{-k}(a_k) x)
  const FieldTower& t = L.tower();
  Element alpha = t.zero();
  for (unsigned k = 0; k < t.n(); ++k) alpha += frobenius(L.coeffs()[k], (t.n() - k) % t.n());
  return alpha;
}

std::size_t span_rank(std::span<const Element> elems) {
  if (elems.empty()) return 0;
  const FieldTower& t = elems.front().tower();
  FqMatrix m(t, t.n(), elems.size());
  for (std::size_t j = 0; j < elems.size(); ++j) m.set_column(j, elems[j].coeffs());
  return m.rank();
}

std::vector<Element> complete_basis(std::span<const Element> partial) {
  if (partial.empty()) throw Error(Errc::not_a_basis, "cannot infer tower from an empty family");
  const FieldTower& t = partial.front().tower();
  std::vector<Element> out(partial.begin(), partial.end());
  if (span_rank(out) != out.size()) throw Error(Errc::not_a_basis, "family is dependent");
  for (std::uint64_t k = 1; out.size() < t.n() && k < t.size(); ++k) {
    out.push_back(t.decode(k));
    if (span_rank(out) != out.size()) out.pop_back();
  }
  return out;
}

std::vector<TracePair> trace_decompose(const LinearizedPoly& L) {
  const FieldTower& t = L.tower();
  const auto rki = rank_kernel_image(L);
  if (rki.rank == 0) return {};

  // With γ dual to the completed basis, the i-th image coordinate is
  // ℓ_i(x) = Tr(γ_i L(x)) = Tr(β_i x) where β_i = Σ_j ℓ_i(e_j) e*_j.
  const auto completed = complete_basis(rki.image);
  const auto gamma = dual_basis(completed);
  const auto basis = power_basis(t);
  const auto dual_power = dual_basis(basis);
  std::vector<Element> images;
  for (const auto& e : basis) images.push_back(L(e));

  std::vector<TracePair> out;
  for (std::size_t i = 0; i < rki.rank; ++i) {
    Element beta = t.zero();
    for (unsigned j = 0; j < t.n(); ++j) {
      beta += t.from_base(t.trace_base(gamma[i] * images[j])) * dual_power[j];
    }
    out.push_back({rki.image[i], beta});
  }
  return out;
}

}  // namespace permrf
