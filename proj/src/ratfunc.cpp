#include "permrf/ratfunc.hpp"

#include <algorithm>

#include "permrf/parallel.hpp"

namespace permrf {

void require_rf_params(const Element& b, const Element& c) {
  if (b.level() != Level::top || c.level() != Level::top) {
    throw Error(Errc::level_mismatch, "b and c must be top-level elements");
  }
  if (&b.tower() != &c.tower()) throw Error(Errc::tower_mismatch, "b and c from different towers");
  if (b.tower().in_base_field(b)) throw Error(Errc::b_in_base_field, "b must lie outside F_q");
  if (c.is_zero()) throw Error(Errc::c_zero, "c must be nonzero");
}

RatFunc::RatFunc(LinearizedPoly L, Element c, Element b)
    : L_(std::move(L)), c_(std::move(c)), b_(std::move(b)) {
  require_rf_params(b_, c_);
  if (&L_.tower() != &b_.tower()) throw Error(Errc::tower_mismatch, "L from a different tower");
}

RatFunc RatFunc::with_identity(const Element& c, const Element& b) {
  return RatFunc(LinearizedPoly::identity(b.tower()), c, b);
}

Element RatFunc::operator()(const Element& x) const {
  const FieldTower& t = tower();
  return L_(x) + c_ * t.inverse(t.trace(x) + b_);
}

Element eval_rf(const RatFunc& f, const Element& x) { return f(x); }

Element closed_form_c(const Element& b, unsigned d) {
  const FieldTower& t = b.tower();
  if (d != 2 && d != 3) throw Error(Errc::unsupported_degree, "closed form exists for d = 2, 3");
  if (b.level() != Level::top) throw Error(Errc::level_mismatch, "b must be top-level");
  if (t.n() % d != 0) throw Error(Errc::non_divisor_degrees, "d must divide n");
  if (t.in_base_field(b)) throw Error(Errc::b_in_base_field, "b must lie outside F_q");
  if (!t.is_in_subfield(b, d)) throw Error(Errc::not_in_subfield, "b must lie in F_{q^d}");
  const Element diff = frobenius(b, 1) - b;
  if (d == 2) return frobenius(diff, 1) * diff;
  return -(frobenius(diff, 2) * diff);
}

Element closed_form_c(const Element& b) {
  const unsigned n = b.tower().n();
  if (n != 2 && n != 3) throw Error(Errc::unsupported_degree, "closed form needs n = 2 or 3");
  return closed_form_c(b, n);
}

bool is_permutation_direct(const RatFunc& f) {
  const FieldTower& t = f.tower();
  if (t.size() > t.size_budget()) throw Error(Errc::size_budget_exceeded, "field too large");
  std::vector<bool> seen(t.size(), false);
  for (std::uint64_t k = 0; k < t.size(); ++k) {
    const std::uint64_t y = f(t.decode(k)).encode();
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

Element reduced_map_eval(const Element& b, const Element& c, const Element& t0) {
  require_rf_params(b, c);
  const FieldTower& t = b.tower();
  if (!t.in_base_field(t0)) throw Error(Errc::not_in_subfield, "t0 must lie in F_q");
  return t0 + t.trace(c * t.inverse(t0 + b));
}

bool is_permutation_reduced(const Element& b, const Element& c) {
  require_rf_params(b, c);
  const FieldTower& t = b.tower();
  std::vector<bool> seen(t.q(), false);
  for (std::uint32_t k = 0; k < t.q(); ++k) {
    const auto v = t.to_base(reduced_map_eval(b, c, t.from_base(k)));
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

namespace {

// First pair x0 < y0 in encoding order with Tr(c/((x0+b)(y0+b))) == target.
std::optional<PairWitness> find_pair_with_trace(const Element& b, const Element& c, Coeff target) {
  const FieldTower& t = b.tower();
  std::vector<Element> scaled;  // c/(x0+b)
  std::vector<Element> inv;     // 1/(y0+b)
  scaled.reserve(t.q());
  inv.reserve(t.q());
  for (std::uint32_t k = 0; k < t.q(); ++k) {
    inv.push_back(t.inverse(t.from_base(k) + b));
    scaled.push_back(c * inv.back());
  }
  for (std::uint32_t x0 = 0; x0 < t.q(); ++x0) {
    for (std::uint32_t y0 = x0 + 1; y0 < t.q(); ++y0) {
      if (t.trace_base(scaled[x0] * inv[y0]) == target) {
        return PairWitness{t.from_base(x0), t.from_base(y0)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CriterionOutcome pairwise_criterion(const Element& b, const Element& c) {
  require_rf_params(b, c);
  auto w = find_pair_with_trace(b, c, 1);
  return {!w.has_value(), w};
}

CriterionOutcome kernel_criterion(const Element& b, const Element& c) {
  require_rf_params(b, c);
  auto w = find_pair_with_trace(b, c, 0);
  return {w.has_value(), w};
}

std::vector<Element> classify_c(const Element& b, unsigned workers) {
  const FieldTower& t = b.tower();
  require_rf_params(b, t.one());
  const std::uint64_t size = t.size();
  if (size > t.size_budget() / size) {
    throw Error(Errc::size_budget_exceeded, "q^{2n} pair enumeration exceeds the size budget");
  }
  std::vector<char> permutes(size, 0);
  parallel_for(size - 1, workers, [&](std::uint64_t i) {
    permutes[i + 1] = pairwise_criterion(b, t.decode(i + 1)).holds ? 1 : 0;
  });
  std::vector<Element> out;
  for (std::uint64_t k = 1; k < size; ++k) {
    if (permutes[k]) out.push_back(t.decode(k));
  }
  return out;
}

std::vector<Element> lifted_c_set(const Element& b, unsigned d) {
  const FieldTower& t = b.tower();
  const Element target = closed_form_c(b, d);
  std::vector<Element> out;
  for (std::uint64_t k = 1; k < t.size(); ++k) {
    Element c = t.decode(k);
    if (t.trace_rel(c, t.n(), d) == target) out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<NormalizedSpec> normalize(const RatFunc& f) {
  const auto inv = matrix_of(f.L()).inverse();
  if (!inv) return std::nullopt;
  // f(L^{-1}(x)) = x + c/(Tr(αx)+b); substituting x = α^{-1}y gives α^{-1}(y + αc/(Tr(y)+b)).
  const Element alpha = trace_adjoint_one(LinearizedPoly::from_matrix(*inv));
  return NormalizedSpec{alpha * f.c(), f.b(), alpha};
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::reduced: return "reduced";
    case Method::pairwise: return "pairwise";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "direct") return Method::direct;
  if (text == "reduced") return Method::reduced;
  if (text == "pairwise") return Method::pairwise;
  throw Error(Errc::usage, "unknown method '" + std::string(text) + "'");
}

std::string_view route_name(Route r) {
  switch (r) {
    case Route::direct: return "direct";
    case Route::invertible: return "invertible";
    case Route::rank_deficient: return "rank-deficient";
    case Route::trace_collision: return "trace-collision";
    case Route::kernel_criterion: return "kernel-criterion";
  }
  return "?";
}

RoutedVerdict is_permutation(const RatFunc& f, Method method) {
  if (method == Method::direct) return {is_permutation_direct(f), Route::direct, std::nullopt};

  const FieldTower& t = f.tower();
  if (auto norm_spec = normalize(f)) {
    RoutedVerdict v{false, Route::invertible, std::nullopt};
    if (method == Method::reduced) {
      v.permutes = is_permutation_reduced(norm_spec->b, norm_spec->c);
    } else {
      auto out = pairwise_criterion(norm_spec->b, norm_spec->c);
      v.permutes = out.holds;
      v.witness = out.witness;
    }
    return v;
  }

  // Singular L: a permutation needs rank n-1 with (Tr, L) injective, and then
  // Tr(βc/((x0+b)(y0+b))) ≠ 0 for all x0 ≠ y0 where β annihilates Im L.
  const auto rki = rank_kernel_image(f.L());
  if (rki.rank + 1 < t.n()) return {false, Route::rank_deficient, std::nullopt};
  if (t.trace_base(rki.kernel.front()) == 0) return {false, Route::trace_collision, std::nullopt};

  FqMatrix ann(t, rki.image.size(), t.n());
  for (std::size_t i = 0; i < rki.image.size(); ++i) {
    for (unsigned j = 0; j < t.n(); ++j) {
      std::vector<Coeff> e(t.n(), 0);
      e[j] = 1;
      ann(i, j) = t.trace_base(rki.image[i] * t.from_coords(e));
    }
  }
  const Element beta = t.from_coords(ann.kernel_basis().front());
  auto out = kernel_criterion(f.b(), beta * f.c());
  return {!out.holds, Route::kernel_criterion, out.witness};
}

// ---------------------------------------------------------------------------

namespace {

bool is_alpha(const Element& a) {
  const FieldTower& t = a.tower();
  return !a.is_zero() && pow(a, t.q() - 1) == -t.one();
}

}  // namespace

Remark2Params remark2_transform(const Element& b, const Element& c, const Element& alpha) {
  const FieldTower& t = b.tower();
  if (t.n() != 2) throw Error(Errc::unsupported_degree, "the substitution is for n = 2");
  require_rf_params(b, c);
  if (alpha.level() != Level::top || &alpha.tower() != &t || !is_alpha(alpha)) {
    throw Error(Errc::bad_alpha, "alpha must satisfy alpha^{q-1} = -1");
  }
  const Element aq = frobenius(alpha, 1);
  return {aq * alpha * c, aq * b};
}

Element find_remark2_alpha(const FieldTower& tower) {
  if (tower.n() != 2) throw Error(Errc::unsupported_degree, "the substitution is for n = 2");
  for (std::uint64_t k = 1; k < tower.size(); ++k) {
    Element a = tower.decode(k);
    if (is_alpha(a)) return a;
  }
  throw Error(Errc::bad_alpha, "no alpha with alpha^{q-1} = -1");
}

Element eval_remark2_form(const Remark2Params& params, const Element& x) {
  const FieldTower& t = params.b.tower();
  return x + params.c * t.inverse(frobenius(x, 1) - x + params.b);
}

bool is_permutation_remark2_form(const Remark2Params& params) {
  const FieldTower& t = params.b.tower();
  if (t.trace_base(params.b) == 0) {
    throw Error(Errc::b_in_base_field, "Tr(b') = 0 makes x^q - x + b' vanish");
  }
  std::vector<bool> seen(t.size(), false);
  for (std::uint64_t k = 0; k < t.size(); ++k) {
    const auto y = eval_remark2_form(params, t.decode(k)).encode();
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

bool remark3_check(const Element& b, const Element& c) {
  const FieldTower& t = b.tower();
  if (t.n() != 3) throw Error(Errc::unsupported_degree, "remark check needs n = 3");
  if (t.p() == 2) throw Error(Errc::even_characteristic, "remark check needs q odd");
  require_rf_params(b, c);
  const Element b2 = b * b;
  for (std::uint32_t v = 0; v < t.q(); ++v) {
    const Element bv = b * t.from_base(v) + b2;
    for (std::uint32_t u = 0; u < t.q(); ++u) {
      if (t.trace_base(c * t.inverse(t.from_base(u) + bv)) == 1) return false;
    }
  }
  return true;
}

}  // namespace permrf
