#pragma once

// The rational map x ↦ L(x) + c/(Tr(x) + b) on F_{q^n} and its permutation criteria.
//
// For L = x the following are equivalent (and each is implemented separately):
//   direct:   the map is a bijection of F_{q^n}
//   reduced:  t ↦ t + Tr(c/(t + b)) is a bijection of F_q
//   pairwise: Tr(c/((x0+b)(y0+b))) ≠ 1 for all x0 ≠ y0 in F_q

#include <optional>
#include <string>
#include <vector>

#include "permrf/gf_core.hpp"
#include "permrf/linmaps.hpp"

namespace permrf {

/// Rejects b ∈ F_q and c = 0.
void require_rf_params(const Element& b, const Element& c);

class RatFunc {
 public:
  RatFunc(LinearizedPoly L, Element c, Element b);
  /// x + c/(Tr(x) + b)
  static RatFunc with_identity(const Element& c, const Element& b);

  const FieldTower& tower() const noexcept { return L_.tower(); }
  const LinearizedPoly& L() const noexcept { return L_; }
  const Element& c() const noexcept { return c_; }
  const Element& b() const noexcept { return b_; }

  Element operator()(const Element& x) const;

 private:
  LinearizedPoly L_;
  Element c_;
  Element b_;
};

Element eval_rf(const RatFunc& f, const Element& x);

/// (b^q - b)^{q+1} for d = 2, -(b^q - b)^{q^2+1} for d = 3, computed in the top field.
Element closed_form_c(const Element& b, unsigned d);
/// closed_form_c(b, n) for the tower's own degree n ∈ {2, 3}.
Element closed_form_c(const Element& b);

bool is_permutation_direct(const RatFunc& f);

/// t0 + Tr(c/(t0 + b)) for t0 ∈ F_q (top-level embedding in and out).
Element reduced_map_eval(const Element& b, const Element& c, const Element& t0);
bool is_permutation_reduced(const Element& b, const Element& c);

struct PairWitness {
  Element x0;
  Element y0;
};

struct CriterionOutcome {
  bool holds = false;
  std::optional<PairWitness> witness;
};

/// holds ⟺ Tr(c/((x0+b)(y0+b))) ≠ 1 for every x0 < y0; otherwise the first failing pair.
CriterionOutcome pairwise_criterion(const Element& b, const Element& c);

/// holds ⟺ some x0 < y0 has Tr(c/((x0+b)(y0+b))) = 0; the first such pair is the witness.
CriterionOutcome kernel_criterion(const Element& b, const Element& c);

/// Every c ≠ 0 for which x + c/(Tr(x) + b) permutes F_{q^n}, in encoding order.
std::vector<Element> classify_c(const Element& b, unsigned workers = 1);

/// {c : Tr_{n,d}(c) = closed_form_c(b, d)} for b ∈ F_{q^d} \ F_q.
std::vector<Element> lifted_c_set(const Element& b, unsigned d);

// --- L ≠ x ---------------------------------------------------------------

/// Parameters of x + c'/(Tr(x) + b) that permutes iff the original spec does.
struct NormalizedSpec {
  Element c;
  Element b;
  /// Tr(L^{-1}(x)) = Tr(alpha x)
  Element alpha;
};

/// nullopt when L is not invertible.
std::optional<NormalizedSpec> normalize(const RatFunc& f);

enum class Method { direct, reduced, pairwise };

std::string_view method_name(Method m);
Method parse_method(std::string_view text);

enum class Route {
  direct,             // exhaustive evaluation
  invertible,         // L^{-1} substitution, then the chosen criterion on (c', b)
  rank_deficient,     // rank(L) < n - 1
  trace_collision,    // ker L ⊄ complement of ker Tr
  kernel_criterion,   // rank n - 1, decided by the kernel criterion on βc
};

std::string_view route_name(Route r);

struct RoutedVerdict {
  bool permutes = false;
  Route route = Route::direct;
  std::optional<PairWitness> witness;
};

/// Permutation test for a general L, routed through the reductions above.
RoutedVerdict is_permutation(const RatFunc& f, Method method);

// --- quadratic and cubic remarks ----------------------------------------

struct Remark2Params {
  Element c;  // α^{q+1} c
  Element b;  // α^q b
};

/// Requires n = 2 and α^{q-1} = -1.
Remark2Params remark2_transform(const Element& b, const Element& c, const Element& alpha);
/// First element in encoding order with α^{q-1} = -1.
Element find_remark2_alpha(const FieldTower& tower);
/// x + c'/(x^q - x + b')
Element eval_remark2_form(const Remark2Params& params, const Element& x);
bool is_permutation_remark2_form(const Remark2Params& params);

/// Tr(c/(u + bv + b^2)) ≠ 1 for all u, v ∈ F_q. Requires n = 3 and q odd.
bool remark3_check(const Element& b, const Element& c);

}  // namespace permrf
