#include "permrf/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "permrf/bivariate.hpp"
#include "permrf/parallel.hpp"
#include "permrf/ratfunc.hpp"

namespace permrf {

namespace {

std::shared_ptr<const FieldTower> tower_for(std::uint64_t q, unsigned n, const SuiteOptions& opts) {
  TowerOptions topts;
  topts.size_budget = opts.size_budget;
  return make_tower(prime_power_spec(q, n), topts);
}

std::vector<Element> outside_base(const FieldTower& t) {
  std::vector<Element> out;
  for (std::uint64_t k = t.q(); k < t.size(); ++k) out.push_back(t.decode(k));
  return out;
}

// b ∈ F_{q^d} \ F_q, as top-level elements in encoding order.
std::vector<Element> subfield_minus_base(const FieldTower& t, unsigned d) {
  std::vector<Element> out;
  for (std::uint64_t k = t.q(); k < t.size(); ++k) {
    Element e = t.decode(k);
    if (t.is_in_subfield(e, d)) out.push_back(std::move(e));
  }
  return out;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable across standard libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

std::mt19937_64 rng_for(const SuiteOptions& opts, std::uint64_t a, std::uint64_t b = 0,
                        std::uint64_t c = 0) {
  return std::mt19937_64(splitmix(opts.seed ^ splitmix(a ^ splitmix(b ^ splitmix(c)))));
}

ExceptionRecord record(const Element* b, const Element* c, std::string detail) {
  ExceptionRecord r;
  if (b) {
    r.b = b->encode();
    r.b_pretty = b->tower().render(*b);
  }
  if (c) {
    r.c = c->encode();
    r.c_pretty = c->tower().render(*c);
  }
  r.detail = std::move(detail);
  return r;
}

std::string encodings(const std::vector<Element>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i].encode());
  }
  return s + "}";
}

// One task per b; tasks fill their own slot and the report is assembled in b order.
struct CaseResult {
  std::uint64_t total = 0;
  std::uint64_t passed = 0;
  std::vector<ExceptionRecord> exceptions;
};

template <class Fn>
void run_per_b(SuiteReport& report, const std::vector<Element>& bs, unsigned workers, Fn&& fn) {
  std::vector<CaseResult> results(bs.size());
  parallel_for(bs.size(), workers, [&](std::uint64_t i) { fn(bs[i], results[i]); });
  for (auto& r : results) {
    report.cases_total += r.total;
    report.cases_passed += r.passed;
    for (auto& e : r.exceptions) report.exceptions.push_back(std::move(e));
  }
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const { return std::chrono::steady_clock::now() - start_; }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::report_only: return "report-only";
  }
  return "?";
}

void SuiteReport::finalize() {
  if (!assertive) {
    verdict = Verdict::report_only;
  } else {
    verdict = exceptions.empty() ? Verdict::pass : Verdict::fail;
  }
}

// ---------------------------------------------------------------------------

SuiteReport suite_theorem_n2(std::uint64_t q, const SuiteOptions& opts) {
  Stopwatch clock;
  auto tp = tower_for(q, 2, opts);
  const FieldTower& t = *tp;
  SuiteReport report;
  report.suite = "theorem-n2";
  report.field = t.spec();
  const bool full = q <= opts.n2_full_classify_max_q;
  report.mode = full ? "full-classify" : "sampled";

  run_per_b(report, outside_base(t), opts.workers, [&](const Element& b, CaseResult& out) {
    ++out.total;
    const Element closed = closed_form_c(b);
    bool ok = true;
    if (full) {
      const auto permuting = classify_c(b);
      if (permuting.size() != 1 || permuting.front() != closed) {
        ok = false;
        out.exceptions.push_back(record(&b, &closed, "permuting set " + encodings(permuting) +
                                                         " differs from the closed form"));
      }
    } else {
      if (!pairwise_criterion(b, closed).holds) {
        ok = false;
        out.exceptions.push_back(record(&b, &closed, "closed-form c does not permute"));
      }
      // Distinct random c ≠ closed form, each of which must fail.
      std::vector<std::uint64_t> pool;
      for (std::uint64_t k = 1; k < t.size(); ++k) {
        if (k != closed.encode()) pool.push_back(k);
      }
      auto rng = rng_for(opts, q, b.encode(), 1);
      const std::size_t take = std::min<std::size_t>(opts.n2_random_c, pool.size());
      for (std::size_t i = 0; i < take; ++i) {
        std::swap(pool[i], pool[i + uniform_below(rng, pool.size() - i)]);
        const Element c = t.decode(pool[i]);
        if (pairwise_criterion(b, c).holds) {
          ok = false;
          out.exceptions.push_back(record(&b, &c, "non-closed-form c permutes"));
        }
      }
    }
    // Cross-oracle spot check: the closed form plus random others, decided by direct evaluation.
    auto rng = rng_for(opts, q, b.encode(), 2);
    for (unsigned i = 0; i < opts.n2_spot_checks; ++i) {
      const Element c = i == 0 ? closed : t.decode(1 + uniform_below(rng, t.size() - 1));
      const bool direct = is_permutation_direct(RatFunc::with_identity(c, b));
      if (direct != (c == closed)) {
        ok = false;
        out.exceptions.push_back(record(&b, &c, "direct evaluation disagrees with the closed form"));
      }
    }
    if (ok) ++out.passed;
  });

  report.elapsed = clock.elapsed();
  report.finalize();
  return report;
}

SuiteReport suite_theorem_n3(std::uint64_t q, N3Mode mode, const SuiteOptions& opts) {
  Stopwatch clock;
  if (mode == N3Mode::full_classify && q > opts.n3_full_classify_max_q) {
    throw Error(Errc::size_budget_exceeded,
                "n = 3 full classification is limited to q <= " +
                    std::to_string(opts.n3_full_classify_max_q));
  }
  auto tp = tower_for(q, 3, opts);
  const FieldTower& t = *tp;
  SuiteReport report;
  report.suite = "theorem-n3";
  report.field = t.spec();
  report.mode = mode == N3Mode::sufficiency ? "sufficiency" : "full-classify";
  report.assertive = mode == N3Mode::sufficiency;

  run_per_b(report, outside_base(t), opts.workers, [&](const Element& b, CaseResult& out) {
    ++out.total;
    const Element closed = closed_form_c(b);
    if (mode == N3Mode::sufficiency) {
      const bool pw = pairwise_criterion(b, closed).holds;
      const bool red = is_permutation_reduced(b, closed);
      const bool dir = is_permutation_direct(RatFunc::with_identity(closed, b));
      if (pw && red && dir) {
        ++out.passed;
      } else {
        out.exceptions.push_back(record(
            &b, &closed,
            std::string("closed form fails: pairwise=") + (pw ? "1" : "0") +
                " reduced=" + (red ? "1" : "0") + " direct=" + (dir ? "1" : "0")));
      }
      return;
    }
    const auto permuting = classify_c(b);
    const bool has_closed = std::find(permuting.begin(), permuting.end(), closed) != permuting.end();
    if (!has_closed) out.exceptions.push_back(record(&b, &closed, "closed form missing"));
    for (const auto& c : permuting) {
      if (c != closed) out.exceptions.push_back(record(&b, &c, "extra permuting c"));
    }
    if (has_closed && permuting.size() == 1) ++out.passed;
  });

  report.elapsed = clock.elapsed();
  report.finalize();
  return report;
}

SuiteReport suite_proposition(std::uint64_t q, unsigned n, const SuiteOptions& opts) {
  Stopwatch clock;
  if (n != 2 && n != 3) throw Error(Errc::unsupported_degree, "proposition suite needs n = 2, 3");
  auto tp = tower_for(q, n, opts);
  const FieldTower& t = *tp;
  SuiteReport report;
  report.suite = "proposition";
  report.field = t.spec();
  report.assertive = n == 2 && q > 3;
  report.mode = report.assertive ? "assertive" : "report-only";
  const auto bs = outside_base(t);

  run_per_b(report, bs, opts.workers, [&](const Element& b, CaseResult& out) {
    for (std::uint64_t k = 1; k < t.size(); ++k) {
      const Element c = t.decode(k);
      ++out.total;
      if (kernel_criterion(b, c).holds) {
        ++out.passed;
      } else {
        out.exceptions.push_back(record(&b, &c, "no pair x0 != y0 with Tr(c/((x0+b)(y0+b))) = 0"));
      }
    }
  });

  // The full map with L = x^q - x must fail the bijection test on sampled (b, c).
  const LinearizedPoly L = LinearizedPoly::frobenius_minus_identity(t);
  auto rng = rng_for(opts, q, n, 3);
  for (unsigned i = 0; i < opts.proposition_direct_samples; ++i) {
    const Element& b = bs[uniform_below(rng, bs.size())];
    const Element c = t.decode(1 + uniform_below(rng, t.size() - 1));
    ++report.cases_total;
    if (!is_permutation_direct(RatFunc(L, c, b))) {
      ++report.cases_passed;
    } else {
      report.exceptions.push_back(record(&b, &c, "x^q - x + c/(Tr(x)+b) permutes"));
    }
  }

  report.elapsed = clock.elapsed();
  report.finalize();
  return report;
}

SuiteReport suite_lemma_equiv(const SuiteOptions& opts) {
  Stopwatch clock;
  SuiteReport report;
  report.suite = "lemma-equiv";
  report.mode = "exhaustive+random";

  const auto check = [&](const Element& b, const Element& c) {
    ++report.cases_total;
    const bool dir = is_permutation_direct(RatFunc::with_identity(c, b));
    const bool red = is_permutation_reduced(b, c);
    const bool pw = pairwise_criterion(b, c).holds;
    if (dir == red && red == pw) {
      ++report.cases_passed;
    } else {
      auto r = record(&b, &c, std::string("disagreement in ") + b.tower().spec().to_string() +
                                  ": direct=" + (dir ? "1" : "0") + " reduced=" +
                                  (red ? "1" : "0") + " pairwise=" + (pw ? "1" : "0"));
      report.exceptions.push_back(std::move(r));
    }
  };

  const std::vector<std::pair<std::uint64_t, unsigned>> exhaustive{
      {2, 2}, {3, 2}, {4, 2}, {5, 2}, {2, 3}, {3, 3}};
  for (auto [q, n] : exhaustive) {
    auto tp = tower_for(q, n, opts);
    for (const auto& b : outside_base(*tp)) {
      for (std::uint64_t k = 1; k < tp->size(); ++k) check(b, tp->decode(k));
    }
  }

  // Larger instances with q^n ≤ 2^12.
  std::vector<std::shared_ptr<const FieldTower>> pool;
  for (std::uint64_t q = 2; q <= 64; ++q) {
    if (!is_prime_power(q)) continue;
    std::uint64_t size = q;
    for (unsigned n = 2; size * q <= 4096; ++n) {
      size *= q;
      const bool listed = std::find(exhaustive.begin(), exhaustive.end(),
                                    std::pair<std::uint64_t, unsigned>{q, n}) != exhaustive.end();
      if (!listed) pool.push_back(tower_for(q, n, opts));
    }
  }
  auto rng = rng_for(opts, 0x1e77a, 4);
  for (unsigned i = 0; i < opts.equiv_samples; ++i) {
    const FieldTower& t = *pool[uniform_below(rng, pool.size())];
    const Element b = t.decode(t.q() + uniform_below(rng, t.size() - t.q()));
    const Element c = t.decode(1 + uniform_below(rng, t.size() - 1));
    check(b, c);
  }

  report.elapsed = clock.elapsed();
  report.finalize();
  return report;
}

SuiteReport suite_lemma_basis(std::uint64_t q, const SuiteOptions& opts) {
  Stopwatch clock;
  auto tp = tower_for(q, 3, opts);
  const FieldTower& t = *tp;
  SuiteReport report;
  report.suite = "lemma-basis";
  report.field = t.spec();

  run_per_b(report, outside_base(t), opts.workers, [&](const Element& b, CaseResult& out) {
    ++out.total;
    const Element det = basis_det_b(b);
    const Element closed = basis_det_closed_form(b);
    const Element coord = basis_coordinate_det_b(b);
    std::string detail;
    if (det.is_zero()) detail += "conjugate determinant vanishes; ";
    if (det != closed) detail += "determinant differs from N(b)Tr(b^{q-1}-b^{q^2-1}); ";
    if (!t.in_base_field(det)) detail += "determinant outside F_q; ";
    if (coord.is_zero()) detail += "coordinate determinant vanishes; ";
    if (detail.empty()) {
      ++out.passed;
    } else {
      out.exceptions.push_back(record(&b, nullptr, detail));
    }
  });

  report.elapsed = clock.elapsed();
  report.finalize();
  return report;
}

SuiteReport suite_factorizations(std::uint64_t q, unsigned n, const SuiteOptions& opts) {
  Stopwatch clock;
  if (n != 2 && n != 3) throw Error(Errc::unsupported_degree, "factorization suite needs n = 2, 3");
  auto tp = tower_for(q, n, opts);
  const FieldTower& t = *tp;
  SuiteReport report;
  report.suite = "factorizations";
  report.field = t.spec();
  const bool search = q <= (n == 2 ? opts.factor_search_max_q_n2 : opts.factor_search_max_q_n3);
  report.mode = search ? "identity+search" : "identity";

  run_per_b(report, outside_base(t), 1, [&](const Element& b, CaseResult& out) {
    const Element closed = closed_form_c(b);
    const BivarPoly f = n == 2 ? build_f2(b, closed) : build_f3(b, closed);
    const BilinearFactor g = n == 2 ? expected_factor_n2(b) : expected_factor_n3(b, closed);
    ++out.total;
    if (norm(g.poly()) == f) {
      ++out.passed;
    } else {
      out.exceptions.push_back(record(&b, &closed, "f != N(g) at the closed form"));
    }
    if (!search) return;

    ++out.total;
    const auto found = conjugate_factor_search(f, opts.workers);
    if (found && norm(found->poly()) == f) {
      ++out.passed;
    } else {
      out.exceptions.push_back(record(&b, &closed, "factor search missed the closed-form factor"));
    }
    if (n != 2) return;
    for (std::uint64_t k = 1; k < t.size(); ++k) {
      const Element c = t.decode(k);
      if (c == closed) continue;
      ++out.total;
      if (!conjugate_factor_search(build_f2(b, c), opts.workers)) {
        ++out.passed;
      } else {
        out.exceptions.push_back(record(&b, &c, "conjugate factor found away from the closed form"));
      }
    }
  });

  report.elapsed = clock.elapsed();
  report.finalize();
  return report;
}

SuiteReport suite_remark3(std::uint64_t q, const SuiteOptions& opts) {
  Stopwatch clock;
  if (q % 2 == 0) throw Error(Errc::even_characteristic, "remark suite needs q odd");
  auto tp = tower_for(q, 3, opts);
  const FieldTower& t = *tp;
  SuiteReport report;
  report.suite = "remark3";
  report.field = t.spec();

  run_per_b(report, outside_base(t), opts.workers, [&](const Element& b, CaseResult& out) {
    ++out.total;
    const Element closed = closed_form_c(b);
    if (remark3_check(b, closed)) {
      ++out.passed;
    } else {
      out.exceptions.push_back(record(&b, &closed, "Tr(c/(u+bv+b^2)) = 1 for some u, v"));
    }
  });

  report.elapsed = clock.elapsed();
  report.finalize();
  return report;
}

SuiteReport suite_corollary(std::uint64_t q, unsigned n, const SuiteOptions& opts) {
  Stopwatch clock;
  if (n % 2 != 0 && n % 3 != 0) {
    throw Error(Errc::non_divisor_degrees, "corollary suite needs 2 | n or 3 | n");
  }
  auto tp = tower_for(q, n, opts);
  const FieldTower& t = *tp;
  SuiteReport report;
  report.suite = "corollary";
  report.field = t.spec();
  std::string mode;

  for (unsigned d : {2u, 3u}) {
    if (n % d != 0) continue;
    mode += mode.empty() ? "d=" + std::to_string(d) : ",d=" + std::to_string(d);
    std::uint64_t fiber = 1;
    for (unsigned i = d; i < n; ++i) fiber *= q;
    run_per_b(report, subfield_minus_base(t, d), opts.workers,
              [&](const Element& b, CaseResult& out) {
                const auto cs = lifted_c_set(b, d);
                ++out.total;
                if (cs.size() == fiber) {
                  ++out.passed;
                } else {
                  out.exceptions.push_back(record(
                      &b, nullptr,
                      "lifted set has " + std::to_string(cs.size()) + " elements, expected " +
                          std::to_string(fiber)));
                }
                for (const auto& c : cs) {
                  ++out.total;
                  if (is_permutation_direct(RatFunc::with_identity(c, b))) {
                    ++out.passed;
                  } else {
                    out.exceptions.push_back(record(&b, &c, "lifted c does not permute (d=" +
                                                                std::to_string(d) + ")"));
                  }
                }
              });
  }
  report.mode = mode;

  report.elapsed = clock.elapsed();
  report.finalize();
  return report;
}

// ---------------------------------------------------------------------------

std::vector<SuiteReport> run_suites(const SuiteRequest& req, const SuiteOptions& opts) {
  std::vector<SuiteReport> out;
  const auto qs_or = [&](std::vector<std::uint64_t> defaults) {
    return req.qs.empty() ? defaults : req.qs;
  };
  const auto ns_or = [&](std::vector<unsigned> defaults) {
    return req.ns.empty() ? defaults : req.ns;
  };
  const bool all = req.name == "all";
  bool known = all;

  if (all || req.name == "theorem-n2") {
    known = true;
    for (auto q : qs_or({2, 3, 4, 5, 7, 8, 9, 11, 13})) out.push_back(suite_theorem_n2(q, opts));
  }
  if (all || req.name == "theorem-n3") {
    known = true;
    if (!req.mode || *req.mode == N3Mode::sufficiency) {
      for (auto q : qs_or({2, 3, 4, 5, 7})) {
        out.push_back(suite_theorem_n3(q, N3Mode::sufficiency, opts));
      }
    }
    if (!req.mode || *req.mode == N3Mode::full_classify) {
      for (auto q : qs_or({2, 3, 4})) {
        if (!req.mode && q > opts.n3_full_classify_max_q) continue;
        out.push_back(suite_theorem_n3(q, N3Mode::full_classify, opts));
      }
    }
  }
  if (all || req.name == "proposition") {
    known = true;
    for (auto n : ns_or({2, 3})) {
      const std::vector<std::uint64_t> defaults =
          n == 2 ? std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9, 11, 13}
                 : std::vector<std::uint64_t>{2, 3, 4, 5, 7};
      for (auto q : qs_or(defaults)) out.push_back(suite_proposition(q, n, opts));
    }
  }
  if (all || req.name == "lemma-equiv") {
    known = true;
    out.push_back(suite_lemma_equiv(opts));
  }
  if (all || req.name == "lemma-basis") {
    known = true;
    for (auto q : qs_or({2, 3, 4, 5, 7, 8, 9})) out.push_back(suite_lemma_basis(q, opts));
  }
  if (all || req.name == "factorizations") {
    known = true;
    for (auto n : ns_or({2, 3})) {
      const std::vector<std::uint64_t> defaults =
          n == 2 ? std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9}
                 : std::vector<std::uint64_t>{2, 3, 4, 5};
      for (auto q : qs_or(defaults)) out.push_back(suite_factorizations(q, n, opts));
    }
  }
  if (all || req.name == "remark3") {
    known = true;
    for (auto q : qs_or({3, 5, 7, 9})) out.push_back(suite_remark3(q, opts));
  }
  if (all || req.name == "corollary") {
    known = true;
    if (req.qs.empty() && req.ns.empty()) {
      for (auto [q, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 4}, {3, 4}, {2, 6}}) {
        out.push_back(suite_corollary(q, n, opts));
      }
    } else {
      for (auto n : ns_or({4})) {
        for (auto q : qs_or({2, 3})) out.push_back(suite_corollary(q, n, opts));
      }
    }
  }
  if (!known) throw Error(Errc::usage, "unknown suite '" + req.name + "'");
  return out;
}

}  // namespace permrf
