#pragma once

// Named verification suites. Each suite enumerates the cases of one claim and
// returns a SuiteReport; reports are deterministic given the options.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "permrf/gf_core.hpp"

namespace permrf {

enum class Verdict { pass, fail, report_only };

std::string_view verdict_name(Verdict v);

struct ExceptionRecord {
  std::optional<std::uint64_t> b;
  std::optional<std::uint64_t> c;
  std::string b_pretty;
  std::string c_pretty;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::optional<FieldSpec> field;  // empty for suites spanning several fields
  std::string mode;
  bool assertive = true;
  std::uint64_t cases_total = 0;
  std::uint64_t cases_passed = 0;
  std::vector<ExceptionRecord> exceptions;
  std::chrono::nanoseconds elapsed{0};
  Verdict verdict = Verdict::pass;

  /// Sets verdict from `assertive` and `exceptions`.
  void finalize();
  bool failed() const noexcept { return verdict == Verdict::fail; }
};

enum class N3Mode { sufficiency, full_classify };

struct SuiteOptions {
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t size_budget = kDefaultSizeBudget;
  /// Random instances for the three-way agreement check.
  unsigned equiv_samples = 1000;
  /// n = 2: full classification up to this q, sampled c above it.
  std::uint64_t n2_full_classify_max_q = 9;
  unsigned n2_random_c = 100;
  unsigned n2_spot_checks = 10;
  /// n = 3 full classification is refused above this q.
  std::uint64_t n3_full_classify_max_q = 4;
  unsigned proposition_direct_samples = 20;
  /// Largest q for which the factor search runs inside the factorization suite.
  std::uint64_t factor_search_max_q_n2 = 4;
  std::uint64_t factor_search_max_q_n3 = 3;
  bool timing = false;
};

SuiteReport suite_theorem_n2(std::uint64_t q, const SuiteOptions& opts = {});
SuiteReport suite_theorem_n3(std::uint64_t q, N3Mode mode, const SuiteOptions& opts = {});
SuiteReport suite_proposition(std::uint64_t q, unsigned n, const SuiteOptions& opts = {});
SuiteReport suite_lemma_equiv(const SuiteOptions& opts = {});
SuiteReport suite_lemma_basis(std::uint64_t q, const SuiteOptions& opts = {});
SuiteReport suite_factorizations(std::uint64_t q, unsigned n, const SuiteOptions& opts = {});
SuiteReport suite_remark3(std::uint64_t q, const SuiteOptions& opts = {});
SuiteReport suite_corollary(std::uint64_t q, unsigned n, const SuiteOptions& opts = {});

struct SuiteRequest {
  std::string name;  // theorem-n2 | theorem-n3 | proposition | lemma-equiv | lemma-basis |
                     // factorizations | remark3 | corollary | all
  std::vector<std::uint64_t> qs;  // empty: the suite's default list
  std::vector<unsigned> ns;       // empty: the suite's default list
  std::optional<N3Mode> mode;     // theorem-n3 only; empty runs both default modes
};

std::vector<SuiteReport> run_suites(const SuiteRequest& request, const SuiteOptions& opts);

nlohmann::json to_json(const SuiteReport& r, bool timing = false);
std::string to_csv(const std::vector<SuiteReport>& reports);

}  // namespace permrf
