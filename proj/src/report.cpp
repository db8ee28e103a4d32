#include <sstream>

#include "permrf/verify.hpp"

namespace permrf {

namespace {

nlohmann::json optional_u64(const std::optional<std::uint64_t>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

nlohmann::json to_json(const SuiteReport& r, bool timing) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["field"] = r.field ? nlohmann::json(r.field->to_string()) : nlohmann::json(nullptr);
  j["mode"] = r.mode;
  j["assertive"] = r.assertive;
  j["cases_total"] = r.cases_total;
  j["cases_passed"] = r.cases_passed;
  j["verdict"] = std::string(verdict_name(r.verdict));
  auto& ex = j["exceptions"] = nlohmann::json::array();
  for (const auto& e : r.exceptions) {
    ex.push_back({{"b", optional_u64(e.b)},
                  {"c", optional_u64(e.c)},
                  {"b_pretty", e.b_pretty},
                  {"c_pretty", e.c_pretty},
                  {"detail", e.detail}});
  }
  if (timing) {
    j["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.elapsed).count();
  }
  return j;
}

std::string to_csv(const std::vector<SuiteReport>& reports) {
  std::ostringstream os;
  os << "suite,field,mode,verdict,b,c,b_pretty,c_pretty,detail\n";
  for (const auto& r : reports) {
    const std::string head = csv_field(r.suite) + "," +
                             (r.field ? r.field->to_string() : std::string()) + "," +
                             csv_field(r.mode) + "," + std::string(verdict_name(r.verdict));
    for (const auto& e : r.exceptions) {
      os << head << "," << (e.b ? std::to_string(*e.b) : "") << ","
         << (e.c ? std::to_string(*e.c) : "") << "," << csv_field(e.b_pretty) << ","
         << csv_field(e.c_pretty) << "," << csv_field(e.detail) << "\n";
    }
  }
  return os.str();
}

}  // namespace permrf
