#include "permrf/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "permrf/bivariate.hpp"
#include "permrf/parallel.hpp"
#include "permrf/ratfunc.hpp"
#include "permrf/verify.hpp"

namespace permrf::cli {

using nlohmann::json;

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

std::uint64_t budget_from_env() {
  const char* env = std::getenv("PERMRF_BUDGET");
  if (!env || !*env) return kDefaultSizeBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) {
    throw Error(Errc::usage, std::string("PERMRF_BUDGET is not a positive integer: ") + env);
  }
  return v;
}

std::shared_ptr<const FieldTower> tower_of(const RunConfig& cfg) {
  TowerOptions opts;
  opts.size_budget = cfg.size_budget;
  opts.modulus_g = cfg.modulus_g;
  opts.modulus_h = cfg.modulus_h;
  return make_tower(parse_field_spec(cfg.field), opts);
}

Element element_arg(const FieldTower& t, std::uint64_t enc, const char* name) {
  if (enc >= t.size()) {
    throw Error(Errc::usage, std::string(name) + " = " + std::to_string(enc) +
                                 " is not an element encoding of " + t.spec().to_string());
  }
  return t.decode(enc);
}

void put_element(json& j, const RunConfig& cfg, const std::string& key, const Element& e) {
  j[key] = e.encode();
  if (cfg.pretty) j[key + "_pretty"] = e.tower().render(e);
}

json element_list(const std::vector<Element>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(e.encode());
  return out;
}

json header(const RunConfig& cfg, const FieldTower& t) {
  json j;
  j["command"] = cfg.command;
  j["field"] = t.spec().to_string();
  return j;
}

// closed_form_c and whether c matches it; null when no closed form applies to b.
void put_closed_form(json& j, const RunConfig& cfg, const Element& b, const Element* c) {
  const FieldTower& t = b.tower();
  if ((t.n() != 2 && t.n() != 3) || t.in_base_field(b)) {
    j["closed_form_c"] = nullptr;
    if (c) j["matches_closed_form"] = false;
    return;
  }
  const Element closed = closed_form_c(b);
  put_element(j, cfg, "closed_form_c", closed);
  if (c) j["matches_closed_form"] = *c == closed;
}

int cmd_field(const RunConfig& cfg, std::ostream& out) {
  auto tp = tower_of(cfg);
  const FieldTower& t = *tp;
  json j = header(cfg, t);
  j["p"] = t.p();
  j["m"] = t.m();
  j["n"] = t.n();
  j["q"] = t.q();
  j["size"] = t.size();
  j["modulus_g"] = t.modulus_g();
  j["modulus_h"] = t.modulus_h();
  if (cfg.pretty) put_element(j, cfg, "generator", t.generator());
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  auto tp = tower_of(cfg);
  const FieldTower& t = *tp;
  const Element b = element_arg(t, *cfg.b, "b");
  const Element c = element_arg(t, *cfg.c, "c");
  const Method method = parse_method(cfg.method);
  LinearizedPoly L = LinearizedPoly::identity(t);
  if (!cfg.L.empty()) {
    if (cfg.L.size() > t.n()) {
      throw Error(Errc::usage, "L has more than n = " + std::to_string(t.n()) + " coefficients");
    }
    std::vector<Element> coeffs;
    for (auto enc : cfg.L) coeffs.push_back(element_arg(t, enc, "L coefficient"));
    L = LinearizedPoly(std::move(coeffs));
  }
  const RatFunc f(L, c, b);
  const RoutedVerdict v = is_permutation(f, method);

  json j = header(cfg, t);
  put_element(j, cfg, "b", b);
  put_element(j, cfg, "c", c);
  if (!cfg.L.empty()) j["L"] = L.encodings();
  j["method"] = std::string(method_name(method));
  j["route"] = std::string(route_name(v.route));
  j["verdict"] = v.permutes;
  if (v.witness) {
    json w;
    put_element(w, cfg, "x0", v.witness->x0);
    put_element(w, cfg, "y0", v.witness->y0);
    j["witness"] = w;
  }
  put_closed_form(j, cfg, b, &c);
  out << j.dump(2) << "\n";
  return 0;
}

json classify_one(const RunConfig& cfg, const Element& b) {
  const auto permuting = classify_c(b, cfg.workers);
  json j;
  put_element(j, cfg, "b", b);
  j["permuting_c"] = element_list(permuting);
  put_closed_form(j, cfg, b, nullptr);
  j["matches_closed_form"] =
      !j["closed_form_c"].is_null() && permuting.size() == 1 &&
      permuting.front().encode() == j["closed_form_c"].get<std::uint64_t>();
  return j;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  auto tp = tower_of(cfg);
  const FieldTower& t = *tp;
  json j = header(cfg, t);
  j["method"] = "pairwise";
  if (cfg.all_b) {
    json results = json::array();
    for (std::uint64_t k = t.q(); k < t.size(); ++k) results.push_back(classify_one(cfg, t.decode(k)));
    j["results"] = results;
  } else {
    if (!cfg.b) throw Error(Errc::usage, "classify needs --b or --all-b");
    j.update(classify_one(cfg, element_arg(t, *cfg.b, "b")));
  }
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_factor(const RunConfig& cfg, std::ostream& out) {
  auto tp = tower_of(cfg);
  const FieldTower& t = *tp;
  const Element b = element_arg(t, *cfg.b, "b");
  const Element c = element_arg(t, *cfg.c, "c");
  if (t.n() != 2 && t.n() != 3) throw Error(Errc::unsupported_degree, "factor needs n = 2 or 3");
  const BivarPoly f = t.n() == 2 ? build_f2(b, c) : build_f3(b, c);
  const auto g = conjugate_factor_search(f, cfg.workers);

  json j = header(cfg, t);
  put_element(j, cfg, "b", b);
  put_element(j, cfg, "c", c);
  j["which"] = t.n() == 2 ? "f2" : "f3";
  j["found"] = g.has_value();
  if (g) {
    json fj;
    put_element(fj, cfg, "beta", g->beta);
    put_element(fj, cfg, "gamma", g->gamma);
    put_element(fj, cfg, "delta", g->delta);
    j["factor"] = fj;
  }
  if (cfg.pretty) j["f_pretty"] = f.render();
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_points(const RunConfig& cfg, std::ostream& out) {
  auto tp = tower_of(cfg);
  const FieldTower& t = *tp;
  const Element b = element_arg(t, *cfg.b, "b");
  const Element c = element_arg(t, *cfg.c, "c");
  BivarPoly f(t);
  if (cfg.which == "f2") {
    f = build_f2(b, c);
  } else if (cfg.which == "f3") {
    f = build_f3(b, c);
  } else if (cfg.which == "f3kernel") {
    f = build_f3_kernel(b, c);
  } else {
    throw Error(Errc::usage, "--which must be f2, f3 or f3kernel");
  }
  json j = header(cfg, t);
  put_element(j, cfg, "b", b);
  put_element(j, cfg, "c", c);
  j["which"] = cfg.which;
  j["degree"] = std::max(f.deg_x(), f.deg_y());
  j["count"] = count_offdiag_points(f);
  if (cfg.pretty) j["f_pretty"] = f.render();
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_weil(const RunConfig& cfg, std::ostream& out) {
  const unsigned d = *cfg.degree;
  json j;
  j["command"] = cfg.command;
  j["degree"] = d;
  j["threshold"] = weil_threshold(d);
  j["min_prime_power"] = weil_min_prime_power(d);
  if (cfg.weil_q) {
    j["q"] = *cfg.weil_q;
    j["holds"] = weil_holds(*cfg.weil_q, d);
  }
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  SuiteOptions opts;
  opts.seed = cfg.seed;
  opts.workers = cfg.workers;
  opts.size_budget = cfg.size_budget;
  opts.timing = cfg.timing;
  if (cfg.samples) {
    opts.equiv_samples = *cfg.samples;
    opts.n2_random_c = *cfg.samples;
  }
  SuiteRequest req;
  req.name = cfg.suite;
  req.qs = cfg.qs;
  req.ns = cfg.ns;
  if (cfg.mode) {
    if (*cfg.mode == "sufficiency") {
      req.mode = N3Mode::sufficiency;
    } else if (*cfg.mode == "full-classify") {
      req.mode = N3Mode::full_classify;
      // An explicit request lifts the default q limit; the size budget still applies.
      opts.n3_full_classify_max_q = std::numeric_limits<std::uint64_t>::max();
    } else {
      throw Error(Errc::usage, "--mode must be sufficiency or full-classify");
    }
  }
  const auto reports = run_suites(req, opts);

  bool pass = true;
  json suites = json::array();
  for (const auto& r : reports) {
    pass = pass && !r.failed();
    suites.push_back(to_json(r, cfg.timing));
  }
  json j;
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  j["pass"] = pass;
  j["suites"] = suites;
  const std::string text = j.dump(2) + "\n";
  out << text;
  if (cfg.json_path) {
    std::ofstream f(*cfg.json_path, std::ios::binary);
    if (!f) throw Error(Errc::usage, "cannot write " + *cfg.json_path);
    f << text;
  }
  if (cfg.csv_path) {
    std::ofstream f(*cfg.csv_path, std::ios::binary);
    if (!f) throw Error(Errc::usage, "cannot write " + *cfg.csv_path);
    f << to_csv(reports);
  }
  return pass ? 0 : 1;
}

}  // namespace

json to_json(const RunConfig& cfg) {
  return {{"command", cfg.command},
          {"field", cfg.field},
          {"b", opt(cfg.b)},
          {"c", opt(cfg.c)},
          {"L", cfg.L},
          {"method", cfg.method},
          {"all_b", cfg.all_b},
          {"which", cfg.which},
          {"degree", opt(cfg.degree)},
          {"weil_q", opt(cfg.weil_q)},
          {"suite", cfg.suite},
          {"q", cfg.qs},
          {"n", cfg.ns},
          {"mode", opt(cfg.mode)},
          {"samples", opt(cfg.samples)},
          {"seed", cfg.seed},
          {"size_budget", cfg.size_budget},
          {"workers", cfg.workers},
          {"modulus_g", cfg.modulus_g},
          {"modulus_h", cfg.modulus_h},
          {"json_path", opt(cfg.json_path)},
          {"csv_path", opt(cfg.csv_path)},
          {"pretty", cfg.pretty},
          {"timing", cfg.timing}};
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  cfg.command = j.value("command", cfg.command);
  cfg.field = j.value("field", cfg.field);
  read_opt(j, "b", cfg.b);
  read_opt(j, "c", cfg.c);
  cfg.L = j.value("L", cfg.L);
  cfg.method = j.value("method", cfg.method);
  cfg.all_b = j.value("all_b", cfg.all_b);
  cfg.which = j.value("which", cfg.which);
  read_opt(j, "degree", cfg.degree);
  read_opt(j, "weil_q", cfg.weil_q);
  cfg.suite = j.value("suite", cfg.suite);
  cfg.qs = j.value("q", cfg.qs);
  cfg.ns = j.value("n", cfg.ns);
  read_opt(j, "mode", cfg.mode);
  read_opt(j, "samples", cfg.samples);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.size_budget = j.value("size_budget", cfg.size_budget);
  cfg.workers = j.value("workers", cfg.workers);
  cfg.modulus_g = j.value("modulus_g", cfg.modulus_g);
  cfg.modulus_h = j.value("modulus_h", cfg.modulus_h);
  read_opt(j, "json_path", cfg.json_path);
  read_opt(j, "csv_path", cfg.csv_path);
  cfg.pretty = j.value("pretty", cfg.pretty);
  cfg.timing = j.value("timing", cfg.timing);
  return cfg;
}

std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  cfg.size_budget = budget_from_env();
  cfg.workers = default_workers();

  CLI::App app{"Permutation rational functions over finite fields", "permrf"};
  app.require_subcommand(1);
  app.add_option("--budget", cfg.size_budget, "Largest field size to enumerate (env PERMRF_BUDGET)")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", cfg.workers, "Worker threads (1 = sequential)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for sampled cases");
  app.add_option("--modulus-g", cfg.modulus_g, "Modulus of F_q over F_p, low to high")
      ->delimiter(',');
  app.add_option("--modulus-h", cfg.modulus_h, "Modulus of F_{q^n} over F_q, low to high")
      ->delimiter(',');
  app.add_flag("--pretty", cfg.pretty, "Add polynomial renderings of elements");

  const auto field_opt = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "Field as p^m:n")->required();
  };
  const auto bc_opts = [&](CLI::App* sub, bool c_required) {
    sub->add_option("--b", cfg.b, "Encoding of b");
    auto* c = sub->add_option("--c", cfg.c, "Encoding of c");
    if (c_required) {
      sub->get_option("--b")->required();
      c->required();
    }
  };

  auto* field = app.add_subcommand("field", "Describe the field tower");
  field_opt(field);

  auto* check = app.add_subcommand("check", "Test one L(x) + c/(Tr(x)+b) for bijectivity");
  field_opt(check);
  bc_opts(check, true);
  check->add_option("--L", cfg.L, "Encoded coefficients a0,a1,... of L")->delimiter(',');
  check->add_option("--method", cfg.method, "direct | reduced | pairwise")
      ->check(CLI::IsMember({"direct", "reduced", "pairwise"}));

  auto* classify = app.add_subcommand("classify", "All c making x + c/(Tr(x)+b) a permutation");
  field_opt(classify);
  classify->add_option("--b", cfg.b, "Encoding of b");
  classify->add_flag("--all-b", cfg.all_b, "Classify every b outside F_q");

  auto* factor = app.add_subcommand("factor", "Search a conjugate bilinear factor");
  field_opt(factor);
  bc_opts(factor, true);

  auto* points = app.add_subcommand("points", "Count off-diagonal F_q-points");
  field_opt(points);
  bc_opts(points, true);
  points->add_option("--which", cfg.which, "f2 | f3 | f3kernel")
      ->check(CLI::IsMember({"f2", "f3", "f3kernel"}));

  auto* weil = app.add_subcommand("weil", "Point-count threshold for degree d");
  weil->add_option("--degree", cfg.degree, "Curve degree d")->required();
  weil->add_option("--q", cfg.weil_q, "Field size to test");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", cfg.suite)
      ->required()
      ->check(CLI::IsMember({"theorem-n2", "theorem-n3", "proposition", "lemma-equiv",
                             "lemma-basis", "factorizations", "remark3", "corollary", "all"}));
  verify->add_option("--q", cfg.qs, "Comma-separated q values")->delimiter(',');
  verify->add_option("--n", cfg.ns, "Comma-separated n values")->delimiter(',');
  verify->add_option("--mode", cfg.mode, "theorem-n3: sufficiency | full-classify")
      ->check(CLI::IsMember({"sufficiency", "full-classify"}));
  verify->add_option("--samples", cfg.samples, "Random instances per sampled check");
  verify->add_option("--json", cfg.json_path, "Also write the report here");
  verify->add_option("--csv", cfg.csv_path, "Write the exceptions as CSV here");
  verify->add_flag("--timing", cfg.timing, "Include elapsed times (breaks byte reproducibility)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::usage, e.what());
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "field") return cmd_field(cfg, out);
  if (cfg.command == "check") return cmd_check(cfg, out);
  if (cfg.command == "classify") return cmd_classify(cfg, out);
  if (cfg.command == "factor") return cmd_factor(cfg, out);
  if (cfg.command == "points") return cmd_points(cfg, out);
  if (cfg.command == "weil") return cmd_weil(cfg, out);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  throw Error(Errc::usage, "unknown command '" + cfg.command + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_config(args, out);
    if (!cfg) return 0;
    return execute(*cfg, out);
  } catch (const Error& e) {
    err << json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace permrf::cli
