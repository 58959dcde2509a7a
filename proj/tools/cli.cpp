#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "omegabound/aggregate.hpp"
#include "omegabound/bounds.hpp"
#include "omegabound/empirical.hpp"
#include "omegabound/parallel.hpp"

namespace omegabound::cli {

namespace {

using Json = nlohmann::ordered_json;
using Params = std::map<std::string, std::string>;

constexpr double kMertensEnvelope = 3.0;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Outcome {
  Json result;
  int code = kSuccess;
};

struct Globals {
  int jobs = 1;
  std::string out;
  std::string format = "json";
  std::string timestamp;
};

std::string real17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json log_json(const LogNumber& x) {
  return Json{{"scientific", to_scientific(x, 17)},
              {"sign", x.sign()},
              {"log_mag", x.is_zero() ? std::string("0") : real17(x.log_mag())}};
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int env_jobs() {
  if (const char* v = std::getenv("OMEGABOUND_JOBS")) {
    try {
      const int n = std::stoi(v);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return default_jobs();
}

Rational parse_delta(const std::string& text) {
  try {
    const Rational d = Rational::parse(text);
    if (!(d.num() > 0 && d.num() < d.den())) throw UsageError("--delta must lie strictly between 0 and 1");
    return d;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--delta must be an exact rational P/Q, got '" + text + "'");
  }
}

QuadratureSpec quadrature_from(double rel_tol, int max_depth) {
  QuadratureSpec spec{rel_tol, max_depth};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

Json tilt_json(const TiltChoice& t) {
  return Json{{"k", t.k}, {"alpha", real17(t.alpha)}, {"term", log_json(t.term_value)}, {"evaluations", t.evaluations}};
}

Json per_h_json(const PerHTerm& t) {
  return Json{{"h", t.h}, {"method", to_string(t.method)}, {"K", t.K}, {"bound", log_json(t.bound)},
              {"term", log_json(t.term)}};
}

Json check_json(const std::string& name, const LogNumber& value, const char* op, double limit, bool pass) {
  return Json{{"name", name}, {"value", to_scientific(value, 17)}, {"op", op}, {"limit", real17(limit)},
              {"status", pass ? "PASS" : "FAIL"}};
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  int h = 3;
  std::string delta = "1/321";
  int degree = 3;
  int K_offset = 20;
  std::optional<double> alpha;
  double rel_tol = 1e-12;
  int max_depth = 60;
  int k = 1;
  std::int64_t samples = 1000000;
  std::uint64_t seed = 1;
  bool lower = false;
};

Outcome bound_first(const BoundArgs& a, Params& params) {
  params = {{"h", std::to_string(a.h)}, {"delta", a.delta}, {"degree", std::to_string(a.degree)}};
  const Rational delta = parse_delta(a.delta);
  if (a.h < 3) throw UsageError("--h must be at least 3");
  if (a.degree < 2) throw UsageError("--degree must be at least 2");
  if (a.h / a.degree < 1) throw UsageError("[h/degree] must be at least 1");
  const BoundParams p = BoundParams::first(a.h, delta, a.degree);
  const LogNumber value = first_bound(a.h, delta, a.degree);
  return {Json{{"method", "first"},
               {"h", a.h},
               {"delta", delta.to_string()},
               {"degree", a.degree},
               {"k", p.k},
               {"s_max", real17(p.s_max())},
               {"empty_region", p.empty_region()},
               {"bound", log_json(value)}}};
}

Outcome bound_second(const BoundArgs& a, Params& params) {
  params = {{"h", std::to_string(a.h)},
            {"delta", a.delta},
            {"K-offset", std::to_string(a.K_offset)},
            {"rel-tol", real17(a.rel_tol)},
            {"max-depth", std::to_string(a.max_depth)}};
  if (a.alpha) params["alpha"] = real17(*a.alpha);
  const Rational delta = parse_delta(a.delta);
  if (a.h < 3) throw UsageError("--h must be at least 3");
  if (a.K_offset < 0) throw UsageError("--K-offset must be non-negative");
  if (a.alpha && !(*a.alpha >= 0.0)) throw UsageError("--alpha must be non-negative");
  const QuadratureSpec spec = quadrature_from(a.rel_tol, a.max_depth);
  const int K = std::min(a.h / 3 + a.K_offset, a.h - 1);
  if (K < a.h / 3) throw UsageError("K = min([h/3] + K-offset, h-1) falls below [h/3]");

  Json per_k = Json::array();
  LogNumber total;
  if (a.alpha) {
    for (int k = a.h / 3; k < K; ++k) {
      const LogNumber term = second_bound_term(BoundParams{a.h, delta, 3, k}, *a.alpha, spec);
      total = total + term;
      per_k.push_back(tilt_json(TiltChoice{k, *a.alpha, term, 1}));
    }
  } else {
    const SecondBound sb = second_bound_detailed(a.h, delta, K, spec);
    for (const auto& t : sb.tilts) {
      total = total + t.term_value;
      per_k.push_back(tilt_json(t));
    }
  }
  const LogNumber final_term = closed_form_bound(BoundParams{a.h, delta, 3, K});
  total = total + final_term;
  const LogNumber first = first_bound(a.h, delta, 3);
  return {Json{{"method", "second"},
               {"h", a.h},
               {"delta", delta.to_string()},
               {"K", K},
               {"alpha_mode", a.alpha ? "fixed" : "optimised"},
               {"bound", log_json(total)},
               {"per_k", per_k},
               {"final_term", Json{{"k", K}, {"term", log_json(final_term)}}},
               {"first_bound", log_json(first)},
               {"sharper_than_first", total < first}}};
}

Outcome bound_mc(const BoundArgs& a, Params& params) {
  params = {{"h", std::to_string(a.h)},
            {"k", std::to_string(a.k)},
            {"delta", a.delta},
            {"degree", std::to_string(a.degree)},
            {"samples", std::to_string(a.samples)},
            {"lower-constraint", a.lower ? "true" : "false"}};
  const Rational delta = parse_delta(a.delta);
  const BoundParams p{a.h, delta, a.degree, a.k};
  try {
    p.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  if (a.k > 8) throw UsageError("--k must be at most 8 for the Monte-Carlo oracle");
  if (a.samples < 100000) throw UsageError("--samples must be at least 1e5");
  if (a.lower && a.k > a.h - 2) throw UsageError("--lower-constraint needs k <= h-2");
  const McEstimate mc = region_integral_mc(p, a.lower, a.samples, a.seed);
  const LogNumber bound = a.lower ? optimize_alpha(p).term_value : closed_form_bound(p);
  return {Json{{"h", a.h},
               {"k", a.k},
               {"delta", delta.to_string()},
               {"lower_constraint", a.lower},
               {"estimate", real17(mc.estimate)},
               {"std_error", real17(mc.std_error)},
               {"closed_form_bound", log_json(bound)},
               {"dominated", mc.estimate <= bound.to_real() + 3 * mc.std_error}}};
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
  std::string delta = "1/321";
  int H = 132;
  int split = 190;
  int h_max = 963;
  int K_offset = 20;
  double s_lower = 9.2e-8;
  double rel_tol = 1e-12;
  int max_depth = 60;
  std::string sweep;
};

Json report_json(const AggregateReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.per_h_terms) terms.push_back(per_h_json(t));
  Json tilts = Json::array();
  for (const auto& t : r.tilt_choices) tilts.push_back(tilt_json(t));
  return Json{{"H", r.H},
              {"tail_first", log_json(r.tail_first)},
              {"tail_second", log_json(r.tail_second)},
              {"tail_total", log_json(r.tail_total)},
              {"alpha_proportion", log_json(r.alpha_proportion)},
              {"varpi", log_json(r.varpi)},
              {"count_bound", log_json(r.count_bound)},
              {"display",
               Json{{"tail_first", to_sig2(r.tail_first, RoundDir::up)},
                    {"tail_second", to_sig2(r.tail_second, RoundDir::up)},
                    {"tail_total", to_sig2(r.tail_total, RoundDir::up)},
                    {"alpha_proportion", to_sig2(r.alpha_proportion, RoundDir::down)},
                    {"varpi", to_sig2(r.varpi, RoundDir::down)}}},
              {"per_h_terms", terms},
              {"tilt_choices", tilts}};
}

Outcome reproduce(const ReproduceArgs& a, int jobs, Params& params) {
  params = {{"delta", a.delta},
            {"H", std::to_string(a.H)},
            {"split", std::to_string(a.split)},
            {"h-max", std::to_string(a.h_max)},
            {"K-offset", std::to_string(a.K_offset)},
            {"s-lower", real17(a.s_lower)},
            {"rel-tol", real17(a.rel_tol)},
            {"max-depth", std::to_string(a.max_depth)}};
  if (!a.sweep.empty()) params["sweep-H"] = a.sweep;
  AggregateConfig cfg;
  cfg.delta = parse_delta(a.delta);
  cfg.H = a.H;
  cfg.split_h = a.split;
  cfg.h_max = a.h_max;
  cfg.K_offset = a.K_offset;
  cfg.S_lower = a.s_lower;
  cfg.quadrature = quadrature_from(a.rel_tol, a.max_depth);
  cfg.jobs = jobs;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  Json result;
  int code = kSuccess;
  const AggregateResult outcome = final_constants(cfg);
  Json checks = Json::array();
  if (const auto* r = std::get_if<AggregateReport>(&outcome)) {
    const bool c1 = r->tail_first <= LogNumber::from_real(9.2e-10);
    const bool c2 = r->tail_second <= LogNumber::from_real(3.6e-8);
    const bool c3 = r->tail_total <= LogNumber::from_real(3.7e-8);
    const bool c4 = r->alpha_proportion >= LogNumber::from_real(7.7e-50);
    const bool c5 = r->varpi >= LogNumber::from_real(1e-52);
    checks.push_back(check_json("tail_first", r->tail_first, "<=", 9.2e-10, c1));
    checks.push_back(check_json("tail_second", r->tail_second, "<=", 3.6e-8, c2));
    checks.push_back(check_json("tail_total", r->tail_total, "<=", 3.7e-8, c3));
    checks.push_back(check_json("alpha_proportion", r->alpha_proportion, ">=", 7.7e-50, c4));
    checks.push_back(check_json("varpi", r->varpi, ">=", 1e-52, c5));
    result["status"] = "ok";
    result["report"] = report_json(*r);
    if (!(c1 && c2 && c3 && c4 && c5)) code = kReproductionFail;
  } else {
    const auto& f = std::get<AggregateFailure>(outcome);
    checks.push_back(check_json("tail_first", f.tail_first, "<=", 9.2e-10, f.tail_first <= LogNumber::from_real(9.2e-10)));
    checks.push_back(check_json("tail_second", f.tail_second, "<=", 3.6e-8, f.tail_second <= LogNumber::from_real(3.6e-8)));
    checks.push_back(check_json("tail_total", f.tail_total, "<=", 3.7e-8, f.tail_total <= LogNumber::from_real(3.7e-8)));
    checks.push_back(check_json("alpha_proportion", LogNumber::zero(), ">=", 7.7e-50, false));
    checks.push_back(check_json("varpi", LogNumber::zero(), ">=", 1e-52, false));
    result["status"] = "failure";
    result["diagnostic"] = "zero margin: " + f.reason;
    result["tail_first"] = log_json(f.tail_first);
    result["tail_second"] = log_json(f.tail_second);
    result["tail_total"] = log_json(f.tail_total);
    code = kReproductionFail;
  }
  result["checks"] = checks;

  if (!a.sweep.empty()) {
    const auto colon = a.sweep.find(':');
    int lo = 0;
    int hi = 0;
    try {
      lo = std::stoi(a.sweep.substr(0, colon));
      hi = colon == std::string::npos ? lo : std::stoi(a.sweep.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--sweep-H expects LO:HI");
    }
    if (lo > hi) throw UsageError("--sweep-H expects LO <= HI");
    std::vector<AggregateResult> sweep;
    try {
      sweep = sweep_H(cfg, lo, hi);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--sweep-H: ") + e.what());
    }
    Json entries = Json::array();
    for (const auto& entry : sweep) {
      if (const auto* r = std::get_if<AggregateReport>(&entry)) {
        entries.push_back(Json{{"H", r->H}, {"status", "ok"}, {"tail_total", log_json(r->tail_total)},
                               {"alpha_proportion", log_json(r->alpha_proportion)}, {"varpi", log_json(r->varpi)}});
      } else {
        const auto& f = std::get<AggregateFailure>(entry);
        entries.push_back(Json{{"H", f.H}, {"status", "failure"}, {"tail_total", log_json(f.tail_total)},
                               {"diagnostic", f.reason}});
      }
    }
    const auto best = best_by_varpi(sweep);
    result["sweep"] = Json{{"entries", entries}, {"best_H", best ? Json(best->H) : Json(nullptr)}};
  }
  return {result, code};
}

// ---------------------------------------------------------------- empirical

struct EmpiricalArgs {
  std::int64_t x_min = 0;
  std::int64_t x_max = 0;
  std::string threshold = "2";
  int h = 1;
  std::int64_t segment_size = 1 << 16;
  std::string root_cache;
  std::string export_profiles;
  std::uint64_t limit = 1000000;
  std::uint64_t d = 1;
};

u128 parse_u128(const std::string& s, const char* flag) {
  if (s.empty() || s.size() > 38) throw UsageError(std::string(flag) + " must be a positive integer");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw UsageError(std::string(flag) + " must be a positive integer");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

Outcome empirical_nu(const EmpiricalArgs& a, Params& params) {
  params = {{"d", std::to_string(a.d)}};
  if (a.d < 1 || a.d > 1000000000000ULL) throw UsageError("--d must lie in [1, 1e12]");
  return {Json{{"d", a.d}, {"nu", nu(a.d)}}};
}

Outcome empirical_mertens(const EmpiricalArgs& a, Params& params) {
  params = {{"limit", std::to_string(a.limit)}};
  if (a.limit < 2 || a.limit > 100000000ULL) throw UsageError("--limit must lie in [2, 1e8]");
  const MertensResult m = mertens_check(decade_schedule(a.limit));
  Json points = Json::array();
  bool within = true;
  for (const auto& p : m.points) {
    points.push_back(Json{{"x", p.x}, {"sum", real17(p.sum)}, {"deviation", real17(p.deviation)}});
    within = within && std::fabs(p.deviation) <= kMertensEnvelope;
  }
  return {Json{{"limit", a.limit},
               {"prime_count", m.prime_count},
               {"mean_nu", real17(m.mean_nu)},
               {"envelope", real17(kMertensEnvelope)},
               {"within_envelope", within},
               {"points", points}}};
}

Outcome empirical_count(const EmpiricalArgs& a, int jobs, Params& params, std::ostream& err) {
  params = {{"x-min", std::to_string(a.x_min)},
            {"x-max", std::to_string(a.x_max)},
            {"threshold", a.threshold},
            {"h", std::to_string(a.h)},
            {"segment-size", std::to_string(a.segment_size)}};
  RangeJob job;
  job.x_min = a.x_min;
  job.x_max = a.x_max;
  job.threshold = parse_u128(a.threshold, "--threshold");
  job.h = a.h;
  job.segment_size = a.segment_size;
  job.jobs = jobs;
  try {
    job.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::optional<RootTable> table;
  if (!a.root_cache.empty()) {
    table = RootTable::load_or_build(a.root_cache, static_cast<std::uint64_t>(std::max<std::int64_t>(a.x_max, 2)));
  }
  const std::size_t segments = static_cast<std::size_t>((a.x_max - a.x_min + a.segment_size - 1) / a.segment_size);
  auto progress = [&](std::size_t index, std::int64_t upto) {
    err << "segment " << index + 1 << "/" << segments << " done (n <= " << upto << ")\n";
  };
  const std::int64_t count = empirical_T(job, table ? &*table : nullptr, progress);

  if (!a.export_profiles.empty()) {
    std::ofstream os(a.export_profiles, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + a.export_profiles);
    os << "n,value,omega_above,factors\n";
    factor_range(job, [&](const FactorProfile& p) {
      os << p.n << ',' << to_string(p.value) << ',' << p.omega_above(job.threshold) << ',';
      for (std::size_t i = 0; i < p.factors.size(); ++i) {
        os << (i ? " " : "") << to_string(p.factors[i].first);
        if (p.factors[i].second > 1) os << '^' << p.factors[i].second;
      }
      os << '\n';
    }, table ? &*table : nullptr);
  }
  const std::int64_t size = a.x_max - a.x_min;
  return {Json{{"x_min", a.x_min},
               {"x_max", a.x_max},
               {"threshold", a.threshold},
               {"h", a.h},
               {"count", count},
               {"range_size", size},
               {"fraction", real17(static_cast<double>(count) / static_cast<double>(size))}}};
}

// ---------------------------------------------------------------- rendering

void render_text(const Json& node, const std::string& path, std::ostream& os) {
  if (node.is_object()) {
    // LogNumber objects render on one line.
    if (node.contains("scientific") && node.contains("log_mag")) {
      os << path << " = " << node["scientific"].get<std::string>() << "  (sign " << node["sign"].get<int>()
         << ", log " << node["log_mag"].get<std::string>() << ")\n";
      return;
    }
    if (node.contains("status") && node.contains("op")) {
      os << node["status"].get<std::string>() << "  " << node["name"].get<std::string>() << " = "
         << node["value"].get<std::string>() << " " << node["op"].get<std::string>() << " "
         << node["limit"].get<std::string>() << "\n";
      return;
    }
    for (const auto& [key, value] : node.items()) render_text(value, path.empty() ? key : path + "." + key, os);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) render_text(node[i], path + "[" + std::to_string(i) + "]", os);
  } else if (node.is_string()) {
    os << path << " = " << node.get<std::string>() << "\n";
  } else {
    os << path << " = " << node.dump() << "\n";
  }
}

std::vector<std::string> replay_args(const std::string& file) {
  std::ifstream is(file);
  if (!is) throw UsageError("cannot read manifest " + file);
  Json doc;
  try {
    doc = Json::parse(is);
  } catch (const std::exception& e) {
    throw UsageError("manifest " + file + " is not valid JSON: " + e.what());
  }
  const Json& m = doc.contains("manifest") ? doc["manifest"] : doc;
  if (!m.contains("command") || !m.contains("parameters")) throw UsageError("manifest lacks command or parameters");
  std::vector<std::string> args;
  std::istringstream words(m["command"].get<std::string>());
  for (std::string w; words >> w;) args.push_back(w);
  for (const auto& [key, value] : m["parameters"].items()) args.push_back("--" + key + "=" + value.get<std::string>());
  if (m.contains("seed") && !m["seed"].is_null()) args.push_back("--seed=" + std::to_string(m["seed"].get<std::uint64_t>()));
  if (m.contains("timestamp")) args.push_back("--timestamp=" + m["timestamp"].get<std::string>());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  if (!args.empty() && args.front() == "replay") {
    if (args.size() < 2) {
      err << "error: replay needs a manifest file\n";
      return kUsage;
    }
    try {
      std::vector<std::string> rest(args.begin() + 2, args.end());
      args = replay_args(args[1]);
      args.insert(args.end(), rest.begin(), rest.end());
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
  }

  CLI::App app{"Explicit bounds for large prime factors of n^3+2"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  Globals g;
  g.jobs = env_jobs();
  app.add_option("--jobs", g.jobs, "Worker threads (default: $OMEGABOUND_JOBS or hardware concurrency)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write the result document to FILE instead of stdout");
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--timestamp", g.timestamp, "Manifest timestamp (default: now, UTC)");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Evaluate one bound coefficient c(h, delta)");
  bound->require_subcommand(1);
  auto* first = bound->add_subcommand("first", "First estimate, k = [h/degree]");
  first->add_option("--h", ba.h)->required();
  first->add_option("--delta", ba.delta, "Exact rational P/Q");
  first->add_option("--degree", ba.degree);
  auto* second = bound->add_subcommand("second", "Second estimate with tilted k-terms");
  second->add_option("--h", ba.h)->required();
  second->add_option("--delta", ba.delta);
  second->add_option("--K-offset", ba.K_offset, "K = [h/3] + K-offset, clamped to h-1");
  second->add_option("--alpha", ba.alpha, "Fixed tilt for every k-term instead of optimising");
  second->add_option("--rel-tol", ba.rel_tol);
  second->add_option("--max-depth", ba.max_depth);
  auto* mc = bound->add_subcommand("mc", "Monte-Carlo estimate of the exact region integral");
  mc->add_option("--h", ba.h)->required();
  mc->add_option("--k", ba.k)->required();
  mc->add_option("--delta", ba.delta);
  mc->add_option("--degree", ba.degree);
  mc->add_option("--samples", ba.samples);
  mc->add_option("--seed", ba.seed);
  mc->add_flag("--lower-constraint", ba.lower, "Use the region with the lower sum constraint");

  ReproduceArgs ra;
  auto* repro = app.add_subcommand("reproduce", "Aggregate the tail sums and final constants");
  repro->add_option("--delta", ra.delta);
  repro->add_option("--H", ra.H);
  repro->add_option("--split", ra.split, "First h handled by the first estimate only");
  repro->add_option("--h-max", ra.h_max);
  repro->add_option("--K-offset", ra.K_offset);
  repro->add_option("--s-lower", ra.s_lower, "Lower bound constant for the sieve sum");
  repro->add_option("--rel-tol", ra.rel_tol);
  repro->add_option("--max-depth", ra.max_depth);
  repro->add_option("--sweep-H", ra.sweep, "Also report every H in LO:HI");

  EmpiricalArgs ea;
  auto* emp = app.add_subcommand("empirical", "Desk-scale factorisation experiments");
  emp->require_subcommand(1);
  auto* count = emp->add_subcommand("count", "Count n in (x-min, x-max] with at least h prime factors >= threshold");
  count->add_option("--x-min", ea.x_min)->required();
  count->add_option("--x-max", ea.x_max)->required();
  count->add_option("--threshold", ea.threshold)->required();
  count->add_option("--h", ea.h)->required();
  count->add_option("--segment-size", ea.segment_size);
  count->add_option("--root-cache", ea.root_cache, "Binary (prime, root) table, created if missing");
  count->add_option("--export-profiles", ea.export_profiles, "Write per-n factorisations as CSV");
  auto* mertens = emp->add_subcommand("mertens", "Deviation of sum nu(p) log p / p from log x");
  mertens->add_option("--limit", ea.limit);
  auto* nu_cmd = emp->add_subcommand("nu", "Number of roots of n^3+2 modulo d");
  nu_cmd->add_option("--d", ea.d)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::string command;
  Params params;
  std::optional<std::uint64_t> seed;
  Outcome outcome;
  try {
    if (first->parsed()) {
      command = "bound first";
      outcome = bound_first(ba, params);
    } else if (second->parsed()) {
      command = "bound second";
      outcome = bound_second(ba, params);
    } else if (mc->parsed()) {
      command = "bound mc";
      seed = ba.seed;
      outcome = bound_mc(ba, params);
    } else if (repro->parsed()) {
      command = "reproduce";
      outcome = reproduce(ra, g.jobs, params);
    } else if (count->parsed()) {
      command = "empirical count";
      outcome = empirical_count(ea, g.jobs, params, err);
    } else if (mertens->parsed()) {
      command = "empirical mertens";
      outcome = empirical_mertens(ea, params);
    } else if (nu_cmd->parsed()) {
      command = "empirical nu";
      outcome = empirical_nu(ea, params);
    }
  } catch (const FactorizationError& e) {
    err << "error: factorisation contract violated at n = " << e.n() << ": " << e.what() << "\n";
    return kComputationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: computation failed: " << e.what() << "\n";
    return kComputationFailure;
  }

  Json manifest{{"command", command},
                {"parameters", Json(params)},
                {"tool_version", kToolVersion},
                {"timestamp", g.timestamp.empty() ? utc_now() : g.timestamp},
                {"seed", seed ? Json(*seed) : Json(nullptr)}};
  Json doc{{"manifest", manifest}, {"result", outcome.result}};

  std::ostringstream rendered;
  if (g.format == "text") {
    render_text(doc, "", rendered);
  } else {
    rendered << doc.dump(2) << "\n";
  }
  if (g.out.empty()) {
    out << rendered.str();
  } else {
    std::ofstream os(g.out, std::ios::trunc);
    if (!os) {
      err << "error: cannot write " << g.out << "\n";
      return kComputationFailure;
    }
    os << rendered.str();
  }
  if (outcome.code == kReproductionFail) {
    for (const auto& c : outcome.result["checks"]) {
      if (c["status"] == "FAIL") err << "FAIL " << c["name"].get<std::string>() << "\n";
    }
    if (outcome.result.contains("diagnostic")) err << outcome.result["diagnostic"].get<std::string>() << "\n";
  }
  return outcome.code;
}

}  // namespace omegabound::cli
