#include "bjlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "bjlab/ortho.hpp"
#include "bjlab/random.hpp"
#include "bjlab/serialize.hpp"
#include "bjlab/sip.hpp"

namespace bjlab {

using nlohmann::json;

namespace {

constexpr struct {
  Mode mode;
  const char* name;
} kModes[] = {
    {Mode::CheckOrtho, "check-ortho"},   {Mode::CheckApprox, "check-approx"},
    {Mode::Sip, "sip"},                  {Mode::Axioms, "axioms"},
    {Mode::PreserverSweep, "preserver-sweep"}, {Mode::IsometryTest, "isometry-test"},
};

// Stream index reserved for drawing random weights, disjoint from trial rows.
constexpr std::uint64_t kWeightStream = ~std::uint64_t{0};

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
  throw Error(ErrorKind::ConfigError, "field '" + field + "': " + msg);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

template <typename T>
T field_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    config_error(field, e.what());
  }
}

bool unit_weights(const SpaceSpec& s) { return (s.weights.array() == 1.0).all(); }

SpaceSpec parse_space(json j, std::uint64_t seed) {
  if (!j.is_object()) config_error("spec", "must be an object");
  if (j.contains("random_weights")) {
    if (j.contains("weights")) config_error("spec.weights", "give either weights or random_weights");
    const auto range = field_as<std::vector<double>>(j["random_weights"], "spec.random_weights");
    if (range.size() != 2 || !(range[0] > 0.0) || !(range[1] >= range[0])) {
      config_error("spec.random_weights", "expected [lo, hi] with 0 < lo <= hi");
    }
    if (!j.contains("n")) config_error("spec.n", "missing");
    const auto n = field_as<Index>(j["n"], "spec.n");
    if (n < 1) config_error("spec.n", "must be positive");
    Rng rng = make_stream(seed, kWeightStream);
    const Eigen::VectorXd w = random_weights(n, range[0], range[1], rng);
    j["weights"] = std::vector<double>(w.data(), w.data() + w.size());
    j.erase("random_weights");
  }
  for (const char* key : {"p", "q", "n", "d", "weights"}) {
    if (!j.contains(key)) config_error(std::string("spec.") + key, "missing");
  }
  try {
    return spec_from_json(j);
  } catch (const Error& e) {
    config_error("spec", e.what());
  }
}

}  // namespace

const char* to_string(Mode m) noexcept {
  for (const auto& entry : kModes) {
    if (entry.mode == m) return entry.name;
  }
  return "unknown";
}

std::optional<Mode> mode_from_string(std::string_view s) {
  for (const auto& entry : kModes) {
    if (s == entry.name) return entry.mode;
  }
  return std::nullopt;
}

ExperimentConfig parse_config(std::string_view text, std::optional<Mode> mode) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");

  static const std::set<std::string> kKeys{"mode", "spec",  "epsilons", "trials",   "seed",
                                           "partition", "factors", "tol", "zero_tol", "out"};
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) config_error(key, "unknown key");
  }

  ExperimentConfig cfg;
  if (j.contains("mode")) {
    const auto name = field_as<std::string>(j["mode"], "mode");
    const auto m = mode_from_string(name);
    if (!m) config_error("mode", "unknown mode '" + name + "'");
    if (mode && *mode != *m) config_error("mode", "config says '" + name + "' but command line says '" + to_string(*mode) + "'");
    cfg.mode = *m;
  } else if (mode) {
    cfg.mode = *mode;
  } else {
    config_error("mode", "missing");
  }

  if (j.contains("seed")) cfg.seed = field_as<std::uint64_t>(j["seed"], "seed");
  if (!j.contains("spec")) config_error("spec", "missing");
  cfg.spec = parse_space(j["spec"], cfg.seed);

  if (j.contains("trials")) {
    const auto t = field_as<long long>(j["trials"], "trials");
    if (t < 1) config_error("trials", "must be at least 1");
    cfg.trials = static_cast<int>(t);
  }
  if (j.contains("epsilons")) {
    cfg.epsilons = field_as<std::vector<double>>(j["epsilons"], "epsilons");
    if (cfg.epsilons.empty()) config_error("epsilons", "must be nonempty");
  }
  for (double e : cfg.epsilons) {
    if (!(e >= 0.0 && e < 1.0)) config_error("epsilons", "each epsilon must lie in [0, 1), got " + format_double(e));
  }
  if (j.contains("tol")) {
    cfg.tol = field_as<double>(j["tol"], "tol");
    if (!(cfg.tol > 0.0)) config_error("tol", "must be positive");
  }
  if (j.contains("zero_tol")) {
    cfg.zero_tol = field_as<double>(j["zero_tol"], "zero_tol");
    if (!(cfg.zero_tol >= 0.0)) config_error("zero_tol", "must be nonnegative");
  }
  if (j.contains("out")) cfg.out = field_as<std::string>(j["out"], "out");
  if (j.contains("partition")) {
    try {
      cfg.partition = AtomPartition(field_as<std::vector<Index>>(j["partition"], "partition"), cfg.spec.n);
    } catch (const Error& e) {
      config_error("partition", e.what());
    }
  }
  if (j.contains("factors")) {
    const auto f = field_as<std::vector<double>>(j["factors"], "factors");
    ScalingOperator u{Eigen::Map<const Eigen::VectorXd>(f.data(), static_cast<Index>(f.size()))};
    try {
      u.validate(cfg.spec);
    } catch (const Error& e) {
      config_error("factors", e.what());
    }
    cfg.factors = u.factors;
  }

  const SpaceSpec& s = cfg.spec;
  const bool needs_smooth = cfg.mode != Mode::IsometryTest;
  if (needs_smooth && !s.inner_smooth()) config_error("spec.q", "this mode needs 1 < q < inf");
  switch (cfg.mode) {
    case Mode::Sip:
    case Mode::Axioms:
      if (s.p == 1.0) config_error("spec.p", "this mode needs p > 1");
      break;
    case Mode::PreserverSweep:
    case Mode::IsometryTest:
      if (cfg.mode == Mode::IsometryTest && cfg.factors) break;
      for (double e : cfg.epsilons) {
        if (e == 0.0) config_error("epsilons", "the operators need 0 < epsilon < 1");
      }
      if (s.n < 2) config_error("spec.n", "the operators need at least two atoms");
      if (!cfg.partition && !(s.p == 1.0 && unit_weights(s))) {
        config_error("partition", "required unless p = 1 with unit weights");
      }
      break;
    default:
      break;
  }
  return cfg;
}

namespace {

ScalingOperator sweep_operator(const ExperimentConfig& cfg, double eps) {
  const ApproxParam e(eps);
  if (cfg.spec.p == 1.0) {
    return cfg.partition ? u_eps_L1(e, *cfg.partition, cfg.spec) : u_eps_l1(e, cfg.spec);
  }
  return u_eps_Lp(e, *cfg.partition, cfg.spec);
}

void fill(ReportRow& row, const char* name_a, const CheckResult& a, const std::string& name_b,
          const CheckResult& b) {
  row.route_a = name_a;
  row.verdict_a = a.verdict;
  row.margin_a = a.margin;
  row.route_b = name_b;
  row.verdict_b = b.verdict;
  row.margin_b = b.margin;
}

ReportRow check_ortho_row(const ExperimentConfig& cfg, Rng& rng, std::uint64_t index) {
  const SpaceSpec& s = cfg.spec;
  const BochnerElement x = random_nonzero_element(s, rng);
  const BochnerElement z = random_element(s, rng);
  // Even rows are constructed orthogonal pairs, odd rows unconstrained.
  const bool constructed = index % 2 == 0;
  const BochnerElement y = constructed ? make_orthogonal_partner(x, z, s) : z;
  const CheckResult a = is_bj_orthogonal(x, y, s, cfg.tol);
  const CheckResult b = is_approx_bj_orthogonal(x, y, ApproxParam(0.0), s, cfg.tol);
  ReportRow row;
  fill(row, "bj", a, "approx0", b);
  row.boundary = a.boundary || b.boundary;
  const bool ok = a.verdict == b.verdict && (!constructed || a.verdict);
  row.outcome = row.boundary ? TrialOutcome::Boundary : (ok ? TrialOutcome::Pass : TrialOutcome::Fail);
  return row;
}

ReportRow check_approx_row(const ExperimentConfig& cfg, Rng& rng, double eps, bool force_sip) {
  const SpaceSpec& s = cfg.spec;
  const BochnerElement x = random_nonzero_element(s, rng);
  const BochnerElement z = random_element(s, rng);
  std::normal_distribution<double> tilt(0.0, 0.25);
  const BochnerElement y = make_orthogonal_partner(x, z, s) + tilt(rng) * x;
  const ApproxParam e(eps);
  const CheckResult a = is_approx_bj_orthogonal(x, y, e, s, cfg.tol);
  const bool use_sip = force_sip || s.p != 1.0;
  const CheckResult b = use_sip ? sip_orthogonality_criterion(x, y, e, s, cfg.tol, cfg.zero_tol)
                                : certificate_check(x, y, e, s, cfg.tol, cfg.zero_tol);
  ReportRow row;
  fill(row, "psi", a, use_sip ? "sip" : "certificate", b);
  row.boundary = a.boundary || b.boundary || std::abs(b.margin) < psi_resolution(cfg.tol);
  row.outcome = row.boundary ? TrialOutcome::Boundary
                             : (a.verdict == b.verdict ? TrialOutcome::Pass : TrialOutcome::Fail);
  return row;
}

ReportRow axioms_row(const ExperimentConfig& cfg, Rng& rng) {
  const SpaceSpec& s = cfg.spec;
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  const BochnerElement f = random_element(s, rng);
  const BochnerElement g = random_element(s, rng);
  const BochnerElement h = random_element(s, rng);
  const double a = coef(rng);
  const double b = coef(rng);
  const AxiomReport rep = sip_axiom_report(f, g, h, a, b, s, cfg.zero_tol);
  const double nf = bochner_norm(f, s);
  const double rel = nf > 0.0 ? rep.norm_identity / (nf * nf) : rep.norm_identity;
  ReportRow row;
  row.route_a = "axioms";
  row.verdict_a = rep.holds(1e-9);
  row.margin_a = rep.max_residual() / rep.scale;
  row.route_b = "norm_identity";
  row.verdict_b = rel <= 1e-10;
  row.margin_b = rel;
  row.outcome = row.verdict_a && row.verdict_b ? TrialOutcome::Pass : TrialOutcome::Fail;
  return row;
}

ReportRow sweep_row(const ExperimentConfig& cfg, const ScalingOperator& u, Rng& rng, double eps) {
  const TrialRecord rec = preservation_trial(u, ApproxParam(eps), cfg.spec, rng, cfg.tol, cfg.zero_tol);
  ReportRow row;
  fill(row, "psi", rec.psi, rec.alt_route, rec.alt);
  row.boundary = rec.boundary;
  row.outcome = rec.outcome;
  return row;
}

}  // namespace

unsigned worker_count() {
  const char* env = std::getenv("BJLAB_THREADS");
  if (!env) return 1;
  const long v = std::strtol(env, nullptr, 10);
  return v < 1 ? 1u : static_cast<unsigned>(std::min(v, 256L));
}

RunReport run(const ExperimentConfig& cfg, unsigned workers) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.config = cfg;

  const bool eps_loop =
      cfg.mode == Mode::CheckApprox || cfg.mode == Mode::Sip || cfg.mode == Mode::PreserverSweep;
  const auto trials = static_cast<std::size_t>(cfg.trials);

  if (cfg.mode == Mode::IsometryTest) {
    std::vector<std::pair<ScalingOperator, double>> ops;
    if (cfg.factors) {
      ops.emplace_back(ScalingOperator{*cfg.factors}, 0.0);
    } else {
      for (double e : cfg.epsilons) ops.emplace_back(sweep_operator(cfg, e), e);
    }
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const auto& [u, eps] = ops[k];
      const IsometryVerdict v = is_scalar_multiple_of_isometry(u, cfg.spec, cfg.trials, cfg.tol, cfg.seed);
      ReportRow row;
      row.trial = k;
      row.seed = cfg.seed;
      row.epsilon = eps;
      row.route_a = "isometry";
      row.verdict_a = v.scalar_isometry;
      row.margin_a = v.spread;
      row.route_b = "ratio_range";
      row.verdict_b = v.scalar_isometry;
      row.margin_b = v.max_ratio - v.min_ratio;
      // U_eps carries a prediction: not an isometry, spread at least eps / (2p).
      const bool ok = cfg.factors || (!v.scalar_isometry && v.spread >= eps / (2.0 * cfg.spec.p));
      row.outcome = ok ? TrialOutcome::Pass : TrialOutcome::Fail;
      report.rows.push_back(row);
      report.summary.isometry = v;
    }
  } else {
    const std::size_t n_eps = eps_loop ? cfg.epsilons.size() : 1;
    std::vector<ScalingOperator> ops;
    if (cfg.mode == Mode::PreserverSweep) {
      for (double e : cfg.epsilons) ops.push_back(sweep_operator(cfg, e));
    }
    report.rows.resize(n_eps * trials);

    auto work = [&](std::size_t idx) {
      const std::size_t ei = idx / trials;
      const double eps = eps_loop ? cfg.epsilons[ei] : 0.0;
      const std::uint64_t seed = stream_seed(cfg.seed, idx);
      Rng rng(seed);
      ReportRow row;
      switch (cfg.mode) {
        case Mode::CheckOrtho: row = check_ortho_row(cfg, rng, idx); break;
        case Mode::CheckApprox: row = check_approx_row(cfg, rng, eps, false); break;
        case Mode::Sip: row = check_approx_row(cfg, rng, eps, true); break;
        case Mode::Axioms: row = axioms_row(cfg, rng); break;
        case Mode::PreserverSweep: row = sweep_row(cfg, ops[ei], rng, eps); break;
        case Mode::IsometryTest: break;
      }
      row.trial = idx;
      row.seed = seed;
      row.epsilon = eps;
      report.rows[idx] = std::move(row);
    };

    const std::size_t total = report.rows.size();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
    if (workers == 1) {
      for (std::size_t i = 0; i < total; ++i) work(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(workers);
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = next++; i < total; i = next++) work(i);
          } catch (...) {
            errors[w] = std::current_exception();
            next = total;
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
  }

  RunSummary& sum = report.summary;
  sum.trials = report.rows.size();
  for (const ReportRow& r : report.rows) {
    switch (r.outcome) {
      case TrialOutcome::Pass:
        ++sum.pass;
        sum.max_abs_margin_pass = std::max({sum.max_abs_margin_pass, std::abs(r.margin_a), std::abs(r.margin_b)});
        break;
      case TrialOutcome::Fail: ++sum.fail; break;
      case TrialOutcome::Boundary: ++sum.boundary; break;
    }
  }
  sum.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string RunReport::csv() const {
  std::ostringstream os;
  os << "#v1 bjlab trial report mode=" << to_string(config.mode) << " seed=" << config.seed << "\n";
  os << "trial,seed,mode,p,q,n,d,epsilon,route_a,verdict_a,margin_a,route_b,verdict_b,margin_b,boundary,outcome\n";
  const SpaceSpec& s = config.spec;
  for (const ReportRow& r : rows) {
    os << r.trial << ',' << r.seed << ',' << to_string(config.mode) << ',' << format_double(s.p) << ','
       << format_double(s.q) << ',' << s.n << ',' << s.d << ',' << format_double(r.epsilon) << ',' << r.route_a
       << ',' << (r.verdict_a ? 1 : 0) << ',' << format_double(r.margin_a) << ',' << r.route_b << ','
       << (r.verdict_b ? 1 : 0) << ',' << format_double(r.margin_b) << ',' << (r.boundary ? 1 : 0) << ','
       << to_string(r.outcome) << '\n';
  }
  return os.str();
}

json RunReport::summary_json() const {
  json j;
  j["mode"] = to_string(config.mode);
  j["seed"] = config.seed;
  j["spec"] = to_json(config.spec);
  j["epsilons"] = config.epsilons;
  j["trials"] = summary.trials;
  j["pass"] = summary.pass;
  j["fail"] = summary.fail;
  j["boundary"] = summary.boundary;
  j["max_abs_margin_pass"] = summary.max_abs_margin_pass;
  j["wall_time_s"] = summary.wall_time_s;
  if (summary.isometry) {
    const IsometryVerdict& v = *summary.isometry;
    j["verdict"] = std::string("scalar multiple of isometry: ") + (v.scalar_isometry ? "yes" : "no");
    j["ratio_spread"] = v.spread;
    j["min_ratio"] = v.min_ratio;
    j["max_ratio"] = v.max_ratio;
  }
  return j;
}

void write_csv(const RunReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << report.csv();
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

}  // namespace bjlab
