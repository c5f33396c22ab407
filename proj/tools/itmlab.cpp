// Batch CLI: exact verification suites, Lyapunov estimation, attractor
// classification and the explicit constructions, with JSON/CSV reports.
//
// Every run prints one JSON report to stdout (and to --out when given; a
// relative --out is placed under $ITMLAB_OUT_DIR if that is set).  The exit
// code is 0 exactly when every check in the run passed.  Reports are
// deterministic for a fixed command line and seed, except the timestamp.

#include <CLI11.hpp>

#include "itmlab/constructions.hpp"
#include "itmlab/induction.hpp"
#include "itmlab/itm.hpp"
#include "itmlab/lyapunov.hpp"
#include "itmlab/sadic.hpp"
#include "itmlab/suites.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace itmlab;

namespace {

KSequence parse_ks(const std::string& csv) {
  KSequence out;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) out.emplace_back(BigInt(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (out.empty()) throw CLI::ValidationError("--ks", "empty itinerary");
  for (const auto& k : out)
    if (k < 1) throw CLI::ValidationError("--ks", "entries must be >= 1");
  return out;
}

std::vector<Rat> parse_lambda(const std::string& csv) {
  std::vector<Rat> out;
  std::string cur;
  for (char c : csv + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

SamplingSpec parse_dist(const std::string& text, int kmax, std::uint64_t seed) {
  auto colon = text.find(':');
  std::string kind = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "geometric") {
    double p = arg.empty() ? 0.5 : std::stod(arg);
    return SamplingSpec::geometric(p, kmax, seed);
  }
  if (kind == "uniform") {
    auto comma = arg.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--dist", "uniform:kmin,kmax");
    return SamplingSpec::uniform(std::stoi(arg.substr(0, comma)),
                                 std::stoi(arg.substr(comma + 1)), seed);
  }
  if (kind == "periodic" || kind == "empirical") {
    std::vector<int> pattern;
    std::string cur;
    for (char c : arg + ",") {
      if (c == ',') {
        if (!cur.empty()) pattern.push_back(std::stoi(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    return kind == "periodic" ? SamplingSpec::periodic(pattern)
                              : SamplingSpec::empirical(pattern);
  }
  throw CLI::ValidationError("--dist", "unknown distribution: " + kind);
}

int emit(const Report& rep, const std::string& out_path, const std::string& csv_path = "",
         const std::string& csv_body = "") {
  json j = rep.to_json(true);
  std::cout << j.dump(2) << "\n";
  if (!out_path.empty()) {
    std::string path = out_path;
    const char* dir = std::getenv("ITMLAB_OUT_DIR");
    if (dir && !out_path.empty() && out_path.front() != '/')
      path = std::string(dir) + "/" + out_path;
    std::ofstream f(path);
    if (!f) {
      std::cerr << "cannot write " << path << "\n";
      return 2;
    }
    f << j.dump(2) << "\n";
  }
  if (!csv_path.empty()) {
    std::string path = csv_path;
    const char* dir = std::getenv("ITMLAB_OUT_DIR");
    if (dir && csv_path.front() != '/') path = std::string(dir) + "/" + csv_path;
    std::ofstream f(path);
    if (!f) {
      std::cerr << "cannot write " << path << "\n";
      return 2;
    }
    f << csv_body;
  }
  return rep.pass() ? 0 : 1;
}

struct ClassifyArgs {
  std::string alpha, beta, lambda;
  int d = 3;
  int depth = 16;
  std::string out;
};

int run_classify(const ClassifyArgs& a) {
  Report rep("classify");
  ITM map = [&]() {
    if (!a.lambda.empty()) {
      std::vector<Rat> l = parse_lambda(a.lambda);
      rep.params()["lambda"] = a.lambda;
      rep.params()["d"] = a.d;
      return from_bruin({a.d, l});
    }
    rep.params()["alpha"] = a.alpha;
    rep.params()["beta"] = a.beta;
    return from_bt({parse_rat(a.alpha), parse_rat(a.beta)});
  }();
  rep.params()["depth"] = a.depth;

  ClassifyResult res = classify(map, a.depth);
  auto& c = rep.add("classified", true,
                    res.kind == ClassifyResult::FiniteType
                        ? "attractor stabilized"
                        : "no stabilization within the depth budget");
  c.data["type"] = res.kind == ClassifyResult::FiniteType ? "finite" : "unresolved";
  c.data["depth"] = res.depth;
  c.data["attractor_intervals"] = res.omega.parts().size();
  c.data["attractor_length"] = to_string(res.omega.total_length());
  if (res.omega.parts().size() <= 32) c.data["attractor"] = res.omega.to_json();
  c.data["degenerate_branches"] = map.degenerate();
  return emit(rep, a.out);
}

struct VerifyArgs {
  std::string suite;
  int d = 3;
  int kmax = 10;
  std::uint64_t seed = 20260810;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  Report rep("verify");
  if (a.suite == "column-growth")
    rep = suite_column_growth(1000, 15, a.kmax, a.seed);
  else if (a.suite == "pf")
    rep = suite_pf();
  else if (a.suite == "conjugation")
    rep = suite_conjugation();
  else if (a.suite == "commutators")
    rep = suite_commutators(a.d);
  else if (a.suite == "steinberg")
    rep = suite_steinberg(a.d);
  else if (a.suite == "galois")
    rep = suite_galois();
  else if (a.suite == "order")
    rep = suite_order();
  else if (a.suite == "hypotheses")
    rep = suite_hypotheses();
  else
    throw CLI::ValidationError("--suite", "unknown suite: " + a.suite);
  return emit(rep, a.out);
}

struct LyapArgs {
  std::string family = "A";
  int d = 3;
  std::string dist = "geometric:0.5";
  int kmax = 20;
  int steps = 100000;
  int samples = 20;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string mode = "spectrum";
  std::string out, csv;
};

int run_lyapunov(const LyapArgs& a) {
  SamplingSpec spec = parse_dist(a.dist, a.kmax, a.seed);
  Report rep("lyapunov");
  rep.params()["family"] = a.family;
  rep.params()["d"] = a.d;
  rep.params()["spec"] = spec.to_json();
  rep.params()["steps"] = a.steps;
  rep.params()["samples"] = a.samples;
  rep.params()["mode"] = a.mode;

  std::string csv_body;
  if (a.mode == "spectrum" || a.mode == "top") {
    LyapunovEstimate est =
        a.mode == "spectrum"
            ? spectrum(parse_family(a.family), spec, a.d, a.steps, a.samples, a.threads)
            : top_exponent(parse_family(a.family), spec, a.d, a.steps, a.samples, a.threads);
    auto& c = rep.add("estimate", true, "Lyapunov estimate with 95% confidence half-widths");
    c.data = est.to_json();
    if (a.mode == "spectrum") {
      double sum = est.exponent_sum;
      rep.add("exponent-sum-zero", std::abs(sum) < 1e-8,
              "exponents of a det = +-1 cocycle sum to 0")
          .data["sum"] = sum;
    }
    csv_body = "family,d,steps,samples,seed,exp_index,estimate,ci95\n";
    for (size_t i = 0; i < est.exponents.size(); ++i) {
      csv_body += a.family + "," + std::to_string(a.d) + "," + std::to_string(a.steps) + "," +
                  std::to_string(a.samples) + "," + std::to_string(a.seed) + "," +
                  std::to_string(i + 1) + "," + std::to_string(est.exponents[i]) + "," +
                  std::to_string(est.ci95[i]) + "\n";
    }
  } else if (a.mode == "gap") {
    GapEstimate gap = exponent_gap(spec, a.d, a.steps, a.samples, a.threads);
    auto& c = rep.add("gap-positive", gap.degenerate_all_ones || gap.gap - gap.ci95 > 0,
                      "lambda_1(Z) - lambda_1(A) over paired itineraries");
    c.data["gap"] = gap.gap;
    c.data["ci95"] = gap.ci95;
    c.data["degenerate_all_ones"] = gap.degenerate_all_ones;
  } else if (a.mode == "second") {
    Report inner = second_exponent_sign(spec, a.d, a.steps, a.samples, a.threads);
    for (const auto& c : inner.checks()) rep.add(c.name, c.pass, c.note).data = c.data;
  } else {
    throw CLI::ValidationError("--mode", "unknown mode: " + a.mode);
  }
  return emit(rep, a.out, a.csv, csv_body);
}

struct ConstructArgs {
  std::string kind;
  int blocks = 3;
  long long odd_choice = 1;
  long long points = 1000;
  std::uint64_t seed = 1;
  std::string precision = "1/1000000";
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  Report rep("construct");
  rep.params()["kind"] = a.kind;
  rep.params()["blocks"] = a.blocks;
  if (a.kind == "minus-one") {
    MinusOnePlan plan = build_minus_one(a.blocks, a.odd_choice);
    rep.add("certificates", true, "parity and growth certificates hold by construction")
        .data = plan.to_json();
    ResidualResult res = minus_one_residual(plan, a.blocks, a.points, a.seed);
    auto& c = rep.add("eigenfunction-residual", res.residual == 0.0,
                      "f(Tx) = -f(x) exactly on sampled certified points");
    c.data["residual"] = res.residual;
    c.data["points"] = res.points;
    c.data["excluded_share"] = to_string(res.excluded_relative);
    c.data["excluded_lebesgue"] = to_string(res.excluded_absolute);
  } else if (a.kind == "irrational") {
    IrrationalPlan plan = build_irrational(a.blocks);
    rep.add("certificates", true,
            "congruence, coprimality, growth and q-recursion certificates hold")
        .data = plan.to_json();
    GammaApproximant g = gamma_approximant(plan, parse_rat(a.precision));
    auto& cg = rep.add("gamma-approximant", true, "continued fraction convergent with bound");
    cg.data["gamma"] = to_string(g.gamma);
    cg.data["error_bound"] = to_string(g.error);
    cg.data["level"] = g.level;
    Report ledger = spacer_towers(plan, a.blocks);
    for (const auto& c : ledger.checks()) rep.add(c.name, c.pass, c.note).data = c.data;
    if (a.blocks >= 2) {
      ResidualResult res = gamma_eigen_residual(plan, a.blocks - 1, a.points, a.seed);
      auto& c = rep.add("eigenfunction-residual",
                        res.residual <= 10 * to_double(res.error_bound),
                        "phase step residual within ten times the gamma error bound");
      c.data["residual"] = res.residual;
      c.data["error_bound"] = to_string(res.error_bound);
      c.data["excluded_share"] = to_string(res.excluded_relative);
    }
  } else {
    throw CLI::ValidationError("construct", "kind must be minus-one or irrational");
  }
  return emit(rep, a.out);
}

struct TowersArgs {
  std::string ks;
  int n = 0;
  long long cutoff = 1000000;
  std::string out;
};

int run_towers(const TowersArgs& a) {
  KSequence ks = parse_ks(a.ks);
  int n = a.n > 0 ? a.n : static_cast<int>(ks.size());
  Report rep("towers");
  rep.params()["ks"] = a.ks;
  rep.params()["n"] = n;
  TowerFamily tf = tower_names(ks, n, BigInt(a.cutoff));
  auto& c = rep.add("towers", true, "tower heights and materialized names");
  json heights = json::array();
  for (const auto& h : tf.heights(n)) heights.push_back(h.str());
  c.data["heights"] = heights;
  json names = json::array();
  for (int j = 1; j <= 3; ++j) {
    auto w = tf.name(n, j);
    if (!w) {
      names.push_back(nullptr);
      continue;
    }
    std::string s;
    for (int ch : *w) s += static_cast<char>('0' + ch);
    names.push_back(s);
  }
  c.data["names"] = names;
  return emit(rep, a.out);
}

struct VeechArgs {
  std::string ks;
  std::string t = "1/2";
  int n = 0;
  std::string out;
};

int run_veech(const VeechArgs& a) {
  KSequence ks = parse_ks(a.ks);
  int n = a.n > 0 ? a.n : static_cast<int>(ks.size());
  if (static_cast<size_t>(n) > ks.size())
    throw CLI::ValidationError("--n", "level exceeds itinerary length");
  Rat t = parse_rat(a.t);
  Report rep("veech");
  rep.params()["ks"] = a.ks;
  rep.params()["t"] = a.t;
  rep.params()["n"] = n;
  auto& c = rep.add("residuals", true, "distance of t h^{(m)} from the integer lattice");
  json arr = json::array();
  for (int m = 0; m <= n; ++m) arr.push_back(to_string(veech_residual(ks, t, m)));
  c.data["residuals"] = arr;
  return emit(rep, a.out);
}

int dispatch(std::vector<std::string> args);

int run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::cerr << "cannot read config: " << path << "\n";
    return 2;
  }
  json cfg = json::parse(f);
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    if (it.key() != "command" && it.key() != "args")
      throw std::invalid_argument("unknown config field: " + it.key());
  if (!cfg.contains("command")) throw std::invalid_argument("config needs a command");
  std::vector<std::string> argv{cfg["command"].get<std::string>()};
  if (cfg.contains("args"))
    for (auto it = cfg["args"].begin(); it != cfg["args"].end(); ++it) {
      if (it.value().is_boolean()) {
        if (it.value().get<bool>()) argv.push_back("--" + it.key());
        continue;
      }
      argv.push_back("--" + it.key());
      if (it.value().is_string())
        argv.push_back(it.value().get<std::string>());
      else
        argv.push_back(it.value().dump());
    }
  return dispatch(std::move(argv));
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"exact and Monte Carlo laboratory for interval translation mappings"};
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON file with {command, args}");

  ClassifyArgs ca;
  auto* classify_cmd = app.add_subcommand("classify", "attractor stabilization search");
  classify_cmd->add_option("--alpha", ca.alpha, "BT parameter alpha as p/q");
  classify_cmd->add_option("--beta", ca.beta, "BT parameter beta as p/q");
  classify_cmd->add_option("--lambda", ca.lambda, "Bruin lengths, comma separated rationals");
  classify_cmd->add_option("--d", ca.d, "number of intervals for --lambda");
  classify_cmd->add_option("--depth", ca.depth, "stabilization depth budget");
  classify_cmd->add_option("--out", ca.out, "write the JSON report here");

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "exact verification suites");
  verify_cmd
      ->add_option("--suite", va.suite,
                   "column-growth|pf|conjugation|commutators|steinberg|galois|order|hypotheses")
      ->required();
  verify_cmd->add_option("--d", va.d, "dimension for per-d suites");
  verify_cmd->add_option("--kmax", va.kmax, "k range for randomized suites");
  verify_cmd->add_option("--seed", va.seed, "seed for randomized suites");
  verify_cmd->add_option("--out", va.out, "write the JSON report here");

  LyapArgs la;
  auto* lyap_cmd = app.add_subcommand("lyapunov", "exponent estimation");
  lyap_cmd->add_option("--family", la.family, "A|B|Z|Zt|Ainv");
  lyap_cmd->add_option("--d", la.d, "dimension");
  lyap_cmd->add_option("--dist", la.dist,
                       "geometric:p | uniform:a,b | periodic:k1,k2 | empirical:...");
  lyap_cmd->add_option("--kmax", la.kmax, "truncation for stochastic distributions");
  lyap_cmd->add_option("--steps", la.steps, "cocycle steps per sample");
  lyap_cmd->add_option("--samples", la.samples, "independent samples");
  lyap_cmd->add_option("--seed", la.seed, "RNG seed");
  lyap_cmd->add_option("--threads", la.threads, "worker threads (0 = auto)");
  lyap_cmd->add_option("--mode", la.mode, "spectrum|top|gap|second");
  lyap_cmd->add_option("--out", la.out, "write the JSON report here");
  lyap_cmd->add_option("--csv", la.csv, "write a flat CSV table here");

  ConstructArgs na;
  auto* con_cmd = app.add_subcommand("construct", "explicit non weakly mixing plans");
  con_cmd->add_option("kind", na.kind, "minus-one | irrational")->required();
  con_cmd->add_option("--blocks", na.blocks, "construction blocks");
  con_cmd->add_option("--odd-choice", na.odd_choice, "odd k value for the minus-one plan");
  con_cmd->add_option("--points", na.points, "residual sample points");
  con_cmd->add_option("--seed", na.seed, "residual sampling seed");
  con_cmd->add_option("--precision", na.precision, "gamma approximant precision (rational)");
  con_cmd->add_option("--out", na.out, "write the JSON report here");

  TowersArgs ta;
  auto* tow_cmd = app.add_subcommand("towers", "tower heights and names");
  tow_cmd->add_option("--ks", ta.ks, "itinerary, comma separated")->required();
  tow_cmd->add_option("--n", ta.n, "level (default: full itinerary)");
  tow_cmd->add_option("--cutoff", ta.cutoff, "name materialization cutoff");
  tow_cmd->add_option("--out", ta.out, "write the JSON report here");

  VeechArgs wa;
  auto* veech_cmd = app.add_subcommand("veech", "eigenvalue criterion residuals");
  veech_cmd->add_option("--ks", wa.ks, "itinerary, comma separated")->required();
  veech_cmd->add_option("--t", wa.t, "candidate eigenvalue parameter, rational");
  veech_cmd->add_option("--n", wa.n, "levels to evaluate");
  veech_cmd->add_option("--out", wa.out, "write the JSON report here");

  std::vector<const char*> argv;
  argv.push_back("itmlab");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // normalize usage errors; 1 is a failed check
  }

  try {
    if (!config_path.empty()) return run_config(config_path);
    if (classify_cmd->parsed()) return run_classify(ca);
    if (verify_cmd->parsed()) return run_verify(va);
    if (lyap_cmd->parsed()) return run_lyapunov(la);
    if (con_cmd->parsed()) return run_construct(na);
    if (tow_cmd->parsed()) return run_towers(ta);
    if (veech_cmd->parsed()) return run_veech(wa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << app.help();
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(std::move(args));
}
