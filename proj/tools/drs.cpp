// drs: command-line frontend for the dual-record estimation library.
//
// Subcommands:
//   estimate  point/interval estimates of N from one capture table
//   simulate  Monte Carlo study over a generating population
//   diagnose  burn-in scan of the convergence statistic
//
// Exit codes: 0 ok, 2 malformed input, 3 bad configuration, 4 degenerate
// data, 5 chain failure, 1 anything else.

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "drs/chain.hpp"
#include "drs/data.hpp"
#include "drs/diagnostics.hpp"
#include "drs/errors.hpp"
#include "drs/estimators.hpp"
#include "drs/io.hpp"
#include "drs/posterior.hpp"
#include "drs/rng.hpp"
#include "drs/samplers.hpp"
#include "drs/simstudy.hpp"
#include "drs/version.hpp"

using json = nlohmann::json;

namespace {

// ---------------------------------------------------------------- options

struct DataFlags {
  long long x11 = -1;
  long long x10 = -1;
  long long x01 = -1;
  std::string file;
};

struct PriorFlags {
  std::string phi_knowledge = "none";
  double phi_upper = 2.0;
  std::string phi_range;  // "lo,hi"; overrides the knowledge mapping
  std::string n_prior = "jeffreys";
  std::string lambda = "mb";
};

struct ChainFlags {
  int chains = 5;
  long long burnin = 0;  // meaningful only when the flag was given
  double t = 20.0;
  std::string p_update = "c-over-phi";
  std::uint64_t seed = 0;
};

struct EstimateArgs {
  DataFlags data;
  std::string method;
  PriorFlags prior;
  ChainFlags chain;
  double level = 0.95;
  std::string out = ".";
  bool traces = false;
  std::string config;
};

struct SimulateArgs {
  std::string population;
  long long n_true = 0;
  double p1dot = 0.0;
  double pdot1 = 0.0;
  double phi = 1.0;
  std::string method;
  PriorFlags prior;
  ChainFlags chain;
  long long reps = 50;
  std::string loss = "mean";
  std::string ci_mode = "endpoint-average";
  double level = 0.95;
  std::string out = ".";
  std::string config;
};

struct DiagnoseArgs {
  DataFlags data;
  std::vector<std::string> trace_files;
  std::string method = "ab-flat";
  PriorFlags prior;
  ChainFlags chain;
  std::string parameter = "N";
  std::string k_grid;
  double threshold = 1.1;
  std::string out = ".";
  std::string config;
};

// ---------------------------------------------------------------- helpers

std::string fd(double value) { return drs::format_double(value); }

double parse_strict_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw drs::ParseError(what + ": '" + text + "' is not a number");
  }
  return value;
}

long long parse_strict_int(const std::string& text, const std::string& what) {
  char* end = nullptr;
  errno = 0;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw drs::ParseError(what + ": '" + text + "' is not an integer");
  }
  return value;
}

// Default seed source when --seed is absent from both the command line and
// the config file.
std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("DRS_SEED");
  if (raw == nullptr) return std::nullopt;
  const std::string text(raw);
  char* end = nullptr;
  errno = 0;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || text[0] == '-' || end != text.c_str() + text.size() ||
      errno == ERANGE) {
    throw drs::ConfigError("environment seed DRS_SEED='" + text +
                           "' is not an unsigned integer");
  }
  return value;
}

drs::DrsData resolve_data(const DataFlags& d) {
  const bool inline_any = d.x11 >= 0 || d.x10 >= 0 || d.x01 >= 0;
  if (!d.file.empty()) {
    if (inline_any) {
      throw drs::ConfigError(
          "--data and the inline counts --x11/--x10/--x01 are mutually "
          "exclusive");
    }
    return drs::read_data_file(d.file);
  }
  if (d.x11 < 0 || d.x10 < 0 || d.x01 < 0) {
    throw drs::ConfigError(
        "a capture table needs --data or all three of --x11, --x10, --x01");
  }
  drs::DrsData data{d.x11, d.x10, d.x01};
  drs::validate(data);
  return data;
}

drs::PhiPriorPolicy resolve_phi_flags(const PriorFlags& f) {
  drs::PhiPriorPolicy policy;
  if (f.phi_knowledge == "gt1") {
    policy.knowledge = drs::PhiKnowledge::kGreaterThanOne;
  } else if (f.phi_knowledge == "lt1") {
    policy.knowledge = drs::PhiKnowledge::kLessThanOne;
  } else if (f.phi_knowledge == "none") {
    policy.knowledge = drs::PhiKnowledge::kNone;
  } else {
    throw drs::ConfigError("unknown phi knowledge '" + f.phi_knowledge +
                           "' (expected gt1, lt1, or none)");
  }
  policy.upper = f.phi_upper;
  if (!f.phi_range.empty()) {
    const auto comma = f.phi_range.find(',');
    if (comma == std::string::npos) {
      throw drs::ParseError("--phi-range expects 'lo,hi', got '" +
                            f.phi_range + "'");
    }
    const double lo =
        parse_strict_double(f.phi_range.substr(0, comma), "--phi-range");
    const double hi =
        parse_strict_double(f.phi_range.substr(comma + 1), "--phi-range");
    policy.explicit_range = std::make_pair(lo, hi);
  }
  return policy;
}

drs::NPriorPolicy resolve_n_prior_flags(const PriorFlags& f) {
  drs::NPriorPolicy policy;
  if (f.n_prior == "jeffreys") {
    policy.kind = drs::NPriorKind::kJeffreys;
  } else if (f.n_prior == "poisson") {
    policy.kind = drs::NPriorKind::kPoisson;
  } else {
    throw drs::ConfigError("unknown N prior '" + f.n_prior +
                           "' (expected jeffreys or poisson)");
  }
  if (f.lambda == "mb") {
    policy.lambda_source = drs::LambdaSource::kMbEstimate;
  } else if (f.lambda == "nour") {
    policy.lambda_source = drs::LambdaSource::kNourEstimate;
  } else if (f.lambda.rfind("fixed:", 0) == 0) {
    policy.lambda_source = drs::LambdaSource::kFixed;
    policy.fixed_lambda =
        parse_strict_double(f.lambda.substr(6), "--lambda fixed:<value>");
  } else {
    throw drs::ConfigError("unknown lambda source '" + f.lambda +
                           "' (expected mb, nour, or fixed:<value>)");
  }
  return policy;
}

drs::PUpdateRule resolve_p_update(const std::string& name) {
  if (name == "c-over-phi") return drs::PUpdateRule::kCOverPhi;
  if (name == "lloyd") return drs::PUpdateRule::kLloyd;
  throw drs::ConfigError("unknown p update rule '" + name +
                         "' (expected c-over-phi or lloyd)");
}

drs::ChainConfig resolve_chain(const ChainFlags& f, bool burnin_given,
                               bool conjugate) {
  drs::ChainConfig cfg;
  cfg.k = burnin_given ? f.burnin : (conjugate ? 7000 : 2000);
  cfg.n_chains = f.chains;
  cfg.seed = f.seed;
  cfg.p_update = resolve_p_update(f.p_update);
  cfg.t = f.t;
  return cfg;
}

std::filesystem::path ensure_out_dir(const std::string& out) {
  const std::filesystem::path dir(out.empty() ? "." : out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir)) {
    throw drs::Error("cannot create output directory '" + dir.string() +
                     "': " + ec.message());
  }
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw drs::Error("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw drs::Error("short write to '" + path.string() + "'");
}

std::string csv_quote(const std::string& field) {
  std::string quoted = "\"";
  for (const char ch : field) {
    quoted += ch;
    if (ch == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

json data_json(const drs::DrsData& data) {
  json j;
  j["x11"] = data.x11;
  j["x10"] = data.x10;
  j["x01"] = data.x01;
  j["x0"] = data.x0();
  j["x1dot"] = data.x1dot();
  j["xdot1"] = data.xdot1();
  if (data.x1dot() > 0) {
    j["c_hat"] = drs::c_hat(data);
  } else {
    j["c_hat"] = nullptr;
  }
  return j;
}

json summary_json(const drs::PosteriorSummary& s) {
  json j;
  j["mean"] = s.mean;
  j["sd"] = s.sd;
  j["median"] = s.median;
  j["map"] = s.map;
  j["sre"] = s.sre;
  j["ci"] = json::array({s.ci.first, s.ci.second});
  j["level"] = s.level;
  j["draws"] = s.n_draws;
  return j;
}

json real_summary_json(const drs::RealSummary& s) {
  json j;
  j["mean"] = s.mean;
  j["sd"] = s.sd;
  j["median"] = s.median;
  j["ci"] = json::array({s.ci.first, s.ci.second});
  j["level"] = s.level;
  j["draws"] = s.n_draws;
  return j;
}

// Everything that can vary between runs (wall time) lives here and only
// here; the data outputs stay byte-identical across reruns of one seed.
json manifest_json(const std::string& command, int argc, char** argv,
                   std::uint64_t seed, json options,
                   std::chrono::steady_clock::time_point start) {
  json invocation = json::array();
  for (int i = 0; i < argc; ++i) invocation.push_back(std::string(argv[i]));
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  json j;
  j["command"] = command;
  j["version"] = drs::kVersion;
  j["invocation"] = invocation;
  j["seed"] = seed;
  j["options"] = std::move(options);
  j["wall_ms"] = wall;
  return j;
}

bool any_phi_flag(const CLI::App* cmd) {
  return cmd->count("--phi-knowledge") > 0 || cmd->count("--phi-upper") > 0 ||
         cmd->count("--phi-range") > 0;
}

void apply_env_seed(const CLI::App* cmd, ChainFlags& chain) {
  if (cmd->count("--seed") == 0) {
    if (const auto seed = env_seed()) chain.seed = *seed;
  }
}

// Fills options the command line left untouched from a key = value file,
// so precedence is: flags, then config file, then DRS_SEED, then defaults.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::map<std::string, drs::ConfigEntry> last;  // duplicates keep the last
  for (const auto& entry : drs::read_config_file(path)) {
    last[entry.key] = entry;
  }
  for (const auto& [key, entry] : last) {
    if (key == "config") continue;
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      throw drs::ConfigError(path + " line " + std::to_string(entry.line) +
                             ": unknown option '" + key + "'");
    }
    if (opt->count() > 0) continue;  // the command line wins
    try {
      opt->add_result(entry.value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw drs::ParseError(path + " line " + std::to_string(entry.line) +
                            ": " + key + ": " + e.what());
    }
  }
}

// ---------------------------------------------------------------- estimate

int run_estimate(const EstimateArgs& a, const CLI::App* cmd, int argc,
                 char** argv) {
  const auto start = std::chrono::steady_clock::now();
  if (a.method.empty()) {
    throw drs::ConfigError("a method is required (--method or a config file)");
  }
  const drs::DrsData data = resolve_data(a.data);
  const auto out_dir = ensure_out_dir(a.out);

  json options;
  options["method"] = a.method;
  options["level"] = a.level;
  options["out"] = a.out;
  options["data"] = data_json(data);
  if (!a.data.file.empty()) options["data_file"] = a.data.file;

  json summary;
  summary["data"] = data_json(data);
  summary["method"] = a.method;

  std::cout << "x11 " << data.x11 << "  x10 " << data.x10 << "  x01 "
            << data.x01 << "  (x0 " << data.x0() << ")\n";

  const bool all_closed = (a.method == "closed-form-all");
  const drs::Method method =
      all_closed ? drs::Method::kMt : drs::parse_method(a.method);

  std::vector<std::string> wrote{"summary.json"};

  if (all_closed || !drs::is_mcmc(method)) {
    json estimates;
    const auto add = [&](const std::string& name, double value) {
      estimates[name] = value;
      std::cout << name << " = " << fd(value) << "\n";
    };
    if (all_closed || method == drs::Method::kMt) {
      add("mt", drs::estimate_mt(data));
    }
    if (all_closed || method == drs::Method::kMb) {
      add("mb", drs::estimate_mb(data));
    }
    if (all_closed || method == drs::Method::kNour) {
      add("nour", drs::estimate_nour(data));
    }
    summary["estimates"] = estimates;
  } else {
    if (a.chain.chains < 2) {
      throw drs::ConfigError("the convergence report needs at least 2 chains, "
                             "got " +
                             std::to_string(a.chain.chains));
    }
    const bool conjugate = (method == drs::Method::kAbCon);
    if (conjugate && any_phi_flag(cmd)) {
      throw drs::ConfigError(
          "the conjugate-prior sampler derives its phi prior from the table; "
          "--phi-knowledge, --phi-upper, and --phi-range do not apply");
    }
    const drs::ChainConfig cfg =
        resolve_chain(a.chain, cmd->count("--burnin") > 0, conjugate);
    const drs::NPriorPolicy n_policy = resolve_n_prior_flags(a.prior);

    std::vector<drs::ChainTrace> traces;
    drs::PhiPriorPolicy phi_policy;
    if (conjugate) {
      traces = drs::run_ab_con(data, n_policy, cfg);
    } else {
      phi_policy = resolve_phi_flags(a.prior);
      traces = drs::run_ab_flat(data, phi_policy, n_policy, cfg);
    }

    const drs::PosteriorSummary n_summary = drs::pooled_summary(traces, a.level);
    const drs::RealSummary phi_summary =
        drs::pooled_real_summary(traces, drs::TraceParam::kPhi, a.level);
    const drs::RealSummary p_summary =
        drs::pooled_real_summary(traces, drs::TraceParam::kP, a.level);
    const drs::RealSummary p1dot_summary =
        drs::pooled_real_summary(traces, drs::TraceParam::kP1dot, a.level);

    json psrf_values;
    std::string psrf_csv = "parameter,r_hat_sqrt\n";
    std::string psrf_line = "sqrt R-hat:";
    for (const auto param :
         {drs::TraceParam::kN, drs::TraceParam::kPhi, drs::TraceParam::kP,
          drs::TraceParam::kP1dot}) {
      const std::string name = drs::to_string(param);
      std::string shown = "nan";
      try {
        const double value = drs::psrf(traces, param, cfg.k);
        psrf_values[name] = value;
        shown = fd(value);
      } catch (const drs::DegenerateDiagnosticError&) {
        psrf_values[name] = nullptr;
      }
      psrf_csv += name + "," + shown + "\n";
      psrf_line += "  " + name + " " + shown;
    }

    long long redraws = 0;
    for (const auto& trace : traces) redraws += trace.feasibility_redraws;

    summary["n"] = summary_json(n_summary);
    summary["phi"] = real_summary_json(phi_summary);
    summary["p"] = real_summary_json(p_summary);
    summary["p1dot"] = real_summary_json(p1dot_summary);
    summary["psrf"] = psrf_values;
    summary["chains"] = cfg.n_chains;
    summary["burn_in"] = cfg.k;
    summary["seed"] = cfg.seed;
    summary["feasibility_redraws"] = redraws;

    json n_prior_info;
    n_prior_info["kind"] = a.prior.n_prior;
    if (n_policy.kind == drs::NPriorKind::kPoisson) {
      n_prior_info["lambda_source"] = a.prior.lambda;
      n_prior_info["lambda"] = drs::resolve_lambda(n_policy, data);
    }
    summary["n_prior"] = n_prior_info;
    options["n_prior"] = n_prior_info;
    options["chains"] = cfg.n_chains;
    options["burnin"] = cfg.k;
    options["seed"] = cfg.seed;
    options["traces"] = a.traces;

    if (conjugate) {
      summary["t"] = cfg.t;
      options["t"] = cfg.t;
    } else {
      const auto interval = drs::resolve_phi_prior(phi_policy, data);
      summary["phi_prior"] = json::array({interval.first, interval.second});
      summary["p_update"] = a.chain.p_update;
      options["phi_knowledge"] = a.prior.phi_knowledge;
      options["phi_upper"] = a.prior.phi_upper;
      if (!a.prior.phi_range.empty()) options["phi_range"] = a.prior.phi_range;
      options["p_update"] = a.chain.p_update;
    }

    write_text(out_dir / "psrf.csv", psrf_csv);
    wrote.push_back("psrf.csv");
    if (a.traces) {
      for (std::size_t j = 0; j < traces.size(); ++j) {
        const std::string name = "trace_chain_" + std::to_string(j) + ".csv";
        drs::write_trace_csv((out_dir / name).string(), traces[j]);
        wrote.push_back(name);
      }
    }

    std::cout << "method " << a.method << "  chains " << cfg.n_chains
              << "  burn-in " << cfg.k << "  retained " << n_summary.n_draws
              << "\n";
    std::cout << "N      mean " << fd(n_summary.mean) << "  sd "
              << fd(n_summary.sd) << "  median " << fd(n_summary.median)
              << "  map " << fd(n_summary.map) << "  sre " << fd(n_summary.sre)
              << "  ci [" << fd(n_summary.ci.first) << ", "
              << fd(n_summary.ci.second) << "]\n";
    const auto real_line = [](const char* name, const drs::RealSummary& s) {
      std::cout << name << "  mean " << fd(s.mean) << "  sd " << fd(s.sd)
                << "  median " << fd(s.median) << "  ci [" << fd(s.ci.first)
                << ", " << fd(s.ci.second) << "]\n";
    };
    real_line("phi  ", phi_summary);
    real_line("p    ", p_summary);
    real_line("p1dot", p1dot_summary);
    std::cout << psrf_line << "\n";
  }

  write_text(out_dir / "summary.json", summary.dump(2) + "\n");
  write_text(out_dir / "manifest.json",
             manifest_json("estimate", argc, argv, a.chain.seed,
                           std::move(options), start)
                     .dump(2) +
                 "\n");
  wrote.push_back("manifest.json");

  std::cout << "wrote";
  for (const auto& name : wrote) std::cout << " " << name;
  std::cout << " to " << out_dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- simulate

int run_simulate(const SimulateArgs& a, const CLI::App* cmd, int argc,
                 char** argv) {
  const auto start = std::chrono::steady_clock::now();
  if (a.method.empty()) {
    throw drs::ConfigError("a method is required (--method or a config file)");
  }
  const auto out_dir = ensure_out_dir(a.out);

  const bool custom_any = cmd->count("--n-true") > 0 ||
                          cmd->count("--p1dot") > 0 ||
                          cmd->count("--pdot1") > 0 || cmd->count("--phi") > 0;
  const bool custom_all = cmd->count("--n-true") > 0 &&
                          cmd->count("--p1dot") > 0 &&
                          cmd->count("--pdot1") > 0 && cmd->count("--phi") > 0;

  drs::StudyDesign design;
  std::string population;
  if (!a.population.empty()) {
    if (custom_any) {
      throw drs::ConfigError(
          "--population and the custom spec flags (--n-true, --p1dot, "
          "--pdot1, --phi) are mutually exclusive");
    }
    design.spec = drs::builtin_population(a.population);
    population = a.population;
  } else {
    if (!custom_all) {
      throw drs::ConfigError(
          "a custom population needs all of --n-true, --p1dot, --pdot1, "
          "--phi (or use --population)");
    }
    design.spec =
        drs::PopulationSpec{a.n_true, a.p1dot, a.pdot1, a.phi};
    population = "custom";
  }

  design.replications = a.reps;
  design.method = drs::parse_method(a.method);
  const bool mcmc = drs::is_mcmc(design.method);
  const bool conjugate = (design.method == drs::Method::kAbCon);
  if (conjugate && any_phi_flag(cmd)) {
    throw drs::ConfigError(
        "the conjugate-prior sampler derives its phi prior from each table; "
        "--phi-knowledge, --phi-upper, and --phi-range do not apply");
  }
  design.n_policy = resolve_n_prior_flags(a.prior);
  if (design.method == drs::Method::kAbFlat) {
    design.phi_policy = resolve_phi_flags(a.prior);
  }
  design.chain_cfg =
      resolve_chain(a.chain, cmd->count("--burnin") > 0, conjugate);
  design.loss = drs::parse_loss(a.loss);
  design.ci_mode = drs::parse_ci_mode(a.ci_mode);
  design.level = a.level;
  design.master_seed = a.chain.seed;

  const drs::StudyResult result = drs::run_study_detailed(design);
  const drs::StudyRow& row = result.row;

  std::string study_csv =
      "population,n_true,p1dot,pdot1,phi,method,loss,ci_mode,level,"
      "replications,used,failures,average_estimate,sample_se,se_undefined,"
      "sample_rmse,ci_lo,ci_hi\n";
  study_csv += population + "," + std::to_string(design.spec.n_true) + "," +
               fd(design.spec.p1dot) + "," + fd(design.spec.pdot1) + "," +
               fd(design.spec.phi) + "," + a.method + "," + a.loss + "," +
               a.ci_mode + "," + fd(a.level) + "," + std::to_string(a.reps) +
               "," + std::to_string(row.replications_used) + "," +
               std::to_string(row.failure_count) + "," +
               fd(row.average_estimate) + "," + fd(row.sample_se) + "," +
               (row.se_undefined ? "1" : "0") + "," + fd(row.sample_rmse) +
               "," + fd(row.averaged_ci.first) + "," +
               fd(row.averaged_ci.second) + "\n";

  std::string reps_csv =
      "rep,failed,estimate,mean,median,map,sre,ci_lo,ci_hi,failure_reason\n";
  for (std::size_t r = 0; r < result.reps.size(); ++r) {
    const drs::RepResult& rep = result.reps[r];
    reps_csv += std::to_string(r + 1) + "," + (rep.failed ? "1" : "0") + "," +
                fd(rep.estimate) + "," + fd(rep.mean) + "," + fd(rep.median) +
                "," + fd(rep.map) + "," + fd(rep.sre) + "," + fd(rep.ci_lo) +
                "," + fd(rep.ci_hi) + "," + csv_quote(rep.failure_reason) +
                "\n";
  }

  json options;
  options["population"] = population;
  options["spec"] = json{{"n_true", design.spec.n_true},
                         {"p1dot", design.spec.p1dot},
                         {"pdot1", design.spec.pdot1},
                         {"phi", design.spec.phi}};
  options["method"] = a.method;
  options["loss"] = a.loss;
  options["ci_mode"] = a.ci_mode;
  options["level"] = a.level;
  options["replications"] = a.reps;
  options["seed"] = a.chain.seed;
  options["out"] = a.out;
  options["n_prior"] = json{{"kind", a.prior.n_prior}};
  if (mcmc) {
    options["chains"] = design.chain_cfg.n_chains;
    options["burnin"] = design.chain_cfg.k;
    if (conjugate) {
      options["t"] = design.chain_cfg.t;
    } else {
      options["phi_knowledge"] = a.prior.phi_knowledge;
      options["phi_upper"] = a.prior.phi_upper;
      if (!a.prior.phi_range.empty()) options["phi_range"] = a.prior.phi_range;
      options["p_update"] = a.chain.p_update;
    }
  }

  write_text(out_dir / "study.csv", study_csv);
  write_text(out_dir / "reps.csv", reps_csv);
  write_text(out_dir / "manifest.json",
             manifest_json("simulate", argc, argv, a.chain.seed,
                           std::move(options), start)
                     .dump(2) +
                 "\n");

  std::cout << "population " << population << "  n_true "
            << design.spec.n_true << "  method " << a.method << "  loss "
            << a.loss << "\n";
  std::cout << "replications " << a.reps << "  used " << row.replications_used
            << "  failures " << row.failure_count << "\n";
  std::cout << "average estimate " << fd(row.average_estimate) << "  se "
            << (row.se_undefined ? std::string("undefined")
                                 : fd(row.sample_se))
            << "  rmse " << fd(row.sample_rmse) << "\n";
  std::cout << "ci [" << fd(row.averaged_ci.first) << ", "
            << fd(row.averaged_ci.second) << "]  (" << a.ci_mode << ", level "
            << fd(a.level) << ")\n";
  std::cout << "wrote study.csv reps.csv manifest.json to " << out_dir.string()
            << "\n";
  return 0;
}

// ---------------------------------------------------------------- diagnose

int run_diagnose(const DiagnoseArgs& a, const CLI::App* cmd, int argc,
                 char** argv) {
  const auto start = std::chrono::steady_clock::now();
  const auto out_dir = ensure_out_dir(a.out);

  json options;
  std::vector<drs::ChainTrace> traces;
  if (!a.trace_files.empty()) {
    for (const char* flag : {"--x11", "--x10", "--x01", "--data", "--method",
                             "--chains", "--burnin", "--t", "--p-update"}) {
      if (cmd->count(flag) > 0) {
        throw drs::ConfigError(std::string("--trace scans existing chains; ") +
                               flag + " does not apply");
      }
    }
    if (a.trace_files.size() < 2) {
      throw drs::ConfigError("the burn-in scan needs at least 2 trace files");
    }
    traces.reserve(a.trace_files.size());
    for (const auto& path : a.trace_files) {
      traces.push_back(drs::read_trace_csv(path));
    }
    options["trace_files"] = a.trace_files;
  } else {
    const drs::DrsData data = resolve_data(a.data);
    const drs::Method method = drs::parse_method(a.method);
    if (!drs::is_mcmc(method)) {
      throw drs::ConfigError(
          "diagnosis needs an MCMC method (ab-flat or ab-con) or --trace "
          "files");
    }
    if (a.chain.chains < 2) {
      throw drs::ConfigError("the burn-in scan needs at least 2 chains, got " +
                             std::to_string(a.chain.chains));
    }
    const bool conjugate = (method == drs::Method::kAbCon);
    if (conjugate && any_phi_flag(cmd)) {
      throw drs::ConfigError(
          "the conjugate-prior sampler derives its phi prior from the table; "
          "--phi-knowledge, --phi-upper, and --phi-range do not apply");
    }
    const drs::ChainConfig cfg =
        resolve_chain(a.chain, cmd->count("--burnin") > 0, conjugate);
    const drs::NPriorPolicy n_policy = resolve_n_prior_flags(a.prior);
    if (conjugate) {
      traces = drs::run_ab_con(data, n_policy, cfg);
    } else {
      traces = drs::run_ab_flat(data, resolve_phi_flags(a.prior), n_policy,
                                cfg);
    }
    options["data"] = data_json(data);
    if (!a.data.file.empty()) options["data_file"] = a.data.file;
    options["method"] = a.method;
    options["chains"] = cfg.n_chains;
    options["burnin"] = cfg.k;
    options["seed"] = cfg.seed;
    if (conjugate) options["t"] = cfg.t;
  }

  const drs::TraceParam param = drs::parse_trace_param(a.parameter);

  std::vector<long long> grid;
  if (!a.k_grid.empty()) {
    std::string token;
    std::istringstream stream(a.k_grid);
    while (std::getline(stream, token, ',')) {
      grid.push_back(parse_strict_int(token, "--k-grid"));
    }
    if (grid.empty()) {
      throw drs::ParseError("--k-grid: '" + a.k_grid +
                            "' holds no candidates");
    }
  } else {
    // default: eight evenly spaced candidates below half the chain length
    std::size_t shortest = traces.front().size();
    for (const auto& trace : traces) {
      shortest = std::min(shortest, trace.size());
    }
    for (int i = 0; i < 8; ++i) {
      grid.push_back(static_cast<long long>(shortest) * i / 16);
    }
  }

  const drs::PsrfReport report =
      drs::burnin_scan(traces, param, grid, a.threshold);

  std::string psrf_csv = "k,r_hat_sqrt\n";
  for (const auto& [k, value] : report.curve) {
    psrf_csv += std::to_string(k) + "," + fd(value) + "\n";
  }

  options["parameter"] = a.parameter;
  options["threshold"] = a.threshold;
  json grid_json = json::array();
  for (const auto& [k, value] : report.curve) grid_json.push_back(k);
  options["k_grid"] = grid_json;
  options["out"] = a.out;
  if (report.accepted_k.has_value()) {
    options["accepted_k"] = *report.accepted_k;
  } else {
    options["accepted_k"] = nullptr;
  }

  write_text(out_dir / "psrf.csv", psrf_csv);
  write_text(out_dir / "manifest.json",
             manifest_json("diagnose", argc, argv, a.chain.seed,
                           std::move(options), start)
                     .dump(2) +
                 "\n");

  std::cout << "parameter " << a.parameter << "  chains " << traces.size()
            << "  threshold " << fd(a.threshold) << "\n";
  std::cout << std::setw(10) << "k"
            << "  sqrt R-hat\n";
  for (const auto& [k, value] : report.curve) {
    std::cout << std::setw(10) << k << "  " << fd(value) << "\n";
  }
  if (report.accepted_k.has_value()) {
    std::cout << "accepted burn-in: " << *report.accepted_k << "\n";
  } else {
    std::cout << "no scanned burn-in meets the threshold " << fd(a.threshold)
              << "\n";
  }
  std::cout << "wrote psrf.csv manifest.json to " << out_dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- wiring

void add_data_flags(CLI::App* cmd, DataFlags& d) {
  cmd->add_option("--x11", d.x11, "count captured by both lists")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--x10", d.x10, "count captured by list 1 only")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--x01", d.x01, "count captured by list 2 only")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--data", d.file,
                  "capture table file (key-value or delimited)");
}

void add_prior_flags(CLI::App* cmd, PriorFlags& f) {
  cmd->add_option("--phi-knowledge", f.phi_knowledge,
                  "directional knowledge about phi: gt1, lt1, or none")
      ->capture_default_str();
  cmd->add_option("--phi-upper", f.phi_upper,
                  "upper end of the flat phi prior")
      ->capture_default_str();
  cmd->add_option("--phi-range", f.phi_range,
                  "explicit flat phi prior as 'lo,hi' (overrides knowledge)");
  cmd->add_option("--n-prior", f.n_prior, "N prior: jeffreys or poisson")
      ->capture_default_str();
  cmd->add_option("--lambda", f.lambda,
                  "Poisson prior mean source: mb, nour, or fixed:<value>")
      ->capture_default_str();
}

void add_chain_flags(CLI::App* cmd, ChainFlags& f) {
  cmd->add_option("--chains", f.chains, "number of chains")
      ->capture_default_str();
  cmd->add_option("--burnin", f.burnin,
                  "burn-in length k; a chain runs 2k iterations (default "
                  "2000 flat, 7000 conjugate)");
  cmd->add_option("--t", f.t, "conjugate prior tuning constant")
      ->capture_default_str();
  cmd->add_option("--p-update", f.p_update,
                  "flat-prior p refresh rule: c-over-phi or lloyd")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed,
                  "master RNG seed (default: DRS_SEED if set, else 0)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-record closed-population estimation with a behavioral "
               "response"};
  app.set_version_flag("--version", drs::kVersion);
  app.require_subcommand(1);

  EstimateArgs estimate_args;
  SimulateArgs simulate_args;
  DiagnoseArgs diagnose_args;

  CLI::App* estimate =
      app.add_subcommand("estimate", "estimate N from one capture table");
  add_data_flags(estimate, estimate_args.data);
  estimate->add_option("--method", estimate_args.method,
                       "mt, mb, nour, closed-form-all, ab-flat, or ab-con");
  add_prior_flags(estimate, estimate_args.prior);
  add_chain_flags(estimate, estimate_args.chain);
  estimate->add_option("--level", estimate_args.level,
                       "central interval level")
      ->capture_default_str();
  estimate->add_option("--out", estimate_args.out, "output directory")
      ->capture_default_str();
  estimate->add_flag("--traces", estimate_args.traces,
                     "write per-chain trace CSVs");
  estimate->add_option("--config", estimate_args.config,
                       "key = value option file");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo study over a generating population");
  simulate->add_option("--population", simulate_args.population,
                       "built-in population P1..P8");
  simulate->add_option("--n-true", simulate_args.n_true,
                       "custom population size");
  simulate->add_option("--p1dot", simulate_args.p1dot,
                       "custom list-1 capture probability");
  simulate->add_option("--pdot1", simulate_args.pdot1,
                       "custom list-2 capture probability");
  simulate->add_option("--phi", simulate_args.phi,
                       "custom behavioral response multiplier");
  simulate->add_option("--method", simulate_args.method,
                       "mt, mb, nour, ab-flat, or ab-con");
  simulate->add_option("-R,--reps", simulate_args.reps,
                       "number of replications")
      ->capture_default_str();
  simulate
      ->add_option("--loss", simulate_args.loss,
                   "reported point estimate: mean, median, map, or sre")
      ->capture_default_str();
  simulate
      ->add_option("--ci-mode", simulate_args.ci_mode,
                   "interval aggregation: endpoint-average or "
                   "pooled-quantiles")
      ->capture_default_str();
  simulate->add_option("--level", simulate_args.level,
                       "central interval level")
      ->capture_default_str();
  simulate->add_option("--out", simulate_args.out, "output directory")
      ->capture_default_str();
  add_prior_flags(simulate, simulate_args.prior);
  add_chain_flags(simulate, simulate_args.chain);
  simulate->add_option("--config", simulate_args.config,
                       "key = value option file");

  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "scan burn-in candidates with the convergence statistic");
  add_data_flags(diagnose, diagnose_args.data);
  diagnose->add_option("--trace", diagnose_args.trace_files,
                       "chain trace CSV (repeat; scans files instead of "
                       "running a sampler)");
  diagnose->add_option("--method", diagnose_args.method,
                       "sampler for the inline run: ab-flat or ab-con")
      ->capture_default_str();
  add_prior_flags(diagnose, diagnose_args.prior);
  add_chain_flags(diagnose, diagnose_args.chain);
  diagnose->add_option("--parameter", diagnose_args.parameter,
                       "scanned component: N, phi, p, or p1dot")
      ->capture_default_str();
  diagnose->add_option("--k-grid", diagnose_args.k_grid,
                       "comma-separated burn-in candidates (default: eight "
                       "evenly spaced)");
  diagnose->add_option("--threshold", diagnose_args.threshold,
                       "acceptance threshold on sqrt R-hat")
      ->capture_default_str();
  diagnose->add_option("--out", diagnose_args.out, "output directory")
      ->capture_default_str();
  diagnose->add_option("--config", diagnose_args.config,
                       "key = value option file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return code;
    }
    return 2;
  }

  try {
    if (estimate->parsed()) {
      apply_config(estimate, estimate_args.config);
      apply_env_seed(estimate, estimate_args.chain);
      return run_estimate(estimate_args, estimate, argc, argv);
    }
    if (simulate->parsed()) {
      apply_config(simulate, simulate_args.config);
      apply_env_seed(simulate, simulate_args.chain);
      return run_simulate(simulate_args, simulate, argc, argv);
    }
    apply_config(diagnose, diagnose_args.config);
    apply_env_seed(diagnose, diagnose_args.chain);
    return run_diagnose(diagnose_args, diagnose, argc, argv);
  } catch (const drs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const drs::ChainFailureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const drs::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const drs::DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const drs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
