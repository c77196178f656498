// Command-line front end: `run`, `rate` and `check`, driven through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "wrank/wrank.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Overrides {
  std::string config_path;
  std::string seed;
  std::string out;
  std::string preset;
  std::vector<std::string> phis;
  std::string test_size;
  std::string replications;
  std::string threads;
  std::string iterations;
  std::string epsilon;
  bool svg = false;
};

int exit_code_for(wrank_status s) {
  switch (s) {
    case WRANK_OK: return kExitOk;
    case WRANK_CONFIG:
    case WRANK_INVALID_INPUT: return kExitConfig;
    default: return kExitFailure;
  }
}

int report(wrank_status s) {
  std::fprintf(stderr, "wrank: %s\n", wrank_last_error());
  return exit_code_for(s);
}

struct ConfigHandle {
  wrank_config* ptr = nullptr;
  ~ConfigHandle() { wrank_config_free(ptr); }
};

// Applies the config file and then the command-line overrides.
wrank_status build_config(const Overrides& o, ConfigHandle& cfg) {
  wrank_status s = wrank_config_create(&cfg.ptr);
  if (s != WRANK_OK) return s;
  if (!o.config_path.empty() && (s = wrank_config_load(cfg.ptr, o.config_path.c_str())) != WRANK_OK) {
    return s;
  }
  auto set = [&](const char* key, const std::string& value) {
    if (s == WRANK_OK && !value.empty()) s = wrank_config_set(cfg.ptr, key, value.c_str());
  };
  set("experiment.seed", o.seed);
  set("experiment.output", o.out);
  set("experiment.preset", o.preset);
  set("experiment.epsilon", o.epsilon);
  set("experiment.replications", o.replications);
  set("experiment.threads", o.threads);
  set("optimizer.iterations", o.iterations);
  set("experiment.n_test", o.test_size);
  set("experiment.m_test", o.test_size);
  if (!o.phis.empty()) {
    std::string joined;
    for (const auto& p : o.phis) joined += (joined.empty() ? "" : ";") + p;
    set("experiment.phi", joined);
  }
  if (o.svg) set("experiment.svg", "true");
  if (s == WRANK_OK) s = wrank_config_validate(cfg.ptr);
  return s;
}

int cmd_run(const Overrides& o) {
  ConfigHandle cfg;
  if (wrank_status s = build_config(o, cfg); s != WRANK_OK) return report(s);
  wrank_result* res = nullptr;
  const wrank_status s = wrank_run_experiment(cfg.ptr, &res);
  if (!res) return report(s);
  std::printf("replications: %d\n", wrank_result_replications(res));
  std::printf("AUC*: %.6f\n", wrank_result_auc_star(res));
  for (int k = 0; k < wrank_result_phi_count(res); ++k) {
    double auc = 0;
    wrank_result_mean_test_auc(res, k, &auc);
    std::printf("phi[%d] mean test AUC: %.6f\n", k, auc);
  }
  const int failed = wrank_result_failed_runs(res);
  wrank_result_free(res);
  if (s == WRANK_PARTIAL_FAILURE) {
    std::fprintf(stderr, "wrank: %d fit(s) failed; see replications.csv\n", failed);
    return kExitFailure;
  }
  return exit_code_for(s);
}

int cmd_rate(const Overrides& o, const std::string& rate_phi) {
  ConfigHandle cfg;
  wrank_status s = build_config(o, cfg);
  if (s == WRANK_OK && !rate_phi.empty()) {
    s = wrank_config_set(cfg.ptr, "rate.phi", rate_phi.c_str());
  }
  if (s != WRANK_OK) return report(s);
  wrank_rate* rate = nullptr;
  if ((s = wrank_rate_experiment(cfg.ptr, &rate)) != WRANK_OK) return report(s);
  for (int k = 0; k < wrank_rate_seed_count(rate); ++k) {
    double slope = 0;
    wrank_rate_slope(rate, k, &slope);
    std::printf("seed %d slope: %.4f\n", k, slope);
  }
  std::printf("median slope: %.4f\n", wrank_rate_median_slope(rate));
  wrank_rate_free(rate);
  return kExitOk;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("%s %s (%s)\n", passed ? "PASS" : "FAIL", name, detail);
}

int cmd_check(std::uint64_t seed) {
  int failed = 0;
  if (wrank_status s = wrank_run_checks(seed, print_check, nullptr, &failed); s != WRANK_OK) {
    return report(s);
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "INI configuration file")->check(CLI::ExistingFile);
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--preset", o.preset, "loc1|loc2|loc3|scale1|scale2|scale3");
  sub->add_option("--epsilon", o.epsilon, "override the preset's epsilon");
  sub->add_option("--test-size", o.test_size, "test sample size per class");
  sub->add_option("--replications", o.replications, "Monte-Carlo replications");
  sub->add_option("--threads", o.threads, "worker threads");
  sub->add_option("--iterations", o.iterations, "gradient ascent iterations");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-statistic bipartite ranking experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wrank_version()));

  Overrides o;
  std::string rate_phi;
  std::uint64_t check_seed = 20240501;

  auto* run = app.add_subcommand("run", "train, test and write CSV outputs");
  add_common(run, o);
  run->add_option("--phi", o.phis, "score-generating function (repeatable)");
  run->add_flag("--svg", o.svg, "also write SVG charts");

  auto* rate = app.add_subcommand("rate", "deviation-rate study");
  add_common(rate, o);
  rate->add_option("--phi", rate_phi, "score-generating function");

  auto* check = app.add_subcommand("check", "run the invariant self-checks");
  check->add_option("--seed", check_seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (run->parsed()) return cmd_run(o);
  if (rate->parsed()) return cmd_rate(o, rate_phi);
  return cmd_check(check_seed);
}
