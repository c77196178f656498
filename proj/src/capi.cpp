#include "wrank/wrank.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "wrank/checks.hpp"
#include "wrank/error.hpp"
#include "wrank/experiment.hpp"
#include "wrank/ranks.hpp"
#include "wrank/roceval.hpp"
#include "wrank/scoregen.hpp"

struct wrank_scoregen {
  wrank::ScoreGen phi;
};
struct wrank_roc {
  wrank::RocCurve curve;
};
struct wrank_config {
  wrank::ExperimentConfig cfg;
};
struct wrank_result {
  wrank::ExperimentResult result;
};
struct wrank_rate {
  wrank::RateResult result;
};

namespace {

thread_local std::string g_last_error;

wrank_status status_of(wrank::ErrorCode code) {
  switch (code) {
    case wrank::ErrorCode::InvalidInput: return WRANK_INVALID_INPUT;
    case wrank::ErrorCode::Domain: return WRANK_DOMAIN;
    case wrank::ErrorCode::Unsupported: return WRANK_UNSUPPORTED;
    case wrank::ErrorCode::NotPositiveDefinite: return WRANK_NOT_POSITIVE_DEFINITE;
    case wrank::ErrorCode::Numerical: return WRANK_NUMERICAL;
    case wrank::ErrorCode::Config: return WRANK_CONFIG;
    case wrank::ErrorCode::Io: return WRANK_IO;
  }
  return WRANK_INTERNAL;
}

template <class F>
wrank_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const wrank::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return WRANK_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw wrank::InvalidInput(std::string(what) + " must not be null");
}

wrank::PooledSample pooled(const double* pos, size_t n, const double* neg, size_t m) {
  if ((n && !pos) || (m && !neg)) throw wrank::InvalidInput("score array must not be null");
  wrank::PooledSample s{{pos, pos + n}, {neg, neg + m}};
  s.validate();
  return s;
}

wrank_status copy_text(const std::string& text, char* buf, size_t size, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buf && size > 0) {
    const size_t count = std::min(size - 1, text.size());
    std::memcpy(buf, text.data(), count);
    buf[count] = '\0';
  }
  return WRANK_OK;
}

const wrank::PhiRun& run_at(const wrank_result* res, int rep, int phi) {
  require(res, "result");
  const auto& reps = res->result.replications;
  if (rep < 0 || static_cast<size_t>(rep) >= reps.size()) {
    throw wrank::InvalidInput("replication index out of range");
  }
  const auto& runs = reps[static_cast<size_t>(rep)].runs;
  if (phi < 0 || static_cast<size_t>(phi) >= runs.size()) {
    throw wrank::InvalidInput("phi index out of range");
  }
  return runs[static_cast<size_t>(phi)];
}

}  // namespace

extern "C" {

const char* wrank_version(void) { return "0.1.0"; }

const char* wrank_last_error(void) { return g_last_error.c_str(); }

wrank_status wrank_scoregen_parse(const char* spec, wrank_scoregen** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new wrank_scoregen{wrank::ScoreGen::parse(spec)};
    return WRANK_OK;
  });
}

void wrank_scoregen_free(wrank_scoregen* phi) { delete phi; }

wrank_status wrank_scoregen_value(const wrank_scoregen* phi, double u, double* out) {
  return guarded([&] {
    require(phi, "phi");
    require(out, "out");
    *out = phi->phi.value(u);
    return WRANK_OK;
  });
}

wrank_status wrank_scoregen_derivative(const wrank_scoregen* phi, double u, double* out) {
  return guarded([&] {
    require(phi, "phi");
    require(out, "out");
    *out = phi->phi.derivative(u);
    return WRANK_OK;
  });
}

int wrank_scoregen_is_differentiable(const wrank_scoregen* phi) {
  return phi && phi->phi.differentiable() ? 1 : 0;
}

wrank_status wrank_scoregen_describe(const wrank_scoregen* phi, char* buf, size_t size,
                                     size_t* needed) {
  return guarded([&] {
    require(phi, "phi");
    return copy_text(phi->phi.to_string(), buf, size, needed);
  });
}

wrank_status wrank_rank_positives(const double* pos, size_t n, const double* neg, size_t m,
                                  double* ranks_out) {
  return guarded([&] {
    require(ranks_out, "ranks_out");
    const auto ranks = wrank::rank_positives(pooled(pos, n, neg, m));
    std::copy(ranks.begin(), ranks.end(), ranks_out);
    return WRANK_OK;
  });
}

wrank_status wrank_linear_rank_statistic(const double* pos, size_t n, const double* neg, size_t m,
                                         const wrank_scoregen* phi, double* out) {
  return guarded([&] {
    require(phi, "phi");
    require(out, "out");
    *out = wrank::linear_rank_statistic(pooled(pos, n, neg, m), phi->phi);
    return WRANK_OK;
  });
}

wrank_status wrank_wilcoxon_statistic(const double* pos, size_t n, const double* neg, size_t m,
                                      double* out) {
  return guarded([&] {
    require(out, "out");
    *out = wrank::wilcoxon_statistic(pooled(pos, n, neg, m));
    return WRANK_OK;
  });
}

wrank_status wrank_empirical_auc(const double* pos, size_t n, const double* neg, size_t m,
                                 double* out) {
  return guarded([&] {
    require(out, "out");
    const auto s = pooled(pos, n, neg, m);
    *out = wrank::empirical_auc(s.positives, s.negatives);
    return WRANK_OK;
  });
}

wrank_status wrank_pooled_ecdf(const double* pos, size_t n, const double* neg, size_t m, double t,
                               double* out) {
  return guarded([&] {
    require(out, "out");
    *out = wrank::pooled_ecdf(pooled(pos, n, neg, m), t);
    return WRANK_OK;
  });
}

wrank_status wrank_roc_empirical(const double* pos, size_t n, const double* neg, size_t m,
                                 wrank_roc** out) {
  return guarded([&] {
    require(out, "out");
    const auto s = pooled(pos, n, neg, m);
    *out = new wrank_roc{wrank::empirical_roc(s.positives, s.negatives)};
    return WRANK_OK;
  });
}

void wrank_roc_free(wrank_roc* roc) { delete roc; }

size_t wrank_roc_size(const wrank_roc* roc) { return roc ? roc->curve.points().size() : 0; }

wrank_status wrank_roc_points(const wrank_roc* roc, double* alpha, double* beta) {
  return guarded([&] {
    require(roc, "roc");
    require(alpha, "alpha");
    require(beta, "beta");
    const auto& pts = roc->curve.points();
    for (size_t k = 0; k < pts.size(); ++k) {
      alpha[k] = pts[k].alpha;
      beta[k] = pts[k].beta;
    }
    return WRANK_OK;
  });
}

wrank_status wrank_roc_beta_at(const wrank_roc* roc, double alpha, double* out) {
  return guarded([&] {
    require(roc, "roc");
    require(out, "out");
    *out = roc->curve.beta_at(alpha);
    return WRANK_OK;
  });
}

wrank_status wrank_roc_auc(const wrank_roc* roc, double* out) {
  return guarded([&] {
    require(roc, "roc");
    require(out, "out");
    *out = roc->curve.auc();
    return WRANK_OK;
  });
}

wrank_status wrank_roc_sup_distance(const wrank_roc* a, const wrank_roc* b, double* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = wrank::sup_distance(a->curve, b->curve);
    return WRANK_OK;
  });
}

wrank_status wrank_roc_w_phi(const wrank_roc* roc, const wrank_scoregen* phi, double p,
                             double* out) {
  return guarded([&] {
    require(roc, "roc");
    require(phi, "phi");
    require(out, "out");
    *out = wrank::w_phi_from_roc(roc->curve, phi->phi, p);
    return WRANK_OK;
  });
}

wrank_status wrank_roc_write_csv(const wrank_roc* roc, const char* path) {
  return guarded([&] {
    require(roc, "roc");
    require(path, "path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wrank::IoError(std::string("cannot write ") + path);
    roc->curve.write_csv(out);
    if (!out) throw wrank::IoError(std::string("failed writing ") + path);
    return WRANK_OK;
  });
}

wrank_status wrank_config_create(wrank_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new wrank_config{};
    return WRANK_OK;
  });
}

void wrank_config_free(wrank_config* cfg) { delete cfg; }

wrank_status wrank_config_load(wrank_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg, "cfg");
    require(path, "path");
    cfg->cfg.load_file(path);
    return WRANK_OK;
  });
}

wrank_status wrank_config_set(wrank_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "cfg");
    require(key, "key");
    require(value, "value");
    cfg->cfg.set(key, value);
    return WRANK_OK;
  });
}

wrank_status wrank_config_validate(const wrank_config* cfg) {
  return guarded([&] {
    require(cfg, "cfg");
    cfg->cfg.validate();
    return WRANK_OK;
  });
}

wrank_status wrank_config_resolved(const wrank_config* cfg, char* buf, size_t size,
                                   size_t* needed) {
  return guarded([&] {
    require(cfg, "cfg");
    cfg->cfg.validate();
    return copy_text(cfg->cfg.resolved_text(), buf, size, needed);
  });
}

wrank_status wrank_run_experiment(const wrank_config* cfg, wrank_result** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    auto res = std::make_unique<wrank_result>();
    res->result = wrank::run_experiment(cfg->cfg);
    wrank::write_experiment(cfg->cfg, res->result);
    const bool partial = res->result.failed_runs > 0;
    if (partial) {
      g_last_error = std::to_string(res->result.failed_runs) + " fit(s) failed";
    }
    *out = res.release();
    return partial ? WRANK_PARTIAL_FAILURE : WRANK_OK;
  });
}

void wrank_result_free(wrank_result* res) { delete res; }

int wrank_result_replications(const wrank_result* res) {
  return res ? static_cast<int>(res->result.replications.size()) : 0;
}

int wrank_result_phi_count(const wrank_result* res) {
  return res ? static_cast<int>(res->result.aggregates.size()) : 0;
}

int wrank_result_failed_runs(const wrank_result* res) {
  return res ? res->result.failed_runs : 0;
}

double wrank_result_auc_star(const wrank_result* res) {
  return res ? res->result.auc_star : std::nan("");
}

wrank_status wrank_result_test_auc(const wrank_result* res, int rep, int phi, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = run_at(res, rep, phi).test_auc;
    return WRANK_OK;
  });
}

wrank_status wrank_result_mean_test_auc(const wrank_result* res, int phi, double* out) {
  return guarded([&] {
    require(res, "result");
    require(out, "out");
    const auto& aggs = res->result.aggregates;
    if (phi < 0 || static_cast<size_t>(phi) >= aggs.size()) {
      throw wrank::InvalidInput("phi index out of range");
    }
    *out = aggs[static_cast<size_t>(phi)].mean_test_auc;
    return WRANK_OK;
  });
}

wrank_status wrank_result_criterion_ends(const wrank_result* res, int rep, int phi,
                                         double* initial, double* final_value) {
  return guarded([&] {
    require(initial, "initial");
    require(final_value, "final_value");
    const auto& run = run_at(res, rep, phi);
    if (run.trajectory.empty()) throw wrank::InvalidInput("run has no recorded trajectory");
    *initial = run.trajectory.front();
    *final_value = run.trajectory.back();
    return WRANK_OK;
  });
}

wrank_status wrank_rate_experiment(const wrank_config* cfg, wrank_rate** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    auto rate = std::make_unique<wrank_rate>();
    rate->result = wrank::rate_experiment(cfg->cfg);
    wrank::write_rate(cfg->cfg, rate->result);
    *out = rate.release();
    return WRANK_OK;
  });
}

void wrank_rate_free(wrank_rate* rate) { delete rate; }

double wrank_rate_median_slope(const wrank_rate* rate) {
  return rate ? rate->result.median_slope : std::nan("");
}

int wrank_rate_seed_count(const wrank_rate* rate) {
  return rate ? static_cast<int>(rate->result.slopes.size()) : 0;
}

wrank_status wrank_rate_slope(const wrank_rate* rate, int seed, double* out) {
  return guarded([&] {
    require(rate, "rate");
    require(out, "out");
    if (seed < 0 || static_cast<size_t>(seed) >= rate->result.slopes.size()) {
      throw wrank::InvalidInput("seed index out of range");
    }
    *out = rate->result.slopes[static_cast<size_t>(seed)];
    return WRANK_OK;
  });
}

wrank_status wrank_run_checks(uint64_t seed, wrank_check_callback cb, void* user, int* failed) {
  return guarded([&] {
    int bad = 0;
    for (const auto& c : wrank::run_checks(seed)) {
      if (!c.passed) ++bad;
      if (cb) cb(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), user);
    }
    if (failed) *failed = bad;
    return WRANK_OK;
  });
}

}  // extern "C"
