#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "wrank/wrank.h"

TEST_CASE("scoregen handles") {
  wrank_scoregen* phi = nullptr;
  REQUIRE(wrank_scoregen_parse("pol:q=3", &phi) == WRANK_OK);
  double v = 0;
  CHECK(wrank_scoregen_value(phi, 0.5, &v) == WRANK_OK);
  CHECK(v == doctest::Approx(0.125));
  CHECK(wrank_scoregen_derivative(phi, 0.5, &v) == WRANK_OK);
  CHECK(v == doctest::Approx(0.75));
  CHECK(wrank_scoregen_is_differentiable(phi) == 1);
  size_t needed = 0;
  char buf[4];
  CHECK(wrank_scoregen_describe(phi, buf, sizeof(buf), &needed) == WRANK_OK);
  CHECK(needed == std::strlen("pol:q=3") + 1);
  CHECK(std::string(buf) == "pol");
  wrank_scoregen_free(phi);

  CHECK(wrank_scoregen_parse("nonsense", &phi) == WRANK_INVALID_INPUT);
  CHECK(std::string(wrank_last_error()).find("nonsense") != std::string::npos);
  REQUIRE(wrank_scoregen_parse("median", &phi) == WRANK_OK);
  CHECK(wrank_scoregen_derivative(phi, 0.3, &v) == WRANK_UNSUPPORTED);
  CHECK(wrank_scoregen_value(phi, 2.0, &v) == WRANK_DOMAIN);
  wrank_scoregen_free(phi);
  wrank_scoregen_free(nullptr);
}

TEST_CASE("rank functions on raw arrays") {
  const double pos[] = {2, 4}, neg[] = {1, 3};
  double ranks[2];
  REQUIRE(wrank_rank_positives(pos, 2, neg, 2, ranks) == WRANK_OK);
  CHECK(ranks[0] == 2.0);
  CHECK(ranks[1] == 4.0);
  double w = 0, auc = 0, f = 0, lin = 0;
  CHECK(wrank_wilcoxon_statistic(pos, 2, neg, 2, &w) == WRANK_OK);
  CHECK(w == 6.0);
  CHECK(wrank_empirical_auc(pos, 2, neg, 2, &auc) == WRANK_OK);
  CHECK(auc == 0.75);
  CHECK(wrank_pooled_ecdf(pos, 2, neg, 2, 2.5, &f) == WRANK_OK);
  CHECK(f == 0.5);
  wrank_scoregen* mww = nullptr;
  wrank_scoregen_parse("mww", &mww);
  CHECK(wrank_linear_rank_statistic(pos, 2, neg, 2, mww, &lin) == WRANK_OK);
  CHECK(lin == doctest::Approx(1.2));
  CHECK(wrank_empirical_auc(pos, 0, neg, 2, &auc) == WRANK_INVALID_INPUT);
  CHECK(wrank_empirical_auc(nullptr, 2, neg, 2, &auc) == WRANK_INVALID_INPUT);
  CHECK(wrank_wilcoxon_statistic(pos, 2, neg, 2, nullptr) == WRANK_INVALID_INPUT);

  wrank_roc* roc = nullptr;
  REQUIRE(wrank_roc_empirical(pos, 2, neg, 2, &roc) == WRANK_OK);
  CHECK(wrank_roc_size(roc) == 5);
  std::vector<double> a(5), b(5);
  CHECK(wrank_roc_points(roc, a.data(), b.data()) == WRANK_OK);
  CHECK(a[2] == 0.5);
  CHECK(b[2] == 0.5);
  double v = 0;
  CHECK(wrank_roc_auc(roc, &v) == WRANK_OK);
  CHECK(v == 0.75);
  CHECK(wrank_roc_w_phi(roc, mww, 0.5, &v) == WRANK_OK);
  CHECK(v == doctest::Approx(0.625).epsilon(1e-4));
  CHECK(wrank_roc_sup_distance(roc, roc, &v) == WRANK_OK);
  CHECK(v == 0.0);
  CHECK(wrank_roc_beta_at(roc, 0.25, &v) == WRANK_OK);
  CHECK(v == 0.5);
  const auto path = std::filesystem::temp_directory_path() / "wrank_capi_roc.csv";
  CHECK(wrank_roc_write_csv(roc, path.string().c_str()) == WRANK_OK);
  CHECK(wrank_roc_write_csv(roc, "/nonexistent/dir/roc.csv") == WRANK_IO);
  wrank_roc_free(roc);
  wrank_scoregen_free(mww);
}

TEST_CASE("configuration and a smoke experiment") {
  wrank_config* cfg = nullptr;
  REQUIRE(wrank_config_create(&cfg) == WRANK_OK);
  CHECK(wrank_config_set(cfg, "experiment.nope", "1") == WRANK_CONFIG);
  CHECK(wrank_config_load(cfg, "/nonexistent.ini") == WRANK_CONFIG);
  const auto out = std::filesystem::temp_directory_path() / "wrank_capi_run";
  const std::pair<const char*, std::string> settings[] = {
      {"experiment.preset", "loc3"},       {"experiment.phi", "mww; pol:q=3"},
      {"experiment.d", "2"},               {"experiment.n_train", "20"},
      {"experiment.m_train", "20"},        {"experiment.n_test", "100"},
      {"experiment.m_test", "100"},        {"experiment.replications", "2"},
      {"optimizer.iterations", "5"},       {"experiment.output", out.string()},
      {"rate.ladder", "50, 100, 200"},     {"rate.scorers", "3"},
      {"rate.seeds", "2"}};
  for (const auto& [k, v] : settings) REQUIRE(wrank_config_set(cfg, k, v.c_str()) == WRANK_OK);
  CHECK(wrank_config_validate(cfg) == WRANK_OK);
  size_t needed = 0;
  CHECK(wrank_config_resolved(cfg, nullptr, 0, &needed) == WRANK_OK);
  std::string text(needed, '\0');
  CHECK(wrank_config_resolved(cfg, text.data(), text.size(), nullptr) == WRANK_OK);
  CHECK(text.find("preset = loc3") != std::string::npos);

  wrank_result* res = nullptr;
  REQUIRE(wrank_run_experiment(cfg, &res) == WRANK_OK);
  CHECK(wrank_result_replications(res) == 2);
  CHECK(wrank_result_phi_count(res) == 2);
  CHECK(wrank_result_failed_runs(res) == 0);
  CHECK(wrank_result_auc_star(res) > 0.5);
  double auc = -1, first = 0, last = 0;
  CHECK(wrank_result_test_auc(res, 1, 1, &auc) == WRANK_OK);
  CHECK(auc >= 0.0);
  CHECK(wrank_result_test_auc(res, 2, 0, &auc) == WRANK_INVALID_INPUT);
  CHECK(wrank_result_mean_test_auc(res, 0, &auc) == WRANK_OK);
  CHECK(wrank_result_criterion_ends(res, 0, 0, &first, &last) == WRANK_OK);
  CHECK(std::filesystem::exists(out / "roc_grid.csv"));
  wrank_result_free(res);

  wrank_rate* rate = nullptr;
  REQUIRE(wrank_rate_experiment(cfg, &rate) == WRANK_OK);
  CHECK(wrank_rate_seed_count(rate) == 2);
  double slope = 0;
  CHECK(wrank_rate_slope(rate, 0, &slope) == WRANK_OK);
  CHECK(std::isfinite(wrank_rate_median_slope(rate)));
  CHECK(std::filesystem::exists(out / "rate.csv"));
  wrank_rate_free(rate);

  CHECK(wrank_config_set(cfg, "optimizer.step_size", "1e308") == WRANK_OK);
  REQUIRE(wrank_run_experiment(cfg, &res) == WRANK_PARTIAL_FAILURE);
  CHECK(wrank_result_failed_runs(res) == 4);
  wrank_result_free(res);
  wrank_config_free(cfg);
}

namespace {

void count_check(const char*, int passed, const char*, void* user) {
  auto* counts = static_cast<int*>(user);
  ++counts[passed ? 0 : 1];
}

}  // namespace

TEST_CASE("self checks") {
  int counts[2] = {0, 0};
  int failed = -1;
  CHECK(wrank_run_checks(3, count_check, counts, &failed) == WRANK_OK);
  CHECK(failed == 0);
  CHECK(counts[0] >= 7);
  CHECK(counts[1] == 0);
  CHECK(std::string(wrank_version()) == "0.1.0");
}
