#include "wrank/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "svg.hpp"
#include "wrank/error.hpp"
#include "wrank/random.hpp"
#include "wrank/ranks.hpp"

namespace wrank {
namespace {

constexpr std::size_t kReferenceGrid = 10001;
constexpr std::size_t kRateQuadratureGrid = 20001;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt6(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt_exact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0;
  const std::string t = trim(text);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError("'" + key + "': expected a number, got '" + text + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  long long v = 0;
  const std::string t = trim(text);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
    // Accept integral values written in exponent notation, e.g. 1e4.
    const double d = to_double(key, text);
    if (d != std::floor(d) || std::abs(d) > 9e15) {
      throw ConfigError("'" + key + "': expected an integer, got '" + text + "'");
    }
    return static_cast<long long>(d);
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const long long v = to_integer(key, text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError("'" + key + "': value out of range");
  }
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("'" + key + "': expected a boolean, got '" + text + "'");
}

bool is_auto(const std::string& text) { return trim(text) == "auto"; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += sep;
    out += items[k];
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"experiment.preset", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.preset = trim(v);
       }},
      {"experiment.epsilon", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (is_auto(v)) c.epsilon.reset(); else c.epsilon = to_double(k, v);
       }},
      {"experiment.scorer", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         if (is_auto(v)) {
           c.scorer.reset();
           return;
         }
         try {
           c.scorer = parse_model_kind(trim(v));
         } catch (const Error& e) {
           throw ConfigError(e.what());
         }
       }},
      {"experiment.phi", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.phis = split(v, ';');
       }},
      {"experiment.d", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.d = to_int(k, v);
       }},
      {"experiment.n_train", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.n_train = to_int(k, v);
       }},
      {"experiment.m_train", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.m_train = to_int(k, v);
       }},
      {"experiment.n_test", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.n_test = to_int(k, v);
       }},
      {"experiment.m_test", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.m_test = to_int(k, v);
       }},
      {"experiment.replications",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.replications = to_int(k, v);
       }},
      {"experiment.seed", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         const long long s = to_integer(k, v);
         if (s < 0) throw ConfigError("'" + k + "': seed must be nonnegative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"experiment.output", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.output = trim(v);
       }},
      {"experiment.threads", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.threads = to_int(k, v);
       }},
      {"experiment.svg", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.svg = to_bool(k, v);
       }},
      {"optimizer.iterations", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.ga.iterations = to_int(k, v);
       }},
      {"optimizer.step_size", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (is_auto(v)) c.ga.step_size.reset(); else c.ga.step_size = to_double(k, v);
       }},
      {"optimizer.bandwidth", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (is_auto(v)) c.ga.bandwidth.reset(); else c.ga.bandwidth = to_double(k, v);
       }},
      {"optimizer.bandwidth_scale",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.ga.bandwidth_scale = to_double(k, v);
       }},
      {"optimizer.stop_tolerance",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         if (is_auto(v)) c.ga.stop_tolerance.reset(); else c.ga.stop_tolerance = to_double(k, v);
       }},
      {"optimizer.renormalize", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.ga.renormalize_linear = to_bool(k, v);
       }},
      {"evaluation.grid_size", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         const long long g = to_integer(k, v);
         if (g < 2) throw ConfigError("'" + k + "': grid needs at least two points");
         c.grid_size = static_cast<std::size_t>(g);
       }},
      {"evaluation.selection_metric",
       [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         const std::string t = trim(v);
         if (t == "sup") c.selection_metric = CurveMetric::Sup;
         else if (t == "l1") c.selection_metric = CurveMetric::L1;
         else throw ConfigError("'" + k + "': expected 'sup' or 'l1', got '" + v + "'");
       }},
      {"rate.ladder", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.rate_ladder.clear();
         for (const std::string& item : split(v, ',')) c.rate_ladder.push_back(to_integer(k, item));
       }},
      {"rate.scorers", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.rate_scorers = to_int(k, v);
       }},
      {"rate.seeds", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.rate_seeds = to_int(k, v);
       }},
      {"rate.phi", [](ExperimentConfig& c, const std::string&, const std::string& v) {
         c.rate_phi = trim(v);
       }},
      {"rate.reference_size", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
         c.rate_reference_size = to_integer(k, v);
       }},
  };
  return table;
}

}  // namespace

void ExperimentConfig::set(const std::string& dotted_key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(dotted_key);
  if (it == table.end()) throw ConfigError("unknown configuration key '" + dotted_key + "'");
  it->second(*this, dotted_key, value);
}

void ExperimentConfig::load(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("configuration key '" + section + "' must live inside a [section]");
    }
    for (const auto& [key, leaf] : body) set(section + "." + key, leaf.data());
  }
}

void ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  load(in);
}

double ExperimentConfig::resolved_epsilon() const {
  if (epsilon) return *epsilon;
  return preset_epsilon(preset);
}

ModelKind ExperimentConfig::resolved_scorer() const {
  if (scorer) return *scorer;
  return preset_is_location(preset) ? ModelKind::Linear : ModelKind::QuadraticScale;
}

std::vector<ScoreGen> ExperimentConfig::parsed_phis() const {
  std::vector<ScoreGen> out;
  for (const std::string& spec : phis) {
    try {
      out.push_back(ScoreGen::parse(spec));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  try {
    preset_epsilon(preset);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (epsilon && !(*epsilon >= 0.0)) throw ConfigError("epsilon must be nonnegative");
  if (phis.empty()) throw ConfigError("at least one score-generating function is required");
  for (const ScoreGen& g : parsed_phis()) {
    if (!g.differentiable()) {
      throw ConfigError("'" + g.to_string() + "' has no derivative and cannot be trained");
    }
  }
  if (d < 1) throw ConfigError("d must be >= 1");
  if (n_train < 1 || m_train < 1 || n_test < 1 || m_test < 1) {
    throw ConfigError("all sample sizes must be >= 1");
  }
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (output.empty()) throw ConfigError("output directory must be set");
  try {
    ga.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (grid_size < 2) throw ConfigError("grid_size must be >= 2");
  if (rate_ladder.empty()) throw ConfigError("rate ladder must not be empty");
  for (std::size_t k = 0; k < rate_ladder.size(); ++k) {
    if (rate_ladder[k] < 2 || (k > 0 && rate_ladder[k] <= rate_ladder[k - 1])) {
      throw ConfigError("rate ladder must be strictly increasing with N >= 2");
    }
  }
  if (rate_scorers < 1 || rate_seeds < 1) throw ConfigError("rate scorers and seeds must be >= 1");
  if (rate_reference_size < 2) throw ConfigError("rate reference_size must be >= 2");
  try {
    ScoreGen::parse(rate_phi);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::string ExperimentConfig::resolved_text() const {
  const ModelKind kind = resolved_scorer();
  std::ostringstream out;
  out << "; fully resolved configuration; every default is explicit\n";
  out << "[experiment]\n";
  out << "preset = " << preset << "\n";
  out << "epsilon = " << fmt_exact(resolved_epsilon()) << "\n";
  out << "scorer = " << model_kind_name(kind) << "\n";
  std::vector<std::string> canonical;
  for (const ScoreGen& g : parsed_phis()) canonical.push_back(g.to_string());
  out << "phi = " << join(canonical, "; ") << "\n";
  out << "d = " << d << "\n";
  out << "n_train = " << n_train << "\n";
  out << "m_train = " << m_train << "\n";
  out << "n_test = " << n_test << "\n";
  out << "m_test = " << m_test << "\n";
  out << "replications = " << replications << "\n";
  out << "seed = " << seed << "\n";
  out << "output = " << output << "\n";
  out << "threads = " << threads << "\n";
  out << "svg = " << (svg ? "true" : "false") << "\n";
  out << "\n[optimizer]\n";
  out << "iterations = " << ga.iterations << "\n";
  out << "step_size = " << fmt_exact(ga.resolved_step_size()) << "\n";
  out << "bandwidth = " << fmt_exact(ga.resolved_bandwidth(n_train + m_train)) << "\n";
  out << "bandwidth_scale = " << fmt_exact(ga.bandwidth_scale) << "\n";
  out << "; auto stop tolerance is 1e-6 * (1 + |theta|)\n";
  out << "stop_tolerance = " << (ga.stop_tolerance ? fmt_exact(*ga.stop_tolerance) : "auto")
      << "\n";
  out << "renormalize = " << (ga.renormalize_linear ? "true" : "false") << "\n";
  out << "\n[evaluation]\n";
  out << "grid_size = " << grid_size << "\n";
  out << "selection_metric = " << (selection_metric == CurveMetric::Sup ? "sup" : "l1") << "\n";
  out << "\n[rate]\n";
  std::vector<std::string> ladder;
  for (long long v : rate_ladder) ladder.push_back(std::to_string(v));
  out << "ladder = " << join(ladder, ", ") << "\n";
  out << "scorers = " << rate_scorers << "\n";
  out << "seeds = " << rate_seeds << "\n";
  out << "phi = " << ScoreGen::parse(rate_phi).to_string() << "\n";
  out << "reference_size = " << rate_reference_size << "\n";
  return out.str();
}

SyntheticModel build_model(const ExperimentConfig& cfg) {
  const std::uint64_t structure_seed = derive_seed(cfg.seed, {1});
  if (preset_is_location(cfg.preset)) {
    return SyntheticModel(make_location(cfg.d, cfg.resolved_epsilon(), structure_seed));
  }
  return SyntheticModel(make_scale(cfg.d, cfg.resolved_epsilon(), structure_seed));
}

namespace {

struct OptimalReference {
  RocCurve curve;
  double auc = 0.0;
};

OptimalReference optimal_reference(const ExperimentConfig& cfg, const SyntheticModel& model) {
  if (model.is_location()) {
    const LocationConfig& loc = model.location();
    const double sep = mahalanobis_separation(loc);
    return {RocCurve::from_function([sep](double a) { return gaussian_shift_roc(sep, a); },
                                    kReferenceGrid),
            optimal_auc_location(loc)};
  }
  // No closed form for the scale model: empirical ROC of the optimal scorer on
  // a dedicated reference sample the size of the test sample.
  const FeatureSample ref = model.draw(cfg.n_test, cfg.m_test, derive_seed(cfg.seed, {3}));
  const ScoringModel best = model.optimal_scorer();
  const Eigen::VectorXd pos = best.score_rows(ref.positives);
  const Eigen::VectorXd neg = best.score_rows(ref.negatives);
  RocCurve curve = empirical_roc({pos.data(), static_cast<std::size_t>(pos.size())},
                                 {neg.data(), static_cast<std::size_t>(neg.size())});
  const double auc = curve.auc();
  return {std::move(curve), auc};
}

Replication run_replication(const ExperimentConfig& cfg, const SyntheticModel& model,
                            const std::vector<ScoreGen>& phis, const RocCurve& reference,
                            const std::vector<double>& grid, int index) {
  const std::uint64_t rep_seed = derive_seed(cfg.seed, {2, static_cast<std::uint64_t>(index)});
  const FeatureSample train = model.draw(cfg.n_train, cfg.m_train, derive_seed(rep_seed, {0}));
  const FeatureSample test = model.draw(cfg.n_test, cfg.m_test, derive_seed(rep_seed, {1}));
  const std::uint64_t init_seed = derive_seed(rep_seed, {2});
  const ModelKind kind = cfg.resolved_scorer();

  Replication rep;
  rep.index = index;
  for (const ScoreGen& phi : phis) {
    PhiRun run;
    run.phi = phi.label();
    try {
      const FitResult fitted = fit(train, kind, phi, cfg.ga, init_seed);
      run.params = fitted.model.params();
      run.trajectory = fitted.criterion_trajectory;
      run.stopped_at = fitted.stopped_at;
      run.train_criterion_final =
          run.trajectory.empty() ? std::nan("") : run.trajectory.back();

      const Eigen::VectorXd pos = fitted.model.score_rows(test.positives);
      const Eigen::VectorXd neg = fitted.model.score_rows(test.negatives);
      const std::span<const double> pos_span(pos.data(), static_cast<std::size_t>(pos.size()));
      const std::span<const double> neg_span(neg.data(), static_cast<std::size_t>(neg.size()));
      run.test_auc = empirical_auc(pos_span, neg_span);
      const RocCurve roc = empirical_roc(pos_span, neg_span);
      for (double a : grid) run.grid_beta.push_back(roc.beta_at(a));
      run.distance_to_optimal = cfg.selection_metric == CurveMetric::Sup
                                    ? sup_distance(roc, reference)
                                    : l1_distance_to_optimal(roc, reference);
    } catch (const std::exception& e) {
      run = PhiRun{};
      run.phi = phi.label();
      run.failed = true;
      run.error = e.what();
      run.test_auc = std::nan("");
      run.train_criterion_final = std::nan("");
      run.stopped_at = -1;
    }
    rep.runs.push_back(std::move(run));
  }
  return rep;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const SyntheticModel model = build_model(cfg);
  const std::vector<ScoreGen> phis = cfg.parsed_phis();
  const OptimalReference reference = optimal_reference(cfg, model);

  ExperimentResult result;
  for (std::size_t i = 0; i < cfg.grid_size; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(cfg.grid_size - 1);
    result.grid_alpha.push_back(a);
    if (model.is_location()) {
      result.optimal_beta.push_back(
          gaussian_shift_roc(mahalanobis_separation(model.location()), a));
    } else {
      result.optimal_beta.push_back(reference.curve.beta_at(a));
    }
  }
  result.auc_star = reference.auc;

  result.replications.resize(static_cast<std::size_t>(cfg.replications));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int b = next++; b < cfg.replications; b = next++) {
      result.replications[static_cast<std::size_t>(b)] =
          run_replication(cfg, model, phis, reference.curve, result.grid_alpha, b);
    }
  };
  const int workers = std::min(cfg.threads, cfg.replications);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t k = 0; k < phis.size(); ++k) {
    PhiAggregate agg;
    agg.phi = phis[k].label();
    agg.mean_beta.assign(cfg.grid_size, 0.0);
    agg.std_beta.assign(cfg.grid_size, 0.0);
    double best = std::numeric_limits<double>::infinity();
    double worst = -best;
    double auc_sum = 0.0;
    for (const Replication& rep : result.replications) {
      const PhiRun& run = rep.runs[k];
      if (run.failed) {
        ++result.failed_runs;
        continue;
      }
      ++agg.succeeded;
      auc_sum += run.test_auc;
      for (std::size_t i = 0; i < cfg.grid_size; ++i) agg.mean_beta[i] += run.grid_beta[i];
      const auto idx = static_cast<std::size_t>(rep.index);
      if (run.distance_to_optimal < best) {
        best = run.distance_to_optimal;
        agg.best = idx;
      }
      if (run.distance_to_optimal > worst) {
        worst = run.distance_to_optimal;
        agg.worst = idx;
      }
    }
    if (agg.succeeded > 0) {
      const double count = agg.succeeded;
      agg.mean_test_auc = auc_sum / count;
      for (double& v : agg.mean_beta) v /= count;
      for (const Replication& rep : result.replications) {
        const PhiRun& run = rep.runs[k];
        if (run.failed) continue;
        for (std::size_t i = 0; i < cfg.grid_size; ++i) {
          const double dv = run.grid_beta[i] - agg.mean_beta[i];
          agg.std_beta[i] += dv * dv;
        }
      }
      for (double& v : agg.std_beta) v = std::sqrt(v / count);
    } else {
      agg.mean_test_auc = std::nan("");
      std::fill(agg.mean_beta.begin(), agg.mean_beta.end(), std::nan(""));
      std::fill(agg.std_beta.begin(), agg.std_beta.end(), std::nan(""));
    }
    result.aggregates.push_back(std::move(agg));
  }
  return result;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "'");
  }
}

}  // namespace

void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result) {
  ensure_directory(cfg.output);
  const std::filesystem::path dir(cfg.output);

  open_output(dir / "config.resolved.txt") << cfg.resolved_text();

  {
    auto out = open_output(dir / "replications.csv");
    out << "rep,phi,test_auc,train_criterion_final,stopped_at\n";
    for (const Replication& rep : result.replications) {
      for (const PhiRun& run : rep.runs) {
        out << rep.index << ',' << run.phi << ',' << fmt6(run.test_auc) << ','
            << fmt6(run.train_criterion_final) << ',' << run.stopped_at << '\n';
      }
    }
  }

  {
    auto out = open_output(dir / "roc_grid.csv");
    out << "phi,alpha,mean_beta,std_beta,best_beta,worst_beta,optimal_beta\n";
    for (std::size_t k = 0; k < result.aggregates.size(); ++k) {
      const PhiAggregate& agg = result.aggregates[k];
      const PhiRun* best = nullptr;
      const PhiRun* worst = nullptr;
      if (agg.succeeded > 0) {
        best = &result.replications[agg.best].runs[k];
        worst = &result.replications[agg.worst].runs[k];
      }
      for (std::size_t i = 0; i < result.grid_alpha.size(); ++i) {
        out << agg.phi << ',' << fmt6(result.grid_alpha[i]) << ',' << fmt6(agg.mean_beta[i])
            << ',' << fmt6(agg.std_beta[i]) << ','
            << fmt6(best ? best->grid_beta[i] : std::nan("")) << ','
            << fmt6(worst ? worst->grid_beta[i] : std::nan("")) << ','
            << fmt6(result.optimal_beta[i]) << '\n';
      }
    }
  }

  {
    auto out = open_output(dir / "trajectory.csv");
    out << "rep,phi,step,criterion\n";
    for (const Replication& rep : result.replications) {
      for (const PhiRun& run : rep.runs) {
        for (std::size_t t = 0; t < run.trajectory.size(); ++t) {
          out << rep.index << ',' << run.phi << ',' << t << ',' << fmt6(run.trajectory[t])
              << '\n';
        }
      }
    }
  }

  if (cfg.svg) {
    std::vector<svg::Series> roc_series;
    for (const PhiAggregate& agg : result.aggregates) {
      roc_series.push_back({agg.phi + " (mean)", result.grid_alpha, agg.mean_beta, false});
    }
    roc_series.push_back({"optimal", result.grid_alpha, result.optimal_beta, true});
    svg::write_line_chart((dir / "roc_grid.svg").string(), "Average test ROC curves",
                          "false positive rate", "true positive rate", roc_series);

    std::vector<svg::Series> traj_series;
    for (std::size_t k = 0; k < result.aggregates.size(); ++k) {
      std::vector<double> sum, count;
      for (const Replication& rep : result.replications) {
        const auto& traj = rep.runs[k].trajectory;
        if (traj.size() > sum.size()) {
          sum.resize(traj.size(), 0.0);
          count.resize(traj.size(), 0.0);
        }
        for (std::size_t t = 0; t < traj.size(); ++t) {
          sum[t] += traj[t];
          count[t] += 1.0;
        }
      }
      svg::Series s{result.aggregates[k].phi, {}, {}, false};
      for (std::size_t t = 0; t < sum.size(); ++t) {
        s.x.push_back(static_cast<double>(t));
        s.y.push_back(sum[t] / count[t]);
      }
      traj_series.push_back(std::move(s));
    }
    svg::write_line_chart((dir / "trajectory.svg").string(), "Average train criterion",
                          "iteration", "smoothed criterion", traj_series);
  }
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidInput("a log-log slope needs at least two matching points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw DomainError("log-log slope needs positive values");
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(x.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

RateResult rate_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const SyntheticModel model = build_model(cfg);
  const ScoreGen phi = ScoreGen::parse(cfg.rate_phi);
  const Eigen::Index d = model.dim();
  constexpr double p = 0.5;

  std::vector<Eigen::VectorXd> scorers;
  const std::uint64_t scorer_seed = derive_seed(cfg.seed, {4});
  for (int k = 0; k < cfg.rate_scorers; ++k) {
    scorers.push_back(default_initial_params(ModelKind::Linear, d,
                                             derive_seed(scorer_seed, {static_cast<std::uint64_t>(k)})));
  }

  // Population W_phi per scorer: closed form under the location model,
  // otherwise the normalized statistic on a large reference sample.
  std::vector<double> target;
  if (model.is_location()) {
    for (const Eigen::VectorXd& theta : scorers) {
      const double sep = linear_scorer_separation(model.location(), theta);
      target.push_back(w_phi_from_roc([sep](double a) { return gaussian_shift_roc(sep, a); },
                                      phi, p, kRateQuadratureGrid));
    }
  } else {
    const long long half = cfg.rate_reference_size / 2;
    const FeatureSample ref = model.draw(half, cfg.rate_reference_size - half,
                                         derive_seed(cfg.seed, {6}));
    for (const Eigen::VectorXd& theta : scorers) {
      const Eigen::VectorXd pos = ref.positives * theta;
      const Eigen::VectorXd neg = ref.negatives * theta;
      PooledSample s{{pos.data(), pos.data() + pos.size()}, {neg.data(), neg.data() + neg.size()}};
      target.push_back(linear_rank_statistic(s, phi) / static_cast<double>(s.n()));
    }
  }

  RateResult result;
  for (int r = 0; r < cfg.rate_seeds; ++r) {
    std::vector<double> xs, ys;
    for (long long pool : cfg.rate_ladder) {
      const auto n = static_cast<long long>(std::floor(p * static_cast<double>(pool)));
      const FeatureSample data =
          model.draw(n, pool - n,
                     derive_seed(cfg.seed, {5, static_cast<std::uint64_t>(r),
                                            static_cast<std::uint64_t>(pool)}));
      double worst = 0.0;
      for (std::size_t k = 0; k < scorers.size(); ++k) {
        const Eigen::VectorXd pos = data.positives * scorers[k];
        const Eigen::VectorXd neg = data.negatives * scorers[k];
        PooledSample s{{pos.data(), pos.data() + pos.size()},
                       {neg.data(), neg.data() + neg.size()}};
        const double emp = linear_rank_statistic(s, phi) / static_cast<double>(s.n());
        worst = std::max(worst, std::abs(emp - target[k]));
      }
      result.rows.push_back({r, pool, worst});
      xs.push_back(static_cast<double>(pool));
      ys.push_back(worst);
    }
    if (xs.size() >= 2) result.slopes.push_back(log_log_slope(xs, ys));
  }

  if (!result.slopes.empty()) {
    std::vector<double> sorted = result.slopes;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    result.median_slope =
        sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  } else {
    result.median_slope = std::nan("");
  }
  return result;
}

void write_rate(const ExperimentConfig& cfg, const RateResult& result) {
  ensure_directory(cfg.output);
  const std::filesystem::path dir(cfg.output);
  open_output(dir / "config.resolved.txt") << cfg.resolved_text();
  auto out = open_output(dir / "rate.csv");
  out << "seed,n_pooled,deviation\n";
  for (const RateRow& row : result.rows) {
    out << row.seed_index << ',' << row.pooled_size << ',' << fmt6(row.deviation) << '\n';
  }
}

}  // namespace wrank
