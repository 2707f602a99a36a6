// Command-line front end: exact sampling runs, oracle verification, runtime
// benchmarks, and threshold tables. Exit codes: 0 ok, 1 usage/parameter error,
// 2 verification failure.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rr/batch.hpp"
#include "rr/coloring.hpp"
#include "rr/engine.hpp"
#include "rr/graph.hpp"
#include "rr/hardcore.hpp"
#include "rr/oracle.hpp"
#include "rr/random_cluster.hpp"
#include "rr/spin.hpp"
#include "rr/stats.hpp"

namespace {

using namespace rr;

struct ModelOpts {
  std::string model = "hardcore";
  std::string graph_file;
  std::string family;
  std::string size;
  double lambda = 1.0;
  double beta = 0.1;
  int j = +1;
  double q = 2.0;
  double p = 0.5;
  std::uint32_t k = 3;
  std::string variant = "basic";
  std::string policy = "neighbors";
  bool no_tree_trick = false;
};

struct Instance {
  std::shared_ptr<Graph> graph;
  std::string model;
  std::string params_label;
  std::uint64_t sites = 0;  // vertices for vertex models, edges for rc
  std::function<std::vector<RunRecord>(std::uint64_t, std::uint64_t, std::uint64_t, int)> run_many;
  std::function<ExactDistribution()> oracle;
  double regime_threshold = -1.0;  // largest guaranteed-linear parameter, if any
  double regime_value = 0.0;       // the parameter measured against it
  std::string regime_what;
};

ColoringRejection parse_policy(const std::string& s) {
  if (s == "neighbors") return ColoringRejection::neighbors;
  if (s == "neighbors2") return ColoringRejection::neighbors2;
  if (s == "restart") return ColoringRejection::restart;
  throw std::invalid_argument("unknown rejection policy \"" + s + "\"");
}

std::shared_ptr<Graph> build_graph(const ModelOpts& o) {
  if (!o.graph_file.empty() && !o.family.empty())
    throw std::invalid_argument("give either --graph or --family, not both");
  if (!o.graph_file.empty())
    return std::make_shared<Graph>(Graph::load_edge_list(o.graph_file));
  if (!o.family.empty()) {
    if (o.size.empty()) throw std::invalid_argument("--family requires --size");
    return std::make_shared<Graph>(Graph::generate_family(o.family, o.size));
  }
  throw std::invalid_argument("no instance: give --graph FILE or --family NAME --size N");
}

template <typename M>
auto make_run_many(std::shared_ptr<Graph> graph, M model) {
  return [graph, model = std::move(model)](std::uint64_t base, std::uint64_t count,
                                           std::uint64_t cap, int threads) {
    return run_batch(model, base, count, cap, threads);
  };
}

Instance build_instance(const ModelOpts& o) {
  Instance inst;
  inst.graph = build_graph(o);
  inst.model = o.model;
  const Graph& g = *inst.graph;
  const std::size_t delta = g.max_degree();
  std::ostringstream label;

  if (o.model == "hardcore") {
    if (o.variant != "basic" && o.variant != "improved")
      throw std::invalid_argument("hardcore variant must be basic or improved");
    HardcoreParams params{.lambda = o.lambda,
                          .variant = o.variant == "improved"
                                         ? HardcoreParams::Variant::improved
                                         : HardcoreParams::Variant::basic};
    inst.sites = g.vertex_count();
    inst.run_many = make_run_many(inst.graph, HardcoreSampler(g, params));
    inst.oracle = [graph = inst.graph, lambda = o.lambda] {
      return enumerate_hardcore(*graph, lambda);
    };
    if (delta >= 1)
      inst.regime_threshold = (o.variant == "improved" && delta >= 2) ? threshold_improved(delta)
                                                                      : threshold_basic(delta);
    inst.regime_value = o.lambda;
    inst.regime_what = "lambda";
    label << "lambda=" << o.lambda << ";variant=" << o.variant;
  } else if (o.model == "ising") {
    inst.sites = g.vertex_count();
    inst.run_many = make_run_many(inst.graph, IsingSampler(g, {.beta = o.beta, .j = o.j}));
    inst.oracle = [graph = inst.graph, beta = o.beta, j = o.j] {
      return enumerate_spin(*graph, beta, j, 2);
    };
    if (delta >= 1) inst.regime_threshold = ising_threshold(delta);
    inst.regime_value = o.beta;
    inst.regime_what = "beta";
    label << "beta=" << o.beta << ";j=" << o.j;
  } else if (o.model == "potts") {
    const auto q = static_cast<std::uint32_t>(o.q);
    if (static_cast<double>(q) != o.q)
      throw std::invalid_argument("potts needs an integer q");
    inst.sites = g.vertex_count();
    inst.run_many =
        make_run_many(inst.graph, PottsSampler(g, {.beta = o.beta, .j = o.j, .q = q}));
    inst.oracle = [graph = inst.graph, beta = o.beta, j = o.j, q] {
      return enumerate_spin(*graph, beta, j, q);
    };
    if (delta >= 1) inst.regime_threshold = ising_threshold(delta);
    inst.regime_value = o.beta;
    inst.regime_what = "beta";
    label << "beta=" << o.beta << ";j=" << o.j << ";q=" << q;
  } else if (o.model == "rc") {
    RCParams params{.p = o.p, .q = o.q, .tree_trick = !o.no_tree_trick};
    inst.sites = g.edge_count();
    inst.run_many = make_run_many(inst.graph, RandomClusterSampler(g, params));
    inst.oracle = [graph = inst.graph, p = o.p, q = o.q] { return enumerate_rc(*graph, p, q); };
    if (delta >= 2) inst.regime_threshold = rc_threshold(delta, o.q, params.tree_trick);
    inst.regime_value = o.p;
    inst.regime_what = "p";
    label << "p=" << o.p << ";q=" << o.q << ";tree_trick=" << (params.tree_trick ? 1 : 0);
  } else if (o.model == "coloring") {
    inst.sites = g.vertex_count();
    inst.run_many = make_run_many(
        inst.graph, ColoringSampler(g, {.k = o.k, .rejection = parse_policy(o.policy)}));
    inst.oracle = [graph = inst.graph, k = o.k] { return enumerate_colorings(*graph, k); };
    inst.regime_value = o.k;
    inst.regime_what = "k";
    label << "k=" << o.k << ";policy=" << o.policy;
  } else {
    throw std::invalid_argument("unknown model \"" + o.model + "\"");
  }
  inst.params_label = label.str();
  return inst;
}

void warn_regime(const Instance& inst) {
  if (inst.model == "coloring") {
    std::cerr << "regime-check: no computable cutoff for coloring (the guarantee is asymptotic "
                 "in k against degree^4); sampling stays exact regardless\n";
    return;
  }
  if (inst.regime_threshold <= 0.0) return;
  if (inst.regime_value >= inst.regime_threshold)
    std::cerr << "regime-check: " << inst.regime_what << "=" << inst.regime_value
              << " is outside the guaranteed-linear regime (< " << inst.regime_threshold
              << "); runs stay exact but may be slow\n";
}

std::uint64_t default_seed(const CLI::Option* seed_opt, std::uint64_t seed_flag) {
  if (seed_opt->count() > 0) return seed_flag;
  if (const char* env = std::getenv("RR_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

int cmd_sample(const ModelOpts& opts, std::uint64_t seed, std::uint64_t samples,
               std::uint64_t cap, int threads, const std::string& out_file, bool timing,
               bool regime_check) {
  const Instance inst = build_instance(opts);
  if (regime_check) warn_regime(inst);
  const auto records = inst.run_many(seed, samples, cap, threads);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_file.empty()) {
    file.open(out_file);
    if (!file) throw std::invalid_argument("cannot open output file: " + out_file);
    out = &file;
  }
  std::uint64_t interrupted = 0;
  for (const RunRecord& r : records) {
    if (!r.completed) {
      ++interrupted;
      continue;
    }
    *out << run_record_json(r, timing).dump() << "\n";
  }
  std::cerr << "summary: requested=" << samples << " completed=" << (samples - interrupted)
            << " interrupted=" << interrupted << "\n";
  return 0;
}

int cmd_verify(const ModelOpts& opts, std::uint64_t seed, std::uint64_t samples, double tolerance,
               double significance, int threads, bool dump_oracle) {
  const Instance inst = build_instance(opts);
  const ExactDistribution oracle = inst.oracle();
  if (dump_oracle) std::cout << oracle.to_json().dump() << "\n";
  const auto records = inst.run_many(seed, samples, 0, threads);
  const GofReport report =
      goodness_of_fit(oracle, count_samples(records), tolerance, significance);

  nlohmann::json j = report.to_json();
  j["model"] = inst.model;
  j["params"] = inst.params_label;
  j["support"] = oracle.support_size();
  j["tv_noise_floor"] = tv_noise_mean(oracle, samples);
  std::cout << j.dump() << "\n";
  std::cerr << (report.pass ? "PASS" : "FAIL") << " " << inst.model << " " << inst.params_label
            << " tv=" << report.tv << " p=" << report.p_value << " n=" << report.samples << "\n";
  return report.pass ? 0 : 2;
}

int cmd_bench(const ModelOpts& opts_template, const std::vector<std::string>& sizes,
              std::uint64_t reps, std::uint64_t seed, int threads, double gamma,
              bool regime_check) {
  std::cout << "model,family,n,params,rep,iterations,wall_ns,seed\n";
  std::ostringstream summary;
  std::vector<double> ratios;
  for (const std::string& size : sizes) {
    ModelOpts opts = opts_template;
    opts.size = size;
    const Instance inst = build_instance(opts);
    if (regime_check) warn_regime(inst);
    const auto records = inst.run_many(seed, reps, 0, threads);
    double total_iter = 0.0;
    for (std::uint64_t r = 0; r < records.size(); ++r) {
      const RunRecord& rec = records[r];
      total_iter += static_cast<double>(rec.iterations);
      std::cout << inst.model << "," << opts.family << "," << inst.sites << ","
                << inst.params_label << "," << r << "," << rec.iterations << "," << rec.wall_ns
                << "," << rec.seed << "\n";
    }
    const double mean_iter = total_iter / static_cast<double>(records.size());
    const double ratio = mean_iter / static_cast<double>(inst.sites);
    ratios.push_back(ratio);
    summary << "# size=" << size << " sites=" << inst.sites << " mean_T=" << mean_iter
            << " mean_T_per_site=" << ratio << "\n";
    if (gamma > 0.0) {
      summary << "# size=" << size << " tail:";
      for (int m = 1; m <= 3; ++m) {
        const double cutoff =
            2.0 * static_cast<double>(m) / gamma * static_cast<double>(inst.sites);
        std::uint64_t beyond = 0;
        for (const RunRecord& rec : records)
          beyond += static_cast<double>(rec.iterations) >= cutoff ? 1 : 0;
        summary << " P(T>=" << cutoff << ")=" << static_cast<double>(beyond) / records.size()
                << " bound=" << std::pow(2.0, -m);
      }
      summary << "\n";
    }
  }
  if (ratios.size() > 1) {
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    summary << "# mean_T_per_site spread: max/min=" << (*hi / *lo) << "\n";
  }
  std::cout << summary.str();
  return 0;
}

int cmd_thresholds(std::size_t delta, double q) {
  std::cout << "max_degree " << delta << "\n";
  std::cout << "hardcore_basic " << threshold_basic(delta) << "\n";
  if (delta >= 2) std::cout << "hardcore_improved " << threshold_improved(delta) << "\n";
  std::cout << "ising_beta_max " << ising_threshold(delta) << "\n";
  if (delta >= 2 && q > 1.0) {
    std::cout << "rc_with_tree " << rc_threshold(delta, q, true) << " (q=" << q << ")\n";
    std::cout << "rc_without_tree " << rc_threshold(delta, q, false) << " (q=" << q << ")\n";
  }
  return 0;
}

void add_model_flags(CLI::App* cmd, ModelOpts& o) {
  cmd->add_option("--model", o.model, "hardcore|ising|potts|rc|coloring")->required();
  cmd->add_option("--graph", o.graph_file, "edge list file");
  cmd->add_option("--family", o.family, "path|cycle|grid2d|complete");
  cmd->add_option("--size", o.size, "family size: N, or RxC for grid2d");
  cmd->add_option("--lambda", o.lambda, "hardcore fugacity");
  cmd->add_option("--beta", o.beta, "inverse temperature");
  cmd->add_option("--j", o.j, "+1 ferromagnetic, -1 antiferromagnetic");
  cmd->add_option("--q", o.q, "potts/random-cluster q");
  cmd->add_option("--p", o.p, "random-cluster edge probability");
  cmd->add_option("--k", o.k, "number of colors");
  cmd->add_option("--variant", o.variant, "hardcore variant: basic|improved");
  cmd->add_option("--policy", o.policy, "coloring rejection: neighbors|neighbors2|restart");
  cmd->add_flag("--no-tree-trick", o.no_tree_trick, "disable the spanning-tree add-back");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact sampling for graph models via acceptance/recycling build-up"};
  app.require_subcommand(1);

  ModelOpts opts;
  std::uint64_t seed_flag = 1;
  std::uint64_t samples = 1;
  std::uint64_t cap = 0;
  int threads = 1;
  std::string out_file;
  bool timing = false;
  bool regime_check = false;

  CLI::App* sample = app.add_subcommand("sample", "draw samples, one JSON line each");
  add_model_flags(sample, opts);
  const CLI::Option* sample_seed = sample->add_option("--seed", seed_flag, "base seed");
  sample->add_option("--samples", samples, "number of replications");
  sample->add_option("--cap", cap,
                     "iteration cap per replication (interrupted runs emit nothing)");
  sample->add_option("--out", out_file, "write samples to a file instead of stdout");
  sample->add_option("--parallel", threads, "worker threads");
  sample->add_flag("--timing", timing, "include wall_ns (makes output timing-dependent)");
  sample->add_flag("--regime-check", regime_check, "warn when outside the guaranteed regime");

  ModelOpts vopts;
  std::uint64_t vsamples = 100000;
  double tolerance = 0.01;
  double significance = 1e-3;
  std::uint64_t vseed_flag = 1;
  int vthreads = default_threads();
  CLI::App* verify = app.add_subcommand("verify", "compare sampler output to the exact law");
  add_model_flags(verify, vopts);
  const CLI::Option* verify_seed = verify->add_option("--seed", vseed_flag, "base seed");
  verify->add_option("--samples", vsamples, "replications");
  verify->add_option("--tolerance", tolerance, "total-variation tolerance");
  verify->add_option("--significance", significance, "chi-square significance");
  verify->add_option("--parallel", vthreads, "worker threads");
  bool dump_oracle = false;
  verify->add_flag("--dump-oracle", dump_oracle, "emit the exact distribution as JSON first");

  ModelOpts bopts;
  std::vector<std::string> sizes;
  std::uint64_t reps = 100;
  std::uint64_t bseed_flag = 1;
  int bthreads = default_threads();
  double gamma = 0.0;
  bool bregime = false;
  CLI::App* bench = app.add_subcommand("bench", "runtime scaling, CSV on stdout");
  bopts.family = "cycle";
  add_model_flags(bench, bopts);
  bench->add_option("--sizes", sizes, "family sizes to sweep")->required()->delimiter(',');
  bench->add_option("--reps", reps, "replications per size");
  const CLI::Option* bench_seed = bench->add_option("--seed", bseed_flag, "base seed");
  bench->add_option("--parallel", bthreads, "worker threads");
  bench->add_option("--gamma", gamma, "drift target for the tail-bound table");
  bench->add_flag("--regime-check", bregime, "warn when outside the guaranteed regime");

  std::size_t delta = 3;
  double tq = 2.0;
  CLI::App* thresholds = app.add_subcommand("thresholds", "print guaranteed-regime bounds");
  thresholds->add_option("--max-degree", delta, "maximum degree")->required();
  thresholds->add_option("--q", tq, "random-cluster q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // usage errors are exit code 1, help is 0
  }

  try {
    if (sample->parsed())
      return cmd_sample(opts, default_seed(sample_seed, seed_flag), samples, cap, threads,
                        out_file, timing, regime_check);
    if (verify->parsed())
      return cmd_verify(vopts, default_seed(verify_seed, vseed_flag), vsamples, tolerance,
                        significance, vthreads, dump_oracle);
    if (bench->parsed())
      return cmd_bench(bopts, sizes, reps, default_seed(bench_seed, bseed_flag), bthreads, gamma,
                       bregime);
    if (thresholds->parsed()) return cmd_thresholds(delta, tq);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
