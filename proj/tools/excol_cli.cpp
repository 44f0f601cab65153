#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "excol/coloring.hpp"
#include "excol/graph.hpp"
#include "excol/instances.hpp"
#include "excol/planting.hpp"
#include "excol/recovery.hpp"
#include "excol/report.hpp"
#include "excol/rng.hpp"
#include "excol/spectral.hpp"

// Exit codes: 0 success, 1 input error, 2 algorithmic failure.

namespace {

using excol::Graph;
using excol::Partition;
using nlohmann::json;

struct Options {
  std::string input;
  std::string host;
  std::string partition;
  std::string out;
  std::string mode = "exhaustive";
  std::string kind = "regular";
  std::string pi;
  int k = 3;
  double d = 0.0;
  double gamma = 0.05;
  double tau = 0.5;
  double sigma = 0.5;
  double lambda = 0.3;
  double eta = 0.1;
  double net_resolution = 0.3;
  int rank_cap = 8;
  int max_candidates = 20000;
  std::uint64_t seed = 0;
  int n = 0;
  int n1 = 0, n2 = 0, d1 = 0;
  int ni = 0, nc = 0, dcross = 0, dinner = 0;
  double eps = 0.05;
};

excol::RecoveryParams recovery_params(const Options& opt) {
  excol::RecoveryParams params;
  params.lambda = opt.lambda;
  params.eta = opt.eta;
  params.net_resolution = opt.net_resolution;
  params.rank_cap = opt.rank_cap;
  params.max_candidates = opt.max_candidates;
  params.seed = opt.seed;
  if (opt.mode == "heuristic") {
    params.mode = excol::RecoveryMode::Heuristic;
  } else if (opt.mode == "exhaustive") {
    params.mode = excol::RecoveryMode::Exhaustive;
  } else {
    throw CLI::ValidationError("--mode must be exhaustive or heuristic");
  }
  return params;
}

Eigen::VectorXd parse_pi(const std::string& text) {
  std::vector<double> values;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) values.push_back(std::stod(token));
      token.clear();
    } else {
      token += c;
    }
  }
  Eigen::VectorXd pi(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) pi[i] = values[i];
  return pi;
}

excol::ModelMatrix balanced_model(int k) {
  excol::ModelMatrix m;
  m.entries = Eigen::MatrixXd::Constant(k, k, 1.0 / (k - 1));
  m.entries.diagonal().setZero();
  m.stationary = Eigen::VectorXd::Constant(k, 1.0 / k);
  return m;
}

void emit(const Options& opt, json report,
          std::chrono::steady_clock::time_point started) {
  report["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  report["seed"] = opt.seed;
  const std::string text = report.dump(2);
  if (opt.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(opt.out);
    if (!f) throw std::runtime_error("cannot write " + opt.out);
    f << text << "\n";
  }
}

json spectrum_json(const Graph& g) {
  const excol::SpectralDecomposition spec =
      excol::eig_sym(g.normalized_adjacency());
  json j;
  j["n"] = g.num_vertices();
  j["lambda_2"] = spec.values.size() > 1 ? spec.values[1] : 0.0;
  j["lambda_3"] = spec.values.size() > 2 ? spec.values[2] : 0.0;
  j["lambda_min"] = spec.values[spec.n() - 1];
  std::vector<double> values(spec.values.data(),
                             spec.values.data() + spec.values.size());
  j["eigenvalues"] = values;
  return j;
}

int run_gen(const Options& opt) {
  const auto started = std::chrono::steady_clock::now();
  Graph g;
  json extra;
  if (opt.kind == "regular") {
    g = excol::random_regular(opt.n, static_cast<int>(opt.d), opt.seed);
  } else if (opt.kind == "sbm") {
    excol::ModelMatrix m = opt.pi.empty()
                               ? balanced_model(opt.k)
                               : excol::model_3_from_pi(parse_pi(opt.pi));
    excol::SbmInstance inst =
        excol::sbm_from_model(m, opt.n, opt.d, opt.seed);
    g = inst.graph;
    extra["model_distance"] = inst.model_distance;
    extra["partition"] = inst.partition.chi;
    if (!opt.partition.empty()) {
      excol::save_partition(inst.partition, opt.partition);
    }
  } else if (opt.kind == "biregular") {
    g = excol::biregular_random(opt.n1, opt.n2, opt.d1, opt.seed);
  } else if (opt.kind == "blowup") {
    excol::ModelMatrix m = excol::model_3_from_pi(parse_pi(opt.pi));
    Graph base = excol::load_graph(opt.input);
    excol::BlowupInstance inst =
        excol::blowup_instance(m, base, opt.eps, opt.seed);
    g = inst.graph;
    extra["lambda_2"] = inst.lambda2;
    extra["multipliers"] = inst.r;
  } else if (opt.kind == "lambda3") {
    Graph base = excol::load_graph(opt.input);
    g = excol::lambda3_instance(base, opt.seed, opt.eps);
  } else if (opt.kind == "planted-iset") {
    g = excol::planted_independent_set(opt.ni, opt.nc, opt.dcross, opt.dinner,
                                       opt.seed);
  } else {
    throw CLI::ValidationError("unknown --kind " + opt.kind);
  }
  json report;
  report["command"] = "gen";
  report["kind"] = opt.kind;
  report["n"] = g.num_vertices();
  report["m"] = g.num_edges();
  report["extra"] = std::move(extra);
  if (!opt.out.empty()) {
    excol::save_graph(g, opt.out);
    report["written"] = opt.out;
    Options console = opt;
    console.out.clear();
    emit(console, std::move(report), started);
  } else {
    std::cout << excol::format_edge_list(g);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral coloring and partition recovery toolkit"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed, "64-bit master seed");
    sub->add_option("--out", opt.out, "output path (JSON report or graph)");
  };
  const auto add_recovery = [&](CLI::App* sub) {
    sub->add_option("--lambda", opt.lambda);
    sub->add_option("--eta", opt.eta);
    sub->add_option("--net-resolution", opt.net_resolution);
    sub->add_option("--rank-cap", opt.rank_cap);
    sub->add_option("--max-candidates", opt.max_candidates);
    sub->add_option("--mode", opt.mode, "exhaustive|heuristic");
  };

  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--kind", opt.kind,
                  "regular|sbm|biregular|blowup|lambda3|planted-iset");
  gen->add_option("--n", opt.n);
  gen->add_option("--d", opt.d);
  gen->add_option("--k", opt.k);
  gen->add_option("--pi", opt.pi, "comma separated stationary distribution");
  gen->add_option("--n1", opt.n1);
  gen->add_option("--n2", opt.n2);
  gen->add_option("--d1", opt.d1);
  gen->add_option("--ni", opt.ni);
  gen->add_option("--nc", opt.nc);
  gen->add_option("--dcross", opt.dcross);
  gen->add_option("--dinner", opt.dinner);
  gen->add_option("--eps", opt.eps);
  gen->add_option("--input", opt.input, "base graph for blowup/lambda3");
  gen->add_option("--partition", opt.partition,
                  "where to write the planted partition");
  add_common(gen);

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue report");
  spectrum->add_option("--input", opt.input)->required();
  add_common(spectrum);

  CLI::App* rank = app.add_subcommand("rank-check",
                                      "threshold rank inequality report");
  rank->add_option("--input", opt.input)->required();
  rank->add_option("--tau", opt.tau);
  rank->add_option("--sigma", opt.sigma);
  add_common(rank);

  CLI::App* color = app.add_subcommand("color", "k-coloring pipeline");
  color->add_option("--input", opt.input)->required();
  color->add_option("--k", opt.k);
  add_recovery(color);
  add_common(color);

  CLI::App* color3 = app.add_subcommand("color3", "3-coloring pipeline");
  color3->add_option("--input", opt.input)->required();
  color3->add_option("--gamma", opt.gamma);
  add_recovery(color3);
  add_common(color3);

  CLI::App* iset = app.add_subcommand("indep-set",
                                      "spectral independent set search");
  iset->add_option("--input", opt.input)->required();
  iset->add_option("--gamma", opt.gamma);
  add_recovery(iset);
  add_common(iset);

  CLI::App* plant = app.add_subcommand("plant", "random k-color planting");
  plant->add_option("--host", opt.host)->required();
  plant->add_option("--k", opt.k);
  plant->add_option("--partition", opt.partition,
                    "where to write the planted partition");
  add_common(plant);

  CLI::App* rpartial = app.add_subcommand("recover-partial",
                                          "candidate partition list");
  rpartial->add_option("--input", opt.input)->required();
  rpartial->add_option("--k", opt.k);
  rpartial->add_option("--d", opt.d)->required();
  rpartial->add_option("--partition", opt.partition,
                       "reference partition for agreement metrics");
  add_recovery(rpartial);
  add_common(rpartial);

  CLI::App* rfull = app.add_subcommand("recover-full",
                                       "full planted-coloring recovery");
  rfull->add_option("--host", opt.host)->required();
  rfull->add_option("--k", opt.k);
  rfull->add_option("--d", opt.d);
  add_recovery(rfull);
  add_common(rfull);

  CLI::App* eval = app.add_subcommand("eval",
                                      "score a partition against a graph");
  eval->add_option("--input", opt.input)->required();
  eval->add_option("--partition", opt.partition)->required();
  add_common(eval);

  CLI11_PARSE(app, argc, argv);
  const auto started = std::chrono::steady_clock::now();

  try {
    if (gen->parsed()) return run_gen(opt);

    if (spectrum->parsed()) {
      json report = spectrum_json(excol::load_graph(opt.input));
      report["command"] = "spectrum";
      emit(opt, std::move(report), started);
      return 0;
    }

    if (rank->parsed()) {
      const Graph g = excol::load_graph(opt.input);
      const Eigen::MatrixXd atil = g.normalized_adjacency();
      const excol::RankReport r =
          excol::verify_rank_inequality(atil, excol::eig_sym(atil), opt.tau,
                                        opt.sigma);
      json report = json::parse(excol::to_json(r));
      report["command"] = "rank-check";
      emit(opt, std::move(report), started);
      return r.holds ? 0 : 2;
    }

    if (color->parsed() || color3->parsed()) {
      const Graph g = excol::load_graph(opt.input);
      const excol::ColoringResult result =
          color->parsed()
              ? excol::color_expander(g, opt.k, recovery_params(opt))
              : excol::color_3_expander(g, opt.gamma, recovery_params(opt));
      json report = json::parse(excol::to_json(result));
      report["command"] = color->parsed() ? "color" : "color3";
      report["spectrum"] = spectrum_json(g);
      emit(opt, std::move(report), started);
      return 0;
    }

    if (iset->parsed()) {
      const Graph g = excol::load_graph(opt.input);
      const std::vector<int> set = excol::find_independent_set(
          g, opt.gamma, opt.lambda, opt.rank_cap, recovery_params(opt));
      json report;
      report["command"] = "indep-set";
      report["set"] = set;
      report["size"] = set.size();
      report["fraction"] = static_cast<double>(set.size()) / g.num_vertices();
      emit(opt, std::move(report), started);
      return 0;
    }

    if (plant->parsed()) {
      const Graph host = excol::load_graph(opt.host);
      const excol::PlantedInstance inst =
          excol::plant_k_coloring(host, opt.k, opt.seed);
      if (!opt.partition.empty()) {
        excol::save_partition(inst.planted, opt.partition);
      }
      if (!opt.out.empty()) {
        excol::save_graph(inst.graph, opt.out);
        json report;
        report["command"] = "plant";
        report["d"] = inst.d;
        report["removed_edges"] = host.num_edges() - inst.graph.num_edges();
        report["written"] = opt.out;
        Options console = opt;
        console.out.clear();
        emit(console, std::move(report), started);
      } else {
        std::cout << excol::format_edge_list(inst.graph);
      }
      return 0;
    }

    if (rpartial->parsed()) {
      const Graph g = excol::load_graph(opt.input);
      const excol::CandidateList list = excol::recover_partial_list(
          g, opt.d, opt.k, recovery_params(opt));
      std::optional<Partition> reference;
      if (!opt.partition.empty()) {
        reference = excol::load_partition(opt.partition, g.num_vertices());
      }
      json report = json::parse(excol::to_json(
          list, reference ? &*reference : nullptr));
      report["command"] = "recover-partial";
      emit(opt, std::move(report), started);
      return 0;
    }

    if (rfull->parsed()) {
      const Graph host = excol::load_graph(opt.host);
      const excol::PlantedInstance inst =
          excol::plant_k_coloring(host, opt.k, opt.seed);
      const excol::RecoverFullResult result =
          excol::recover_full(inst, recovery_params(opt));
      json report = json::parse(excol::to_json(result));
      report["command"] = "recover-full";
      if (result.partition) {
        report["agreement"] =
            excol::permutation_match(inst.planted, *result.partition)
                .agreement;
      }
      emit(opt, std::move(report), started);
      return result.partition ? 0 : 2;
    }

    if (eval->parsed()) {
      const Graph g = excol::load_graph(opt.input);
      const Partition p =
          excol::load_partition(opt.partition, g.num_vertices());
      const excol::ColoringQuality quality = excol::coloring_quality(g, p);
      json report;
      report["command"] = "eval";
      report["delta_vertex_cover"] = quality.delta_vertex_cover;
      report["delta_vertex_cover_volume"] = quality.delta_vertex_cover_volume;
      report["spectrum"] = spectrum_json(g);
      emit(opt, std::move(report), started);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
