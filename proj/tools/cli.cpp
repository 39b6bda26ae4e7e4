#include "cli.hpp"

#include "mdgm/experiments.hpp"
#include "mdgm/kernels.hpp"
#include "mdgm/samplers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#ifndef MDGM_VERSION
#define MDGM_VERSION "0.0.0"
#endif
#ifndef MDGM_BUILD_TYPE
#define MDGM_BUILD_TYPE "unknown"
#endif

namespace mdgm::cli {

using nlohmann::json;

std::string version_string() {
  std::ostringstream os;
  os << "mdgm " << MDGM_VERSION << " (" << MDGM_BUILD_TYPE << ", " << __VERSION__
     << ", kernels: " << kernels::to_string(kernels::active_isa()) << ")";
  return os.str();
}

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw UsageError("empty item in list '" + s + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw UsageError(flag + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

std::vector<ModelKind> parse_models(const std::string& s) {
  std::vector<ModelKind> out;
  for (const auto& item : split_list(s)) {
    try {
      out.push_back(model_from_string(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

struct GraphFlags {
  std::string graph;
  std::string id_map;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string order = "first";
};

void add_graph_flags(CLI::App* sub, GraphFlags& g) {
  sub->add_option("--graph", g.graph, "edge list CSV i,j[,w]");
  sub->add_option("--id-map", g.id_map, "unit_id,index CSV naming the graph vertices");
  sub->add_option("--rows", g.rows, "lattice rows");
  sub->add_option("--cols", g.cols, "lattice columns");
  sub->add_option("--order", g.order, "lattice neighborhood")
      ->check(CLI::IsMember({"first", "second"}));
}

struct LoadedGraph {
  Nug nug;
  IdMap ids;
};

LoadedGraph load_graph(const GraphFlags& g, const CLI::App* sub) {
  const bool file = sub->count("--graph") > 0;
  const bool lattice = sub->count("--rows") > 0 || sub->count("--cols") > 0;
  if (file == lattice) throw UsageError("give either --graph or --rows/--cols");
  LoadedGraph out;
  if (lattice) {
    if (g.rows == 0 || g.cols == 0) throw UsageError("--rows and --cols must both be positive");
    if (sub->count("--id-map")) throw UsageError("--id-map applies to --graph input only");
    out.nug = build_lattice_nug(
        {g.rows, g.cols, g.order == "second" ? NeighborhoodOrder::Second : NeighborhoodOrder::First});
    out.ids = IdMap::identity(out.nug.size());
    return out;
  }
  if (sub->count("--order")) throw UsageError("--order applies to lattice input only");
  if (!g.id_map.empty()) {
    out.ids = IdMap::load(g.id_map);
    out.nug = load_nug(g.graph, out.ids.size());
  } else {
    out.nug = load_nug(g.graph);
    out.ids = IdMap::identity(out.nug.size());
  }
  return out;
}

struct McmcFlags {
  std::size_t iters = 5000;
  std::size_t burnin = 1000;
  std::uint64_t seed = 0;
  double beta_max = 1.0;
  double beta_sd = 0.05;
  std::size_t cftp_cap = std::size_t{1} << 20;
  std::string cftp_method = "heat-bath";
};

void add_mcmc_flags(CLI::App* sub, McmcFlags& m) {
  sub->add_option("--iters", m.iters, "total MCMC iterations");
  sub->add_option("--burnin", m.burnin, "iterations discarded before recording");
  sub->add_option("--seed", m.seed, "random seed");
  sub->add_option("--beta-max", m.beta_max, "upper end of the uniform prior on beta");
  sub->add_option("--beta-sd", m.beta_sd, "random-walk proposal sd for beta");
  sub->add_option("--cftp-cap", m.cftp_cap, "update budget of each perfect draw");
  sub->add_option("--cftp-method", m.cftp_method,
                  "perfect sampler for exact-mrf: heat-bath, or cluster for beta past criticality")
      ->check(CLI::IsMember({"heat-bath", "cluster"}));
}

McmcConfig to_mcmc(const McmcFlags& m) {
  McmcConfig c;
  c.total_iterations = m.iters;
  c.burn_in = m.burnin;
  c.seed = m.seed;
  c.priors.beta_max = m.beta_max;
  c.beta_proposal_sd = m.beta_sd;
  c.cftp_step_cap = m.cftp_cap;
  c.cftp_method = cftp_method_from_string(m.cftp_method);
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

json option_value(const CLI::Option* opt) {
  const auto& res = opt->results();
  if (opt->count() > 0 && !res.empty()) {
    if (opt->get_expected_min() == 0) return true;
    return res.back();
  }
  if (opt->get_expected_min() == 0) return false;
  return opt->get_default_str();
}

struct Invocation {
  std::string command;
  std::string config_path;
  json config;
  std::vector<std::string> explicit_flags;
};

json manifest(const CLI::App* sub, const Invocation& inv) {
  json m;
  m["command"] = inv.command;
  m["version"] = version_string();
  m["config_file"] = inv.config_path.empty() ? json(nullptr) : json(inv.config_path);
  m["config"] = inv.config;
  m["explicit_flags"] = inv.explicit_flags;
  json resolved = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    resolved[name] = option_value(opt);
  }
  m["resolved"] = resolved;
  return m;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

fs::path prepare_out(const std::string& out) {
  fs::path p(out);
  fs::create_directories(p);
  return p;
}

// Turns the JSON config into flags placed ahead of the command-line ones, so
// later flags win.
std::vector<std::string> config_to_args(const json& cfg, CLI::App* sub) {
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  std::vector<std::string> args;
  for (const auto& [key, value] : cfg.items()) {
    CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (!opt) throw UsageError("unknown config key '" + key + "' for " + sub->get_name());
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (opt->get_expected_min() != 0) throw UsageError("config key '" + key + "' takes a value");
      if (value.get<bool>()) args.push_back(flag);
      continue;
    }
    if (opt->get_expected_min() == 0) throw UsageError("config key '" + key + "' must be boolean");
    std::string text;
    auto scalar = [&](const json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number()) return v.dump();
      throw UsageError("config key '" + key + "' has an unsupported value");
    };
    if (value.is_array()) {
      for (std::size_t k = 0; k < value.size(); ++k) text += (k ? "," : "") + scalar(value[k]);
    } else {
      text = scalar(value);
    }
    args.push_back(flag);
    args.push_back(text);
  }
  return args;
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian mixtures of directed graphical models for binary spatial fields", "mdgm"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();

  std::string config_path;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file of flag values; flags override it");
  };

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulation study on a lattice");
  std::size_t rows = 16, cols = 16;
  std::string order = "first";
  std::string beta_grid = "0.1,0.15,0.2,0.25,0.3";
  std::string eta_list = "0.05";
  std::string obs_list = "fixed:2";
  std::size_t reps = 100;
  std::string sim_models = "mdgm-st,mdgm-rooted,mdgm-ao,amrf,exact-mrf";
  McmcFlags sim_mcmc;
  sim_mcmc.iters = 2000;
  std::size_t threads = 1;
  bool timing = false;
  std::string out_dir;
  sim->add_option("--rows", rows, "lattice rows");
  sim->add_option("--cols", cols, "lattice columns");
  sim->add_option("--order", order, "lattice neighborhood")->check(CLI::IsMember({"first", "second"}));
  sim->add_option("--beta-grid", beta_grid, "comma-separated true beta values");
  sim->add_option("--eta", eta_list, "comma-separated noise levels (eta0 = eta, eta1 = 1 - eta)");
  sim->add_option("--obs", obs_list, "comma-separated schemes fixed:<m> or poisson:<lambda>");
  sim->add_option("--reps", reps, "replications per setting");
  sim->add_option("--models", sim_models, "comma-separated models");
  add_mcmc_flags(sim, sim_mcmc);
  sim->add_option("--threads", threads, "worker threads");
  sim->add_flag("--timing", timing, "fill the elapsed_s column (breaks byte-identical output)");
  sim->add_option("--out", out_dir, "output directory; CSV to stdout when absent");
  add_config(sim);

  // fit
  auto* fit = app.add_subcommand("fit", "run one MCMC chain on observed ratings");
  GraphFlags fit_graph;
  std::string data;
  std::string fit_model = "mdgm-st";
  McmcFlags fit_mcmc;
  add_graph_flags(fit, fit_graph);
  fit->add_option("--data", data, "ratings CSV unit_id,value");
  fit->add_option("--model", fit_model, "model");
  add_mcmc_flags(fit, fit_mcmc);
  fit->add_option("--out", out_dir, "output directory");
  add_config(fit);

  // crossval
  auto* cv = app.add_subcommand("crossval", "holdout cross-validation of rating predictions");
  GraphFlags cv_graph;
  std::string cv_models = "mdgm-st,amrf";
  std::size_t holdout = 60, iterations = 100;
  McmcFlags cv_mcmc;
  add_graph_flags(cv, cv_graph);
  cv->add_option("--data", data, "ratings CSV unit_id,value");
  cv->add_option("--models", cv_models, "comma-separated models");
  cv->add_option("--holdout", holdout, "rated units withheld per iteration");
  cv->add_option("--iterations", iterations, "cross-validation iterations");
  add_mcmc_flags(cv, cv_mcmc);
  cv->add_option("--threads", threads, "worker threads");
  cv->add_option("--out", out_dir, "output directory; CSV to stdout when absent");
  add_config(cv);

  // count
  auto* count = app.add_subcommand("count", "exact spanning-tree or acyclic-orientation counts");
  GraphFlags count_graph;
  std::string what = "trees";
  std::size_t max_edges = 24;
  add_graph_flags(count, count_graph);
  count->add_option("--what", what, "trees or orientations")
      ->check(CLI::IsMember({"trees", "orientations"}));
  count->add_option("--max-edges", max_edges, "edge cap for orientation counting");
  add_config(count);

  Invocation inv;
  try {
    std::vector<std::string> full = args;
    // Config values go in right after the subcommand name.
    if (!full.empty() && full[0].rfind("-", 0) != 0) {
      CLI::App* sub = app.get_subcommand_no_throw(full[0]);
      for (std::size_t k = 1; sub && k < full.size(); ++k) {
        std::string path;
        if (full[k] == "--config" && k + 1 < full.size()) path = full[k + 1];
        else if (full[k].rfind("--config=", 0) == 0) path = full[k].substr(9);
        if (path.empty()) continue;
        std::ifstream f(path);
        if (!f) throw UsageError("cannot open config file '" + path + "'");
        try {
          inv.config = json::parse(f);
        } catch (const json::exception& e) {
          throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
        }
        inv.config_path = path;
        auto injected = config_to_args(inv.config, sub);
        full.insert(full.begin() + 1, injected.begin(), injected.end());
        break;
      }
      for (std::size_t k = 1; k < args.size(); ++k) {
        if (args[k].rfind("--", 0) == 0) inv.explicit_flags.push_back(args[k].substr(2));
      }
    }
    std::vector<std::string> reversed(full.rbegin(), full.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (sim->parsed()) {
      inv.command = "simulate";
      const auto betas = parse_doubles(beta_grid, "--beta-grid");
      const auto etas = parse_doubles(eta_list, "--eta");
      std::vector<ObsScheme> schemes;
      for (const auto& s : split_list(obs_list)) {
        try {
          schemes.push_back(ObsScheme::parse(s));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      if (rows == 0 || cols == 0) throw UsageError("--rows and --cols must be positive");
      const McmcConfig mcmc = to_mcmc(sim_mcmc);
      std::vector<SimConfig> grid;
      for (const auto& obs : schemes) {
        for (double eta : etas) {
          for (double beta : betas) {
            SimConfig c;
            c.lattice = {rows, cols,
                         order == "second" ? NeighborhoodOrder::Second : NeighborhoodOrder::First};
            c.beta_true = beta;
            c.eta = eta;
            c.obs = obs;
            c.replications = reps;
            c.mcmc = mcmc;
            c.models = parse_models(sim_models);
            try {
              c.validate();
            } catch (const std::invalid_argument& e) {
              throw UsageError(e.what());
            }
            grid.push_back(std::move(c));
          }
        }
      }
      StudyOptions opts;
      opts.seed = sim_mcmc.seed;
      opts.threads = threads;
      const auto table = run_simulation_study(grid, opts);
      std::ostringstream csv;
      write_study_csv(csv, table, timing);
      std::size_t failed = 0;
      for (const auto& r : table) failed += r.failed;
      if (out_dir.empty()) {
        out << csv.str();
      } else {
        const auto dir = prepare_out(out_dir);
        write_file(dir / "study.csv", csv.str());
        write_file(dir / "manifest.json", manifest(sim, inv).dump(2) + "\n");
        out << "wrote " << table.size() << " rows to " << (dir / "study.csv").string() << "\n";
      }
      if (failed > 0) err << "warning: " << failed << " replication(s) failed\n";
      return 0;
    }

    if (fit->parsed() || cv->parsed()) {
      CLI::App* sub = fit->parsed() ? fit : cv;
      inv.command = sub->get_name();
      if (sub->count("--data") == 0) throw UsageError("--data is required");
      if (fit->parsed() && out_dir.empty()) throw UsageError("--out is required");
      const auto graph = load_graph(fit->parsed() ? fit_graph : cv_graph, sub);
      const Observations y =
          load_observations(data, graph.nug.size(), &graph.ids);
      if (fit->parsed()) {
        McmcConfig mcmc = to_mcmc(fit_mcmc);
        try {
          mcmc.model = model_from_string(fit_model);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        const PosteriorSamples samples = run_chain(y, graph.nug, mcmc);
        const auto dir = prepare_out(out_dir);
        std::ostringstream jsonl, zcsv, ids;
        write_samples_jsonl(jsonl, samples);
        zcsv << "unit_id,index,posterior_mean_z\n";
        for (Vertex i = 0; i < graph.nug.size(); ++i) {
          double s = 0.0;
          for (const auto& r : samples.records) s += r.z[i];
          zcsv << graph.ids.id(i) << ',' << i << ','
               << format_double(s / static_cast<double>(samples.records.size())) << '\n';
        }
        graph.ids.write(ids);
        write_file(dir / "samples.jsonl", jsonl.str());
        write_file(dir / "posterior_mean_z.csv", zcsv.str());
        write_file(dir / "id_map.csv", ids.str());
        write_file(dir / "manifest.json", manifest(fit, inv).dump(2) + "\n");
        const auto& a = samples.acceptance;
        out << "records: " << samples.records.size() << "\n";
        if (a.dag_proposed) out << "dag acceptance: " << a.dag_accepted << "/" << a.dag_proposed << "\n";
        if (a.beta_proposed) {
          out << "beta acceptance: " << a.beta_accepted << "/" << a.beta_proposed << "\n";
        }
        if (a.eta_stalls) out << "eta stalls: " << a.eta_stalls << "\n";
        return 0;
      }
      const McmcConfig mcmc = to_mcmc(cv_mcmc);
      const auto models = parse_models(cv_models);
      if (holdout == 0 || iterations == 0) {
        throw UsageError("--holdout and --iterations must be positive");
      }
      const auto records =
          cross_validate(y, graph.nug, holdout, iterations, mcmc, models, cv_mcmc.seed, threads);
      std::ostringstream csv;
      write_cv_csv(csv, records);
      if (out_dir.empty()) {
        out << csv.str();
      } else {
        const auto dir = prepare_out(out_dir);
        write_file(dir / "cv.csv", csv.str());
        write_file(dir / "manifest.json", manifest(cv, inv).dump(2) + "\n");
        out << "wrote " << records.size() << " rows to " << (dir / "cv.csv").string() << "\n";
      }
      return 0;
    }

    if (count->parsed()) {
      inv.command = "count";
      const auto graph = load_graph(count_graph, count);
      if (what == "trees") out << count_spanning_trees(graph.nug) << "\n";
      else out << count_acyclic_orientations(graph.nug, max_edges) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mdgm::cli
