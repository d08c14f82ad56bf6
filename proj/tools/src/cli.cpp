#include "forman_cli/cli.hpp"

#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "forman/curvature.hpp"
#include "forman/distance.hpp"
#include "forman/dynamics.hpp"
#include "forman/error.hpp"
#include "forman/flows.hpp"
#include "forman/generators.hpp"
#include "forman/io.hpp"

namespace forman::cli {

namespace {

enum class WeightScheme { kUnit, kFile, kCombinatorial };

struct InputOptions {
  bool directed = false;
  WeightScheme weights = WeightScheme::kFile;
};

const std::map<std::string, WeightScheme> kWeightSchemes{
    {"unit", WeightScheme::kUnit},
    {"file", WeightScheme::kFile},
    {"combinatorial", WeightScheme::kCombinatorial},
};

const std::map<std::string, FlowVariant> kVariants{
    {"standard", FlowVariant::kStandard},
    {"normalized", FlowVariant::kNormalized},
    {"normalized-plus", FlowVariant::kNormalizedPlus},
    {"reverse", FlowVariant::kReverse},
    {"laplacian", FlowVariant::kLaplacian},
};

WeightedNetwork load_network(const std::string& path, const InputOptions& options,
                             std::ostream& err) {
  EdgeListFormat format;
  format.directed = options.directed;
  format.read_weights = options.weights == WeightScheme::kFile;
  LoadedNetwork loaded = load_edge_list(path, format);
  for (const auto& warning : loaded.warnings) err << "warning: " << path << ": " << warning << '\n';
  if (options.weights == WeightScheme::kCombinatorial) {
    return apply_combinatorial_weights(loaded.network);
  }
  return loaded.network;
}

void add_input_options(CLI::App* cmd, InputOptions& options) {
  cmd->add_flag("--directed", options.directed, "Treat edges as directed");
  cmd->add_option("--weights", options.weights, "Weighting: unit, file or combinatorial")
      ->transform(CLI::CheckedTransformer(kWeightSchemes, CLI::ignore_case))
      ->capture_default_str();
}

struct Settings {
  InputOptions input;
  std::string input_path;
  std::string a_path;
  std::string b_path;
  std::string output;
  std::string node_output;
  double dt = 1.0;
  std::size_t steps = 10;
  double threshold = 0.1;
  std::string kernel = "gaussian";
  std::optional<double> bandwidth;
  std::size_t bins = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  FlowVariant variant = FlowVariant::kStandard;
  std::string model;
  std::size_t n = 0;
  double p = 0.0;
  std::size_t k_ring = 0;
  double beta = 0.0;
  std::size_t m_attach = 1;
  std::size_t sample_size = 0;
};

int run_curvature(const Settings& s, std::ostream& out, std::ostream& err) {
  const WeightedNetwork g = load_network(s.input_path, s.input, err);
  CurvatureOptions options;
  options.threads = s.threads;
  const CurvatureField field = compute_curvature(g, options);
  write_curvature_csv(g, field, s.output);
  if (!s.node_output.empty()) write_node_curvature_csv(g, field, s.node_output);
  out << "edges " << g.edge_count() << '\n';
  return kExitOk;
}

int run_histogram(const Settings& s, std::ostream& out, std::ostream& err) {
  const WeightedNetwork g = load_network(s.input_path, s.input, err);
  CurvatureOptions options;
  options.threads = s.threads;
  options.node_curvature = false;
  emit_histogram(compute_curvature(g, options), s.bins, s.output);
  out << "bins " << s.bins << '\n';
  return kExitOk;
}

int run_map(const Settings& s, std::ostream& out, std::ostream& err) {
  const WeightedNetwork g = load_network(s.input_path, s.input, err);
  CurvatureOptions options;
  options.threads = s.threads;
  options.node_curvature = false;
  const CurvatureMap map = curvature_map(g, compute_curvature(g, options));
  emit_curvature_map(map, g, s.output);
  out << "nodes " << map.size() << '\n';
  return kExitOk;
}

int run_distance(const Settings& s, std::ostream& out, std::ostream& err) {
  const WeightedNetwork a = load_network(s.a_path, s.input, err);
  const WeightedNetwork b = load_network(s.b_path, s.input, err);
  DistanceParams params;
  params.kernel = *parse_kernel(s.kernel);
  params.bandwidth = s.bandwidth;
  params.bins = s.bins;
  params.threads = s.threads;
  out << format_real(graph_distance(a, b, params)) << '\n';
  return kExitOk;
}

int run_flow(const Settings& s, std::ostream& out, std::ostream& err) {
  const WeightedNetwork g = load_network(s.input_path, s.input, err);
  FlowConfig config;
  config.dt = s.dt;
  config.steps = s.steps;
  config.variant = s.variant;
  const FlowResult result = run_flow(g, config);
  const std::vector<std::string> comments{
      "flow dt=" + format_real(s.dt) + " steps=" + std::to_string(s.steps),
      "clamped_edges=" + std::to_string(result.trace.clamped_edges)};
  write_edge_list(s.output, result.network, comments);
  if (result.trace.clamped_edges > 0) {
    err << "warning: " << result.trace.clamped_edges << " edge updates clamped to the weight floor\n";
  }
  out << "mean_curvature " << format_real(result.trace.mean_curvature.back()) << '\n';
  return kExitOk;
}

int run_denoise(const Settings& s, std::ostream& out, std::ostream& err) {
  const WeightedNetwork g = load_network(s.input_path, s.input, err);
  const DenoiseResult result = denoise(g, s.dt, s.steps);
  const std::vector<std::string> comments{"denoise dt=" + format_real(s.dt) +
                                          " steps=" + std::to_string(s.steps)};
  write_edge_list(s.output, result.network, comments);
  if (!result.correction_small) {
    err << "warning: correction not small against the weights (max relative "
        << format_real(result.max_relative_correction) << ")\n";
  }
  out << "denoising_level " << format_real(result.denoising_level) << '\n';
  return kExitOk;
}

int run_changes(const Settings& s, std::ostream& out, std::ostream& err) {
  const WeightedNetwork a = load_network(s.a_path, s.input, err);
  const WeightedNetwork b = load_network(s.b_path, s.input, err);
  const SnapshotPair pair = align_edges(a, b);
  ChangeParams params;
  params.dt = s.dt;
  params.steps = s.steps;
  params.threshold = s.threshold;
  const ChangeReport report = detect_changes(pair, params);
  write_change_report(pair, report, s.output);
  out << "shared " << report.shared.size() << " flagged " << report.flagged.size()
      << " removed " << report.removed.size() << " added " << report.added.size() << '\n';
  return kExitOk;
}

int run_generate(const Settings& s, std::ostream& out, std::ostream&) {
  GeneratorSpec spec;
  spec.seed = s.seed;
  if (s.model == "er") {
    spec.model = ErdosRenyi{s.n, s.p};
  } else if (s.model == "ws") {
    spec.model = WattsStrogatz{s.n, s.k_ring, s.beta};
  } else {
    spec.model = AlbertBarabasi{s.n, s.m_attach};
  }
  const WeightedNetwork g = generate(spec);
  const std::vector<std::string> comments{spec.describe()};
  write_edge_list(s.output, g, comments);
  out << "nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  return kExitOk;
}

int run_sample(const Settings& s, std::ostream& out, std::ostream& err) {
  const WeightedNetwork g = load_network(s.input_path, s.input, err);
  const WeightedNetwork sample = sample_subgraph(g, s.sample_size, s.seed);
  const std::vector<std::string> comments{"snowball sample size=" + std::to_string(s.sample_size) +
                                          " seed=" + std::to_string(s.seed)};
  write_edge_list(s.output, sample, comments);
  out << "nodes " << sample.node_count() << " edges " << sample.edge_count() << '\n';
  return kExitOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forman-Ricci curvature analysis of complex networks", "forman"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Settings s;
  std::map<CLI::App*, int (*)(const Settings&, std::ostream&, std::ostream&)> handlers;

  auto output = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--output,-o", s.output, what)->required();
  };
  auto single_input = [&](CLI::App* cmd) {
    cmd->add_option("--input,-i", s.input_path, "Edge list")->required()->check(CLI::ExistingFile);
    add_input_options(cmd, s.input);
  };
  auto pair_input = [&](CLI::App* cmd) {
    cmd->add_option("--a", s.a_path, "First edge list")->required()->check(CLI::ExistingFile);
    cmd->add_option("--b", s.b_path, "Second edge list")->required()->check(CLI::ExistingFile);
    add_input_options(cmd, s.input);
  };
  auto threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", s.threads, "Worker threads, 0 for all cores")
        ->capture_default_str();
  };
  auto bins = [&](CLI::App* cmd) {
    cmd->add_option("--bins", s.bins, "Number of bins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto dt = [&](CLI::App* cmd, double fallback) {
    s.dt = fallback;
    cmd->add_option("--dt", s.dt, "Step size")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto steps = [&](CLI::App* cmd, std::size_t fallback, bool allow_zero) {
    s.steps = fallback;
    auto* opt = cmd->add_option("--K", s.steps, "Number of steps")->capture_default_str();
    if (!allow_zero) opt->check(CLI::PositiveNumber);
  };

  auto* curvature = app.add_subcommand("curvature", "Per-edge curvature CSV");
  single_input(curvature);
  output(curvature, "Edge curvature CSV");
  curvature->add_option("--node-output", s.node_output, "Node curvature CSV");
  threads(curvature);
  handlers[curvature] = run_curvature;

  auto* histogram_cmd = app.add_subcommand("histogram", "Curvature histogram CSV");
  single_input(histogram_cmd);
  output(histogram_cmd, "Histogram CSV");
  bins(histogram_cmd);
  threads(histogram_cmd);
  handlers[histogram_cmd] = run_histogram;

  auto* map = app.add_subcommand("map", "Node-by-node curvature matrix CSV");
  single_input(map);
  output(map, "Matrix CSV; the label table goes to <output>.labels.csv");
  threads(map);
  handlers[map] = run_map;

  auto* distance = app.add_subcommand("distance", "Earth mover's distance between two networks");
  pair_input(distance);
  distance->add_option("--kernel", s.kernel, "gaussian, epanechnikov or uniform")
      ->check(CLI::IsMember({"gaussian", "epanechnikov", "uniform"}))
      ->capture_default_str();
  distance->add_option("--bandwidth", s.bandwidth, "Kernel bandwidth (Silverman when unset)")
      ->check(CLI::PositiveNumber);
  bins(distance);
  threads(distance);
  handlers[distance] = run_distance;

  auto* flow = app.add_subcommand("flow", "Discrete Ricci or Laplacian flow");
  single_input(flow);
  output(flow, "Evolved edge list");
  dt(flow, 0.1);
  steps(flow, 10, false);
  flow->add_option("--variant", s.variant, "standard, normalized, normalized-plus, reverse, laplacian")
      ->transform(CLI::CheckedTransformer(kVariants, CLI::ignore_case));
  handlers[flow] = run_flow;

  auto* denoise_cmd = app.add_subcommand("denoise", "Laplacian smoothing of edge weights");
  single_input(denoise_cmd);
  output(denoise_cmd, "Denoised edge list");
  dt(denoise_cmd, 0.05);
  steps(denoise_cmd, 3, false);
  handlers[denoise_cmd] = run_denoise;

  auto* changes = app.add_subcommand("changes", "Flag edges whose flowed weights diverge");
  pair_input(changes);
  output(changes, "Change report CSV");
  dt(changes, 1.0);
  steps(changes, 10, true);
  changes->add_option("--threshold", s.threshold, "Deviation threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  handlers[changes] = run_changes;

  auto* generate_cmd = app.add_subcommand("generate", "Random graph edge list");
  generate_cmd->add_option("--model", s.model, "er, ws or ab")
      ->required()
      ->check(CLI::IsMember({"er", "ws", "ab"}, CLI::ignore_case));
  generate_cmd->add_option("--n", s.n, "Node count")->required();
  generate_cmd->add_option("--p", s.p, "Edge probability (er)");
  generate_cmd->add_option("--k-ring", s.k_ring, "Ring degree, even (ws)");
  generate_cmd->add_option("--beta", s.beta, "Rewiring probability (ws)");
  generate_cmd->add_option("--m-attach", s.m_attach, "Edges per new node (ab)")
      ->capture_default_str();
  generate_cmd->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  output(generate_cmd, "Edge list");
  handlers[generate_cmd] = run_generate;

  auto* sample = app.add_subcommand("sample", "Snowball sample of a network");
  single_input(sample);
  sample->add_option("--sample-size", s.sample_size, "Target node count")
      ->required()
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  output(sample, "Sampled edge list");
  handlers[sample] = run_sample;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "forman: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  // dt and K share storage across subcommands; restore the chosen command's
  // default when the flag was not given.
  if (chosen->get_option_no_throw("--dt") != nullptr && chosen->count("--dt") == 0) {
    s.dt = chosen == flow ? 0.1 : chosen == denoise_cmd ? 0.05 : 1.0;
  }
  if (chosen->get_option_no_throw("--K") != nullptr && chosen->count("--K") == 0) {
    s.steps = chosen == denoise_cmd ? 3 : 10;
  }

  try {
    return handlers.at(chosen)(s, out, err);
  } catch (const std::exception& e) {
    err << "forman: " << e.what() << '\n';
    return kExitDataError;
  }
}

int cli_run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_run(args, std::cout, std::cerr);
}

}  // namespace forman::cli
