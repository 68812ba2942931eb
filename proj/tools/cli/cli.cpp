#include "cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "mfsr/degrade.hpp"
#include "mfsr/diffusion.hpp"
#include "mfsr/error.hpp"
#include "mfsr/grid_search.hpp"
#include "mfsr/image_io.hpp"
#include "mfsr/manifest.hpp"
#include "mfsr/metrics.hpp"
#include "mfsr/noise.hpp"
#include "mfsr/optical_flow.hpp"
#include "mfsr/registration.hpp"
#include "mfsr/sector_diffusion.hpp"
#include "mfsr/solver.hpp"

namespace mfsr::cli {
namespace {

namespace fs = std::filesystem;

// Flag values shared by every subcommand that needs optical flow.
struct FlowOptions {
  std::string preset;
  FlowParams params;
  std::string source = "gt";
  std::string grid = "lr";
};

void add_flow_params(CLI::App* sub, FlowOptions& o) {
  sub->add_option("--preset", o.preset, "named (σ_OF, α_OF) pair: text1..3, house1..3; overrides both")
      ->check(CLI::IsMember({"text1", "text2", "text3", "house1", "house2", "house3"}));
  sub->add_option("--sigma-of", o.params.sigma, "[σ_OF] flow pre-smoothing");
  sub->add_option("--alpha-of", o.params.alpha, "[α_OF] flow smoothness weight");
  sub->add_option("--eta", o.params.eta, "[η] pyramid downsampling factor");
  sub->add_option("--inner", o.params.inner_iterations, "[η₁] inner fixed-point iterations");
  sub->add_option("--outer", o.params.outer_iterations, "[η₂] outer fixed-point iterations");
  sub->add_option("--omega", o.params.omega, "[ω] SOR relaxation");
  sub->add_option("--epsilon", o.params.epsilon, "robust penaliser constant");
  sub->add_option("--sor-iterations", o.params.sor_iterations, "SOR sweeps per linear system");
}

void add_flow_source(CLI::App* sub, FlowOptions& o) {
  sub->add_option("--flow", o.source, "gt: manifest flows; estimated: optical flow between frames")
      ->check(CLI::IsMember({"gt", "estimated"}));
  sub->add_option("--flow-grid", o.grid, "grid for estimated flow: lr frames or hr interpolations")
      ->check(CLI::IsMember({"lr", "hr"}));
  add_flow_params(sub, o);
}

FlowParams resolved(const FlowOptions& o) {
  FlowParams p = o.params;
  if (!o.preset.empty()) {
    const auto preset = find_flow_preset(o.preset);
    p.sigma = preset->sigma;
    p.alpha = preset->alpha;
  }
  validate(p);
  return p;
}

// Solver flags; tau == 0 picks the regulariser's default.
struct SolverOptions {
  std::string model = "M1";
  std::string regulariser = "sd";
  double alpha = 5.3;
  double tau = 0.0;
  int k_max = 17;
  double sigma = 0.8;
  double sigma_b = 0.7;
  double lambda = 1.7;
  int sectors = kDefaultSectorCount;
  int radius = kDefaultSectorRadius;
};

void add_regulariser_options(CLI::App* sub, SolverOptions& o) {
  sub->add_option("--regulariser", o.regulariser, "smoothness term: hd, eed or sd")
      ->check(CLI::IsMember({"hd", "eed", "sd"}));
  sub->add_option("--tau", o.tau, "[τ] time step; 0 = 0.05 (hd, eed) or 0.012 (sd)");
  sub->add_option("--sectors", o.sectors, "[M] number of sectors (sd)");
  sub->add_option("--radius", o.radius, "[ρ] neighbourhood radius in pixels (sd)");
}

void add_solver_options(CLI::App* sub, SolverOptions& o) {
  sub->add_option("--model", o.model, "observational model: M1..M6 or M2.1");
  add_regulariser_options(sub, o);
  sub->add_option("--alpha", o.alpha, "[α] smoothness weight");
  sub->add_option("--kmax", o.k_max, "[k_max] iterations");
  sub->add_option("--sigma", o.sigma, "[σ] pre-smoothing of the diffusivity argument");
  sub->add_option("--sigma-b", o.sigma_b, "[σ_B] blur of the observational model");
  sub->add_option("--lambda", o.lambda, "[λ] contrast parameter");
}

ObservationalModel model_from(const std::string& text) {
  const auto m = parse_model(text);
  if (!m) throw CLI::ValidationError("--model", "unknown model '" + text + "'");
  return *m;
}

SolverConfig config_from(const SolverOptions& o, const ScaleSpec& scale) {
  SolverConfig c;
  c.model = model_from(o.model);
  c.regulariser = *parse_regulariser(o.regulariser);
  c.alpha = o.alpha;
  c.tau = o.tau > 0.0 ? o.tau : default_sr_tau(c.regulariser);
  c.k_max = o.k_max;
  c.blur.sigma = o.sigma_b;
  c.scale = scale;
  c.diffusivity = {o.lambda, o.sigma};
  c.num_sectors = o.sectors;
  c.sector_radius = o.radius;
  return c;
}

SRProblem problem_from(const LoadedDataset& data, const FlowOptions& flow) {
  SRProblem p;
  p.frames = data.frames;
  p.reference_index = data.manifest.reference_index;
  p.config.scale = data.manifest.scale;
  if (flow.source == "gt") {
    p.flows = data.flows;
  } else {
    p.flows = estimate_frame_flows(p.frames, p.reference_index, resolved(flow), p.config.scale,
                                   flow.grid == "hr" ? FlowGrid::kHighRes : FlowGrid::kLowRes);
  }
  return p;
}

const Image& require_ground_truth(const LoadedDataset& data) {
  if (!data.ground_truth) throw IoError("manifest has no ground_truth entry");
  return *data.ground_truth;
}

void print_number(std::ostream& out, double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  out << s.str() << '\n';
}

// --- subcommands -----------------------------------------------------------

struct DegradeArgs {
  std::string in;
  std::string out;
  DatasetSpec spec;
};

int do_degrade(const DegradeArgs& a, std::ostream& out) {
  validate(a.spec);
  const Image hr = read_image(a.in);
  const Dataset ds = generate_dataset(hr, a.spec);
  out << write_dataset(a.out, ds, a.spec, &hr).string() << '\n';
  return kOk;
}

struct DenoiseArgs {
  std::string in;
  std::string out;
  std::string clean;
  std::string method = "sd";
  double sigma = 0.6;
  double lambda = 2.1;
  int k_max = 10;
  double tau = 0.0;
  int sectors = kDefaultSectorCount;
  int radius = kDefaultSectorRadius;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

int do_denoise(const DenoiseArgs& a, std::ostream& out) {
  Image f = read_image(a.in);
  if (a.noise > 0.0) f = add_clipped_awgn(f, a.noise, a.seed);
  const DiffusivityParams params{a.lambda, a.sigma};
  Image u;
  if (a.method == "sd") {
    const auto geo = build_sector_geometry(a.sectors, a.radius, a.sigma);
    u = sd_denoise(f, params, geo, a.tau > 0.0 ? a.tau : sd_tau_max(geo), a.k_max);
  } else if (a.method == "eed") {
    u = eed_denoise(f, params, a.tau > 0.0 ? a.tau : kEedDenoiseTau, a.k_max);
  } else {
    DiffusionState s{f, 0, a.tau > 0.0 ? a.tau : kEedDenoiseTau};
    for (int k = 0; k < a.k_max; ++k) s = homogeneous_step(s);
    u = s.current;
  }
  write_image(u, a.out, format_for_path(a.out));
  if (!a.clean.empty()) print_number(out, mse(u, read_image(a.clean)));
  return kOk;
}

struct FlowArgs {
  std::string reference;
  std::string target;
  std::string out;
  FlowOptions flow;
};

int do_flow(const FlowArgs& a) {
  const FlowField w = estimate_flow(read_image(a.reference), read_image(a.target), resolved(a.flow));
  write_flow(w, a.out);
  return kOk;
}

struct SuperresArgs {
  std::string manifest;
  std::string out;
  SolverOptions solver;
  FlowOptions flow;
};

int do_superres(const SuperresArgs& a, std::ostream& out) {
  const LoadedDataset data = load_dataset(a.manifest);
  SRProblem p = problem_from(data, a.flow);
  p.config = config_from(a.solver, data.manifest.scale);
  const Image u = reconstruct(p);
  write_image(u, a.out, format_for_path(a.out));
  if (data.ground_truth) print_number(out, mse(u, *data.ground_truth));
  return kOk;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

// Per-model parameters in the evaluation CSV layout (the mse column is optional).
std::vector<SolverConfig> read_param_table(const fs::path& path, const SolverConfig& base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open parameter table " + path.string());
  std::string line;
  std::vector<SolverConfig> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("model,", 0) == 0) continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() < 6) {
      throw FormatError(FormatError::Kind::kMalformedHeader, "bad parameter row: " + line);
    }
    SolverConfig c = base;
    try {
      c.model = model_from(cells[0]);
      c.diffusivity.sigma = std::stod(cells[1]);
      c.blur.sigma = std::stod(cells[2]);
      c.diffusivity.lambda = std::stod(cells[3]);
      c.alpha = std::stod(cells[4]);
      c.k_max = std::stoi(cells[5]);
    } catch (const std::exception&) {
      throw FormatError(FormatError::Kind::kMalformedHeader, "bad parameter row: " + line);
    }
    rows.push_back(c);
  }
  return rows;
}

struct EvaluateArgs {
  std::string manifest;
  std::string models = "M1,M2,M3,M4,M5,M6,M2.1";
  std::string params;
  std::string out;
  SolverOptions solver;
  FlowOptions flow;
};

int do_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const LoadedDataset data = load_dataset(a.manifest);
  const Image& gt = require_ground_truth(data);
  SRProblem p = problem_from(data, a.flow);
  const SolverConfig base = config_from(a.solver, data.manifest.scale);
  const std::vector<SolverConfig> table =
      a.params.empty() ? std::vector<SolverConfig>{} : read_param_table(a.params, base);

  std::vector<SolverConfig> configs;
  for (const std::string& name : split_csv_line(a.models)) {
    const ObservationalModel m = model_from(name);
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const SolverConfig& c) { return c.model == m; });
    SolverConfig c = it != table.end() ? *it : base;
    c.model = m;
    configs.push_back(c);
  }
  const auto rows = evaluate_models(p, configs, gt);
  if (a.out.empty()) {
    write_evaluation_csv(out, rows);
  } else {
    std::ofstream f(a.out);
    if (!f) throw IoError("cannot write " + a.out);
    write_evaluation_csv(f, rows);
  }
  return kOk;
}

struct MseArgs {
  std::string a;
  std::string b;
};

int do_mse(const MseArgs& a, std::ostream& out) {
  print_number(out, mse(read_image(a.a), read_image(a.b)));
  return kOk;
}

struct GridArgs {
  std::string manifest;
  std::string strategy = "coordinate";
  SolverOptions solver;
  FlowOptions flow;
  ParamGrid grid{{0.8}, {1.0}, {1.7}, {1.0, 3.0, 10.0}, 50};
};

int do_grid(const GridArgs& a, std::ostream& out) {
  const LoadedDataset data = load_dataset(a.manifest);
  const Image& gt = require_ground_truth(data);
  SRProblem p = problem_from(data, a.flow);
  p.config = config_from(a.solver, data.manifest.scale);
  const SearchResult r =
      grid_search(p, gt, a.grid,
                  a.strategy == "exhaustive" ? SearchStrategy::kExhaustive
                                             : SearchStrategy::kCoordinateDescent);
  const ModelEvaluation row{r.best, r.mse};
  write_evaluation_csv(out, std::span<const ModelEvaluation>(&row, 1));
  return kOk;
}

const CLI::App* parsed_subcommand(CLI::App& app) {
  for (CLI::App* sub : app.get_subcommands({})) {
    if (sub->parsed()) return sub;
  }
  return nullptr;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-frame super-resolution and diffusion denoising", "mfsr"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  DegradeArgs degrade;
  auto* s_degrade = app.add_subcommand("degrade", "generate a synthetic LR dataset from an HR image");
  s_degrade->add_option("--in", degrade.in, "ground-truth HR image (PGM or PFM)")->required();
  s_degrade->add_option("--out", degrade.out, "output directory")->required();
  s_degrade->add_option("--frames", degrade.spec.num_frames, "[N] number of frames; the last is the reference");
  s_degrade->add_option("--blur-sigma", degrade.spec.blur_sigma, "[σ_B] Gaussian blur of the acquisition");
  s_degrade->add_option("--scale", degrade.spec.scale_factor, "HR/LR size ratio");
  s_degrade->add_option("--noise", degrade.spec.noise_sigma, "[σ_noise] clipped AWGN standard deviation");
  s_degrade->add_option("--seed", degrade.spec.seed, "random seed");
  s_degrade->add_option("--amplitude", degrade.spec.deformation_amplitude, "max deformation in HR pixels");
  s_degrade->add_option("--smoothness", degrade.spec.deformation_smoothness, "deformation smoothing in HR pixels");

  DenoiseArgs denoise;
  auto* s_denoise = app.add_subcommand("denoise", "explicit diffusion denoising of one image");
  s_denoise->add_option("--in", denoise.in, "input image")->required();
  s_denoise->add_option("--out", denoise.out, "output image (.pfm keeps full precision)")->required();
  s_denoise->add_option("--clean", denoise.clean, "reference image; prints the MSE when given");
  s_denoise->add_option("--method", denoise.method, "hd, eed or sd")->check(CLI::IsMember({"hd", "eed", "sd"}));
  s_denoise->add_option("--sigma", denoise.sigma, "[σ] pre-smoothing of the diffusivity argument");
  s_denoise->add_option("--lambda", denoise.lambda, "[λ] contrast parameter");
  s_denoise->add_option("--kmax", denoise.k_max, "[k_max] iterations");
  s_denoise->add_option("--tau", denoise.tau, "[τ] time step; 0 = 0.2 (hd, eed) or the stability bound (sd)");
  s_denoise->add_option("--sectors", denoise.sectors, "[M] number of sectors (sd)");
  s_denoise->add_option("--radius", denoise.radius, "[ρ] neighbourhood radius in pixels (sd)");
  s_denoise->add_option("--noise", denoise.noise, "[σ_noise] clipped AWGN added before denoising; 0 = none");
  s_denoise->add_option("--seed", denoise.seed, "random seed for --noise");

  FlowArgs flow;
  auto* s_flow = app.add_subcommand("flow", "optical flow such that warping the target approximates the reference");
  s_flow->add_option("--reference", flow.reference, "reference image")->required();
  s_flow->add_option("--target", flow.target, "target image")->required();
  s_flow->add_option("--out", flow.out, "output .flo file")->required();
  add_flow_params(s_flow, flow.flow);

  SuperresArgs superres;
  auto* s_superres = app.add_subcommand("superres", "reconstruct the HR image of a dataset");
  s_superres->add_option("--manifest", superres.manifest, "dataset manifest")->required();
  s_superres->add_option("--out", superres.out, "output image")->required();
  add_solver_options(s_superres, superres.solver);
  add_flow_source(s_superres, superres.flow);

  EvaluateArgs evaluate;
  auto* s_evaluate = app.add_subcommand("evaluate-models", "reconstruct with several models and tabulate MSE");
  s_evaluate->add_option("--manifest", evaluate.manifest, "dataset manifest with ground truth")->required();
  s_evaluate->add_option("--models", evaluate.models, "comma-separated model list, e.g. m1,m2,m2.1");
  s_evaluate->add_option("--params", evaluate.params, "per-model CSV (model,sigma,sigma_b,lambda,alpha,k_max)");
  s_evaluate->add_option("--out", evaluate.out, "CSV output; standard output when empty");
  add_solver_options(s_evaluate, evaluate.solver);
  add_flow_source(s_evaluate, evaluate.flow);

  MseArgs mse_args;
  auto* s_mse = app.add_subcommand("mse", "mean squared error between two images");
  s_mse->add_option("--a", mse_args.a, "first image")->required();
  s_mse->add_option("--b", mse_args.b, "second image")->required();

  GridArgs grid;
  auto* s_grid = app.add_subcommand("grid-search", "search SR parameters against the ground truth");
  s_grid->add_option("--manifest", grid.manifest, "dataset manifest with ground truth")->required();
  s_grid->add_option("--model", grid.solver.model, "observational model: M1..M6 or M2.1");
  add_regulariser_options(s_grid, grid.solver);
  s_grid->add_option("--sigma", grid.grid.sigma, "[σ] candidates")->delimiter(',');
  s_grid->add_option("--sigma-b", grid.grid.sigma_b, "[σ_B] candidates")->delimiter(',');
  s_grid->add_option("--lambda", grid.grid.lambda, "[λ] candidates")->delimiter(',');
  s_grid->add_option("--alpha", grid.grid.alpha, "[α] candidates")->delimiter(',');
  s_grid->add_option("--max-iterations", grid.grid.max_iterations, "[k_max] upper bound, every k below is scored");
  s_grid->add_option("--strategy", grid.strategy, "exhaustive or coordinate")
      ->check(CLI::IsMember({"exhaustive", "coordinate"}));
  add_flow_source(s_grid, grid.flow);

  std::vector<const char*> argv{"mfsr"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    // Model names are validated here so that a bad name is a usage error.
    model_from(superres.solver.model);
    model_from(grid.solver.model);
    model_from(evaluate.solver.model);
    if (*s_evaluate) {
      for (const std::string& m : split_csv_line(evaluate.models)) model_from(m);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "mfsr: " << e.what() << "\n\n";
    const CLI::App* sub = parsed_subcommand(app);
    err << (sub ? sub->help() : app.help());
    return kUsage;
  }

  try {
    if (*s_degrade) return do_degrade(degrade, out);
    if (*s_denoise) return do_denoise(denoise, out);
    if (*s_flow) return do_flow(flow);
    if (*s_superres) return do_superres(superres, out);
    if (*s_evaluate) return do_evaluate(evaluate, out);
    if (*s_mse) return do_mse(mse_args, out);
    if (*s_grid) return do_grid(grid, out);
  } catch (const IoError& e) {
    err << "mfsr: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << "mfsr: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "mfsr: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "mfsr: " << e.what() << '\n';
    return kContract;
  }
  return kUsage;
}

}  // namespace mfsr::cli
