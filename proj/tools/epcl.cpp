// epcl: command-line front end for lattice synthesis, models, dynamics,
// scattering, waveguide design, figure data and the acceptance suite.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epcl/darboux.hpp"
#include "epcl/dynamics.hpp"
#include "epcl/ep_models.hpp"
#include "epcl/figures.hpp"
#include "epcl/io.hpp"
#include "epcl/scattering.hpp"
#include "epcl/verify.hpp"
#include "epcl/waveguide.hpp"

using namespace epcl;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitVerification = 4;

struct Globals {
  std::string out;
  std::string format = "json";
  double seed_tolerance = 1e-3;
  bool quiet = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) fail(ErrorKind::rejected_input, "bad number in " + what + ": '" + s + "'");
  return v;
}

SiteWindow parse_window(const std::string& s) {
  const auto p = split(s, ',');
  if (p.size() != 2) fail(ErrorKind::rejected_input, "--window expects 'nmin,nmax'");
  const auto lo = static_cast<SiteIndex>(to_double(p[0], "--window"));
  const auto hi = static_cast<SiteIndex>(to_double(p[1], "--window"));
  if (hi < lo) fail(ErrorKind::rejected_input, "--window needs nmin <= nmax");
  return {lo, hi};
}

cd parse_complex(const std::string& s, const std::string& what) {
  const auto p = split(s, ',');
  if (p.size() == 1) return {to_double(p[0], what), 0.0};
  if (p.size() != 2) fail(ErrorKind::rejected_input, what + " expects 're,im'");
  return {to_double(p[0], what), to_double(p[1], what)};
}

std::ostream& out_stream(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) fail(ErrorKind::rejected_input, "cannot open '" + path + "' for writing");
  return file;
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

void write_lattice_output(const Globals& g, const Lattice& lat) {
  std::ofstream file;
  std::ostream& os = out_stream(g.out, file);
  if (g.format == "csv") {
    io::Table t;
    t.comments.push_back("kappa_n is the hopping on bond (n-1, n); kappa_asym = " + io::format_double(lat.kappa_asym()));
    t.columns = {"n", "re_kappa", "im_kappa", "re_v", "im_v"};
    for (SiteIndex n = lat.window().n_min; n <= lat.window().n_max; ++n) {
      t.add_row({static_cast<double>(n), lat.kappa(n).real(), lat.kappa(n).imag(), lat.v(n).real(), lat.v(n).imag()});
    }
    io::write_csv(os, t);
  } else {
    os << io::lattice_to_json(lat) << '\n';
  }
}

void write_state_output(const Globals& g, const StateVector& psi) {
  std::ofstream file;
  io::write_state_csv(out_stream(g.out, file), psi);
}

// Seed options shared by synth, bic and assoc.
struct SeedOptions {
  double q0 = std::numbers::pi / 4;
  double sigma = std::numbers::pi / 3;
  std::string lambda = "0,1";
  double kappa = 1.0;
  std::string window = "-200,200";
  std::string mode = "closed";

  void attach(CLI::App* app) {
    app->add_option("--q0", q0, "Seed wavenumber in (0, pi)")->default_str(io::format_double(q0));
    app->add_option("--sigma", sigma, "Seed phase")->default_str(io::format_double(sigma));
    app->add_option("--lambda", lambda, "Integration constant 're,im'")->capture_default_str();
    app->add_option("--kappa", kappa, "Homogeneous hopping")->capture_default_str();
    app->add_option("--window", window, "Site window 'nmin,nmax'")->capture_default_str();
    app->add_option("--mode", mode, "closed or pipeline")->check(CLI::IsMember({"closed", "pipeline"}))->capture_default_str();
  }

  darboux::SeedParams seed(const Globals& g) const {
    darboux::SeedParams s;
    s.q0 = q0;
    s.sigma = sigma;
    s.lambda = parse_complex(lambda, "--lambda");
    s.kappa = kappa;
    s.epsilon = g.seed_tolerance;
    return s;
  }

  darboux::DoubleDarboux build(const Globals& g) const {
    const auto s = seed(g);
    const SiteWindow w = parse_window(window);
    return mode == "pipeline" ? darboux::double_darboux_pipeline(s, w) : darboux::double_darboux_closed_form(s, w);
  }
};

// Lattice source: --lattice file or --model pt|hermitian with --kappa/--window.
struct LatticeSource {
  std::string path;
  std::string model;
  double kappa = 1.0;
  std::string window = "-300,300";

  void attach(CLI::App* app) {
    app->add_option("--lattice", path, "Lattice JSON file");
    app->add_option("--model", model, "Built-in lattice instead of a file")->check(CLI::IsMember({"pt", "hermitian"}));
    app->add_option("--kappa", kappa, "Hopping for --model")->capture_default_str();
    app->add_option("--window", window, "Window for --model 'nmin,nmax'")->capture_default_str();
  }

  models::PtLatticeSpec spec() const {
    models::PtLatticeSpec s;
    s.kappa = kappa;
    s.window = parse_window(window);
    return s;
  }

  Lattice load() const {
    if (!path.empty() && !model.empty()) fail(ErrorKind::rejected_input, "give either --lattice or --model");
    if (!path.empty()) return io::read_lattice(path);
    if (model == "pt") return models::pt_lattice(spec());
    if (model == "hermitian") return models::hermitian_counterpart(spec());
    fail(ErrorKind::rejected_input, "a lattice is required: --lattice <file> or --model pt|hermitian");
  }
};

// Globals plus the options of the subcommand chain that actually ran.
void print_header(const Globals& g, const CLI::App& app) {
  if (g.quiet) return;
  std::vector<std::string> prefixes;
  std::string chain;
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    chain += sub->get_name() + ".";
    prefixes.push_back(chain);
  }
  std::cerr << "# epcl " << io::kFormatVersion << '\n';
  std::istringstream cfg(app.config_to_str(true, false));
  for (std::string line; std::getline(cfg, line);) {
    const std::string key = line.substr(0, line.find('='));
    if (key.empty()) continue;
    const auto dot = key.rfind('.');
    const bool global = dot == std::string::npos;
    const bool active = !global && std::find(prefixes.begin(), prefixes.end(), key.substr(0, dot + 1)) != prefixes.end();
    if (global || active) std::cerr << "#   " << line << '\n';
  }
}

// ---- subcommands --------------------------------------------------------------

int run_synth(const Globals& g, const SeedOptions& s) {
  write_lattice_output(g, s.build(g).h3);
  return 0;
}

int run_model(const Globals& g, const std::string& kind, const LatticeSource& src, const std::string& convention,
              SiteIndex N, const std::string& of) {
  auto spec = src.spec();
  spec.convention = convention == "plus-plus" ? models::SignConvention::k0_plus_k1_plus
                                              : models::SignConvention::k0_plus_k1_minus;
  if (kind == "pt") {
    write_lattice_output(g, models::pt_lattice(spec));
    return 0;
  }
  if (kind == "hermitian") {
    write_lattice_output(g, models::hermitian_counterpart(spec));
    return 0;
  }
  spec.window = SiteWindow::symmetric(std::max<SiteIndex>(N, 3));
  Lattice lat;
  if (!src.path.empty()) {
    lat = io::read_lattice(src.path);
  } else {
    lat = of == "pt" ? models::pt_lattice(spec) : models::hermitian_counterpart(spec);
  }
  const auto states = models::gap_states(lat, N);
  std::ofstream file;
  std::ostream& os = out_stream(g.out, file);
  if (g.format == "csv") {
    os << "re,im\n";
    for (cd e : states) os << io::format_double(e.real()) << ',' << io::format_double(e.imag()) << '\n';
  } else {
    json j;
    j["N"] = N;
    j["gap_states"] = json::array();
    for (cd e : states) j["gap_states"].push_back(complex_json(e));
    os << j.dump(2) << '\n';
  }
  return 0;
}

int run_bic(const Globals& g, const std::string& model, const SeedOptions& s, bool assoc) {
  if (model == "synth") {
    if (assoc) {
      write_state_output(g, darboux::associated_function(s.seed(g), parse_window(s.window)));
    } else {
      write_state_output(g, s.build(g).omega);
    }
    return 0;
  }
  models::PtLatticeSpec spec;
  spec.kappa = s.kappa;
  spec.window = parse_window(s.window);
  if (model == "pt") {
    write_state_output(g, assoc ? models::assoc_pt(spec) : models::bic_pt(spec));
    return 0;
  }
  if (assoc) fail(ErrorKind::unsupported, "the Hermitian counterpart has no associated function at E = 0");
  write_state_output(g, models::bic_hermitian(spec));
  return 0;
}

StateVector initial_state(const std::string& init, const LatticeSource& src, const Lattice& lat,
                          const std::string& omega_path, const std::string& assoc_path) {
  auto bic = [&]() {
    if (!omega_path.empty()) return io::read_state(omega_path);
    if (src.model == "pt") return models::bic_pt(src.spec());
    if (src.model == "hermitian") return models::bic_hermitian(src.spec());
    fail(ErrorKind::rejected_input, "--init bic needs --omega <state.csv> for a lattice file");
  };
  if (init.rfind("delta:", 0) == 0) {
    const auto site = static_cast<SiteIndex>(to_double(init.substr(6), "--init"));
    if (!lat.window().contains(site)) fail(ErrorKind::rejected_input, "delta site outside the lattice");
    return StateVector::delta(SiteWindow(site, site), site);
  }
  if (init.rfind("file:", 0) == 0) return io::read_state(init.substr(5));
  if (init == "bic") return bic();
  if (init.rfind("bic+eps:", 0) == 0) {
    const double eps = to_double(init.substr(8), "--init");
    StateVector f;
    if (!assoc_path.empty()) {
      f = io::read_state(assoc_path);
    } else if (src.model == "pt") {
      f = models::assoc_pt(src.spec());
    } else {
      fail(ErrorKind::rejected_input, "--init bic+eps needs --assoc <state.csv>");
    }
    const StateVector omega = bic();
    if (omega.window() != f.window()) fail(ErrorKind::rejected_input, "omega and f must share one window");
    return omega + cd{eps} * f;
  }
  fail(ErrorKind::rejected_input, "unknown --init '" + init + "'");
}

int run_evolve(const Globals& g, const LatticeSource& src, const std::string& init, dynamics::IntegratorConfig cfg,
               const std::string& omega_path, const std::string& assoc_path, std::string power_path) {
  const Lattice lat = src.load();
  StateVector psi0 = initial_state(init, src, lat, omega_path, assoc_path);
  const SiteWindow w = SiteWindow::symmetric(cfg.half_width);
  if (!w.contains(psi0.window())) psi0 = psi0.restrict_to(SiteWindow(std::max(w.n_min, psi0.window().n_min),
                                                                     std::min(w.n_max, psi0.window().n_max)));
  const auto traj = dynamics::evolve(lat, psi0, cfg);

  std::ofstream file;
  std::ostream& os = out_stream(g.out, file);
  os << "# format: " << io::kFormatVersion << "\nt,n,re,im\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.states[i];
    for (SiteIndex n = s.window().n_min; n <= s.window().n_max; ++n) {
      os << io::format_double(traj.times[i]) << ',' << n << ',' << io::format_double(s[n].real()) << ','
         << io::format_double(s[n].imag()) << '\n';
    }
  }
  if (power_path.empty()) {
    power_path = (g.out.empty() || g.out == "-") ? "power.csv"
                                                 : (std::filesystem::path(g.out).parent_path() / "power.csv").string();
  }
  io::Table p;
  p.columns = {"t", "P", "sqrtP"};
  for (std::size_t i = 0; i < traj.size(); ++i) p.add_row({traj.times[i], traj.power[i], std::sqrt(traj.power[i])});
  std::ofstream pf(power_path);
  if (!pf) fail(ErrorKind::rejected_input, "cannot open '" + power_path + "' for writing");
  io::write_csv(pf, p);
  return 0;
}

int run_scatter(const Globals& g, const LatticeSource& src, SiteIndex N, std::size_t grid, bool width,
                double threshold) {
  const Lattice lat = src.load();
  std::ofstream file;
  std::ostream& os = out_stream(g.out, file);
  if (width) {
    scattering::WidthOptions opt;
    opt.threshold = threshold;
    const auto w = scattering::resonance_width(lat, N, opt);
    json j;
    j["N"] = N;
    j["threshold"] = threshold;
    j["found"] = w.has_value();
    j["width"] = w ? json(*w) : json(nullptr);
    os << j.dump(2) << '\n';
    return 0;
  }
  const auto s = scattering::spectrum(lat, scattering::uniform_grid(grid), N);
  if (s.det_drift_exceeded() && !g.quiet) {
    std::cerr << "warning: |det Q - 1| reached " << io::format_double(s.max_det_drift) << '\n';
  }
  io::Table t;
  t.comments.push_back("left incidence, N = " + std::to_string(N));
  t.columns = {"q", "E", "re_r", "im_r", "re_t", "im_t", "abs_t2", "abs_r2", "arg_t"};
  for (const auto& r : s.records) {
    t.add_row({r.q, r.energy, r.r.real(), r.r.imag(), r.t.real(), r.t.imag(), r.abs_t2(), r.abs_r2(), r.arg_t()});
  }
  io::write_csv(os, t);
  return 0;
}

std::vector<cd> read_samples(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::rejected_input, "cannot open '" + path + "'");
  std::vector<cd> out;
  for (std::string line; std::getline(is, line);) {
    if (line.empty() || line.front() == '#' || line == "re,im") continue;
    out.push_back(parse_complex(line, "samples"));
  }
  return out;
}

waveguide::ModulationProfile make_profile(const std::string& kind, double alpha, double beta, double Lambda,
                                          const std::string& samples) {
  switch (waveguide::modulation_kind_from_string(kind)) {
    case waveguide::ModulationKind::sinusoidal: return waveguide::ModulationProfile::sinusoidal(alpha, beta, Lambda);
    case waveguide::ModulationKind::square: return waveguide::ModulationProfile::square(alpha, beta, Lambda);
    case waveguide::ModulationKind::tabulated:
      if (samples.empty()) fail(ErrorKind::rejected_input, "--kind tabulated needs --samples <file>");
      return waveguide::ModulationProfile::tabulated(read_samples(samples), Lambda);
  }
  fail(ErrorKind::rejected_input, "unknown kind");
}

int run_design(const Globals& g, const waveguide::ModulationProfile& profile, double kappa) {
  const auto d = waveguide::solve_delta(profile, kappa);
  const auto q = waveguide::averaged_coupling(profile);
  json j;
  j["kind"] = std::string(waveguide::to_string(profile.kind));
  j["Gamma"] = complex_json(d.Gamma);
  j["R_plus"] = complex_json(d.R_plus);
  j["R_minus"] = complex_json(d.R_minus);
  j["R_plus_quadrature"] = complex_json(q.r_plus);
  j["R_minus_quadrature"] = complex_json(q.r_minus);
  j["Delta"] = d.Delta;
  j["effective_coupling"] = complex_json(d.effective_coupling);
  std::ofstream file;
  out_stream(g.out, file) << j.dump(2) << '\n';
  return 0;
}

int run_design_validate(const Globals& g, double Lambda, const waveguide::RwaOptions& opt) {
  const auto tr = waveguide::rwa_validation(Lambda, opt);
  io::Table t;
  t.comments.push_back("full modulated model vs averaged model, Lambda = " + io::format_double(Lambda));
  t.columns = {"t", "max_abs_deviation"};
  for (std::size_t i = 0; i < tr.times.size(); ++i) t.add_row({tr.times[i], tr.deviation[i]});
  std::ofstream file;
  io::write_csv(out_stream(g.out, file), t);
  if (!g.quiet) std::cerr << "max deviation: " << io::format_double(tr.max_deviation) << '\n';
  return 0;
}

// Summary lines on stdout; the JSON report goes to --out, or to stdout when --format json is given explicitly.
int run_verify(const Globals& g, const std::string& suite, bool json_requested) {
  const auto report = verify::run(suite);
  const bool to_file = !g.out.empty() && g.out != "-";
  if (to_file) {
    std::ofstream file;
    out_stream(g.out, file) << verify::to_json(report) << '\n';
  }
  if (json_requested && !to_file) {
    std::cout << verify::to_json(report) << '\n';
  } else {
    for (const auto& c : report.checks) std::cout << verify::summary_line(c) << '\n';
  }
  return report.all_pass() ? 0 : kExitVerification;
}

int run_figures(const std::string& which, const std::string& dir, const figures::FigureParams& params) {
  std::vector<std::string> ids = which == "all" ? figures::figure_ids() : split(which, ',');
  std::filesystem::create_directories(dir);
  std::vector<figures::FigureEntry> entries;
  for (const auto& id : ids) {
    auto e = figures::emit_figure_data(id, params);
    for (const auto& [stem, table] : e.tables) io::write_table((std::filesystem::path(dir) / (stem + ".dat")).string(), table);
    entries.push_back(std::move(e));
  }
  std::ofstream gp(std::filesystem::path(dir) / "plot.gp");
  gp << figures::gnuplot_stub(entries);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exceptional-point lattices: synthesis, verification and figure data"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "Output file ('-' or empty: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--seed-tolerance", g.seed_tolerance, "Lower bound on |cos(q0 n + sigma)|")->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress the reproducibility header");

  SeedOptions seed_opts;
  auto* synth = app.add_subcommand("synth", "Double-Darboux lattice with an EP in the continuum");
  seed_opts.attach(synth);

  std::string model_kind, convention = "plus-minus", gap_of = "hermitian";
  SiteIndex gap_N = 200;
  LatticeSource model_src;
  auto* model = app.add_subcommand("model", "Built-in lattices and their gap states");
  model->add_option("kind", model_kind, "pt, hermitian or gap-states")->required()
      ->check(CLI::IsMember({"pt", "hermitian", "gap-states"}));
  model->add_option("--kappa", model_src.kappa, "Hopping")->capture_default_str();
  model->add_option("--window", model_src.window, "Site window 'nmin,nmax'")->capture_default_str();
  model->add_option("--convention", convention, "Signs of kappa_0, kappa_1")
      ->check(CLI::IsMember({"plus-minus", "plus-plus"}))->capture_default_str();
  model->add_option("--N", gap_N, "Truncation half-width for gap-states")->capture_default_str();
  model->add_option("--of", gap_of, "Model whose gap states are computed")->check(CLI::IsMember({"pt", "hermitian"}))
      ->capture_default_str();
  model->add_option("--lattice", model_src.path, "Lattice file for gap-states");

  std::string bic_model = "synth";
  SeedOptions bic_seed;
  auto* bic = app.add_subcommand("bic", "Bound state in the continuum as state CSV");
  auto* assoc = app.add_subcommand("assoc", "Associated function as state CSV");
  for (auto* sub : {bic, assoc}) {
    sub->add_option("--model", bic_model, "synth, pt or hermitian")->check(CLI::IsMember({"synth", "pt", "hermitian"}))
        ->capture_default_str();
    bic_seed.attach(sub);
  }

  LatticeSource ev_src;
  std::string init = "delta:0", omega_path, assoc_path, power_path;
  dynamics::IntegratorConfig cfg;
  auto* evolve = app.add_subcommand("evolve", "Time evolution i dpsi/dt = H psi");
  ev_src.attach(evolve);
  evolve->add_option("--init", init, "delta:<n> | file:<state.csv> | bic | bic+eps:<eps>")->capture_default_str();
  evolve->add_option("--dt", cfg.dt, "Step")->capture_default_str();
  evolve->add_option("--T", cfg.T, "Final time")->capture_default_str();
  evolve->add_option("--N", cfg.half_width, "Simulation half-width")->capture_default_str();
  evolve->add_option("--sample", cfg.sample_interval, "Sample spacing")->capture_default_str();
  evolve->add_option("--omega", omega_path, "BIC state CSV for --init bic");
  evolve->add_option("--assoc", assoc_path, "Associated function CSV for --init bic+eps");
  evolve->add_option("--power", power_path, "Power trace path (default: power.csv next to --out)");

  LatticeSource sc_src;
  SiteIndex sc_N = 200;
  std::size_t grid = 2001;
  bool width = false;
  double threshold = 0.01;
  auto* scatter = app.add_subcommand("scatter", "Reflection and transmission spectra");
  sc_src.attach(scatter);
  scatter->add_option("--N", sc_N, "Compactification radius")->capture_default_str();
  scatter->add_option("--grid", grid, "Number of q points")->capture_default_str();
  scatter->add_flag("--width", width, "Print the resonance width instead of the spectrum");
  scatter->add_option("--threshold", threshold, "||t|^2 - 1| threshold for --width")->capture_default_str();

  std::string kind = "sinusoidal", samples;
  double alpha = 0.0, beta = 0.0, Lambda = 1.0, kappa = 1.0;
  auto* design = app.add_subcommand("design", "Averaged couplings and the coupling Delta");
  design->add_option("--kind", kind, "sinusoidal, square or tabulated")->capture_default_str();
  design->add_option("--alpha", alpha, "Propagation-constant modulation depth")->capture_default_str();
  design->add_option("--beta", beta, "Gain/loss modulation depth")->capture_default_str();
  design->add_option("--Lambda", Lambda, "Modulation period")->capture_default_str();
  design->add_option("--kappa", kappa, "Target hopping")->capture_default_str();
  design->add_option("--samples", samples, "One period of gamma as 're,im' lines (tabulated)");
  waveguide::RwaOptions rwa;
  double rwa_Lambda = 0.1 * 2.0 * std::numbers::pi;
  auto* validate = design->add_subcommand("validate", "Full vs averaged model deviation trace");
  validate->add_option("--Lambda", rwa_Lambda, "Modulation period")->default_str(io::format_double(rwa_Lambda));
  validate->add_option("--T", rwa.T, "Final time")->capture_default_str();
  validate->add_option("--kappa", rwa.kappa, "Hopping")->capture_default_str();
  validate->add_option("--N", rwa.half_width, "Simulation half-width")->capture_default_str();

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
  ver->add_option("suite", suite, "all or a module name")->check(CLI::IsMember(verify::suite_names()))
      ->capture_default_str();

  std::string which = "all", fig_dir = "figures";
  figures::FigureParams fparams;
  auto* figs = app.add_subcommand("figures", "Emit figure data tables and a gnuplot stub");
  figs->add_option("--which", which, "all or a comma list of fig ids")->capture_default_str();
  figs->add_option("--out-dir", fig_dir, "Directory for the tables")->capture_default_str();
  figs->add_option("--N", fparams.scatter_N, "Scattering radius for fig4")->capture_default_str();
  figs->add_option("--grid", fparams.grid_points, "q points for fig4")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    print_header(g, app);
    if (*synth) return run_synth(g, seed_opts);
    if (*model) return run_model(g, model_kind, model_src, convention, gap_N, gap_of);
    if (*bic) return run_bic(g, bic_model, bic_seed, false);
    if (*assoc) return run_bic(g, bic_model, bic_seed, true);
    if (*evolve) return run_evolve(g, ev_src, init, cfg, omega_path, assoc_path, power_path);
    if (*scatter) return run_scatter(g, sc_src, sc_N, grid, width, threshold);
    if (*validate) return run_design_validate(g, rwa_Lambda, rwa);
    if (*design) return run_design(g, make_profile(kind, alpha, beta, Lambda, samples), kappa);
    if (*ver) return run_verify(g, suite, app.get_option("--format")->count() > 0 && g.format == "json");
    if (*figs) return run_figures(which, fig_dir, fparams);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
