#include "epcl/figures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "epcl/darboux.hpp"
#include "epcl/dynamics.hpp"
#include "epcl/ep_models.hpp"
#include "epcl/scattering.hpp"

namespace epcl::figures {

namespace {

using std::numbers::pi;

darboux::SeedParams figure1_seed() {
  darboux::SeedParams s;
  s.q0 = pi / 4;
  s.sigma = pi / 3;
  s.lambda = cd{0.0, 1.0};
  return s;
}

models::PtLatticeSpec spec(SiteIndex half_width) {
  models::PtLatticeSpec s;
  s.window = SiteWindow::symmetric(half_width);
  return s;
}

io::Table complex_profile(const std::string& comment, const std::string& name, SiteWindow w,
                          const std::function<cd(SiteIndex)>& value) {
  io::Table t;
  t.comments.push_back(comment);
  t.columns = {"n", "Re(" + name + ")", "Im(" + name + ")"};
  for (SiteIndex n = w.n_min; n <= w.n_max; ++n) {
    const cd z = value(n);
    t.add_row({static_cast<double>(n), z.real(), z.imag()});
  }
  return t;
}

FigureEntry propagation(const std::string& id, const Lattice& lat, const FigureParams& p) {
  dynamics::IntegratorConfig cfg;
  cfg.T = p.T;
  cfg.half_width = static_cast<SiteIndex>(std::ceil(2.0 * lat.kappa_asym() * p.T)) + 40;
  cfg.sample_interval = p.map_interval;
  const auto traj = dynamics::evolve(lat.restrict_to(SiteWindow::symmetric(cfg.half_width)),
                                     StateVector::delta(SiteWindow(0, 0), 0), cfg);
  io::Table map;
  map.comments.push_back("single-site excitation c_n(0) = delta_n0; intensity |c_n(t)|^2");
  map.columns = {"t(1/kappa)", "n", "|c_n|^2"};
  const SiteIndex m = std::min(p.map_half_width, cfg.half_width);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    for (SiteIndex n = -m; n <= m; ++n) map.add_row({traj.times[i], static_cast<double>(n), std::norm(traj.states[i][n])});
  }
  io::Table pw;
  pw.comments.push_back("square root of the normalized total power");
  pw.columns = {"t(1/kappa)", "sqrt(P/P0)"};
  for (std::size_t i = 0; i < traj.size(); ++i) pw.add_row({traj.times[i], std::sqrt(traj.power[i] / traj.power.front())});
  return {id, {{id + "_map", std::move(map)}, {id + "_power", std::move(pw)}}};
}

FigureEntry transmission(const std::string& id, const Lattice& lat, const FigureParams& p) {
  const auto grid = scattering::uniform_grid(p.grid_points);
  const auto s = scattering::spectrum(lat, grid, p.scatter_N);
  io::Table t;
  t.comments.push_back("left incidence, N = " + std::to_string(p.scatter_N));
  t.columns = {"q(rad)", "|t|^2", "|r|^2", "arg(t)(rad)"};
  for (const auto& r : s.records) t.add_row({r.q, r.abs_t2(), r.abs_r2(), r.arg_t()});
  return {id, {{id, std::move(t)}}};
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig1a", "fig1b", "fig1c", "fig1d", "fig2a",
                                            "fig3a", "fig3b", "fig4a", "fig4b"};
  return ids;
}

FigureEntry emit_figure_data(const std::string& id, const FigureParams& p) {
  const SiteWindow w = SiteWindow::symmetric(p.lattice_half_width);
  if (id == "fig1a" || id == "fig1b" || id == "fig1c" || id == "fig1d") {
    const auto seed = figure1_seed();
    const auto dd = darboux::double_darboux_closed_form(seed, w);
    const double k = seed.kappa;
    const std::string about = "lambda = i, q0 = pi/4, sigma = pi/3";
    io::Table t;
    if (id == "fig1a") t = complex_profile(about, "kappa_n/kappa", w, [&](SiteIndex n) { return dd.h3.kappa(n) / k; });
    if (id == "fig1b") t = complex_profile(about, "V_n/kappa", w, [&](SiteIndex n) { return dd.h3.v(n) / k; });
    if (id == "fig1c") t = complex_profile(about, "omega_n", w, [&](SiteIndex n) { return dd.omega[n]; });
    if (id == "fig1d") {
      const auto f = darboux::associated_function(seed, w);
      t = complex_profile(about, "f_n", w, [&](SiteIndex n) { return f[n]; });
    }
    return {id, {{id, std::move(t)}}};
  }
  if (id == "fig2a") {
    const Lattice lat = models::pt_lattice(spec(p.lattice_half_width));
    return {id, {{id, complex_profile("PT lattice, kappa_0 = -kappa_1 = i kappa", "kappa_n/kappa", w,
                                      [&](SiteIndex n) { return lat.kappa(n) / lat.kappa_asym(); })}}};
  }
  const SiteIndex big = std::max<SiteIndex>(p.scatter_N, static_cast<SiteIndex>(std::ceil(2.0 * p.T)) + 40);
  if (id == "fig3a") return propagation(id, models::pt_lattice(spec(big)), p);
  if (id == "fig3b") return propagation(id, models::hermitian_counterpart(spec(big)), p);
  if (id == "fig4a") return transmission(id, models::pt_lattice(spec(big)), p);
  if (id == "fig4b") return transmission(id, models::hermitian_counterpart(spec(big)), p);
  fail(ErrorKind::rejected_input, "unknown figure id '" + id + "'");
}

std::string gnuplot_stub(const std::vector<FigureEntry>& entries) {
  std::ostringstream os;
  os << "# gnuplot stub; run from the directory holding the .dat files\n"
     << "set terminal pngcairo size 900,600\n";
  for (const auto& e : entries) {
    for (const auto& [stem, table] : e.tables) {
      os << "\nset output '" << stem << ".png'\n";
      os << "set xlabel '" << table.columns[0] << "'\n";
      if (stem.ends_with("_map")) {
        os << "set ylabel 'n'\nplot '" << stem << ".dat' using 1:2:3 with image title '" << table.columns[2] << "'\n";
        continue;
      }
      os << "plot ";
      for (std::size_t c = 1; c < table.columns.size(); ++c) {
        os << (c > 1 ? ", \\\n     " : "") << "'" << stem << ".dat' using 1:" << c + 1 << " with linespoints title '"
           << table.columns[c] << "'";
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace epcl::figures
