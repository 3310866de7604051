#pragma once

#include <string>
#include <utility>
#include <vector>

#include "epcl/io.hpp"
#include "epcl/lattice.hpp"

namespace epcl::figures {

struct FigureParams {
  SiteIndex lattice_half_width = 30;  ///< site range of the coupling / mode panels
  SiteIndex scatter_N = 200;
  std::size_t grid_points = 2001;
  double T = 20.0;
  SiteIndex map_half_width = 60;      ///< site range stored in the intensity maps
  double map_interval = 0.2;          ///< time spacing of intensity-map rows
};

/// Tables of one figure panel, keyed by file stem (e.g. "fig3a_map").
struct FigureEntry {
  std::string id;
  std::vector<std::pair<std::string, io::Table>> tables;
};

/// fig1a fig1b fig1c fig1d fig2a fig3a fig3b fig4a fig4b
const std::vector<std::string>& figure_ids();

/// Unknown ids raise rejected_input.
FigureEntry emit_figure_data(const std::string& id, const FigureParams& params = {});

/// gnuplot script plotting every table of `entries` from ".dat" files next to it.
std::string gnuplot_stub(const std::vector<FigureEntry>& entries);

}  // namespace epcl::figures
