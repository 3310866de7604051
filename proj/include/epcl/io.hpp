#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "epcl/lattice.hpp"

namespace epcl::io {

inline constexpr std::string_view kFormatVersion = "epcl-v1";

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_double(double x);

// Lattice JSON:
//   {"format": "epcl-v1", "n_min": int, "kappa": [[re, im], ...], "v": [[re, im], ...], "kappa_asym": re}
// kappa[i] is the hopping on bond (n-1, n) for n = n_min + i.
std::string lattice_to_json(const Lattice& lat);
Lattice lattice_from_json(std::string_view text);
void write_lattice(const std::string& path, const Lattice& lat);
Lattice read_lattice(const std::string& path);

// StateVector CSV: "# format: epcl-v1" comment, header "n,re,im", one row per site.
void write_state_csv(std::ostream& os, const StateVector& psi);
StateVector read_state_csv(std::istream& is);
void write_state(const std::string& path, const StateVector& psi);
StateVector read_state(const std::string& path);

/// Numeric table with named columns; comment lines are written first, prefixed with '#'.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// Comma-separated with a header line.
void write_csv(std::ostream& os, const Table& table);
/// Whitespace-separated; the header is a '#' comment line.
void write_dat(std::ostream& os, const Table& table);
/// Chooses the layout from the extension: ".csv" gives CSV, anything else whitespace.
void write_table(const std::string& path, const Table& table);

}  // namespace epcl::io
