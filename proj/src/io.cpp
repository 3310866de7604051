#include "epcl/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epcl/error.hpp"

namespace epcl::io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

json complex_array(std::span<const cd> values) {
  json arr = json::array();
  for (cd z : values) arr.push_back(json::array({z.real(), z.imag()}));
  return arr;
}

std::vector<cd> parse_complex_array(const json& doc, const char* field) {
  if (!doc.contains(field)) fail(ErrorKind::schema, std::string("lattice JSON: missing field '") + field + "'");
  const json& arr = doc.at(field);
  if (!arr.is_array()) fail(ErrorKind::schema, std::string("lattice JSON: field '") + field + "' must be an array");
  std::vector<cd> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& e = arr[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      fail(ErrorKind::schema, std::string("lattice JSON: field '") + field + "' entry " + std::to_string(i) +
                                  " must be [re, im]");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

double parse_double(std::string_view s, std::size_t line) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    fail(ErrorKind::schema, "state CSV line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return x;
}

}  // namespace

std::string lattice_to_json(const Lattice& lat) {
  json doc;
  doc["format"] = kFormatVersion;
  doc["n_min"] = lat.window().n_min;
  doc["kappa"] = complex_array(lat.kappas());
  doc["v"] = complex_array(lat.potentials());
  doc["kappa_asym"] = lat.kappa_asym();
  return doc.dump(1);
}

Lattice lattice_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::schema, std::string("lattice JSON: parse error: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::schema, "lattice JSON: top level must be an object");
  if (doc.contains("format") && doc["format"] != kFormatVersion) {
    fail(ErrorKind::schema, "lattice JSON: field 'format' must be \"epcl-v1\"");
  }
  if (!doc.contains("n_min") || !doc["n_min"].is_number_integer()) {
    fail(ErrorKind::schema, "lattice JSON: field 'n_min' must be an integer");
  }
  auto kappa = parse_complex_array(doc, "kappa");
  auto v = parse_complex_array(doc, "v");
  if (!doc.contains("kappa_asym") || !doc["kappa_asym"].is_number()) {
    fail(ErrorKind::schema, "lattice JSON: field 'kappa_asym' must be a number");
  }
  if (kappa.empty() || kappa.size() != v.size()) {
    fail(ErrorKind::schema, "lattice JSON: fields 'kappa' and 'v' must be non-empty and of equal length");
  }
  const auto n_min = doc["n_min"].get<SiteIndex>();
  const SiteWindow w(n_min, n_min + static_cast<SiteIndex>(kappa.size()) - 1);
  return Lattice(w, std::move(kappa), std::move(v), doc["kappa_asym"].get<double>());
}

void write_lattice(const std::string& path, const Lattice& lat) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::rejected_input, "cannot open '" + path + "' for writing");
  os << lattice_to_json(lat) << '\n';
}

Lattice read_lattice(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::rejected_input, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return lattice_from_json(ss.str());
}

void write_state_csv(std::ostream& os, const StateVector& psi) {
  os << "# format: " << kFormatVersion << '\n' << "n,re,im\n";
  for (SiteIndex n = psi.window().n_min; n <= psi.window().n_max; ++n) {
    os << n << ',' << format_double(psi[n].real()) << ',' << format_double(psi[n].imag()) << '\n';
  }
}

StateVector read_state_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<SiteIndex> sites;
  std::vector<cd> amp;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != "n,re,im") fail(ErrorKind::schema, "state CSV: expected header 'n,re,im'");
      header = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      fail(ErrorKind::schema, "state CSV line " + std::to_string(lineno) + ": expected 3 columns");
    }
    const std::string_view sv(line);
    SiteIndex n = 0;
    const auto r = std::from_chars(sv.data(), sv.data() + c1, n);
    if (r.ec != std::errc{} || r.ptr != sv.data() + c1) {
      fail(ErrorKind::schema, "state CSV line " + std::to_string(lineno) + ": bad site index");
    }
    if (!sites.empty() && n != sites.back() + 1) {
      fail(ErrorKind::schema, "state CSV line " + std::to_string(lineno) + ": sites must be consecutive");
    }
    sites.push_back(n);
    amp.emplace_back(parse_double(sv.substr(c1 + 1, c2 - c1 - 1), lineno), parse_double(sv.substr(c2 + 1), lineno));
  }
  if (!header || sites.empty()) fail(ErrorKind::schema, "state CSV: no data rows");
  return StateVector(SiteWindow(sites.front(), sites.back()), std::move(amp));
}

void write_state(const std::string& path, const StateVector& psi) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::rejected_input, "cannot open '" + path + "' for writing");
  write_state_csv(os, psi);
}

StateVector read_state(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorKind::rejected_input, "cannot open '" + path + "'");
  return read_state_csv(is);
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) fail(ErrorKind::rejected_input, "table row width does not match the header");
  rows.push_back(std::move(row));
}

namespace {

void write_rows(std::ostream& os, const Table& table, char sep) {
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << sep;
      os << format_double(row[i]);
    }
    os << '\n';
  }
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  os << "# format: " << kFormatVersion << '\n';
  for (const auto& c : table.comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  write_rows(os, table, ',');
}

void write_dat(std::ostream& os, const Table& table) {
  os << "# format: " << kFormatVersion << '\n';
  for (const auto& c : table.comments) os << "# " << c << '\n';
  os << '#';
  for (const auto& c : table.columns) os << ' ' << c;
  os << '\n';
  write_rows(os, table, ' ');
}

void write_table(const std::string& path, const Table& table) {
  std::ofstream os(path);
  if (!os) fail(ErrorKind::rejected_input, "cannot open '" + path + "' for writing");
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
    write_csv(os, table);
  } else {
    write_dat(os, table);
  }
}

}  // namespace epcl::io
