/**
 * @file io.hpp
 * @brief CSV and JSON serialization of profiles and convergence reports.
 *
 * CSV: header row, comma separator, '.' decimal point, floats printed with
 * 17 significant digits, complex columns split into `_re` / `_im`.
 *
 * JSON: every command emits one object
 *
 *     { "command": "...", "config": {...}, "results": {...}, "pass": true }
 *
 * Doubles are written in shortest round-trip form, so re-parsing recovers
 * every value bit for bit.
 */
#pragma once

#include <complex>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sphdiff/autocorr.hpp"
#include "sphdiff/errors.hpp"

namespace sphdiff::io {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw domain_error("csv: cannot parse number '" + field + "'");
  }
  if (used != field.size()) throw domain_error("csv: trailing characters in '" + field + "'");
  return v;
}

/// A parsed CSV table: header names and numeric rows. Empty cells become nullopt.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  [[nodiscard]] std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw domain_error("csv: missing column '" + name + "'");
  }
  [[nodiscard]] bool has_column(const std::string& name) const {
    for (const auto& h : header) {
      if (h == name) return true;
    }
    return false;
  }
};

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw domain_error("csv: empty input");
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != table.header.size()) throw domain_error("csv: ragged row");
    std::vector<std::optional<double>> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      row.push_back(c.empty() ? std::nullopt : std::optional<double>(parse_double(c)));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::optional<double>>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    if (cells[i]) out << format_double(*cells[i]);
  }
  out << '\n';
}

// -- RadialProfile ----------------------------------------------------------

inline void write_profile_csv(std::ostream& out, const RadialProfile& prof) {
  prof.validate();
  out << "s,eta_closed";
  if (prof.eta_numeric) out << ",R,eta_numeric_re,eta_numeric_im";
  out << '\n';
  for (std::size_t i = 0; i < prof.s_values.size(); ++i) {
    std::vector<std::optional<double>> row = {prof.s_values[i], prof.eta_closed[i]};
    if (prof.eta_numeric) {
      row.push_back(*prof.R);
      row.push_back((*prof.eta_numeric)[i].real());
      row.push_back((*prof.eta_numeric)[i].imag());
    }
    write_csv_row(out, row);
  }
}

inline RadialProfile read_profile_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  RadialProfile prof;
  const auto cs = t.column("s");
  const auto ce = t.column("eta_closed");
  const bool numeric = t.has_column("eta_numeric_re");
  if (numeric) prof.eta_numeric.emplace();
  for (const auto& row : t.rows) {
    prof.s_values.push_back(row[cs].value());
    prof.eta_closed.push_back(row[ce].value());
    if (numeric) {
      prof.R = row[t.column("R")].value();
      prof.eta_numeric->emplace_back(row[t.column("eta_numeric_re")].value(),
                                     row[t.column("eta_numeric_im")].value());
    }
  }
  prof.validate();
  return prof;
}

inline json to_json(const RadialProfile& prof) {
  json j;
  j["s_values"] = prof.s_values;
  j["eta_closed"] = prof.eta_closed;
  if (prof.eta_numeric) {
    std::vector<double> re, im;
    for (const auto& c : *prof.eta_numeric) {
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    j["R"] = *prof.R;
    j["eta_numeric_re"] = re;
    j["eta_numeric_im"] = im;
  }
  return j;
}

inline RadialProfile profile_from_json(const json& j) {
  RadialProfile prof;
  prof.s_values = j.at("s_values").get<std::vector<double>>();
  prof.eta_closed = j.at("eta_closed").get<std::vector<double>>();
  if (j.contains("eta_numeric_re")) {
    const auto re = j.at("eta_numeric_re").get<std::vector<double>>();
    const auto im = j.at("eta_numeric_im").get<std::vector<double>>();
    if (re.size() != im.size()) throw domain_error("json: eta_numeric columns differ");
    prof.eta_numeric.emplace();
    for (std::size_t i = 0; i < re.size(); ++i) prof.eta_numeric->emplace_back(re[i], im[i]);
    prof.R = j.at("R").get<double>();
  }
  prof.validate();
  return prof;
}

// -- ConvergenceReport ------------------------------------------------------

inline json to_json(const ConvergenceReport& rep) {
  json j;
  j["R_values"] = rep.R_values;
  j["max_abs_error"] = rep.max_abs_error;
  j["max_imag_residual"] = rep.max_imag_residual;
  json ratios = json::array();
  for (const auto& r : rep.decay_ratios) ratios.push_back(r ? json(*r) : json(nullptr));
  j["decay_ratios"] = ratios;
  json samples = json::array();
  for (const auto& smp : rep.samples) {
    samples.push_back({{"R", smp.R},
                       {"s", smp.s},
                       {"eta_numeric_re", smp.eta_numeric.real()},
                       {"eta_numeric_im", smp.eta_numeric.imag()},
                       {"eta_closed", smp.eta_closed},
                       {"boundary_dominated", smp.boundary_dominated}});
  }
  j["samples"] = samples;
  return j;
}

inline ConvergenceReport report_from_json(const json& j) {
  ConvergenceReport rep;
  rep.R_values = j.at("R_values").get<std::vector<double>>();
  rep.max_abs_error = j.at("max_abs_error").get<std::vector<double>>();
  rep.max_imag_residual = j.at("max_imag_residual").get<std::vector<double>>();
  for (const auto& r : j.at("decay_ratios")) {
    rep.decay_ratios.push_back(r.is_null() ? std::nullopt : std::optional<double>(r.get<double>()));
  }
  for (const auto& smp : j.at("samples")) {
    rep.samples.push_back({smp.at("R").get<double>(), smp.at("s").get<double>(),
                           {smp.at("eta_numeric_re").get<double>(),
                            smp.at("eta_numeric_im").get<double>()},
                           smp.at("eta_closed").get<double>(),
                           smp.at("boundary_dominated").get<bool>()});
  }
  const std::size_t n = rep.R_values.size();
  if (rep.max_abs_error.size() != n || rep.max_imag_residual.size() != n ||
      rep.decay_ratios.size() + 1 != n) {
    throw domain_error("json: ConvergenceReport lengths inconsistent");
  }
  return rep;
}

/// One row per R; the decay ratio column is empty on the last row.
inline void write_report_csv(std::ostream& out, const ConvergenceReport& rep) {
  out << "R,max_abs_error,max_imag_residual,decay_ratio\n";
  for (std::size_t i = 0; i < rep.R_values.size(); ++i) {
    const std::optional<double> ratio =
        i < rep.decay_ratios.size() ? rep.decay_ratios[i] : std::nullopt;
    write_csv_row(out, {rep.R_values[i], rep.max_abs_error[i], rep.max_imag_residual[i], ratio});
  }
}

inline ConvergenceReport read_report_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  ConvergenceReport rep;
  const auto cr = t.column("R");
  const auto ce = t.column("max_abs_error");
  const auto ci = t.column("max_imag_residual");
  const auto cd = t.column("decay_ratio");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    rep.R_values.push_back(t.rows[i][cr].value());
    rep.max_abs_error.push_back(t.rows[i][ce].value());
    rep.max_imag_residual.push_back(t.rows[i][ci].value());
    if (i + 1 < t.rows.size()) rep.decay_ratios.push_back(t.rows[i][cd]);
  }
  return rep;
}

// -- Envelope ---------------------------------------------------------------

inline json envelope(const std::string& command, json config, json results, bool pass) {
  json j;
  j["command"] = command;
  j["config"] = std::move(config);
  j["results"] = std::move(results);
  j["pass"] = pass;
  return j;
}

}  // namespace sphdiff::io
