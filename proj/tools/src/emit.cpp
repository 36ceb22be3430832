#include "sigmak_cli/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sigmak::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_json(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(key).dump() << ": ";
        write_json(os, value, indent + 2);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      os << (flat ? "[" : "[\n");
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (flat ? ", " : ",\n");
        first = false;
        if (!flat) os << pad;
        write_json(os, e, indent + 2);
      }
      os << (flat ? "]" : "\n" + close_pad + "]");
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string to_json_text(const Json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << "\n";
  return os.str();
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("CsvTable: row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

Json series_to_json(const PHSeries& s) {
  Json terms = Json::array();
  for (int j = 0; j <= s.order(); ++j) {
    for (int l = 0; l <= 1; ++l) terms.push_back(Json::array({j, l, s.coeff(j, l)}));
  }
  Json out;
  out["order"] = s.order();
  out["leading_log"] = s.leading_log();
  out["terms"] = std::move(terms);
  return out;
}

CsvTable series_to_csv(const PHSeries& s) {
  CsvTable t({"j", "l", "coefficient"});
  for (int j = 0; j <= s.order(); ++j) {
    for (int l = 0; l <= 1; ++l) t.add_row({std::to_string(j), std::to_string(l), format_double(s.coeff(j, l))});
  }
  return t;
}

CsvTable coeffs_to_csv(const ExpansionCoeffs& c) {
  CsvTable t({"j", "c_j"});
  for (std::size_t j = 0; j < c.c.size(); ++j) t.add_row({std::to_string(j + 1), format_double(c.c[j])});
  t.add_row({"log", format_double(c.c_log)});
  return t;
}

CsvTable bands_to_csv(const std::vector<BandStat>& bands) {
  CsvTable t({"band_center", "residual_sup"});
  for (const auto& b : bands) t.add_row({format_double(b.center), format_double(b.sup)});
  return t;
}

}  // namespace sigmak::cli
