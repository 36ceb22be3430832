#pragma once

// Serialization of run results. JSON keeps insertion order and prints every
// float with 17 significant digits; CSV is comma-separated with a header row
// and LF line endings.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "sigmak/geomodel.hpp"
#include "sigmak/phseries.hpp"
#include "sigmak/verify.hpp"

namespace sigmak::cli {

using Json = nlohmann::ordered_json;

/// %.17g; non-finite values become "nan" / "inf" / "-inf".
std::string format_double(double x);

/// Pretty-printed with two-space indent and a trailing newline. Non-finite
/// floats are written as null.
std::string to_json_text(const Json& j);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// {"order", "leading_log", "terms": [[j, l, coefficient], ...]} over every slot.
Json series_to_json(const PHSeries& s);
CsvTable series_to_csv(const PHSeries& s);

/// "j,c_j" rows for j = 1..n-1 and a final "log,c_log" row.
CsvTable coeffs_to_csv(const ExpansionCoeffs& c);

/// "band_center,residual_sup", bands in order of decreasing d.
CsvTable bands_to_csv(const std::vector<BandStat>& bands);

}  // namespace sigmak::cli
