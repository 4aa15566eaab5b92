#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "qsl/states.hpp"

namespace qsl {

inline constexpr const char* kToolName = "qsl";
inline constexpr const char* kToolVersion = "0.1.0";

/// 17-significant-digit, locale-independent formatting; round-trips doubles.
std::string format_double(double x);

std::uint64_t fnv1a64(const std::string& text);

struct OutputMeta {
  std::string command;
  std::string config_json;  // canonical serialization of the run configuration
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
};

/// Header lines ("# key=value") embedded at the top of every CSV output.
std::string meta_header(const OutputMeta& meta);

nlohmann::json meta_json(const OutputMeta& meta);

/// Tidy CSV assembled in memory and written in one pass: metadata header,
/// column row, then one observation per row.
class CsvBuilder {
 public:
  CsvBuilder(const OutputMeta& meta, const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void row_values(const std::vector<double>& values);
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  size_t columns_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string json_dump(const nlohmann::json& j);

nlohmann::json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& j);
nlohmann::json bloch_to_json(const BlochVector& r);
nlohmann::json matrix_to_json(const Matrix& m);

/// Orbit export: metadata header, then t and the row-major state entries.
std::string orbit_csv(const struct Orbit& orbit, const OutputMeta& meta);

}  // namespace qsl
