#include "qsl/io.hpp"

#include "qsl/dynamics.hpp"
#include "qsl/ensembles.hpp"

#include <cstdio>
#include <fstream>

namespace qsl {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::string meta_header(const OutputMeta& meta) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(meta.config_hash));
  std::string out;
  out += std::string("# tool=") + kToolName + " " + kToolVersion + "\n";
  out += "# command=" + meta.command + "\n";
  out += std::string("# config_hash=") + hash + "\n";
  out += "# seed=" + std::to_string(meta.seed) + "\n";
  out += std::string("# rng=") + SampleStream::kAlgorithm + "\n";
  return out;
}

nlohmann::json meta_json(const OutputMeta& meta) {
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(meta.config_hash));
  return nlohmann::json{{"tool", kToolName},
                        {"version", kToolVersion},
                        {"command", meta.command},
                        {"config", nlohmann::json::parse(meta.config_json)},
                        {"config_hash", hash},
                        {"seed", meta.seed},
                        {"rng", SampleStream::kAlgorithm}};
}

CsvBuilder::CsvBuilder(const OutputMeta& meta, const std::vector<std::string>& columns)
    : columns_(columns.size()) {
  text_ = meta_header(meta);
  for (size_t i = 0; i < columns.size(); ++i) {
    text_ += columns[i];
    text_ += i + 1 < columns.size() ? ',' : '\n';
  }
}

void CsvBuilder::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw Error(ErrorCode::InvalidArgument, "CsvBuilder: wrong cell count");
  for (size_t i = 0; i < cells.size(); ++i) {
    text_ += cells[i];
    text_ += i + 1 < cells.size() ? ',' : '\n';
  }
}

void CsvBuilder::row_values(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open for writing: " + path);
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path);
}

std::string json_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json density_to_json(const DensityMatrix& rho) {
  const int d = rho.dim();
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int i = 0; i < d; ++i) {
    nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
    for (int j = 0; j < d; ++j) {
      re_row.push_back(rho.matrix()(i, j).real());
      im_row.push_back(rho.matrix()(i, j).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return nlohmann::json{{"dim", d}, {"re", re}, {"im", im}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  int d = j.at("dim").get<int>();
  Matrix m(d, d);
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      m(i, k) = Complex(re.at(i).at(k).get<double>(), im.at(i).at(k).get<double>());
  return DensityMatrix(m);
}

nlohmann::json bloch_to_json(const BlochVector& r) {
  nlohmann::json components = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.r.size(); ++i) components.push_back(r.r(i));
  return nlohmann::json{{"d", r.d}, {"basis", r.basis}, {"r", components}};
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

std::string orbit_csv(const Orbit& orbit, const OutputMeta& meta) {
  const int d = orbit.initial().dim();
  std::vector<std::string> columns{"t"};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      columns.push_back("re_" + std::to_string(i) + "_" + std::to_string(j));
      columns.push_back("im_" + std::to_string(i) + "_" + std::to_string(j));
    }
  CsvBuilder csv(meta, columns);
  for (int k = 0; k < orbit.nodes(); ++k) {
    std::vector<double> cells{orbit.times[k]};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        cells.push_back(orbit.states[k].matrix()(i, j).real());
        cells.push_back(orbit.states[k].matrix()(i, j).imag());
      }
    csv.row_values(cells);
  }
  return csv.text();
}

}  // namespace qsl
