#include "gsimplex/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gsimplex {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string grid_density_to_csv(const GridDensity& gd) {
  std::ostringstream out;
  out << "x,pdf,cdf\n";
  for (std::size_t i = 0; i < gd.grid.size(); ++i) {
    out << format_double(gd.grid[i]) << "," << format_double(gd.pdf[i]) << ","
        << format_double(gd.cdf[i]) << "\n";
  }
  return out.str();
}

std::string grid_density_to_json(const GridDensity& gd) {
  nlohmann::ordered_json j;
  j["spec"] = {{"coefficient", gd.spec.coefficient}, {"dofs", gd.spec.dofs}};
  j["x"] = gd.grid;
  j["pdf"] = gd.pdf;
  j["cdf"] = gd.cdf;
  j["tolerance"] = gd.tolerance;
  return j.dump(2) + "\n";
}

std::string empirical_sample_to_csv(const EmpiricalSample& sample) {
  std::ostringstream out;
  out << "# experiment: " << sample.meta.experiment << "\n";
  out << "# seed: " << sample.meta.seed << "\n";
  out << "# base_stream: " << sample.meta.base_stream << "\n";
  out << "# stream_policy: " << sample.meta.stream_policy << "\n";
  out << "# n: " << sample.meta.n << "\n";
  out << "value\n";
  for (double v : sample.values) {
    out << format_double(v) << "\n";
  }
  return out.str();
}

std::string empirical_sample_to_json(const EmpiricalSample& sample) {
  nlohmann::ordered_json j;
  j["meta"] = {{"experiment", sample.meta.experiment},
               {"seed", sample.meta.seed},
               {"base_stream", sample.meta.base_stream},
               {"stream_policy", sample.meta.stream_policy},
               {"n", sample.meta.n}};
  j["values"] = sample.values;
  return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open temporary file: " + tmp);
    }
    out << content;
    if (!out.good()) {
      throw std::runtime_error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

}  // namespace gsimplex
