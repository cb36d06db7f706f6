#pragma once

#include <string>

#include "gsimplex/distributions.hpp"
#include "gsimplex/sampling.hpp"

namespace gsimplex {

/// CSV with columns x,pdf,cdf; 17 significant digits, '.' decimal point.
std::string grid_density_to_csv(const GridDensity& gd);

/// JSON object: {"spec": {"coefficient", "dofs"}, "x", "pdf", "cdf", "tolerance"}.
std::string grid_density_to_json(const GridDensity& gd);

/// One value per row, preceded by '#' metadata header comments.
std::string empirical_sample_to_csv(const EmpiricalSample& sample);

std::string empirical_sample_to_json(const EmpiricalSample& sample);

/// Formats a double with 17 significant digits, locale independent.
std::string format_double(double v);

/// Writes content to path via a temporary file plus rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace gsimplex
