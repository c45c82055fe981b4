// CSV emission with a JSON sidecar carrying the full run configuration.
// Floating-point values are printed with %.17g so identical runs produce
// byte-identical files.

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace polsim {

std::string format_double(double x);

// Writes `rows` under a header line; every cell is formatted with
// format_double. Throws std::runtime_error when the file cannot be opened.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// Variant with pre-formatted cells, for columns that are not numeric.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

// Writes `<csv_path>.json` next to the data file.
void write_json_sidecar(const std::string& csv_path, const nlohmann::json& config);

}  // namespace polsim
