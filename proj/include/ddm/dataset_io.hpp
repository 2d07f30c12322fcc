#pragma once

#include "ddm/experiments.hpp"

#include <filesystem>
#include <string>

namespace ddm {

/// CSV layout: `# key = value` metadata lines, then a header row, then one
/// row per sample. Values are written with 17 significant digits; lines end
/// with LF.
std::string to_csv(const Dataset& ds);
Dataset parse_csv(const std::string& text);

void write_csv(const Dataset& ds, const std::filesystem::path& path);
Dataset read_csv(const std::filesystem::path& path);

/// gnuplot script that plots every column against the first one, reading
/// `csv_name` from the script's directory.
std::string plot_script(const Dataset& ds, const std::string& csv_name, const std::string& title);

} // namespace ddm
