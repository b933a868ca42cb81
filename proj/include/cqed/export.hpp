#pragma once

#include "cqed/sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace cqed {

enum class ExportFormat { Csv, Json, Svg };

/// "csv", "json" or "svg"; throws ConfigError otherwise.
ExportFormat parse_export_format(std::string_view name);

/// Columns: delta, n_ph_numeric, n_ph_analytic, g2_numeric, g2_analytic,
/// conc_numeric, conc_analytic. Undefined values are empty cells; numbers use
/// the shortest representation that round-trips.
void write_csv(std::span<const SweepRecord> records, std::ostream& out);

/// Array of objects keyed by SweepRecord field names; undefined values are null.
void write_json(std::span<const SweepRecord> records, std::ostream& out);
std::vector<SweepRecord> read_json(std::istream& in);

/// Three stacked panels: N_ph and g²(0) on log axes, concurrence on a linear
/// axis, numeric and analytic curves in each (one <path> per series).
void write_svg(std::span<const SweepRecord> records, std::ostream& out);

/// Writes to a file, throwing IoError when the path cannot be written.
void export_records(std::span<const SweepRecord> records, ExportFormat format,
                    const std::filesystem::path& path);

}  // namespace cqed
