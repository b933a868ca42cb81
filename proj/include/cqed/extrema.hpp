#pragma once

#include "cqed/sweep.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cqed {

enum class ExtremumKind { AntibunchingMin, BunchingMax, ConcurrenceMax, DarkStateMax };

std::string_view to_string(ExtremumKind kind);

/// Observable column of a SweepRecord.
enum class Series { NphNumeric, NphAnalytic, G2Numeric, G2Analytic, ConcNumeric, ConcAnalytic };

std::string_view to_string(Series series);
std::optional<double> series_value(const SweepRecord& r, Series series);

struct ExtremumReport {
    ExtremumKind kind = ExtremumKind::AntibunchingMin;
    double location = 0.0;        ///< refined Δ
    double value = 0.0;           ///< observable at the refined location
    double ideal_location = 0.0;  ///< ±√2g, ±(√6/2)g or 0
    double relative_offset = 0.0; ///< |location − ideal_location| / g
};

/// Interior local extrema of a detuning sweep.
///
/// Candidates come from a strict 3-point comparison and are refined with a
/// parabola through the logarithm of the three samples. g²(0) minima are
/// matched to ±√2g (antibunching); g²(0) maxima to the nearest of 0 (dark
/// state) and ±(√6/2)g (bunching); concurrence maxima to the nearest of
/// ±√2g and ±(√6/2)g. Ties go to the smaller |Δ|. Points where the series is
/// undefined or non-positive break the comparison.
///
/// Records must be sorted by Δ. Throws InsufficientData for fewer than 5
/// records and ArgumentError for N_ph series (no extremum model).
std::vector<ExtremumReport> find_extrema(std::span<const SweepRecord> records, Series series);

}  // namespace cqed
