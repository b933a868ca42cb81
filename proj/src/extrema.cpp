#include "cqed/extrema.hpp"

#include "cqed/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <vector>

namespace cqed {

std::string_view to_string(ExtremumKind kind) {
    switch (kind) {
        case ExtremumKind::AntibunchingMin:
            return "antibunching-min";
        case ExtremumKind::BunchingMax:
            return "bunching-max";
        case ExtremumKind::ConcurrenceMax:
            return "concurrence-max";
        case ExtremumKind::DarkStateMax:
            return "dark-state-max";
    }
    return "unknown";
}

std::string_view to_string(Series series) {
    switch (series) {
        case Series::NphNumeric:
            return "n_ph_numeric";
        case Series::NphAnalytic:
            return "n_ph_analytic";
        case Series::G2Numeric:
            return "g2_numeric";
        case Series::G2Analytic:
            return "g2_analytic";
        case Series::ConcNumeric:
            return "conc_numeric";
        case Series::ConcAnalytic:
            return "conc_analytic";
    }
    return "unknown";
}

std::optional<double> series_value(const SweepRecord& r, Series series) {
    switch (series) {
        case Series::NphNumeric:
            return r.n_ph_numeric;
        case Series::NphAnalytic:
            return r.n_ph_analytic;
        case Series::G2Numeric:
            return r.g2_numeric;
        case Series::G2Analytic:
            return r.g2_analytic;
        case Series::ConcNumeric:
            return r.conc_numeric;
        case Series::ConcAnalytic:
            return r.conc_analytic;
    }
    return std::nullopt;
}

namespace {

struct Candidate {
    double ideal;
    ExtremumKind kind;
};

Candidate nearest(double location, std::span<const Candidate> candidates) {
    Candidate best = candidates.front();
    double best_distance = std::abs(location - best.ideal);
    for (const auto& c : candidates.subspan(1)) {
        const double d = std::abs(location - c.ideal);
        if (d < best_distance || (d == best_distance && std::abs(c.ideal) < std::abs(best.ideal))) {
            best = c;
            best_distance = d;
        }
    }
    return best;
}

// Vertex of the parabola through three points; falls back to the middle
// sample when the points are collinear.
std::pair<double, double> refine(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (curvature == 0.0 || !std::isfinite(curvature)) {
        return {x1, y1};
    }
    // y = y1 + b (x − x1) + c (x − x1)², with c = curvature.
    const double b = d01 + curvature * (x1 - x0);
    double xv = x1 - b / (2.0 * curvature);
    xv = std::clamp(xv, x0, x2);
    const double t = xv - x1;
    return {xv, y1 + b * t + curvature * t * t};
}

}  // namespace

std::vector<ExtremumReport> find_extrema(std::span<const SweepRecord> records, Series series) {
    if (records.size() < 5) {
        throw InsufficientData(
            fmt::format("extremum search needs at least 5 points, got {}", records.size()));
    }
    const bool is_g2 = series == Series::G2Numeric || series == Series::G2Analytic;
    const bool is_conc = series == Series::ConcNumeric || series == Series::ConcAnalytic;
    if (!is_g2 && !is_conc) {
        throw ArgumentError(fmt::format("no extremum classification for series {}", to_string(series)));
    }

    const double g = records.front().g;
    const double root2 = std::sqrt(2.0) * g;
    const double root6_2 = std::sqrt(6.0) / 2.0 * g;
    const std::vector<Candidate> antibunching{{root2, ExtremumKind::AntibunchingMin},
                                              {-root2, ExtremumKind::AntibunchingMin}};
    const std::vector<Candidate> g2_peaks{{0.0, ExtremumKind::DarkStateMax},
                                          {root6_2, ExtremumKind::BunchingMax},
                                          {-root6_2, ExtremumKind::BunchingMax}};
    const std::vector<Candidate> conc_peaks{{root6_2, ExtremumKind::ConcurrenceMax},
                                            {-root6_2, ExtremumKind::ConcurrenceMax},
                                            {root2, ExtremumKind::ConcurrenceMax},
                                            {-root2, ExtremumKind::ConcurrenceMax}};

    auto log_value = [&](std::size_t k) -> std::optional<double> {
        const auto v = series_value(records[k], series);
        if (!v || !(*v > 0.0) || !std::isfinite(*v)) {
            return std::nullopt;
        }
        return std::log(*v);
    };

    std::vector<ExtremumReport> out;
    for (std::size_t k = 1; k + 1 < records.size(); ++k) {
        const auto ym = log_value(k - 1);
        const auto y0 = log_value(k);
        const auto yp = log_value(k + 1);
        if (!ym || !y0 || !yp) {
            continue;
        }
        const bool is_min = *y0 < *ym && *y0 < *yp;
        const bool is_max = *y0 > *ym && *y0 > *yp;
        if (!is_min && !is_max) {
            continue;
        }
        if (is_conc && is_min) {
            continue;
        }
        const auto [x, y] = refine(records[k - 1].delta, *ym, records[k].delta, *y0,
                                   records[k + 1].delta, *yp);
        const Candidate c = nearest(x, is_min ? std::span<const Candidate>(antibunching)
                                              : std::span<const Candidate>(is_g2 ? g2_peaks : conc_peaks));
        ExtremumReport rep;
        rep.kind = c.kind;
        rep.location = x;
        rep.value = std::exp(y);
        rep.ideal_location = c.ideal;
        rep.relative_offset = g != 0.0 ? std::abs(x - c.ideal) / std::abs(g) : std::abs(x - c.ideal);
        out.push_back(rep);
    }
    return out;
}

}  // namespace cqed
