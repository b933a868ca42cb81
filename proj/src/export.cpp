#include "cqed/export.hpp"

#include "cqed/error.hpp"
#include "cqed/extrema.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

namespace cqed {

using nlohmann::json;

ExportFormat parse_export_format(std::string_view name) {
    if (name == "csv") return ExportFormat::Csv;
    if (name == "json") return ExportFormat::Json;
    if (name == "svg") return ExportFormat::Svg;
    throw ConfigError("unknown export format '" + std::string(name) + "' (expected csv, json or svg)");
}

namespace {

std::string shortest(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string cell(const std::optional<double>& v) { return v ? shortest(*v) : std::string(); }

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    return it->get<double>();
}

}  // namespace

void write_csv(std::span<const SweepRecord> records, std::ostream& out) {
    out << "delta,n_ph_numeric,n_ph_analytic,g2_numeric,g2_analytic,conc_numeric,conc_analytic\n";
    for (const auto& r : records) {
        out << shortest(r.delta) << ',' << cell(r.n_ph_numeric) << ',' << cell(r.n_ph_analytic) << ','
            << cell(r.g2_numeric) << ',' << cell(r.g2_analytic) << ',' << cell(r.conc_numeric) << ','
            << cell(r.conc_analytic) << '\n';
    }
}

void write_json(std::span<const SweepRecord> records, std::ostream& out) {
    json arr = json::array();
    for (const auto& r : records) {
        arr.push_back({
            {"delta", r.delta},
            {"n_ph_numeric", opt(r.n_ph_numeric)},
            {"n_ph_analytic", opt(r.n_ph_analytic)},
            {"g2_numeric", opt(r.g2_numeric)},
            {"g2_analytic", opt(r.g2_analytic)},
            {"conc_numeric", opt(r.conc_numeric)},
            {"conc_analytic", opt(r.conc_analytic)},
            {"kappa", r.kappa},
            {"gamma", r.gamma},
            {"epsilon", r.epsilon},
            {"g", r.g},
            {"n_th", r.n_th},
            {"gamma_d", r.gamma_d},
            {"residual", r.residual},
            {"trace_error", r.trace_error},
            {"hermiticity_error", r.hermiticity_error},
            {"min_eigenvalue", r.min_eigenvalue},
            {"condition_estimate", r.condition_estimate},
            {"error", r.error},
        });
    }
    out << arr.dump(2) << '\n';
}

std::vector<SweepRecord> read_json(std::istream& in) {
    json arr;
    try {
        in >> arr;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed sweep JSON: ") + e.what());
    }
    if (!arr.is_array()) {
        throw IoError("sweep JSON must be an array of records");
    }
    std::vector<SweepRecord> out;
    out.reserve(arr.size());
    try {
        for (const auto& j : arr) {
            SweepRecord r;
            r.delta = j.at("delta").get<double>();
            r.n_ph_numeric = get_opt(j, "n_ph_numeric");
            r.n_ph_analytic = get_opt(j, "n_ph_analytic");
            r.g2_numeric = get_opt(j, "g2_numeric");
            r.g2_analytic = get_opt(j, "g2_analytic");
            r.conc_numeric = get_opt(j, "conc_numeric");
            r.conc_analytic = get_opt(j, "conc_analytic");
            r.kappa = j.at("kappa").get<double>();
            r.gamma = j.at("gamma").get<double>();
            r.epsilon = j.at("epsilon").get<double>();
            r.g = j.at("g").get<double>();
            r.n_th = j.at("n_th").get<double>();
            r.gamma_d = j.at("gamma_d").get<double>();
            r.residual = j.value("residual", 0.0);
            r.trace_error = j.value("trace_error", 0.0);
            r.hermiticity_error = j.value("hermiticity_error", 0.0);
            r.min_eigenvalue = j.value("min_eigenvalue", 0.0);
            r.condition_estimate = j.value("condition_estimate", 0.0);
            r.error = j.value("error", std::string());
            out.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("bad sweep record: ") + e.what());
    }
    return out;
}

namespace {

struct Panel {
    const char* title;
    Series numeric;
    Series analytic;
    bool log_scale;
};

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 220.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kGap = 50.0;

}  // namespace

void write_svg(std::span<const SweepRecord> records, std::ostream& out) {
    const std::array<Panel, 3> panels{{
        {"mean photon number", Series::NphNumeric, Series::NphAnalytic, true},
        {"g2(0)", Series::G2Numeric, Series::G2Analytic, true},
        {"concurrence", Series::ConcNumeric, Series::ConcAnalytic, false},
    }};
    const double height = kTop + panels.size() * (kPanelHeight + kGap);
    const double plot_w = kWidth - kLeft - kRight;

    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    for (const auto& r : records) {
        xmin = std::min(xmin, r.delta);
        xmax = std::max(xmax, r.delta);
    }
    if (!(xmax > xmin)) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    const double g = records.empty() ? 1.0 : records.front().g;
    const std::string xunit = g > 0.0 ? "Delta / g" : "Delta";
    const double xscale = g > 0.0 ? g : 1.0;

    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
        "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\" font-size=\"11\">\n",
        kWidth, height, kWidth, height);
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Panel& panel = panels[p];
        const double top = kTop + p * (kPanelHeight + kGap);

        auto transform = [&](double v) { return panel.log_scale ? std::log10(v) : v; };
        auto usable = [&](const std::optional<double>& v) {
            return v && std::isfinite(*v) && (!panel.log_scale || *v > 0.0);
        };

        double ymin = std::numeric_limits<double>::infinity();
        double ymax = -ymin;
        for (const auto& r : records) {
            for (Series s : {panel.numeric, panel.analytic}) {
                const auto v = series_value(r, s);
                if (usable(v)) {
                    ymin = std::min(ymin, transform(*v));
                    ymax = std::max(ymax, transform(*v));
                }
            }
        }
        if (!panel.log_scale) {
            ymin = std::min(ymin, 0.0);
        }
        if (!std::isfinite(ymin) || !(ymax > ymin)) {
            ymin = std::isfinite(ymin) ? ymin - 1.0 : 0.0;
            ymax = ymin + 2.0;
        }
        auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
        auto py = [&](double y) { return top + kPanelHeight - (y - ymin) / (ymax - ymin) * kPanelHeight; };

        out << fmt::format("<g class=\"panel\" id=\"panel-{}\">\n", p);
        out << fmt::format(
            "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
            "stroke=\"black\"/>\n",
            kLeft, top, plot_w, kPanelHeight);
        out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}{}</text>\n",
                           kLeft + plot_w / 2.0, top - 8.0, panel.log_scale ? "log10 " : "",
                           panel.title);
        for (int t = 0; t <= 4; ++t) {
            const double yv = ymin + (ymax - ymin) * t / 4.0;
            out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n",
                               kLeft - 6.0, py(yv) + 4.0, yv);
            const double xv = xmin + (xmax - xmin) * t / 4.0;
            out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.3g}</text>\n",
                               px(xv), top + kPanelHeight + 14.0, xv / xscale);
        }
        out << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                           kLeft + plot_w / 2.0, top + kPanelHeight + 30.0, xunit);

        for (Series s : {panel.numeric, panel.analytic}) {
            const bool numeric = s == panel.numeric;
            std::string d;
            bool pen_down = false;
            for (const auto& r : records) {
                const auto v = series_value(r, s);
                if (!usable(v)) {
                    pen_down = false;
                    continue;
                }
                d += fmt::format("{}{:.2f},{:.2f} ", pen_down ? 'L' : 'M', px(r.delta),
                                 py(transform(*v)));
                pen_down = true;
            }
            out << fmt::format(
                "<path class=\"series\" data-series=\"{}\" d=\"{}\" fill=\"none\" stroke=\"{}\" "
                "stroke-width=\"1.2\"{}/>\n",
                to_string(s), d, numeric ? "#1f4fd1" : "#d12a1f",
                numeric ? "" : " stroke-dasharray=\"5,3\"");
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
}

void export_records(std::span<const SweepRecord> records, ExportFormat format,
                    const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    switch (format) {
        case ExportFormat::Csv:
            write_csv(records, out);
            break;
        case ExportFormat::Json:
            write_json(records, out);
            break;
        case ExportFormat::Svg:
            write_svg(records, out);
            break;
    }
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace cqed
