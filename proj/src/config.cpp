#include "cqed/config.hpp"

#include "cqed/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace cqed {

namespace pt = boost::property_tree;

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::Delta:
            return "delta";
        case SweepVariable::Kappa:
            return "kappa";
        case SweepVariable::NTh:
            return "n_th";
    }
    return "unknown";
}

SweepVariable parse_sweep_variable(std::string_view name) {
    if (name == "delta") return SweepVariable::Delta;
    if (name == "kappa") return SweepVariable::Kappa;
    if (name == "n_th") return SweepVariable::NTh;
    throw ConfigError("unknown sweep variable '" + std::string(name) + "' (expected delta, kappa or n_th)");
}

std::vector<double> SweepSpec::grid() const {
    if (!values.empty()) {
        for (double v : values) {
            if (!std::isfinite(v)) {
                throw ConfigError("sweep values must be finite");
            }
        }
        return values;
    }
    if (points < 1) {
        throw ConfigError("sweep needs at least one point");
    }
    if (!std::isfinite(from) || !std::isfinite(to)) {
        throw ConfigError("sweep range must be finite");
    }
    if (points > 1 && from == to) {
        throw ConfigError("sweep range is empty");
    }
    if (log_spaced && (from <= 0.0 || to <= 0.0)) {
        throw ConfigError("log-spaced sweep needs a positive range");
    }
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = from;
        return out;
    }
    for (int k = 0; k < points; ++k) {
        const double t = static_cast<double>(k) / (points - 1);
        out[k] = log_spaced ? std::exp(std::log(from) + t * (std::log(to) - std::log(from)))
                            : from + t * (to - from);
    }
    // Pin the endpoints exactly.
    out.front() = from;
    out.back() = to;
    return out;
}

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stod(item, &used));
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw ConfigError("trailing characters in number '" + item + "'");
        }
    }
    return out;
}

// ptree's get(key, default) silently falls back on unparsable text; these
// reject it instead.
double number(const pt::ptree& node, const char* key, double fallback) {
    const auto text = node.get_optional<std::string>(key);
    if (!text) {
        return fallback;
    }
    const auto values = parse_list(*text);
    if (values.size() != 1) {
        throw ConfigError(std::string("expected one number for '") + key + "', got '" + *text + "'");
    }
    return values.front();
}

int integer(const pt::ptree& node, const char* key, int fallback) {
    const double v = number(node, key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError(std::string("expected an integer for '") + key + "'");
    }
    return static_cast<int>(v);
}

bool boolean(const pt::ptree& node, const char* key, bool fallback) {
    const auto text = node.get_optional<std::string>(key);
    if (!text) {
        return fallback;
    }
    if (*text == "true" || *text == "1") return true;
    if (*text == "false" || *text == "0") return false;
    throw ConfigError(std::string("expected true or false for '") + key + "', got '" + *text + "'");
}

LabConfig from_tree(const pt::ptree& tree) {
    LabConfig cfg;
    ModelParams& m = cfg.model;
    try {
        if (auto model = tree.get_child_optional("model")) {
            m.g = number(*model, "g", m.g);
            if (model->get_optional<std::string>("delta")) {
                m.set_detuning(number(*model, "delta", 0.0));
            }
            m.delta_a = number(*model, "delta_a", m.delta_a);
            m.epsilon = number(*model, "epsilon", m.epsilon);
            m.kappa = number(*model, "kappa", m.kappa);
            m.gamma = number(*model, "gamma", m.gamma);
            m.n_th = number(*model, "n_th", m.n_th);
            m.gamma_d = number(*model, "gamma_d", m.gamma_d);
        }
        if (auto num = tree.get_child_optional("numerics")) {
            m.photon_cutoff = integer(*num, "photon_cutoff", m.photon_cutoff);
            Numerics& n = cfg.numerics;
            n.matrix_tolerance = number(*num, "matrix_tolerance", n.matrix_tolerance);
            n.positivity_tolerance = number(*num, "positivity_tolerance", n.positivity_tolerance);
            n.convergence_threshold = number(*num, "convergence_threshold", n.convergence_threshold);
            n.workers = integer(*num, "workers", n.workers);
        }

        SweepSpec& s = cfg.sweep;
        s.from = -2.5 * m.g;
        s.to = 2.5 * m.g;
        if (auto sw = tree.get_child_optional("sweep")) {
            s.variable = parse_sweep_variable(sw->get<std::string>("var", "delta"));
            if (s.variable != SweepVariable::Delta) {
                s.from = s.to = 0.0;
            }
            s.from = number(*sw, "from", s.from);
            s.to = number(*sw, "to", s.to);
            s.points = integer(*sw, "points", s.points);
            const auto scale = sw->get<std::string>("scale", "linear");
            if (scale != "linear" && scale != "log") {
                throw ConfigError("unknown sweep scale '" + scale + "' (expected linear or log)");
            }
            s.log_spaced = scale == "log";
            s.tie_gamma_to_kappa = boolean(*sw, "tie_gamma_to_kappa", false);
            if (auto vals = sw->get_optional<std::string>("values")) {
                s.values = parse_list(*vals);
            }
        }
        if (auto th = tree.get_child_optional("thermal")) {
            if (auto ladder = th->get_optional<std::string>("ladder")) {
                cfg.n_th_ladder = parse_list(*ladder);
            }
        }
    } catch (const pt::ptree_error& e) {
        throw ConfigError(std::string("bad configuration value: ") + e.what());
    }
    try {
        m.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

}  // namespace

LabConfig parse_config(std::string_view text) {
    std::istringstream in{std::string(text)};
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    return from_tree(tree);
}

LabConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open configuration file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace cqed
