#include "qshannon/sweep.hpp"

#include <cmath>
#include <sstream>

#include "qshannon/common.hpp"

namespace qshannon::sweep {

namespace {

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw InvalidArgument("not a number: '" + text + "'");
    }
    return v;
}

}  // namespace

SweepSpec SweepSpec::parse(const std::string& text, bool log) {
    SweepSpec spec;
    spec.log = log;
    if (text.empty()) {
        spec.is_list = true;
        return spec;
    }
    if (text.find(',') != std::string::npos) {
        spec.is_list = true;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) spec.explicit_values.push_back(parse_number(item));
        }
        return spec;
    }
    const auto first = text.find(':');
    if (first == std::string::npos) {
        spec.start = spec.stop = parse_number(text);
        spec.steps = 1;
        return spec;
    }
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) {
        throw InvalidArgument("sweep must be start:stop:steps, got '" + text + "'");
    }
    spec.start = parse_number(text.substr(0, first));
    spec.stop = parse_number(text.substr(first + 1, second - first - 1));
    const double steps = parse_number(text.substr(second + 1));
    if (steps < 0.0 || std::floor(steps) != steps) {
        throw InvalidArgument("sweep step count must be a non-negative integer");
    }
    spec.steps = static_cast<std::size_t>(steps);
    if (log && spec.steps > 0 && (spec.start <= 0.0 || spec.stop <= 0.0)) {
        throw InvalidArgument("log sweep needs positive endpoints");
    }
    return spec;
}

std::vector<double> SweepSpec::values() const {
    if (is_list) return explicit_values;
    return log ? logspace(start, stop, steps) : linspace(start, stop, steps);
}

std::vector<double> linspace(double start, double stop, std::size_t steps) {
    std::vector<double> v;
    v.reserve(steps);
    if (steps == 1) {
        v.push_back(start);
        return v;
    }
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(steps - 1);
        v.push_back(k + 1 == steps ? stop : start + t * (stop - start));
    }
    return v;
}

std::vector<double> logspace(double start, double stop, std::size_t steps) {
    std::vector<double> v = linspace(std::log(start), std::log(stop), steps);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::exp(v[k]);
    if (!v.empty()) v.front() = start;
    if (v.size() > 1) v.back() = stop;
    return v;
}

}  // namespace qshannon::sweep
