#include "qshannon/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#ifndef QSHANNON_VERSION
#define QSHANNON_VERSION "0.0.0"
#endif

namespace qshannon {

std::string_view version() { return QSHANNON_VERSION; }

namespace io {

namespace {

std::string non_finite(double x) {
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

std::string printf_double(const char* fmt, double x) {
    if (!std::isfinite(x)) return non_finite(x);
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

nlohmann::ordered_json number_json(double x) {
    if (std::isfinite(x)) return round12(x);
    return non_finite(x);
}

}  // namespace

std::string format_computed(double x) {
    if (x == 0.0) return "0";
    return printf_double("%#.12g", x);
}

std::string format_input(double x) { return printf_double("%.12g", x); }

double round12(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(printf_double("%.12g", x));
}

Cell Cell::in(double x) { return {Kind::input, x, 0, {}}; }
Cell Cell::out(double x) { return {Kind::computed, x, 0, {}}; }
Cell Cell::count(long long n) { return {Kind::integer, 0.0, n, {}}; }
Cell Cell::str(std::string s) { return {Kind::text, 0.0, 0, std::move(s)}; }
Cell Cell::flag(bool b) { return {Kind::boolean, 0.0, b ? 1 : 0, {}}; }

std::string Cell::csv() const {
    switch (kind) {
        case Kind::input: return format_input(number);
        case Kind::computed: return format_computed(number);
        case Kind::integer: return std::to_string(integer_value);
        case Kind::boolean: return integer_value ? "true" : "false";
        case Kind::text: break;
    }
    return csv_escape(text);
}

nlohmann::ordered_json Cell::json() const {
    switch (kind) {
        case Kind::input:
        case Kind::computed: return number_json(number);
        case Kind::integer: return integer_value;
        case Kind::boolean: return integer_value != 0;
        case Kind::text: break;
    }
    return text;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t k = 0; k < t.header.size(); ++k) {
        if (k) os << ',';
        os << csv_escape(t.header[k]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ',';
            os << row[k].csv();
        }
        os << '\n';
    }
}

nlohmann::ordered_json table_json(const Table& t) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t k = 0; k < row.size() && k < t.header.size(); ++k) obj[t.header[k]] = row[k].json();
        rows.push_back(std::move(obj));
    }
    return rows;
}

nlohmann::ordered_json to_json(const Constellation& c) {
    nlohmann::ordered_json j;
    auto amps = nlohmann::ordered_json::array();
    for (const auto& a : c.amplitudes()) amps.push_back({round12(a.re()), round12(a.im())});
    j["amplitudes"] = amps;
    auto priors = nlohmann::ordered_json::array();
    for (double p : c.priors()) priors.push_back(round12(p));
    j["priors"] = priors;
    j["degenerate"] = c.degenerate();
    return j;
}

nlohmann::ordered_json to_json(const GramMatrix& g) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(g.kind));
    auto re = nlohmann::ordered_json::array();
    auto im = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < g.entries.rows(); ++r) {
        auto rr = nlohmann::ordered_json::array();
        auto ri = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < g.entries.cols(); ++c) {
            rr.push_back(round12(g.entries(r, c).real()));
            ri.push_back(round12(g.entries(r, c).imag()));
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    j["real"] = re;
    j["imag"] = im;
    return j;
}

nlohmann::ordered_json to_json(const ChannelMatrix& ch) {
    nlohmann::ordered_json j;
    auto p = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < ch.p.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index k = 0; k < ch.p.cols(); ++k) row.push_back(round12(ch.p(i, k)));
        p.push_back(row);
    }
    j["p"] = p;  // p[i][j] = P(j|i)
    auto priors = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < ch.input_priors.size(); ++i) priors.push_back(round12(ch.input_priors[i]));
    j["input_priors"] = priors;
    return j;
}

Table channel_table(const ChannelMatrix& ch) {
    Table t;
    t.header.push_back("j\\i");
    for (Eigen::Index i = 0; i < ch.p.rows(); ++i) t.header.push_back(std::to_string(i));
    for (Eigen::Index j = 0; j < ch.p.cols(); ++j) {
        std::vector<Cell> row{Cell::count(j)};
        for (Eigen::Index i = 0; i < ch.p.rows(); ++i) row.push_back(Cell::out(ch.p(i, j)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace io
}  // namespace qshannon
