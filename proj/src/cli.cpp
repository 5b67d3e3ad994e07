#include "qshannon/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qshannon/capacity.hpp"
#include "qshannon/cipher.hpp"
#include "qshannon/detection.hpp"
#include "qshannon/estimation.hpp"
#include "qshannon/fock_oracle.hpp"
#include "qshannon/io.hpp"
#include "qshannon/linalg.hpp"
#include "qshannon/reading.hpp"
#include "qshannon/reliability.hpp"
#include "qshannon/states.hpp"

namespace qshannon::cli {

using io::Cell;
using io::Table;
using Json = nlohmann::ordered_json;

std::vector<double> RunConfig::sweep_values(const std::string& name) const {
    const auto it = sweeps.find(name);
    if (it == sweeps.end()) {
        throw InvalidArgument("no sweep parameter named '" + name + "'");
    }
    return it->second.values();
}

namespace {

// ---------------------------------------------------------------- config file

/// JSON config: top-level keys are global options, nested objects are subcommands,
/// e.g. {"format": "json", "detect": {"psk": {"m": 3, "ns": "0:2:5"}}}.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(input);
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

private:
    static std::string scalar_text(const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number() || v.is_null()) return v.dump();
        throw CLI::ConversionError("config values must be scalars or arrays of scalars");
    }

    static void flatten(const nlohmann::json& obj, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                auto path = parents;
                path.push_back(key);
                flatten(value, path, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar_text(v));
            } else {
                item.inputs.push_back(scalar_text(value));
            }
            items.push_back(std::move(item));
        }
    }
};

// ---------------------------------------------------------------- parameter parsing

double parse_real(const std::string& name, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || !std::isfinite(v)) {
        throw UsageError("--" + name + ": expected a number, got '" + text + "'", 2);
    }
    return v;
}

long long parse_integer(const std::string& name, const std::string& text) {
    const double v = parse_real(name, text);
    if (std::floor(v) != v || std::abs(v) > 9e15) {
        throw UsageError("--" + name + ": expected an integer, got '" + text + "'", 2);
    }
    return static_cast<long long>(v);
}

std::vector<double> parse_real_list(const std::string& name, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_real(name, item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& name, const std::string& text) {
    std::vector<int> out;
    for (double v : parse_real_list(name, text)) {
        if (std::floor(v) != v) throw UsageError("--" + name + ": expected integers", 2);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::uint64_t parse_seed(const std::string& origin, const std::string& text) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || text.front() == '-') {
        throw UsageError(origin + ": expected a non-negative integer seed, got '" + text + "'", 2);
    }
    return v;
}

enum class ParamKind { sweep, real, integer, text, real_list, int_list };

struct ParamSpec {
    std::string name;
    ParamKind kind;
};

struct Command {
    std::string name;  // "capacity gaussian"
    CLI::App* app = nullptr;
    std::vector<ParamSpec> specs;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;

    void param(const std::string& key, ParamKind kind, const std::string& fallback, const std::string& help,
               std::vector<std::string> choices = {}) {
        values[key] = fallback;
        static const std::map<ParamKind, std::string> type_names{
            {ParamKind::sweep, "SWEEP"},   {ParamKind::real, "FLOAT"},     {ParamKind::integer, "INT"},
            {ParamKind::text, "TEXT"},     {ParamKind::real_list, "LIST"}, {ParamKind::int_list, "LIST"}};
        CLI::Option* opt =
            app->add_option("--" + key, values[key], help)->capture_default_str()->type_name(type_names.at(kind));
        if (!choices.empty()) opt->check(CLI::IsMember(choices));
        specs.push_back({key, kind});
    }

    void flag(const std::string& key, const std::string& help) {
        flags[key] = false;
        app->add_flag("--" + key, flags[key], help);
    }
};

struct Globals {
    std::string format = "csv";
    std::string units = "nats";
    std::string output;
    int jobs = 1;
    bool log = false;
    std::string seed;
    bool oracle_check = false;
};

const std::vector<std::string> kPskReceivers{"srm", "helstrom", "homodyne", "covariant"};

void define_commands(CLI::App& app, std::vector<std::unique_ptr<Command>>& commands) {
    auto add = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& help) {
        auto cmd = std::make_unique<Command>();
        cmd->name = full;
        cmd->app = parent->add_subcommand(name, help);
        commands.push_back(std::move(cmd));
        return commands.back().get();
    };

    CLI::App* detect = app.add_subcommand("detect", "Detection error of coherent-state constellations");
    detect->require_subcommand(1);
    Command* psk = add(detect, "psk", "detect psk", "M-ary PSK error probability");
    psk->param("m", ParamKind::integer, "2", "number of signals M");
    psk->param("ns", ParamKind::sweep, "1", "mean photon number (sweepable)");
    psk->param("priors", ParamKind::real_list, "", "comma-separated priors (default uniform)");
    psk->param("receiver", ParamKind::text, "srm", "srm | helstrom | homodyne | covariant", kPskReceivers);
    psk->flag("channel", "emit the channel matrix P(j|i) instead of the error table");

    CLI::App* capacity = app.add_subcommand("capacity", "Channel capacities");
    capacity->require_subcommand(1);
    Command* gaussian = add(capacity, "gaussian", "capacity gaussian", "Holevo vs heterodyne capacity, thermal noise");
    gaussian->param("ns", ParamKind::sweep, "1", "mean signal photons (sweepable)");
    gaussian->param("nth", ParamKind::sweep, "0", "mean thermal photons (sweepable)");
    Command* holevo = add(capacity, "holevo", "capacity holevo", "Holevo information of an M-PSK set");
    holevo->param("m", ParamKind::integer, "3", "number of signals M");
    holevo->param("ns", ParamKind::sweep, "1", "mean photon number (sweepable)");
    holevo->param("priors", ParamKind::real_list, "", "comma-separated priors (default uniform)");

    auto rel = std::make_unique<Command>();
    rel->name = "reliability";
    rel->app = app.add_subcommand("reliability", "Reliability functions and code-length planning");
    rel->app->require_subcommand(0, 1);
    Command* reliability = rel.get();
    commands.push_back(std::move(rel));
    reliability->param("m", ParamKind::integer, "3", "number of signals M");
    reliability->param("ns", ParamKind::real, "1", "mean photon number");
    reliability->param("rate", ParamKind::sweep, "0:1.2:25", "rate grid in the selected units (sweepable)");
    reliability->param("target-pe", ParamKind::real, "1e-9", "target block error for the code-length planner");
    reliability->flag("optimize-priors", "maximize E_Q over priors as well as s");
    Command* cutoff = add(reliability->app, "cutoff", "reliability cutoff", "Cutoff rates of an M-PSK set");
    cutoff->param("m", ParamKind::integer, "3", "number of signals M");
    cutoff->param("ns", ParamKind::sweep, "1", "mean photon number (sweepable)");
    Command* gcut = add(reliability->app, "gaussian-cutoff", "reliability gaussian-cutoff",
                        "Cutoff rate of the thermal coherent-state channel");
    gcut->param("nsc", ParamKind::sweep, "1", "codeword energy (sweepable)");
    gcut->param("lambda", ParamKind::sweep, "0.5", "thermal parameter, >= 1/2 (sweepable)");

    Command* estimate = add(&app, "estimate", "estimate", "Estimation bounds and SNR");
    estimate->param("ns", ParamKind::sweep, "1", "signal photons (sweepable)");
    estimate->param("epsilon", ParamKind::sweep, "1", "transmissivity in [0,1] (sweepable)");
    estimate->param("nth", ParamKind::real, "0", "noise photons for the quadrature bounds");

    CLI::App* cipher = app.add_subcommand("cipher", "Y-00 quantum stream cipher");
    cipher->require_subcommand(1);
    for (const std::string name : {"simulate", "report"}) {
        Command* c = add(cipher, name, "cipher " + name,
                         name == "simulate" ? "Run a trace and report error rates" : "Security metrics");
        c->param("m", ParamKind::integer, name == "simulate" ? "2" : "2048", "number of bases M (power of two)");
        c->param("ns", ParamKind::real, name == "simulate" ? "1" : "1e4", "mean photon number");
        c->param("key-bits", ParamKind::integer, name == "simulate" ? "16" : "256", "secret key length");
        c->param("taps", ParamKind::int_list, "16,14,13,11", "LFSR feedback taps");
        c->param("mapper", ParamKind::text, "keyed_polarity", "keyed_polarity | direct", {"keyed_polarity", "direct"});
        if (name == "simulate") {
            c->param("slots", ParamKind::integer, "1000", "number of transmitted bits");
            c->param("receiver", ParamKind::text, "homodyne", "Bob's receiver: homodyne | quantum",
                     {"homodyne", "quantum"});
        } else {
            c->param("attack", ParamKind::text, "srm", "Eve's measurement: srm | heterodyne", {"srm", "heterodyne"});
            c->param("receiver", ParamKind::text, "quantum", "Bob's receiver: quantum | homodyne",
                     {"quantum", "homodyne"});
        }
    }

    Command* reading = add(&app, "reading", "reading", "Quantum reading with quasi-Bell states");
    reading->param("alpha2", ParamKind::sweep, "0.5", "probe energy |alpha|^2 (sweepable)");
    reading->param("xi0", ParamKind::real, "0.5", "prior of bit 0");
}

void validate_params(const Command& cmd, RunConfig& cfg) {
    for (const auto& spec : cmd.specs) {
        const std::string& text = cmd.values.at(spec.name);
        switch (spec.kind) {
            case ParamKind::sweep:
                try {
                    cfg.sweeps[spec.name] = sweep::SweepSpec::parse(text, cfg.log);
                } catch (const InvalidArgument& e) {
                    throw UsageError("--" + spec.name + ": " + e.what(), 2);
                }
                break;
            case ParamKind::real: parse_real(spec.name, text); break;
            case ParamKind::integer: parse_integer(spec.name, text); break;
            case ParamKind::real_list: parse_real_list(spec.name, text); break;
            case ParamKind::int_list: parse_int_list(spec.name, text); break;
            case ParamKind::text: break;
        }
    }
    if (cfg.jobs < 0) throw UsageError("--jobs must be >= 0", 2);
}

// ---------------------------------------------------------------- helpers for run

double real(const RunConfig& c, const std::string& k) { return parse_real(k, c.params.at(k)); }
long long integer(const RunConfig& c, const std::string& k) { return parse_integer(k, c.params.at(k)); }
bool flag(const RunConfig& c, const std::string& k) {
    const auto it = c.flags.find(k);
    return it != c.flags.end() && it->second;
}

double in_units(const RunConfig& c, double nats) { return c.units == Units::bits ? nats / kLn2 : nats; }
double from_units(const RunConfig& c, double value) { return c.units == Units::bits ? value * kLn2 : value; }
std::string unit_name(const RunConfig& c) { return c.units == Units::bits ? "bits" : "nats"; }

std::size_t positive_size(const RunConfig& c, const std::string& k) {
    const long long v = integer(c, k);
    if (v < 1) throw InvalidArgument("--" + k + " must be positive");
    return static_cast<std::size_t>(v);
}

Constellation make_psk(const RunConfig& c, double ns) {
    const long long m = integer(c, "m");
    if (m < 2) throw InvalidArgument("--m must be at least 2");
    const auto it = c.params.find("priors");
    std::vector<double> priors;
    if (it != c.params.end()) priors = parse_real_list("priors", it->second);
    return psk_constellation(static_cast<std::size_t>(m), ns, priors);
}

struct Emission {
    Table table;
    Json extra = Json::object();  // merged into JSON output only
    bool raw_json_results = false;
    Json results;
};

/// Oracle comparisons collected during a run.
struct OracleLog {
    bool enabled = false;
    double worst = 0.0;
    std::string worst_label;
    std::vector<std::string> skipped;

    void compare(const std::string& label, double closed, double oracle) {
        double d = std::abs(closed - oracle);
        if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
        if (worst_label.empty() || d > worst) {
            worst = d;
            worst_label = label;
        }
    }
    void skip(const std::string& why) { skipped.push_back(why); }
};

constexpr double kOracleTolerance = 1e-8;

bool fock_feasible(double mean_photons) { return mean_photons <= fock::kMaxMeanPhotons; }

std::vector<fock::FockVector> fock_states(const Constellation& c) {
    double top = 0.0;
    for (const auto& a : c.amplitudes()) top = std::max(top, a.mean_photons());
    const int n_max = fock::auto_truncation(top);
    std::vector<fock::FockVector> states;
    for (const auto& a : c.amplitudes()) states.push_back(fock::coherent_fock(a, n_max));
    return states;
}

void oracle_gram(OracleLog& log, const Constellation& c, const std::string& label) {
    const auto states = fock_states(c);
    const GramMatrix g = gram(c);
    double worst = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = 0; j < states.size(); ++j) {
            const Complex f = fock::inner(states[i], states[j]);
            worst = std::max(worst, std::abs(f - g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        }
    }
    log.compare(label + " gram", worst, 0.0);
}

// ---------------------------------------------------------------- subcommands

Emission run_detect_psk(const RunConfig& c, OracleLog& oracle) {
    const auto ns_values = c.sweep_values("ns");
    const std::string receiver = c.params.at("receiver");
    const long long m = integer(c, "m");
    Emission e;

    if (flag(c, "channel")) {
        if (ns_values.size() != 1) throw InvalidArgument("--channel needs a single --ns value");
        const Constellation con = make_psk(c, ns_values[0]);
        ChannelMatrix ch;
        if (receiver == "srm") {
            ch = srm_channel(con);
        } else if (receiver == "helstrom") {
            ch = povm_channel(con, helstrom_povm(con));
        } else {
            throw InvalidArgument("--channel supports the srm and helstrom receivers");
        }
        e.table = io::channel_table(ch);
        e.raw_json_results = true;
        e.results = io::to_json(ch);
        if (oracle.enabled) {
            if (fock_feasible(ns_values[0])) {
                oracle_gram(oracle, con, "ns=" + io::format_input(ns_values[0]));
            } else {
                oracle.skip("mean photon number above the Fock-space limit");
            }
        }
        return e;
    }

    e.table.header = {"m", "ns", "receiver", "pe"};
    const auto rows = sweep::map(
        ns_values.size(),
        [&](std::size_t k) {
            const Constellation con = make_psk(c, ns_values[k]);
            double pe = 0.0;
            if (receiver == "srm") {
                pe = error_probability(srm_channel(con));
            } else if (receiver == "helstrom") {
                pe = helstrom_binary(con);
            } else if (receiver == "homodyne") {
                if (m != 2) throw InvalidArgument("the homodyne receiver is defined for M = 2");
                pe = homodyne_binary_pe(ns_values[k], con.prior(0), con.prior(1));
            } else {
                pe = covariant_optimal_pe(con);
            }
            return pe;
        },
        c.jobs);
    for (std::size_t k = 0; k < ns_values.size(); ++k) {
        e.table.rows.push_back({Cell::count(m), Cell::in(ns_values[k]), Cell::str(receiver), Cell::out(rows[k])});
        if (!oracle.enabled) continue;
        if (!fock_feasible(ns_values[k])) {
            oracle.skip("ns=" + io::format_input(ns_values[k]) + " above the Fock-space limit");
            continue;
        }
        const Constellation con = make_psk(c, ns_values[k]);
        const std::string label = "ns=" + io::format_input(ns_values[k]);
        oracle_gram(oracle, con, label);
        if (m == 2 && (receiver == "helstrom" || receiver == "srm" || receiver == "covariant")) {
            const auto states = fock_states(con);
            const double pe_oracle = fock::helstrom_binary_oracle(states[0], states[1], con.prior(0), con.prior(1));
            if (receiver == "helstrom" || con.uniform_priors()) oracle.compare(label + " pe", rows[k], pe_oracle);
        }
    }
    return e;
}

double thermal_entropy_series(double n) {
    if (n == 0.0) return 0.0;
    // p_k = n^k / (n + 1)^(k + 1)
    const double r = n / (n + 1.0);
    double h = 0.0;
    double p = 1.0 / (n + 1.0);
    double tail = 1.0;
    for (long k = 0; tail > 1e-18 && k < 100000000; ++k) {
        if (p > 0.0) h -= p * std::log(p);
        tail -= p;
        p *= r;
    }
    return h;
}

Emission run_capacity_gaussian(const RunConfig& c, OracleLog& oracle) {
    const auto ns_values = c.sweep_values("ns");
    const auto nth_values = c.sweep_values("nth");
    std::vector<std::pair<double, double>> grid;
    for (double ns : ns_values) {
        for (double nth : nth_values) grid.emplace_back(ns, nth);
    }
    struct Row {
        double holevo, shannon;
    };
    const auto rows = sweep::map(
        grid.size(),
        [&](std::size_t k) {
            return Row{gaussian_capacity_holevo(grid[k].first, grid[k].second).value_nats,
                       gaussian_capacity_shannon(grid[k].first, grid[k].second).value_nats};
        },
        c.jobs);
    Emission e;
    e.table.header = {"ns", "nth", "c_holevo", "c_shannon", "gap"};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto [ns, nth] = grid[k];
        e.table.rows.push_back({Cell::in(ns), Cell::in(nth), Cell::out(in_units(c, rows[k].holevo)),
                                Cell::out(in_units(c, rows[k].shannon)),
                                Cell::out(in_units(c, rows[k].holevo - rows[k].shannon))});
        if (!oracle.enabled) continue;
        if (ns + nth > 1e5) {
            oracle.skip("thermal series too long at ns + nth > 1e5");
            continue;
        }
        const double series = thermal_entropy_series(ns + nth) - thermal_entropy_series(nth);
        oracle.compare("ns=" + io::format_input(ns) + ",nth=" + io::format_input(nth), rows[k].holevo, series);
    }
    return e;
}

Emission run_capacity_holevo(const RunConfig& c, OracleLog& oracle) {
    const auto ns_values = c.sweep_values("ns");
    struct Row {
        double holevo, mutual;
    };
    const auto rows = sweep::map(
        ns_values.size(),
        [&](std::size_t k) {
            const Constellation con = make_psk(c, ns_values[k]);
            return Row{holevo_information(con).value_nats, mutual_information(srm_channel(con)).value_nats};
        },
        c.jobs);
    Emission e;
    e.table.header = {"m", "ns", "holevo", "mutual_info_srm", "gap"};
    for (std::size_t k = 0; k < ns_values.size(); ++k) {
        e.table.rows.push_back({Cell::count(integer(c, "m")), Cell::in(ns_values[k]),
                                Cell::out(in_units(c, rows[k].holevo)), Cell::out(in_units(c, rows[k].mutual)),
                                Cell::out(in_units(c, rows[k].holevo - rows[k].mutual))});
        if (!oracle.enabled) continue;
        if (!fock_feasible(ns_values[k])) {
            oracle.skip("ns above the Fock-space limit");
            continue;
        }
        const Constellation con = make_psk(c, ns_values[k]);
        const auto states = fock_states(con);
        std::vector<std::pair<double, fock::FockVector>> mix;
        for (std::size_t i = 0; i < states.size(); ++i) mix.emplace_back(con.prior(i), states[i]);
        oracle.compare("ns=" + io::format_input(ns_values[k]), rows[k].holevo, fock::von_neumann_entropy_oracle(mix));
    }
    return e;
}

Cell length_cell(double exponent, double target) {
    if (!(exponent > 0.0)) return Cell::str("inf");
    return Cell::count(required_code_length(exponent, target));
}

void oracle_spectrum(OracleLog& oracle, const Constellation& con, const std::string& label) {
    const auto states = fock_states(con);
    std::vector<std::pair<double, fock::FockVector>> mix;
    for (std::size_t i = 0; i < states.size(); ++i) mix.emplace_back(con.prior(i), states[i]);
    const RVector fock_values = linalg::eigvalsh(fock::density_matrix(mix));
    double sum_sq = 0.0;
    for (Eigen::Index k = 0; k < fock_values.size(); ++k) {
        if (fock_values[k] > 0.0) sum_sq += fock_values[k] * fock_values[k];
    }
    oracle.compare(label + " mu_q(1)", mu_q(con, 1.0), -std::log(sum_sq));
}

Emission run_reliability(const RunConfig& c, OracleLog& oracle) {
    const double ns = real(c, "ns");
    const Constellation con = make_psk(c, ns);
    const ChannelMatrix ch = srm_channel(con);
    const double target = real(c, "target-pe");
    if (!(target > 0.0 && target < 1.0)) throw InvalidArgument("--target-pe must lie in (0, 1)");
    const PriorMode mode = flag(c, "optimize-priors") ? PriorMode::optimize : PriorMode::given;
    const auto rates = c.sweep_values("rate");
    for (double r : rates) {
        if (!(r >= 0.0)) throw InvalidArgument("--rate values must be non-negative");
    }
    struct Row {
        double eq, es;
    };
    const auto rows = sweep::map(
        rates.size(),
        [&](std::size_t k) {
            const double r = from_units(c, rates[k]);
            return Row{reliability_quantum(con, r, mode), reliability_semi(ch, r)};
        },
        c.jobs);
    Emission e;
    e.table.header = {"R_" + unit_name(c), "E_quantum", "E_semi", "n_quantum", "n_semi"};
    for (std::size_t k = 0; k < rates.size(); ++k) {
        e.table.rows.push_back({Cell::in(rates[k]), Cell::out(in_units(c, rows[k].eq)),
                                Cell::out(in_units(c, rows[k].es)), length_cell(rows[k].eq, target),
                                length_cell(rows[k].es, target)});
    }
    if (oracle.enabled) {
        if (fock_feasible(ns)) {
            oracle_spectrum(oracle, con, "ns=" + io::format_input(ns));
        } else {
            oracle.skip("ns above the Fock-space limit");
        }
    }
    return e;
}

std::string join_priors(const std::vector<double>& p) {
    std::string s;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) s += ';';
        s += io::format_computed(p[k]);
    }
    return s;
}

Emission run_reliability_cutoff(const RunConfig& c, OracleLog& oracle) {
    const auto ns_values = c.sweep_values("ns");
    const auto rows = sweep::map(
        ns_values.size(), [&](std::size_t k) { return cutoff_quantum(make_psk(c, ns_values[k])); }, c.jobs);
    Emission e;
    e.table.header = {"m", "ns", "r_q", "r_semi_upper", "r_q_uniform", "closed_form_interior", "optimal_priors"};
    for (std::size_t k = 0; k < ns_values.size(); ++k) {
        const CutoffReport& r = rows[k];
        e.table.rows.push_back({Cell::count(integer(c, "m")), Cell::in(ns_values[k]), Cell::out(in_units(c, r.r_q)),
                                Cell::out(in_units(c, r.r_semi_upper)), Cell::out(in_units(c, r.r_q_uniform)),
                                Cell::flag(r.closed_form_interior), Cell::str(join_priors(r.optimal_priors))});
        if (!oracle.enabled) continue;
        if (!fock_feasible(ns_values[k])) {
            oracle.skip("ns above the Fock-space limit");
            continue;
        }
        oracle_gram(oracle, make_psk(c, ns_values[k]), "ns=" + io::format_input(ns_values[k]));
    }
    return e;
}

Emission run_gaussian_cutoff(const RunConfig& c, OracleLog& oracle) {
    const auto nsc = c.sweep_values("nsc");
    const auto lambda = c.sweep_values("lambda");
    Emission e;
    e.table.header = {"nsc", "lambda", "r_q"};
    for (double n : nsc) {
        for (double l : lambda) {
            e.table.rows.push_back({Cell::in(n), Cell::in(l), Cell::out(in_units(c, gaussian_cutoff(n, l)))});
        }
    }
    if (oracle.enabled) oracle.skip("no Fock-space oracle for the Gaussian cutoff rate");
    return e;
}

Emission run_estimate(const RunConfig& c, OracleLog& oracle) {
    const auto ns_values = c.sweep_values("ns");
    const auto eps_values = c.sweep_values("epsilon");
    const double nth = real(c, "nth");
    Emission e;
    e.table.header = {"ns",     "epsilon", "snr_squeezed", "snr_coherent",   "var_squeezed",
                      "mu_s",   "nu_s",    "var_quadrature", "var_heterodyne"};
    const double var_x = crb_single_quadrature(nth);
    const double var_a = yuen_lax_heterodyne_var(nth);
    for (double ns : ns_values) {
        for (double eps : eps_values) {
            const EstimationReport sq = squeezed_snr(ns, eps);
            const EstimationReport co = coherent_snr(ns, eps);
            e.table.rows.push_back({Cell::in(ns), Cell::in(eps), Cell::out(sq.snr), Cell::out(co.snr),
                                    Cell::out(sq.variance), Cell::out(sq.mu_s), Cell::out(sq.nu_s), Cell::out(var_x),
                                    Cell::out(var_a)});
        }
    }
    if (oracle.enabled) oracle.skip("no Fock-space oracle for the estimation bounds");
    return e;
}

CipherParams cipher_params(const RunConfig& c) {
    CipherParams p;
    p.m = positive_size(c, "m");
    p.mean_photons = real(c, "ns");
    p.key_bits = static_cast<int>(integer(c, "key-bits"));
    p.lfsr_taps = parse_int_list("taps", c.params.at("taps"));
    p.seed = c.seed;
    p.mapper = mapper_from_string(c.params.at("mapper"));
    p.validate();
    return p;
}

std::string taps_text(const std::vector<int>& taps) {
    std::string s;
    for (std::size_t k = 0; k < taps.size(); ++k) {
        if (k) s += ';';
        s += std::to_string(taps[k]);
    }
    return s;
}

Emission run_cipher_simulate(const RunConfig& c, OracleLog& oracle) {
    const CipherParams p = cipher_params(c);
    const std::size_t slots = static_cast<std::size_t>(std::max<long long>(0, integer(c, "slots")));
    const BobReceiver receiver = bob_receiver_from_string(c.params.at("receiver"));

    std::mt19937_64 data_gen(c.seed ^ 0xD1B54A32D192ED03ULL);
    std::vector<std::uint8_t> data(slots);
    for (auto& d : data) d = static_cast<std::uint8_t>(data_gen() & 1ULL);
    const CipherTrace t = y00_simulate(data, p, c.seed, receiver);

    Emission e;
    e.table.header = {"seed",      "taps",       "m",       "ns",
                      "slots",     "bob_errors", "bob_ber", "pe_bob",
                      "eve_symbol_errors", "eve_ser"};
    e.table.rows.push_back({Cell::count(static_cast<long long>(c.seed)), Cell::str(taps_text(p.lfsr_taps)),
                            Cell::count(static_cast<long long>(p.m)), Cell::in(p.mean_photons),
                            Cell::count(static_cast<long long>(slots)),
                            Cell::count(static_cast<long long>(t.metrics.bob_errors)), Cell::out(t.metrics.bob_ber),
                            Cell::out(bob_error_probability(p.mean_photons, receiver)),
                            Cell::count(static_cast<long long>(t.metrics.eve_symbol_errors)),
                            Cell::out(t.metrics.eve_ser)});
    const std::size_t head = std::min<std::size_t>(16, slots);
    Json trace;
    trace["data_bits"] = std::vector<int>(t.data_bits.begin(), t.data_bits.begin() + static_cast<long>(head));
    trace["running_key"] =
        std::vector<std::uint32_t>(t.running_key.begin(), t.running_key.begin() + static_cast<long>(head));
    trace["phase_index"] =
        std::vector<std::uint32_t>(t.phase_index.begin(), t.phase_index.begin() + static_cast<long>(head));
    trace["bob_decisions"] =
        std::vector<int>(t.bob_decisions.begin(), t.bob_decisions.begin() + static_cast<long>(head));
    trace["eve_outcomes"] =
        std::vector<std::uint32_t>(t.eve_outcomes.begin(), t.eve_outcomes.begin() + static_cast<long>(head));
    e.extra["trace_head"] = trace;
    if (oracle.enabled) oracle.skip("no Fock-space oracle for the cipher simulation");
    return e;
}

Emission run_cipher_report(const RunConfig& c, OracleLog& oracle, std::ostream& err) {
    const CipherParams p = cipher_params(c);
    const EveAttack attack = eve_attack_from_string(c.params.at("attack"));
    const BobReceiver receiver = bob_receiver_from_string(c.params.at("receiver"));
    const SecurityReport r = security_report(p, attack, receiver);
    if (r.masking_warning) {
        err << "warning: masking number is 1; neighbouring phases are not hidden by quantum noise\n";
    }
    Emission e;
    e.table.header = {"seed",   "taps",         "m",     "ns",         "key_bits",       "attack",
                      "receiver", "pe_bob",     "pe_eve", "c1_eve_lower", "c_bob",        "c_eve_data",
                      "masking_number", "masking_warning", "unicity_lower_bound", "advantage"};
    Cell unicity = std::isfinite(r.unicity_lower_bound)
                       ? Cell::count(static_cast<long long>(r.unicity_lower_bound))
                       : Cell::str("inf");
    e.table.rows.push_back({Cell::count(static_cast<long long>(c.seed)), Cell::str(taps_text(p.lfsr_taps)),
                            Cell::count(static_cast<long long>(p.m)), Cell::in(p.mean_photons),
                            Cell::count(p.key_bits), Cell::str(std::string(to_string(attack))),
                            Cell::str(std::string(to_string(receiver))), Cell::out(r.pe_bob), Cell::out(r.pe_eve),
                            Cell::out(in_units(c, r.c1_eve_lower)), Cell::out(in_units(c, r.c_bob)),
                            Cell::out(in_units(c, r.c_eve_data)), Cell::count(static_cast<long long>(r.masking_number)),
                            Cell::flag(r.masking_warning), unicity, Cell::flag(r.advantage)});
    if (oracle.enabled) oracle.skip("no Fock-space oracle for the cipher report");
    return e;
}

Emission run_reading(const RunConfig& c, OracleLog& oracle) {
    const auto alpha2 = c.sweep_values("alpha2");
    const double xi0 = real(c, "xi0");
    const double xi1 = 1.0 - xi0;
    Emission e;
    e.table.header = {"alpha2", "pe_homodyne", "pe_q1", "pe_q2", "eof_psi1"};
    for (double a2 : alpha2) {
        if (!(a2 > 0.0)) throw InvalidArgument("--alpha2 must be positive");
        ReadingScenario s;
        s.alpha = Amplitude::from_polar(a2, 0.0);
        s.xi0 = xi0;
        s.xi1 = xi1;
        s.receiver = ReadingReceiver::homodyne;
        const double pe_c = reading_error(s);
        s.receiver = ReadingReceiver::quantum;
        const double pe_q1 = reading_error(s);
        s.source = ReadingSource::quasi_bell;
        const double pe_q2 = reading_error(s);
        const double eof = entanglement_of_formation(1, quasi_bell(s.alpha).kappa);
        e.table.rows.push_back({Cell::in(a2), Cell::out(pe_c), Cell::out(pe_q1), Cell::out(pe_q2), Cell::out(eof)});
        if (!oracle.enabled) continue;
        if (!fock_feasible(a2)) {
            oracle.skip("alpha2 above the Fock-space limit");
            continue;
        }
        const std::string label = "alpha2=" + io::format_input(a2);
        const int n_max = fock::auto_truncation(a2);
        const auto plus = fock::coherent_fock(s.alpha, n_max);
        const auto minus = fock::coherent_fock(Amplitude(-s.alpha.value()), n_max);
        oracle.compare(label + " pe_q1", pe_q1, fock::helstrom_binary_oracle(plus, minus, xi0, xi1));
        const auto psi = fock::quasi_bell_state(s.alpha, 2, 0.0, n_max);
        const auto shifted = fock::quasi_bell_state(s.alpha, 2, kPi, n_max);
        oracle.compare(label + " overlap", reading_overlap(s.alpha, kPi), std::abs(fock::two_mode_overlap(psi, shifted)));
    }
    return e;
}

Json inputs_json(const RunConfig& c) {
    Json in = Json::object();
    for (const auto& [k, v] : c.params) {
        std::size_t used = 0;
        double x = 0.0;
        bool numeric = false;
        try {
            x = std::stod(v, &used);
            numeric = used == v.size() && std::isfinite(x);
        } catch (const std::exception&) {
        }
        if (numeric && std::floor(x) == x && std::abs(x) < 1e15 && v.find_first_of(".eE") == std::string::npos) {
            in[k] = static_cast<long long>(x);
        } else if (numeric) {
            in[k] = io::round12(x);
        } else {
            in[k] = v;
        }
    }
    for (const auto& [k, v] : c.flags) in[k] = v;
    in["units"] = unit_name(c);
    if (c.subcommand.rfind("cipher", 0) == 0) in["seed"] = c.seed;
    if (!c.sweeps.empty()) in["log"] = c.log;
    return in;
}

void emit(const RunConfig& c, const Emission& e, std::ostream& os) {
    if (c.format == Format::csv) {
        io::write_csv(os, e.table);
        return;
    }
    Json j;
    j["version"] = std::string(version());
    j["command"] = c.subcommand;
    j["inputs"] = inputs_json(c);
    j["results"] = e.raw_json_results ? e.results : io::table_json(e.table);
    for (const auto& [k, v] : e.extra.items()) j[k] = v;
    os << j.dump(2) << '\n';
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Quantum communication design quantities for coherent-state signals", "qshannon"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file; explicit flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);

    Globals g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--units", g.units, "information unit")->check(CLI::IsMember({"nats", "bits"}))->capture_default_str();
    app.add_option("--output,-o", g.output, "write to this file instead of stdout");
    app.add_option("--jobs,-j", g.jobs, "threads for sweep points (0: all cores)")->capture_default_str();
    app.add_flag("--log", g.log, "logarithmic spacing for start:stop:steps sweeps");
    app.add_option("--seed", g.seed, "seed (falls back to $QSHANNON_SEED, then 1)");
    app.add_flag("--oracle-check", g.oracle_check, "cross-check results against the Fock-space oracle");

    std::vector<std::unique_ptr<Command>> commands;
    define_commands(app, commands);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = app.exit(e, out, err);
        if (code == 0) throw UsageError(out.str(), 0);
        const CLI::App* deepest = &app;
        for (bool descended = true; descended;) {
            descended = false;
            for (const CLI::App* sub : deepest->get_subcommands()) {
                if (sub->parsed()) {
                    deepest = sub;
                    descended = true;
                    break;
                }
            }
        }
        throw UsageError(err.str() + deepest->help(), 2);
    }

    // Deepest selected subcommand.
    const Command* chosen = nullptr;
    for (const auto& cmd : commands) {
        if (cmd->app->parsed() && (chosen == nullptr || cmd->name.size() > chosen->name.size())) chosen = cmd.get();
    }
    if (chosen == nullptr) {
        throw UsageError("a subcommand is required\n" + app.help(), 2);
    }
    RunConfig cfg;
    cfg.subcommand = chosen->name;
    cfg.params = chosen->values;
    cfg.flags = chosen->flags;
    cfg.format = g.format == "json" ? Format::json : Format::csv;
    cfg.units = g.units == "bits" ? Units::bits : Units::nats;
    cfg.output = g.output;
    cfg.jobs = g.jobs;
    cfg.log = g.log;
    cfg.oracle_check = g.oracle_check;
    if (!g.seed.empty()) {
        cfg.seed = parse_seed("--seed", g.seed);
    } else if (const char* env = std::getenv("QSHANNON_SEED"); env != nullptr && *env != '\0') {
        cfg.seed = parse_seed("QSHANNON_SEED", env);
    }
    validate_params(*chosen, cfg);
    return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    OracleLog oracle;
    oracle.enabled = config.oracle_check;
    Emission e;
    try {
        const std::string& s = config.subcommand;
        if (s == "detect psk") {
            e = run_detect_psk(config, oracle);
        } else if (s == "capacity gaussian") {
            e = run_capacity_gaussian(config, oracle);
        } else if (s == "capacity holevo") {
            e = run_capacity_holevo(config, oracle);
        } else if (s == "reliability") {
            e = run_reliability(config, oracle);
        } else if (s == "reliability cutoff") {
            e = run_reliability_cutoff(config, oracle);
        } else if (s == "reliability gaussian-cutoff") {
            e = run_gaussian_cutoff(config, oracle);
        } else if (s == "estimate") {
            e = run_estimate(config, oracle);
        } else if (s == "cipher simulate") {
            e = run_cipher_simulate(config, oracle);
        } else if (s == "cipher report") {
            e = run_cipher_report(config, oracle, err);
        } else if (s == "reading") {
            e = run_reading(config, oracle);
        } else {
            throw InvalidArgument("unknown subcommand '" + s + "'");
        }
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << '\n';
        return 1;
    }

    if (config.output.empty()) {
        emit(config, e, out);
    } else {
        std::ofstream file(config.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << config.output << "' for writing\n";
            return 1;
        }
        emit(config, e, file);
        if (!file) {
            err << "error: failed writing '" << config.output << "'\n";
            return 1;
        }
    }

    if (oracle.enabled) {
        for (const auto& why : oracle.skipped) err << "oracle check skipped: " << why << '\n';
        if (!(oracle.worst <= kOracleTolerance)) {
            err << "error: oracle check failed at " << oracle.worst_label << " (difference " << oracle.worst << ")\n";
            return 1;
        }
    }
    return 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const UsageError& e) {
        (e.exit_code() == 0 ? out : err) << e.what();
        return e.exit_code();
    }
    return run(cfg, out, err);
}

}  // namespace qshannon::cli
