#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qshannon/common.hpp"
#include "qshannon/sweep.hpp"

namespace qshannon::cli {

enum class Format { csv, json };
enum class Units { nats, bits };

/// A parsed command line. Parameter values are the text given on the command line
/// (or in the config file, or the default); sweepable ones are also expanded.
struct RunConfig {
    std::string subcommand;  // "detect psk", "capacity gaussian", "reading", ...
    std::map<std::string, std::string> params;
    std::map<std::string, bool> flags;
    std::map<std::string, sweep::SweepSpec> sweeps;
    Format format = Format::csv;
    Units units = Units::nats;
    std::string output;  // empty means stdout
    int jobs = 1;
    bool log = false;
    std::uint64_t seed = 1;
    bool oracle_check = false;

    [[nodiscard]] std::vector<double> sweep_values(const std::string& name) const;
};

/// Raised by parse_args. Exit code 0 carries help or version text, 2 a usage error.
class UsageError : public Error {
public:
    UsageError(const std::string& text, int exit_code) : Error(text), exit_code_(exit_code) {}
    [[nodiscard]] int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

/// `args` excludes the program name. Unknown flags are rejected; a JSON config file
/// given with --config fills in anything not set explicitly.
RunConfig parse_args(const std::vector<std::string>& args);

/// Computes and emits the requested table. Returns 0, or 1 after writing a one-line
/// diagnostic to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run, mapping failures to exit codes 0/1/2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qshannon::cli
