#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qshannon/detection.hpp"
#include "qshannon/states.hpp"

namespace qshannon {

std::string_view version();

namespace io {

/// Computed values: 12 significant digits, trailing zeros kept ("%#.12g").
std::string format_computed(double x);
/// Echoed inputs: 12 significant digits, shortest form ("%.12g").
std::string format_input(double x);
/// Round to 12 significant digits for JSON emission. Non-finite values pass through.
double round12(double x);

/// One CSV/JSON cell. Inputs and computed values format differently.
struct Cell {
    enum class Kind { input, computed, integer, text, boolean };
    Kind kind = Kind::text;
    double number = 0.0;
    long long integer_value = 0;
    std::string text;

    static Cell in(double x);
    static Cell out(double x);
    static Cell count(long long n);
    static Cell str(std::string s);
    static Cell flag(bool b);

    [[nodiscard]] std::string csv() const;
    [[nodiscard]] nlohmann::ordered_json json() const;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// RFC 4180 field quoting.
std::string csv_escape(const std::string& field);

/// Header row always present, one line per row, "\n" line endings.
void write_csv(std::ostream& os, const Table& t);

/// Array of row objects keyed by the header.
nlohmann::ordered_json table_json(const Table& t);

nlohmann::ordered_json to_json(const Constellation& c);
nlohmann::ordered_json to_json(const GramMatrix& g);
nlohmann::ordered_json to_json(const ChannelMatrix& ch);

/// Columns are inputs i, rows are outcomes j: cell (j, i) holds P(j|i).
Table channel_table(const ChannelMatrix& ch);

}  // namespace io
}  // namespace qshannon
