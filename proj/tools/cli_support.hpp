#pragma once

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace p3lab::cli {

extern const char* const kVersion;

enum ExitCode : int {
    ok = 0,
    check_failed = 1,
    usage_error = 2,
    precision_exhausted = 3,
    numerical_failure = 4,
    io_error = 5,
};

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shortest decimal string that reads back to the same double.
std::string fmt(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 if absent
    std::vector<double> numeric_column(const std::string& name) const;
};

std::string to_csv(const CsvTable& t);
void write_csv(const std::string& path, const CsvTable& t);
// Throws CsvError on an empty file, a missing header, or ragged rows.
CsvTable read_csv(const std::string& path);

// Library and build versions recorded in every sidecar.
nlohmann::json build_info();

// Writes path + ".meta.json". `meta` is extended with the output name, version and build info.
void write_sidecar(const std::string& path, nlohmann::json meta);

enum class PlotKind { line, heatmap };
PlotKind parse_plot_kind(const std::string& s);

struct PlotOptions {
    std::string x;               // line: x column (default: first column)
    std::vector<std::string> y;  // line: y columns (default: all others)
    std::string u = "u", v = "v", value = "K";  // heatmap columns
    bool log_x = false;
    std::string title;
};

// SVG text for the CSV; throws CsvError on malformed or empty input.
std::string render_svg(const CsvTable& t, PlotKind kind, const PlotOptions& opt = {});
// Reads the CSV and writes the SVG only once it rendered successfully.
void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& svg_path, const PlotOptions& opt = {});

// One-line machine-readable error record.
nlohmann::json error_record(const std::string& kind, ExitCode code, const std::string& message,
                            const std::string& subcommand);

}  // namespace p3lab::cli
