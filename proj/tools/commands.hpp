// The qnoise subcommands and their CSV/JSON writers.

#pragma once

#include "run_config.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace qnoise::cli {

enum ExitCode : int { exit_ok = 0, exit_io = 1, exit_config = 2, exit_violation = 3, exit_physics = 4 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Column {
    std::string name;
    std::vector<double> numbers;
    std::vector<std::string> text;  // used instead of numbers when non-empty

    std::size_t size() const { return text.empty() ? numbers.size() : text.size(); }
};

/// Equal-length columns written as one CSV block.
struct Table {
    std::vector<Column> columns;
};

struct Report {
    std::vector<Table> tables;
    int exit_code{exit_ok};
    std::string message;  // printed on stderr when non-empty
};

Report run_spectra(const RunConfig& config);
Report run_check(const RunConfig& config);
Report run_qubit(const RunConfig& config);
Report run_mech(const RunConfig& config);
Report run_mimo_check(const RunConfig& config);
Report run(const RunConfig& config);

/// %.16e, or inf / -inf / nan.
std::string format_number(double x);

/// Header row then data rows per table; tables separated by a blank line.
std::string render_csv(const Report& report);
/// One object: every column as an array keyed by its name, plus "config".
std::string render_json(const Report& report, const RunConfig& config);

/// Parses a MIMO spectral-matrix file: one line per frequency,
/// "omega,re00,im00,re01,im01,..." row-major. '#' lines and a header are skipped.
struct MatrixFile {
    std::vector<double> omega;
    std::vector<Eigen::MatrixXcd> matrices;
};

MatrixFile parse_matrix_file(std::istream& in);

/// Full command-line entry point; returns the process exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnoise::cli
