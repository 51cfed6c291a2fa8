// Command-line configuration of the qnoise tool.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qnoise::cli {

enum class Command { spectra, check, qubit, mech, mimo_check };
enum class Format { csv, json };

struct InputSpec {
    enum class Kind { vacuum, thermal, squeezed };
    Kind kind{Kind::vacuum};
    double n_th{0.0};
    double r{0.0};
    double phi{0.0};

    bool operator==(const InputSpec&) const = default;
};

/// "vacuum", "thermal:<n>" or "squeezed:<r>,<phi>".
InputSpec parse_input_spec(const std::string& text);
std::string to_string(const InputSpec& spec);

struct RunConfig {
    Command command{Command::spectra};

    // cavity
    double gamma{1.0};
    double delta{0.0};
    double gbar{1.0};
    double theta{1.5707963267948966};  // phase quadrature
    double hbar{1.0};

    // grid
    double omega_max{5.0};
    int n_half{100};

    InputSpec input{};

    // oscillator (mech)
    double omega_m{1.0};
    double gamma_m{1e-5};
    double mass{1.0};
    double n_occ{1.0};
    int mech_points{4001};

    // mimo-check
    std::string matrix_file{};
    int ports{1};

    Format format{Format::csv};
    std::string output{"-"};
    bool single_sided{false};

    bool operator==(const RunConfig&) const = default;
};

/// Thrown for unparsable or out-of-range flags (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when --help is requested; what() holds the usage text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses arguments without the program name, e.g. {"spectra", "--gamma", "2"}.
RunConfig parse_args(const std::vector<std::string>& args);

/// Canonical argument list that parse_args maps back to the same config.
std::vector<std::string> to_args(const RunConfig& config);

std::string command_name(Command c);

/// Exact decimal representation used for round-tripping doubles.
std::string format_exact(double x);

}  // namespace qnoise::cli
