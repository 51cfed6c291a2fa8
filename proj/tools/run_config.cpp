#include "run_config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace qnoise::cli {

namespace {

const std::map<std::string, Command>& command_table() {
    static const std::map<std::string, Command> table{
        {"spectra", Command::spectra}, {"check", Command::check},     {"qubit", Command::qubit},
        {"mech", Command::mech},       {"mimo-check", Command::mimo_check}};
    return table;
}

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + what + ": '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw ConfigError("invalid number for " + what + ": '" + text + "'");
    }
    return v;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void validate(const RunConfig& c) {
    for (double v : {c.gamma, c.delta, c.gbar, c.theta, c.hbar, c.omega_max, c.omega_m, c.gamma_m,
                     c.mass, c.n_occ}) {
        require(std::isfinite(v), "numeric flags must be finite");
    }
    require(c.gamma > 0.0, "--gamma must be positive");
    require(c.gbar > 0.0, "--gbar must be positive");
    require(c.hbar > 0.0, "--hbar must be positive");
    require(c.omega_max > 0.0, "--omega-max must be positive");
    require(c.n_half >= 1, "--n-half must be >= 1");
    require(c.omega_m > 0.0, "--omega-m must be positive");
    require(c.gamma_m > 0.0, "--gamma-m must be positive");
    require(c.mass > 0.0, "--mass must be positive");
    require(c.n_occ >= 0.0, "--n-occ must be non-negative");
    require(c.mech_points >= 3, "--mech-points must be >= 3");
    require(c.ports >= 1, "--ports must be >= 1");
    require(!c.output.empty(), "--output must not be empty");
}

}  // namespace

std::string format_exact(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string command_name(Command c) {
    for (const auto& [name, cmd] : command_table()) {
        if (cmd == c) return name;
    }
    return "unknown";
}

InputSpec parse_input_spec(const std::string& text) {
    InputSpec spec;
    if (text == "vacuum") return spec;
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("input state must be vacuum, thermal:<n> or squeezed:<r>,<phi>");
    }
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (kind == "thermal") {
        spec.kind = InputSpec::Kind::thermal;
        spec.n_th = parse_double(rest, "thermal occupation");
        require(spec.n_th >= 0.0, "thermal occupation must be non-negative");
        return spec;
    }
    if (kind == "squeezed") {
        const auto comma = rest.find(',');
        require(comma != std::string::npos, "squeezed input needs <r>,<phi>");
        spec.kind = InputSpec::Kind::squeezed;
        spec.r = parse_double(rest.substr(0, comma), "squeeze factor");
        spec.phi = parse_double(rest.substr(comma + 1), "squeeze angle");
        require(spec.r >= 0.0, "squeeze factor must be non-negative");
        return spec;
    }
    throw ConfigError("unknown input state '" + kind + "'");
}

std::string to_string(const InputSpec& spec) {
    switch (spec.kind) {
        case InputSpec::Kind::vacuum: return "vacuum";
        case InputSpec::Kind::thermal: return "thermal:" + format_exact(spec.n_th);
        case InputSpec::Kind::squeezed:
            return "squeezed:" + format_exact(spec.r) + "," + format_exact(spec.phi);
    }
    return "vacuum";
}

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig c;
    CLI::App app{"Quantum noise of continuous linear detectors", "qnoise"};

    std::string command;
    std::string input = "vacuum";
    std::string format = "csv";
    app.add_option("command", command, "spectra | check | qubit | mech | mimo-check")
        ->required()
        ->check(CLI::IsMember({"spectra", "check", "qubit", "mech", "mimo-check"}));

    app.add_option("--gamma", c.gamma, "cavity decay rate");
    app.add_option("--delta", c.delta, "laser detuning from the cavity resonance");
    app.add_option("--gbar", c.gbar, "linearized coupling rate");
    app.add_option("--theta", c.theta, "homodyne angle (rad)");
    app.add_option("--hbar", c.hbar, "value of hbar");
    app.add_option("--omega-max", c.omega_max, "grid half-width");
    app.add_option("--n-half", c.n_half, "grid points per half-axis");
    app.add_option("--input", input, "vacuum | thermal:<n> | squeezed:<r>,<phi>");
    app.add_option("--omega-m", c.omega_m, "mechanical frequency");
    app.add_option("--gamma-m", c.gamma_m, "mechanical damping rate");
    app.add_option("--mass", c.mass, "oscillator mass");
    app.add_option("--n-occ", c.n_occ, "mechanical mean occupation");
    app.add_option("--mech-points", c.mech_points, "grid points across the sideband window");
    app.add_option("--matrix-file", c.matrix_file, "CSV of 2N x 2N spectral matrices");
    app.add_option("--ports", c.ports, "independent cavities for mimo-check");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", c.output, "output path, '-' for stdout");
    app.add_flag("--single-sided", c.single_sided, "export single-sided spectra (omega >= 0)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    c.command = command_table().at(command);
    c.input = parse_input_spec(input);
    c.format = format == "json" ? Format::json : Format::csv;
    validate(c);
    return c;
}

std::vector<std::string> to_args(const RunConfig& c) {
    std::vector<std::string> a{command_name(c.command)};
    auto put = [&a](const char* flag, const std::string& value) {
        a.push_back(std::string(flag) + "=" + value);
    };
    put("--gamma", format_exact(c.gamma));
    put("--delta", format_exact(c.delta));
    put("--gbar", format_exact(c.gbar));
    put("--theta", format_exact(c.theta));
    put("--hbar", format_exact(c.hbar));
    put("--omega-max", format_exact(c.omega_max));
    put("--n-half", std::to_string(c.n_half));
    put("--input", to_string(c.input));
    put("--omega-m", format_exact(c.omega_m));
    put("--gamma-m", format_exact(c.gamma_m));
    put("--mass", format_exact(c.mass));
    put("--n-occ", format_exact(c.n_occ));
    put("--mech-points", std::to_string(c.mech_points));
    if (!c.matrix_file.empty()) put("--matrix-file", c.matrix_file);
    put("--ports", std::to_string(c.ports));
    put("--format", c.format == Format::json ? "json" : "csv");
    put("--output", c.output);
    if (c.single_sided) a.emplace_back("--single-sided");
    return a;
}

}  // namespace qnoise::cli
