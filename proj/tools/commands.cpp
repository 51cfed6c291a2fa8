#include "commands.hpp"

#include "qnoise/apps.hpp"
#include "qnoise/cavity.hpp"
#include "qnoise/constraints.hpp"
#include "qnoise/netsolve.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qnoise::cli {

namespace {

CavityParams cavity_params(const RunConfig& c) {
    CavityParams p;
    p.gamma = c.gamma;
    p.delta = c.delta;
    p.gbar = c.gbar;
    p.theta = c.theta;
    p.units.hbar = c.hbar;
    p.validate();
    return p;
}

InputState input_state(const InputSpec& spec) {
    switch (spec.kind) {
        case InputSpec::Kind::thermal: return InputState::thermal(spec.n_th);
        case InputSpec::Kind::squeezed: return InputState::squeezed(std::polar(spec.r, spec.phi));
        case InputSpec::Kind::vacuum: break;
    }
    return InputState::vacuum();
}

Column numeric(std::string name, std::vector<double> values) {
    return Column{std::move(name), std::move(values), {}};
}

Column scalar(std::string name, double value) { return numeric(std::move(name), {value}); }

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

Report run_spectra(const RunConfig& c) {
    const CavityParams p = cavity_params(c);
    const FrequencyGrid grid = make_symmetric_grid(c.omega_max, c.n_half);

    SusceptibilitySet susc;
    SpectraSet sym;
    if (c.input.kind == InputSpec::Kind::vacuum) {
        susc = cavity_susceptibilities(p, grid);
        sym = cavity_spectra(p, grid);
    } else {
        const LinearNetwork net = build_one_sided_cavity(p, input_state(c.input));
        susc = solve_susceptibilities(net, grid);
        sym = symmetrize(solve_unsym_spectra(net, grid));
    }
    const NormalizedSpectra norm = normalize(sym, susc);

    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!c.single_sided || grid[i] >= 0.0) rows.push_back(i);
    }
    const double fold = c.single_sided ? 2.0 : 1.0;

    Table t;
    auto add = [&](const char* name, const ComplexSpectrum& s, bool imag, double factor) {
        Column col{name, {}, {}};
        for (std::size_t i : rows) col.numbers.push_back(factor * (imag ? s[i].imag() : s[i].real()));
        t.columns.push_back(std::move(col));
    };
    Column omega{"omega", {}, {}};
    for (std::size_t i : rows) omega.numbers.push_back(grid[i]);
    t.columns.push_back(std::move(omega));
    add("chi_ZF_re", susc.chi_ZF, false, 1.0);
    add("chi_ZF_im", susc.chi_ZF, true, 1.0);
    add("chi_FF_re", susc.chi_FF, false, 1.0);
    add("chi_FF_im", susc.chi_FF, true, 1.0);
    add("S_ZZ", sym.s_ZZ, false, fold);
    add("S_ZF_re", sym.s_ZF, false, fold);
    add("S_ZF_im", sym.s_ZF, true, fold);
    add("S_FF", sym.s_FF, false, fold);
    add("s_zz", norm.s_zz, false, fold);
    add("s_zF_re", norm.s_zF, false, fold);
    add("s_zF_im", norm.s_zF, true, fold);
    return Report{{std::move(t)}, exit_ok, {}};
}

Report run_check(const RunConfig& c) {
    const CavityParams p = cavity_params(c);
    const FrequencyGrid grid = make_symmetric_grid(c.omega_max, c.n_half);
    const LinearNetwork net = build_one_sided_cavity(p, input_state(c.input));
    const ConstraintReport r = audit(solve_unsym_spectra(net, grid), solve_susceptibilities(net, grid));

    Column verdict{"verdict", {}, {}};
    for (Verdict v : r.verdict) verdict.text.emplace_back(to_string(v));
    Table t{{numeric("omega", std::vector<double>(grid.points().begin(), grid.points().end())),
             numeric("uncertainty_gap", r.uncertainty_gap), numeric("gap_scale", r.gap_scale),
             numeric("product_residual", r.product_residual),
             numeric("correlation_residual", r.correlation_residual),
             numeric("kubo_residual", r.kubo_residual),
             numeric("backaction_margin", r.backaction_margin), std::move(verdict)}};
    Report out{{std::move(t)}, exit_ok, {}};
    if (r.any_violation()) {
        out.exit_code = exit_violation;
        out.message = "violation: the uncertainty relation fails on at least one grid point";
    }
    return out;
}

Report run_qubit(const RunConfig& c) {
    const QubitReadoutResult r = qubit_rates(cavity_params(c));
    Table t{{scalar("gamma_meas", r.gamma_meas), scalar("gamma_phi", r.gamma_phi),
             scalar("ratio", r.ratio), scalar("theta_opt", r.theta_opt)}};
    return Report{{std::move(t)}, exit_ok, {}};
}

Report run_mech(const RunConfig& c) {
    const CavityParams p = cavity_params(c);
    const MechOscillator osc =
        MechOscillator::from_occupation(c.omega_m, c.gamma_m, c.mass, c.n_occ, p.units);
    const FrequencyGrid grid = sideband_grid(p, osc, static_cast<std::size_t>(c.mech_points));
    const AsymmetryResult r = sideband_asymmetry(p, osc, grid);

    Table summary{{scalar("area_red", r.area_red), scalar("area_blue", r.area_blue),
                   scalar("ratio", r.ratio)}};
    Table spectra{{numeric("omega", std::vector<double>(grid.points().begin(), grid.points().end())),
                   numeric("total_red", r.spectrum_red.real()),
                   numeric("total_blue", r.spectrum_blue.real())}};
    Report out{{std::move(summary), std::move(spectra)}, exit_ok, {}};
    for (const auto& w : r.warnings) out.message += "warning: " + w + "\n";
    return out;
}

MatrixFile parse_matrix_file(std::istream& in) {
    MatrixFile out;
    std::string line;
    std::size_t line_no = 0;
    Eigen::Index dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        bool numeric_line = true;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double x = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str()) {
                numeric_line = false;
                break;
            }
            v.push_back(x);
        }
        if (!numeric_line) {
            if (out.omega.empty() && out.matrices.empty()) continue;  // header
            throw ConfigError("matrix file line " + std::to_string(line_no) + ": not numeric");
        }
        const std::size_t cells = v.size() > 0 ? (v.size() - 1) / 2 : 0;
        const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(cells))));
        if (v.size() < 3 || (v.size() - 1) % 2 != 0 || static_cast<std::size_t>(n * n) != cells) {
            throw ConfigError("matrix file line " + std::to_string(line_no) +
                              ": expected omega followed by re,im pairs of a square matrix");
        }
        if (dim == 0) dim = n;
        if (n != dim) {
            throw ConfigError("matrix file line " + std::to_string(line_no) +
                              ": matrix size changes between lines");
        }
        Eigen::MatrixXcd m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index k = 0; k < n; ++k) {
                const std::size_t at = 1 + 2 * static_cast<std::size_t>(r * n + k);
                m(r, k) = cdouble(v[at], v[at + 1]);
            }
        }
        out.omega.push_back(v[0]);
        out.matrices.push_back(std::move(m));
    }
    if (out.matrices.empty()) throw ConfigError("matrix file holds no matrices");
    return out;
}

Report run_mimo_check(const RunConfig& c) {
    MatrixFile data;
    if (!c.matrix_file.empty()) {
        std::ifstream in(c.matrix_file);
        if (!in) throw IoError("cannot read matrix file '" + c.matrix_file + "'");
        data = parse_matrix_file(in);
    } else {
        const CavityParams p = cavity_params(c);
        const FrequencyGrid grid = make_symmetric_grid(c.omega_max, c.n_half);
        const LinearNetwork net = build_cavity_array(
            std::vector<CavityParams>(static_cast<std::size_t>(c.ports), p), {input_state(c.input)});
        data.omega.assign(grid.points().begin(), grid.points().end());
        data.matrices = solve_spectral_matrix(net, grid);
    }
    const MimoDeterminant d = mimo_quantum_limit(data.matrices);

    Column verdict{"verdict", {}, {}};
    bool violated = false;
    for (Verdict v : d.verdict) {
        verdict.text.emplace_back(to_string(v));
        violated = violated || v == Verdict::violation;
    }
    Table t{{numeric("omega", data.omega), numeric("det", d.det), numeric("scale", d.scale),
             std::move(verdict)}};
    Report out{{std::move(t)}, exit_ok, {}};
    if (violated) {
        out.exit_code = exit_violation;
        out.message = "violation: determinant negative on at least one grid point";
    }
    return out;
}

Report run(const RunConfig& c) {
    switch (c.command) {
        case Command::spectra: return run_spectra(c);
        case Command::check: return run_check(c);
        case Command::qubit: return run_qubit(c);
        case Command::mech: return run_mech(c);
        case Command::mimo_check: return run_mimo_check(c);
    }
    throw ConfigError("unknown command");
}

std::string render_csv(const Report& report) {
    std::string out;
    for (std::size_t k = 0; k < report.tables.size(); ++k) {
        const Table& t = report.tables[k];
        if (k > 0) out += '\n';
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            if (j > 0) out += ',';
            out += t.columns[j].name;
        }
        out += '\n';
        const std::size_t rows = t.columns.empty() ? 0 : t.columns.front().size();
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < t.columns.size(); ++j) {
                const Column& col = t.columns[j];
                if (j > 0) out += ',';
                out += col.text.empty() ? format_number(col.numbers[i]) : col.text[i];
            }
            out += '\n';
        }
    }
    return out;
}

std::string render_json(const Report& report, const RunConfig& config) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const Table& t : report.tables) {
        for (const Column& col : t.columns) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            if (!col.text.empty()) {
                for (const auto& s : col.text) arr.push_back(s);
            } else {
                for (double x : col.numbers) {
                    if (std::isfinite(x)) {
                        arr.push_back(x);
                    } else {
                        arr.push_back(format_number(x));
                    }
                }
            }
            doc[col.name] = std::move(arr);
        }
    }
    doc["config"] = to_args(config);
    return doc.dump() + "\n";
}

namespace {

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + path + "'");
    file << text;
    file.flush();
    if (!file) throw IoError("failed writing output file '" + path + "'");
}

}  // namespace

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig config = parse_args(args);
        const Report report = run(config);
        const std::string text =
            config.format == Format::json ? render_json(report, config) : render_csv(report);
        write_output(config.output, text, out);
        if (!report.message.empty()) {
            err << report.message;
            if (report.message.back() != '\n') err << '\n';
        }
        return report.exit_code;
    } catch (const HelpRequested& e) {
        out << e.what();
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const InvalidMatrix& e) {
        err << "violation: " << e.what() << '\n';
        return exit_violation;
    } catch (const NotValidDetector& e) {
        err << "violation: " << e.what() << '\n';
        return exit_violation;
    } catch (const PhysicsError& e) {
        err << "physics error: " << e.what() << '\n';
        return exit_physics;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
}

}  // namespace qnoise::cli
