#include "qnoise/apps.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qnoise {

QubitReadoutResult qubit_rates(const CavityParams& p) {
    p.validate();
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const double signal = p.delta * c - p.gamma * s;
    if (std::abs(signal) <= 1e-12 * (std::abs(p.delta) + p.gamma)) {
        std::ostringstream msg;
        msg << "qubit_rates: readout quadrature theta=" << p.theta
            << " is orthogonal to the qubit signal (chi_ZF(0) = 0)";
        throw DegenerateReadout(msg.str());
    }
    const FrequencyGrid dc({0.0});
    const auto susc = cavity_susceptibilities(p, dc);
    const auto spectra = cavity_spectra(p, dc);
    const auto norm = normalize(spectra, susc);
    const double hbar = p.units.hbar;

    QubitReadoutResult r{};
    r.gamma_meas = 1.0 / (2.0 * norm.s_zz[0].real());
    r.gamma_phi = 2.0 / (hbar * hbar) * spectra.s_FF[0].real();
    const double t = (p.delta * s + p.gamma * c) / signal;
    r.ratio = 1.0 + t * t;
    r.theta_opt = optimal_angle(p.gamma, p.delta);
    return r;
}

double optimal_angle(double gamma, double delta) {
    if (gamma == 0.0 && delta == 0.0) {
        throw InvalidArgument("optimal_angle: gamma and delta cannot both be zero");
    }
    if (delta == 0.0) return std::numbers::pi / 2.0;
    return -std::atan(gamma / delta);
}

ComplexSpectrum modified_mech_susceptibility(const MechOscillator& osc,
                                             const ComplexSpectrum& chi_FF) {
    const auto& grid = chi_FF.grid();
    std::vector<cdouble> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cdouble bare = osc.bare_susceptibility(grid[i]);
        const cdouble loop = bare * chi_FF[i];
        const cdouble denom = 1.0 - loop;
        if (std::abs(denom) < 1e-12 * std::abs(loop)) {
            std::ostringstream msg;
            msg << "modified_mech_susceptibility: optical-spring instability at omega=" << grid[i];
            throw InstabilityError(msg.str(), grid[i]);
        }
        out[i] = bare / denom;
    }
    return {grid, std::move(out)};
}

OutputSpectrum output_spectrum_terms(const CavityParams& p, const MechOscillator& osc,
                                     const FrequencyGrid& grid) {
    const auto susc = cavity_susceptibilities(p, grid);
    const auto norm = normalize(cavity_spectra(p, grid), susc);
    auto chi_qq = modified_mech_susceptibility(osc, susc.chi_FF);

    std::vector<cdouble> corr(grid.size()), disp(grid.size()), total(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cdouble chi = chi_qq[i];
        corr[i] = 2.0 * (std::conj(chi) * norm.s_zF[i]).real();
        disp[i] = std::norm(chi) * (osc.thermal_force_spectrum(grid[i]) + norm.s_FF[i].real());
        total[i] = norm.s_zz[i] + corr[i] + disp[i];
    }
    return {ComplexSpectrum(grid, std::move(total)), norm.s_zz, ComplexSpectrum(grid, std::move(corr)),
            ComplexSpectrum(grid, std::move(disp)), std::move(chi_qq)};
}

ComplexSpectrum total_output_spectrum(const CavityParams& p, const MechOscillator& osc,
                                      const FrequencyGrid& grid) {
    return output_spectrum_terms(p, osc, grid).total;
}

double effective_damping(const CavityParams& p, const MechOscillator& osc) {
    const FrequencyGrid at({osc.omega_m()});
    const double im = cavity_susceptibilities(p, at).chi_FF[0].imag();
    return osc.gamma_m() + im / (osc.mass() * osc.omega_m());
}

namespace {

CavityParams detuned(CavityParams p, double delta) {
    p.delta = delta;
    return p;
}

double checked_damping(const CavityParams& p, const MechOscillator& osc) {
    const double g = effective_damping(p, osc);
    if (!(g > 0.0)) {
        std::ostringstream msg;
        msg << "sideband_asymmetry: back action anti-damps the oscillator at delta=" << p.delta
            << " (effective damping " << g << ")";
        throw InstabilityError(msg.str(), osc.omega_m());
    }
    return g;
}

}  // namespace

FrequencyGrid sideband_grid(const CavityParams& tmpl, const MechOscillator& osc,
                            std::size_t n_points) {
    const double w = osc.omega_m();
    const double g_red = checked_damping(detuned(tmpl, -w), osc);
    const double g_blue = checked_damping(detuned(tmpl, +w), osc);
    const double half = 10.5 * std::max(g_red, g_blue);
    return make_uniform_grid(w - half, w + half, n_points);
}

double trapezoid(const FrequencyGrid& grid, const std::vector<double>& values, double lo,
                 double hi) {
    double sum = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i - 1] < lo || grid[i] > hi) continue;
        sum += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    }
    return sum;
}

AsymmetryResult sideband_asymmetry(const CavityParams& tmpl, const MechOscillator& osc,
                                   const FrequencyGrid& grid) {
    const double w = osc.omega_m();
    AsymmetryResult result;
    if (tmpl.gamma > 0.1 * w) {
        std::ostringstream msg;
        msg << "cavity linewidth gamma=" << tmpl.gamma << " is not small compared to omega_m=" << w
            << "; sideband asymmetry is only (n+1)/n in the resolved-sideband regime";
        result.warnings.push_back(msg.str());
    }

    auto run = [&](double delta, ComplexSpectrum& spectrum) {
        const CavityParams p = detuned(tmpl, delta);
        const double g_eff = checked_damping(p, osc);
        const double lo = w - 10.0 * g_eff;
        const double hi = w + 10.0 * g_eff;
        if (grid.empty() || grid[0] > lo || grid[grid.size() - 1] < hi) {
            throw InvalidArgument("sideband_asymmetry: grid does not cover omega_m +/- 10 gamma_eff");
        }
        const OutputSpectrum terms = output_spectrum_terms(p, osc, grid);
        spectrum = terms.total;
        const std::vector<double> signal = (terms.total - terms.imprecision).real();
        return trapezoid(grid, signal, lo, hi);
    };

    result.area_red = run(-w, result.spectrum_red);
    result.area_blue = run(+w, result.spectrum_blue);
    if (result.area_red <= 1e-3 * std::abs(result.area_blue)) {
        result.ratio = std::numeric_limits<double>::infinity();
    } else {
        result.ratio = result.area_blue / result.area_red;
    }
    return result;
}

}  // namespace qnoise
