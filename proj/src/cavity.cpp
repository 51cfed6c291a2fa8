#include "qnoise/cavity.hpp"

#include <cmath>
#include <sstream>

namespace qnoise {

namespace {

constexpr cdouble I{0.0, 1.0};

}  // namespace

cdouble cavity_denominator(const CavityParams& p, cdouble omega) {
    return (omega - p.delta + I * p.gamma) * (omega + p.delta + I * p.gamma);
}

SusceptibilitySet cavity_susceptibilities(const CavityParams& p, const FrequencyGrid& grid) {
    p.validate();
    const double hbar = p.units.hbar;
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const double sqrt_gamma = std::sqrt(p.gamma);

    std::vector<cdouble> zf(grid.size()), ff(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        const cdouble d = cavity_denominator(p, w);
        zf[i] = -2.0 * p.gbar * sqrt_gamma * (p.delta * c + (I * w - p.gamma) * s) / d;
        ff[i] = 2.0 * hbar * p.gbar * p.gbar * p.delta / d;
    }
    return {ComplexSpectrum(grid, std::move(zf)), ComplexSpectrum(grid, std::move(ff)),
            ComplexSpectrum(grid, cdouble{}), ComplexSpectrum(grid, cdouble{}), p.units};
}

SpectraSet cavity_spectra(const CavityParams& p, const FrequencyGrid& grid) {
    p.validate();
    const double hbar = p.units.hbar;
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    const double g2 = p.gamma * p.gamma;
    const double d2 = p.delta * p.delta;

    std::vector<cdouble> zf(grid.size()), ff(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        const cdouble d = cavity_denominator(p, w);
        zf[i] = hbar * p.gbar * std::sqrt(p.gamma) * (p.delta * s - (I * w - p.gamma) * c) / d;
        const double lo = (w - p.delta) * (w - p.delta) + g2;
        const double hi = (w + p.delta) * (w + p.delta) + g2;
        ff[i] = 2.0 * hbar * hbar * p.gbar * p.gbar * p.gamma * (g2 + d2 + w * w) / (lo * hi);
    }
    return {ComplexSpectrum(grid, cdouble{0.5, 0.0}), ComplexSpectrum(grid, std::move(zf)),
            ComplexSpectrum(grid, std::move(ff)), true, p.units};
}

NormalizedSpectra normalize(const SpectraSet& spectra, const SusceptibilitySet& susc) {
    const auto& grid = spectra.grid();
    if (!(grid == susc.grid())) {
        throw GridMismatch("normalize: spectra and susceptibilities live on different grids");
    }
    std::vector<cdouble> zz(grid.size()), zF(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cdouble chi = susc.chi_ZF[i];
        const double mag = std::abs(chi);
        if (mag < 1e-300) {
            std::ostringstream msg;
            msg << "normalize: chi_ZF vanishes at omega=" << grid[i];
            throw SingularNormalization(msg.str(), grid[i]);
        }
        zz[i] = spectra.s_ZZ[i] / (mag * mag);
        zF[i] = spectra.s_ZF[i] / chi;
    }
    return {ComplexSpectrum(grid, std::move(zz)), ComplexSpectrum(grid, std::move(zF)),
            spectra.s_FF, spectra.units};
}

}  // namespace qnoise
