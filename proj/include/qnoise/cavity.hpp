// Closed-form susceptibilities and symmetrized noise spectra of a
// detuned one-sided cavity whose input observable is the (linearized) photon
// number and whose output observable is a homodyne quadrature.

#pragma once

#include "qnoise/core.hpp"

namespace qnoise {

/// Detector susceptibilities χ_ZF, χ_FF, χ_ZZ, χ_FZ on a common grid.
struct SusceptibilitySet {
    ComplexSpectrum chi_ZF;
    ComplexSpectrum chi_FF;
    ComplexSpectrum chi_ZZ;
    ComplexSpectrum chi_FZ;
    UnitConvention units{};

    const FrequencyGrid& grid() const noexcept { return chi_ZF.grid(); }
};

/// Noise spectra S_ZZ, S_ZF, S_FF. When `symmetrized` is false these are the
/// unsymmetrized spectra, and S_FZ(ω) = S_ZF(ω)* is implied.
struct SpectraSet {
    ComplexSpectrum s_ZZ;
    ComplexSpectrum s_ZF;
    ComplexSpectrum s_FF;
    bool symmetrized{false};
    UnitConvention units{};

    const FrequencyGrid& grid() const noexcept { return s_ZZ.grid(); }
};

/// Spectra of the output referred to the system coordinate, ẑ = Ẑ/χ_ZF:
/// s_zz = S̄_ZZ/|χ_ZF|², s_zF = S̄_ZF/χ_ZF, s_FF = S̄_FF.
struct NormalizedSpectra {
    ComplexSpectrum s_zz;
    ComplexSpectrum s_zF;
    ComplexSpectrum s_FF;
    UnitConvention units{};
};

/// Raised by normalize() when χ_ZF vanishes on the grid.
class SingularNormalization : public PhysicsError {
public:
    SingularNormalization(const std::string& what, double omega)
        : PhysicsError(what), omega_(omega) {}
    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

SusceptibilitySet cavity_susceptibilities(const CavityParams& params, const FrequencyGrid& grid);

/// Symmetrized spectra for vacuum input.
SpectraSet cavity_spectra(const CavityParams& params, const FrequencyGrid& grid);

NormalizedSpectra normalize(const SpectraSet& spectra, const SusceptibilitySet& susc);

/// (ω−Δ+iγ)(ω+Δ+iγ), the common denominator of every closed form above.
/// Vanishes at ω = ±Δ − iγ.
cdouble cavity_denominator(const CavityParams& params, cdouble omega);

}  // namespace qnoise
