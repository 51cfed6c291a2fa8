// Dispersive qubit readout rates and mechanical sideband asymmetry
// built on the one-sided cavity detector.

#pragma once

#include "qnoise/cavity.hpp"
#include "qnoise/core.hpp"

#include <string>
#include <vector>

namespace qnoise {

/// χ_ZF(0) = 0: the homodyne quadrature carries no qubit signal.
class DegenerateReadout : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

/// The back-action-modified oscillator is unstable (no stationary spectrum).
class InstabilityError : public PhysicsError {
public:
    InstabilityError(const std::string& what, double omega) : PhysicsError(what), omega_(omega) {}
    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

struct QubitReadoutResult {
    double gamma_meas;  // 1/[2 s_zz(0)]
    double gamma_phi;   // (2/ħ²) S̄_FF(0)
    double ratio;       // Γ_φ/Γ_meas
    double theta_opt;
};

QubitReadoutResult qubit_rates(const CavityParams& params);

/// −arctan(γ/Δ); +π/2 when Δ = 0.
double optimal_angle(double gamma, double delta);

/// χ_qq = χ_qq⁽⁰⁾/[1 − χ_qq⁽⁰⁾ χ_FF] on the grid of chi_FF.
ComplexSpectrum modified_mech_susceptibility(const MechOscillator& osc,
                                             const ComplexSpectrum& chi_FF);

/// Terms of the measured displacement spectrum S̄_zz^tot = S̄_zz + 2Re[χ_qq* S̄_zF] + S̄_qq.
struct OutputSpectrum {
    ComplexSpectrum total;
    ComplexSpectrum imprecision;   // s_zz
    ComplexSpectrum correlation;   // 2 Re[χ_qq* s_zF]
    ComplexSpectrum displacement;  // |χ_qq|² (S̄_th + S̄_FF)
    ComplexSpectrum chi_qq;
};

OutputSpectrum output_spectrum_terms(const CavityParams& params, const MechOscillator& osc,
                                     const FrequencyGrid& grid);

ComplexSpectrum total_output_spectrum(const CavityParams& params, const MechOscillator& osc,
                                      const FrequencyGrid& grid);

/// Mechanical linewidth including dynamical back action:
/// γ_m + Im χ_FF(ω_m)/(m ω_m).
double effective_damping(const CavityParams& params, const MechOscillator& osc);

struct AsymmetryResult {
    ComplexSpectrum spectrum_red;   // Δ = −ω_m
    ComplexSpectrum spectrum_blue;  // Δ = +ω_m
    double area_red;
    double area_blue;
    /// area_blue/area_red ≈ (⟨n⟩+1)/⟨n⟩; +infinity when the red sideband cancels.
    double ratio;
    std::vector<std::string> warnings;
};

/// Grid covering ω_m ± 10 γ_eff for both detunings with n_points samples.
FrequencyGrid sideband_grid(const CavityParams& params_template, const MechOscillator& osc,
                            std::size_t n_points = 4001);

/// Runs the output spectrum at Δ = ∓ω_m (delta of params_template is ignored)
/// and integrates the background-subtracted sideband over ω_m ± 10 γ_eff.
AsymmetryResult sideband_asymmetry(const CavityParams& params_template, const MechOscillator& osc,
                                   const FrequencyGrid& grid);

/// Trapezoidal integral of values over the grid points inside [lo, hi].
double trapezoid(const FrequencyGrid& grid, const std::vector<double>& values, double lo,
                 double hi);

}  // namespace qnoise
