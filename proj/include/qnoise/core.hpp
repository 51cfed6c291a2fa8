// Shared domain types: frequency grids, sampled spectra and parameter blocks.
//
// Conventions used throughout the library:
//   * Fourier transform f(ω) = ∫ dt e^{iωt} f(t), so causal responses have
//     their poles in the lower half of the complex ω plane.
//   * Spectra are double-sided.
//   * ħ and k_B are read only from UnitConvention.

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qnoise {

using cdouble = std::complex<double>;

// ------------------------------- errors -------------------------------------

/// Bad argument or violated type invariant.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two spectra live on different grids, or an operation needs a symmetric grid.
class GridMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Base for errors that signal a physically degenerate configuration
/// (singular readout, unstable dynamics) rather than bad input syntax.
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ------------------------------- units --------------------------------------

struct UnitConvention {
    double hbar{1.0};
    double boltzmann{1.0};

    void validate() const;
};

// --------------------------- frequency grid ---------------------------------

/// Strictly increasing set of angular frequencies. Copies share storage.
class FrequencyGrid {
public:
    FrequencyGrid() = default;
    explicit FrequencyGrid(std::vector<double> points);

    std::size_t size() const noexcept { return points_ ? points_->size() : 0; }
    bool empty() const noexcept { return size() == 0; }
    double operator[](std::size_t i) const { return (*points_)[i]; }
    std::span<const double> points() const noexcept {
        return points_ ? std::span<const double>(*points_) : std::span<const double>();
    }

    /// points[i] == -points[size-1-i] exactly for every i.
    bool is_symmetric() const noexcept { return symmetric_; }

    /// Index of -ω for the point at index i. Requires a symmetric grid.
    std::size_t reflected_index(std::size_t i) const;

    /// Throws GridMismatch unless the grid is symmetric.
    void require_symmetric(const char* who) const;

    /// Index of the point exactly equal to omega, or throws InvalidArgument.
    std::size_t index_of(double omega) const;

    bool operator==(const FrequencyGrid& other) const noexcept;

private:
    std::shared_ptr<const std::vector<double>> points_;
    bool symmetric_{false};
};

/// {-ω_max, ..., 0, ..., +ω_max} with 2·n_half+1 uniformly spaced points.
FrequencyGrid make_symmetric_grid(double omega_max, int n_half);

/// n uniformly spaced points covering [lo, hi].
FrequencyGrid make_uniform_grid(double lo, double hi, std::size_t n);

// --------------------------- complex spectrum --------------------------------

class ComplexSpectrum {
public:
    ComplexSpectrum() = default;
    ComplexSpectrum(FrequencyGrid grid, std::vector<cdouble> values);
    /// Constant spectrum.
    ComplexSpectrum(FrequencyGrid grid, cdouble value);

    const FrequencyGrid& grid() const noexcept { return grid_; }
    std::span<const cdouble> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    cdouble operator[](std::size_t i) const { return values_[i]; }
    double omega(std::size_t i) const { return grid_[i]; }

    /// Value at a grid point given by its frequency (exact match).
    cdouble at(double omega) const { return values_[grid_.index_of(omega)]; }

    ComplexSpectrum conj() const;
    ComplexSpectrum scaled(cdouble factor) const;
    std::vector<double> real() const;
    std::vector<double> imag() const;
    std::vector<double> abs() const;

    friend ComplexSpectrum operator+(const ComplexSpectrum& a, const ComplexSpectrum& b);
    friend ComplexSpectrum operator-(const ComplexSpectrum& a, const ComplexSpectrum& b);
    friend ComplexSpectrum operator*(const ComplexSpectrum& a, const ComplexSpectrum& b);
    friend ComplexSpectrum operator/(const ComplexSpectrum& a, const ComplexSpectrum& b);

private:
    FrequencyGrid grid_;
    std::vector<cdouble> values_;
};

/// out(ω) = in(-ω). Requires a symmetric grid.
ComplexSpectrum reflect(const ComplexSpectrum& spectrum);

// ------------------------- physical parameters ------------------------------

/// System-detector coupling before linearization about the mean photon number.
struct CouplingSpec {
    struct Qubit {
        double g0;        // Jaynes-Cummings coupling rate
        double omega_01;  // qubit transition frequency
        double omega_l;   // laser frequency
    };
    struct Mechanical {
        double omega_r;  // cavity resonance
        double length;   // cavity length
    };
    struct Direct {
        double g;
    };

    std::variant<Qubit, Mechanical, Direct> variant;
    double n_cav_mean{1.0};

    /// g such that F = ħ g n_cav.
    double bare_rate() const;
    /// ḡ = g·sqrt(2·n_cav_mean).
    double effective_rate() const;
};

/// Detuned one-sided cavity read out by homodyne detection.
struct CavityParams {
    double gamma{1.0};  // amplitude decay rate
    double delta{0.0};  // ω_laser − ω_cavity
    double gbar{1.0};   // linearized coupling
    double theta{0.0};  // homodyne angle; 2π-periodic, stored as given
    UnitConvention units{};

    void validate() const;
};

/// Viscously damped mechanical oscillator in a thermal state.
class MechOscillator {
public:
    static MechOscillator from_occupation(double omega_m, double gamma_m, double mass,
                                          double n_occupation, UnitConvention units = {});
    static MechOscillator from_temperature(double omega_m, double gamma_m, double mass,
                                           double temperature, UnitConvention units = {});

    double omega_m() const noexcept { return omega_m_; }
    double gamma_m() const noexcept { return gamma_m_; }
    double mass() const noexcept { return mass_; }
    double occupation() const noexcept { return n_occupation_; }
    const UnitConvention& units() const noexcept { return units_; }

    /// χ_qq⁽⁰⁾(ω) = 1/[m(ω_m² − ω² − iγ_m ω)].
    cdouble bare_susceptibility(double omega) const;

    /// Symmetrized thermal Langevin force spectrum ħ m γ_m ω coth(ħω/2k_BT),
    /// with the temperature chosen so that it equals ħ(2⟨n⟩+1) m γ_m ω_m at ω_m.
    double thermal_force_spectrum(double omega) const;

private:
    MechOscillator(double omega_m, double gamma_m, double mass, double n, UnitConvention u);

    double omega_m_;
    double gamma_m_;
    double mass_;
    double n_occupation_;
    UnitConvention units_;
};

}  // namespace qnoise
