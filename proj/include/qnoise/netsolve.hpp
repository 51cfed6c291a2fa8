// Frequency-domain input-output solver for linear bosonic
// detector networks driven by stationary Gaussian fields.
//
// A network has n internal modes a_k and p input/output ports c_j:
//
//     da/dt  = M a + K c_in
//     c_out  = D c_in + L a
//
// with complex (passive, excitation-number conserving) matrices M, K, D, L.
// Internally everything is expressed in the real quadrature basis
// (X_k, Y_k) with X = (a + a†)/√2, Y = (a − a†)/(√2 i), interleaved per mode
// and per port. Detector observables are Hermitian, i.e. real linear
// combinations of mode, input and output quadratures.
//
// Susceptibilities follow χ_AB(t) = (i/ħ)[A(t), B(0)]Θ(t) with Θ(0) = 1/2 and
// unsymmetrized spectra follow ⟨A(ω) B†(ω')⟩ = 2π S_AB(ω) δ(ω − ω').

#pragma once

#include "qnoise/cavity.hpp"
#include "qnoise/core.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qnoise {

/// Raised when the drift matrix is not strictly stable.
class StabilityError : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

/// Stationary Gaussian state of one input port.
///
/// Per-frequency data is either a single broadcast value or one value per
/// grid point. Squeezing pairs ω with −ω, so per-frequency squeeze data must
/// be even in ω.
class InputState {
public:
    enum class Kind { vacuum, thermal, squeezed };

    static InputState vacuum();
    static InputState thermal(double n_th);
    static InputState thermal(std::vector<double> n_th);
    /// xi = r·e^{iφ}: squeeze factor r and squeeze angle φ.
    static InputState squeezed(cdouble xi);
    static InputState squeezed(std::vector<cdouble> xi);

    Kind kind() const noexcept { return kind_; }
    bool is_pure() const noexcept { return kind_ != Kind::thermal; }

    /// Throws InvalidArgument if per-frequency data does not fit the grid.
    void validate_for(const FrequencyGrid& grid) const;

    /// Spectral matrix of (c, c†) at grid index i:
    /// [[S_cc†(ω), ⟨cc⟩(ω)], [⟨c†c†⟩(ω), S_c†c(ω)]].
    Eigen::Matrix2cd ladder_matrix(const FrequencyGrid& grid, std::size_t i) const;

    /// Spectral matrix of the (x, y) quadratures at grid index i.
    Eigen::Matrix2cd quadrature_matrix(const FrequencyGrid& grid, std::size_t i) const;

private:
    InputState(Kind k, std::vector<double> n, std::vector<cdouble> xi)
        : kind_(k), n_th_(std::move(n)), xi_(std::move(xi)) {}

    double n_at(const FrequencyGrid& grid, std::size_t i) const;

    Kind kind_{Kind::vacuum};
    std::vector<double> n_th_;
    std::vector<cdouble> xi_;
};

/// Real coefficient rows over mode, input and output quadratures.
struct Observable {
    Eigen::RowVectorXd modes;
    Eigen::RowVectorXd inputs;
    Eigen::RowVectorXd outputs;
};

/// weight·(cos φ X_k + sin φ Y_k) of internal mode k.
Observable mode_quadrature(Eigen::Index n_modes, Eigen::Index n_ports, Eigen::Index k,
                           double angle, double weight = 1.0);
/// weight·(cos φ X_out,j + sin φ Y_out,j) of outgoing port j.
Observable output_quadrature(Eigen::Index n_modes, Eigen::Index n_ports, Eigen::Index j,
                             double angle, double weight = 1.0);

class LinearNetwork {
public:
    /// General passive network. `z` and `f` hold the output and input
    /// observables of each detector channel (same count). `inputs` holds one
    /// state per port, or a single state applied to every port.
    LinearNetwork(Eigen::MatrixXcd drift, Eigen::MatrixXcd input_coupling,
                  Eigen::MatrixXcd feedthrough, Eigen::MatrixXcd output_from_modes,
                  std::vector<Observable> z, std::vector<Observable> f,
                  std::vector<InputState> inputs, UnitConvention units = {});

    /// Network generated by mode Hamiltonian H (Hermitian, in units of ħ) and
    /// port couplings L (p×n): M = −iH − L†L/2, K = −L†, D = 1, c_out = c_in + L a.
    static LinearNetwork from_hamiltonian(const Eigen::MatrixXcd& hamiltonian,
                                          const Eigen::MatrixXcd& coupling,
                                          std::vector<Observable> z, std::vector<Observable> f,
                                          std::vector<InputState> inputs,
                                          UnitConvention units = {});

    Eigen::Index n_modes() const noexcept { return drift_.rows(); }
    Eigen::Index n_ports() const noexcept { return input_coupling_.cols(); }
    std::size_t n_channels() const noexcept { return z_.size(); }

    const Eigen::MatrixXcd& drift() const noexcept { return drift_; }
    const Eigen::MatrixXcd& input_coupling() const noexcept { return input_coupling_; }
    const Eigen::MatrixXcd& feedthrough() const noexcept { return feedthrough_; }
    const Eigen::MatrixXcd& output_from_modes() const noexcept { return output_from_modes_; }
    const std::vector<Observable>& z() const noexcept { return z_; }
    const std::vector<Observable>& f() const noexcept { return f_; }
    const UnitConvention& units() const noexcept { return units_; }
    const InputState& input(Eigen::Index port) const;

    /// Eigenvalues of the (complex) drift matrix.
    Eigen::VectorXcd drift_eigenvalues() const;
    bool is_stable() const;
    void require_stable() const;

    /// Quadrature-basis drift, input, feedthrough and output matrices.
    const Eigen::MatrixXd& quad_drift() const noexcept { return a_; }
    const Eigen::MatrixXd& quad_input() const noexcept { return b_; }
    const Eigen::MatrixXd& quad_feedthrough() const noexcept { return d_; }
    const Eigen::MatrixXd& quad_output() const noexcept { return c_; }

    /// Stationary equal-time mode commutators [x_j, x_k] = i Σ_jk (Σ real).
    Eigen::MatrixXd mode_commutator() const;

private:
    Eigen::MatrixXcd drift_;
    Eigen::MatrixXcd input_coupling_;
    Eigen::MatrixXcd feedthrough_;
    Eigen::MatrixXcd output_from_modes_;
    std::vector<Observable> z_;
    std::vector<Observable> f_;
    std::vector<InputState> inputs_;
    UnitConvention units_;

    Eigen::MatrixXd a_, b_, c_, d_;
};

/// Single-mode cavity with drift −(γ − iΔ), coupling √(2γ), output
/// c_out = c_in − √(2γ) a, F = ħḡ(a + a†), Z = cos θ X_out + sin θ Y_out.
LinearNetwork build_one_sided_cavity(const CavityParams& params,
                                     InputState input = InputState::vacuum());

/// N uncoupled copies of the one-sided cavity, each with its own port.
LinearNetwork build_cavity_array(const std::vector<CavityParams>& params,
                                 std::vector<InputState> inputs);

/// Per-frequency solver for one network. Holds the factored quadrature
/// matrices; cheap to construct, safe to share read-only.
class NetworkSolver {
public:
    explicit NetworkSolver(const LinearNetwork& net);

    /// Row T with A(ω) = T(ω)·u_in(ω) over input quadratures.
    Eigen::RowVectorXcd transfer(const Observable& obs, double omega) const;

    /// χ_AB(ω).
    cdouble susceptibility(const Observable& a, const Observable& b, double omega) const;

    /// Spectral matrix of the stacked input quadratures at grid index i.
    Eigen::MatrixXcd input_noise(const FrequencyGrid& grid, std::size_t i) const;

    /// Unsymmetrized S_AB over the grid.
    ComplexSpectrum spectrum(const Observable& a, const Observable& b,
                             const FrequencyGrid& grid) const;

    /// Susceptibility χ_AB over the grid.
    ComplexSpectrum susceptibility(const Observable& a, const Observable& b,
                                   const FrequencyGrid& grid) const;

private:
    const LinearNetwork& net_;
    Eigen::MatrixXd sigma_;
    Eigen::MatrixXd port_commutator_;
};

/// χ_ZF, χ_FF, χ_ZZ, χ_FZ of detector channel `channel`.
SusceptibilitySet solve_susceptibilities(const LinearNetwork& net, const FrequencyGrid& grid,
                                         std::size_t channel = 0);

/// Unsymmetrized S_ZZ, S_ZF, S_FF of detector channel `channel`. Needs a symmetric grid.
SpectraSet solve_unsym_spectra(const LinearNetwork& net, const FrequencyGrid& grid,
                               std::size_t channel = 0);

/// 2N×2N unsymmetrized spectral matrix of (Z_1, F_1, ..., Z_N, F_N) per grid point.
std::vector<Eigen::MatrixXcd> solve_spectral_matrix(const LinearNetwork& net,
                                                    const FrequencyGrid& grid);

/// S̄_AB(ω) = [S_AB(ω) + S_BA(−ω)]/2, using S_FZ = S_ZF*. Idempotent.
SpectraSet symmetrize(const SpectraSet& spectra);

/// Im χ_FF(ω) − [S_FF(ω) − S_FF(−ω)]/(2ħ).
ComplexSpectrum kubo_check(const ComplexSpectrum& s_FF_unsym, const ComplexSpectrum& chi_FF,
                           const UnitConvention& units = {});

/// χ_AB(ω) − χ_BA*(ω) − (i/ħ)[S_AB(ω) − S_BA(−ω)], with S_BA = S_AB*.
ComplexSpectrum response_fluctuation_residual(const ComplexSpectrum& chi_AB,
                                              const ComplexSpectrum& chi_BA,
                                              const ComplexSpectrum& s_AB_unsym,
                                              const UnitConvention& units = {});

}  // namespace qnoise
