// Residuals and margins of the quantum constraints on linear-detector noise.
//
// Every residual is compared against tol·scale where scale is the largest
// magnitude among the terms that make up that residual.

#pragma once

#include "qnoise/cavity.hpp"
#include "qnoise/core.hpp"

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace qnoise {

/// Relative tolerance for all equality checks.
inline constexpr double kConstraintTolerance = 1e-9;

enum class Verdict { quantum_limited, above_limit, violation };

std::string_view to_string(Verdict v) noexcept;

/// χ_ZZ or χ_FZ is nonzero: Ẑ is not simultaneously measurable.
class NotValidDetector : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Matrix input to the determinant check is not Hermitian positive semidefinite.
class InvalidMatrix : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct UncertaintyGap {
    std::vector<double> gap;
    std::vector<double> scale;
    /// Gap of the two branches S̄ZZ S̄FF − |S̄ZF|² − ħ²|χZF|²/4 ∓ ħ Im[S̄ZF* χZF − χFF S̄ZZ].
    std::vector<double> plus_branch;
    std::vector<double> minus_branch;
};

/// Throws NotValidDetector if |χ_ZZ| or |χ_FZ| exceeds 1e-10·max|χ_ZF|.
void require_simultaneous_measurability(const SusceptibilitySet& susc);

/// S̄ZZ S̄FF − |S̄ZF|² − (ħ²/4)|χZF|² − ħ|Im[S̄ZF* χZF − χFF S̄ZZ]|, taken as the
/// tighter of the two signed branches.
UncertaintyGap uncertainty_gap(const SpectraSet& symmetrized, const SusceptibilitySet& susc);

struct QuantumLimitResiduals {
    std::vector<double> r1;  // s_zz S̄_FF − |s_zF|² − ħ²/4
    std::vector<double> r2;  // Im s_zF + Im χ_FF · s_zz
    std::vector<double> r1_scale;
    std::vector<double> r2_scale;
};

QuantumLimitResiduals quantum_limit_residuals(const NormalizedSpectra& norm,
                                              const ComplexSpectrum& chi_FF);

/// The same two equalities in unnormalized form:
/// first  = S̄ZZ S̄FF − |S̄ZF|² − (ħ²/4)|χZF|²,
/// second = Im[S̄ZF* χZF − χFF S̄ZZ].
struct UnnormalizedResiduals {
    std::vector<double> first;
    std::vector<double> second;
};

UnnormalizedResiduals unnormalized_residuals(const SpectraSet& symmetrized,
                                             const SusceptibilitySet& susc);

struct MimoDeterminant {
    std::vector<double> det;
    std::vector<double> scale;  // product of diagonal entries (Hadamard bound)
    std::vector<Verdict> verdict;
};

/// Determinant of each Hermitian PSD 2N×2N spectral matrix.
MimoDeterminant mimo_quantum_limit(const std::vector<Eigen::MatrixXcd>& spectral_matrices);

/// S̄_FF(ω) − ħ|Im χ_FF(ω)|.
std::vector<double> backaction_margin(const ComplexSpectrum& s_FF_sym, const ComplexSpectrum& chi_FF,
                                      const UnitConvention& units = {});

Verdict classify(double gap, double scale, double tol = kConstraintTolerance) noexcept;

struct ConstraintReport {
    FrequencyGrid grid;
    std::vector<double> uncertainty_gap;
    std::vector<double> gap_scale;
    std::vector<double> product_residual;
    std::vector<double> correlation_residual;
    std::vector<double> kubo_residual;
    std::vector<double> backaction_margin;
    std::vector<Verdict> verdict;

    bool any_violation() const;
    bool all_quantum_limited() const;
};

/// Full audit from unsymmetrized spectra (symmetrized internally) and the
/// matching susceptibilities.
ConstraintReport audit(const SpectraSet& unsymmetrized, const SusceptibilitySet& susc);

}  // namespace qnoise
