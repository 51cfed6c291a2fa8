#include "qnoise/constraints.hpp"
#include "qnoise/netsolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qnoise {

namespace {

double max_abs(std::initializer_list<double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
}

void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, const char* who) {
    if (!(a == b)) throw GridMismatch(std::string(who) + ": inputs live on different grids");
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::quantum_limited: return "quantum_limited";
        case Verdict::above_limit: return "above_limit";
        case Verdict::violation: return "violation";
    }
    return "unknown";
}

Verdict classify(double gap, double scale, double tol) noexcept {
    const double band = tol * scale;
    if (std::abs(gap) <= band) return Verdict::quantum_limited;
    return gap > band ? Verdict::above_limit : Verdict::violation;
}

void require_simultaneous_measurability(const SusceptibilitySet& susc) {
    double ref = 0.0;
    for (cdouble c : susc.chi_ZF.values()) ref = std::max(ref, std::abs(c));
    const double tol = 1e-10 * ref;
    const auto& grid = susc.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double zz = std::abs(susc.chi_ZZ[i]);
        const double fz = std::abs(susc.chi_FZ[i]);
        if (zz > tol || fz > tol) {
            std::ostringstream msg;
            msg << "output observable is not simultaneously measurable at omega=" << grid[i]
                << " (|chi_ZZ|=" << zz << ", |chi_FZ|=" << fz << ")";
            throw NotValidDetector(msg.str());
        }
    }
}

UncertaintyGap uncertainty_gap(const SpectraSet& s, const SusceptibilitySet& susc) {
    if (!s.symmetrized) throw InvalidArgument("uncertainty_gap: spectra must be symmetrized");
    require_same_grid(s.grid(), susc.grid(), "uncertainty_gap");
    require_simultaneous_measurability(susc);
    const double hbar = s.units.hbar;
    const std::size_t n = s.grid().size();
    UncertaintyGap out;
    out.gap.resize(n);
    out.scale.resize(n);
    out.plus_branch.resize(n);
    out.minus_branch.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double zz = s.s_ZZ[i].real();
        const double ff = s.s_FF[i].real();
        const cdouble zf = s.s_ZF[i];
        const cdouble chi = susc.chi_ZF[i];
        const double product = zz * ff;
        const double corr = std::norm(zf);
        const double response = 0.25 * hbar * hbar * std::norm(chi);
        const double cross = hbar * (std::conj(zf) * chi - susc.chi_FF[i] * zz).imag();
        const double base = product - corr - response;
        out.plus_branch[i] = base - cross;
        out.minus_branch[i] = base + cross;
        out.gap[i] = std::min(out.plus_branch[i], out.minus_branch[i]);
        out.scale[i] = max_abs({product, corr, response, cross});
    }
    return out;
}

QuantumLimitResiduals quantum_limit_residuals(const NormalizedSpectra& norm,
                                              const ComplexSpectrum& chi_FF) {
    const auto& grid = norm.s_zz.grid();
    require_same_grid(grid, chi_FF.grid(), "quantum_limit_residuals");
    const double hbar = norm.units.hbar;
    const double limit = 0.25 * hbar * hbar;
    QuantumLimitResiduals out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double zz = norm.s_zz[i].real();
        const double product = zz * norm.s_FF[i].real();
        const double corr = std::norm(norm.s_zF[i]);
        out.r1.push_back(product - corr - limit);
        out.r1_scale.push_back(max_abs({product, corr, limit}));
        const double im_zf = norm.s_zF[i].imag();
        const double dyn = chi_FF[i].imag() * zz;
        out.r2.push_back(im_zf + dyn);
        out.r2_scale.push_back(max_abs({im_zf, dyn}) + hbar);
    }
    return out;
}

UnnormalizedResiduals unnormalized_residuals(const SpectraSet& s, const SusceptibilitySet& susc) {
    if (!s.symmetrized) throw InvalidArgument("unnormalized_residuals: spectra must be symmetrized");
    require_same_grid(s.grid(), susc.grid(), "unnormalized_residuals");
    const double hbar = s.units.hbar;
    UnnormalizedResiduals out;
    for (std::size_t i = 0; i < s.grid().size(); ++i) {
        const double zz = s.s_ZZ[i].real();
        out.first.push_back(zz * s.s_FF[i].real() - std::norm(s.s_ZF[i]) -
                            0.25 * hbar * hbar * std::norm(susc.chi_ZF[i]));
        out.second.push_back((std::conj(s.s_ZF[i]) * susc.chi_ZF[i] - susc.chi_FF[i] * zz).imag());
    }
    return out;
}

MimoDeterminant mimo_quantum_limit(const std::vector<Eigen::MatrixXcd>& mats) {
    MimoDeterminant out;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const auto& m = mats[k];
        if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
            throw InvalidMatrix("mimo_quantum_limit: matrix must be square with even dimension 2N");
        }
        const double mag = m.cwiseAbs().maxCoeff();
        const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * std::max(mag, 1e-300)) {
            std::ostringstream msg;
            msg << "mimo_quantum_limit: matrix " << k << " is not Hermitian (max |M - M^H| = "
                << asym << ")";
            throw InvalidMatrix(msg.str());
        }
        const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
        const Eigen::VectorXd eig =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly).eigenvalues();
        const double eig_scale = eig.cwiseAbs().maxCoeff();
        if (eig.minCoeff() < -kConstraintTolerance * eig_scale) {
            std::ostringstream msg;
            msg << "mimo_quantum_limit: matrix " << k
                << " is not positive semidefinite (min eigenvalue = " << eig.minCoeff() << ")";
            throw InvalidMatrix(msg.str());
        }
        const double det = herm.determinant().real();
        double scale = 1.0;
        for (Eigen::Index i = 0; i < herm.rows(); ++i) scale *= herm(i, i).real();
        out.det.push_back(det);
        out.scale.push_back(scale);
        out.verdict.push_back(classify(det, scale));
    }
    return out;
}

std::vector<double> backaction_margin(const ComplexSpectrum& s_FF_sym, const ComplexSpectrum& chi_FF,
                                      const UnitConvention& units) {
    require_same_grid(s_FF_sym.grid(), chi_FF.grid(), "backaction_margin");
    std::vector<double> out(s_FF_sym.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = s_FF_sym[i].real() - units.hbar * std::abs(chi_FF[i].imag());
    }
    return out;
}

bool ConstraintReport::any_violation() const {
    return std::any_of(verdict.begin(), verdict.end(),
                       [](Verdict v) { return v == Verdict::violation; });
}

bool ConstraintReport::all_quantum_limited() const {
    return std::all_of(verdict.begin(), verdict.end(),
                       [](Verdict v) { return v == Verdict::quantum_limited; });
}

ConstraintReport audit(const SpectraSet& unsym, const SusceptibilitySet& susc) {
    if (unsym.symmetrized) throw InvalidArgument("audit: expects unsymmetrized spectra");
    const SpectraSet sym = symmetrize(unsym);
    const UncertaintyGap gap = uncertainty_gap(sym, susc);
    const QuantumLimitResiduals ql = quantum_limit_residuals(normalize(sym, susc), susc.chi_FF);

    ConstraintReport r;
    r.grid = unsym.grid();
    r.uncertainty_gap = gap.gap;
    r.gap_scale = gap.scale;
    r.product_residual = ql.r1;
    r.correlation_residual = ql.r2;
    r.kubo_residual = kubo_check(unsym.s_FF, susc.chi_FF, unsym.units).real();
    r.backaction_margin = backaction_margin(sym.s_FF, susc.chi_FF, unsym.units);
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        r.verdict.push_back(classify(gap.gap[i], gap.scale[i]));
    }
    return r;
}

}  // namespace qnoise
