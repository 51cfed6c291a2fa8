#include "qnoise/core.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <sstream>

namespace qnoise {

void UnitConvention::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw InvalidArgument("UnitConvention: hbar must be positive and finite");
    }
    if (!(boltzmann > 0.0) || !std::isfinite(boltzmann)) {
        throw InvalidArgument("UnitConvention: boltzmann must be positive and finite");
    }
}

// --------------------------- frequency grid ---------------------------------

FrequencyGrid::FrequencyGrid(std::vector<double> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i])) {
            throw InvalidArgument("FrequencyGrid: non-finite frequency");
        }
        if (i > 0 && !(points[i] > points[i - 1])) {
            throw InvalidArgument("FrequencyGrid: points must be strictly increasing");
        }
    }
    const std::size_t n = points.size();
    symmetric_ = n > 0;
    for (std::size_t i = 0; i < n && symmetric_; ++i) {
        symmetric_ = points[i] == -points[n - 1 - i];
    }
    points_ = std::make_shared<const std::vector<double>>(std::move(points));
}

std::size_t FrequencyGrid::reflected_index(std::size_t i) const {
    require_symmetric("reflected_index");
    return size() - 1 - i;
}

void FrequencyGrid::require_symmetric(const char* who) const {
    if (!symmetric_) {
        throw GridMismatch(std::string(who) + ": requires a grid symmetric about zero");
    }
}

std::size_t FrequencyGrid::index_of(double omega) const {
    const auto pts = points();
    auto it = std::lower_bound(pts.begin(), pts.end(), omega);
    if (it == pts.end() || *it != omega) {
        std::ostringstream msg;
        msg << "FrequencyGrid: omega=" << omega << " is not a grid point";
        throw InvalidArgument(msg.str());
    }
    return static_cast<std::size_t>(it - pts.begin());
}

bool FrequencyGrid::operator==(const FrequencyGrid& other) const noexcept {
    if (points_ == other.points_) return true;
    if (!points_ || !other.points_) return size() == other.size();
    return *points_ == *other.points_;
}

FrequencyGrid make_symmetric_grid(double omega_max, int n_half) {
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
        throw InvalidArgument("make_symmetric_grid: omega_max must be positive");
    }
    if (n_half < 1) {
        throw InvalidArgument("make_symmetric_grid: n_half must be >= 1");
    }
    const auto n = static_cast<std::size_t>(n_half);
    std::vector<double> pts(2 * n + 1);
    pts[n] = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double w = omega_max * static_cast<double>(k) / static_cast<double>(n);
        pts[n + k] = w;
        pts[n - k] = -w;
    }
    return FrequencyGrid(std::move(pts));
}

FrequencyGrid make_uniform_grid(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) {
        throw InvalidArgument("make_uniform_grid: need n >= 2 and hi > lo");
    }
    std::vector<double> pts(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) pts[i] = lo + step * static_cast<double>(i);
    pts.back() = hi;
    return FrequencyGrid(std::move(pts));
}

// --------------------------- complex spectrum --------------------------------

ComplexSpectrum::ComplexSpectrum(FrequencyGrid grid, std::vector<cdouble> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw InvalidArgument("ComplexSpectrum: value count does not match grid size");
    }
}

ComplexSpectrum::ComplexSpectrum(FrequencyGrid grid, cdouble value)
    : grid_(std::move(grid)), values_(grid_.size(), value) {}

ComplexSpectrum ComplexSpectrum::conj() const {
    std::vector<cdouble> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](cdouble v) { return std::conj(v); });
    return {grid_, std::move(out)};
}

ComplexSpectrum ComplexSpectrum::scaled(cdouble factor) const {
    std::vector<cdouble> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [factor](cdouble v) { return factor * v; });
    return {grid_, std::move(out)};
}

std::vector<double> ComplexSpectrum::real() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](cdouble v) { return v.real(); });
    return out;
}

std::vector<double> ComplexSpectrum::imag() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](cdouble v) { return v.imag(); });
    return out;
}

std::vector<double> ComplexSpectrum::abs() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](cdouble v) { return std::abs(v); });
    return out;
}

namespace {

template <class Op>
ComplexSpectrum pointwise(const ComplexSpectrum& a, const ComplexSpectrum& b, Op op) {
    if (!(a.grid() == b.grid())) {
        throw GridMismatch("ComplexSpectrum: operands live on different grids");
    }
    std::vector<cdouble> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
    return {a.grid(), std::move(out)};
}

}  // namespace

ComplexSpectrum operator+(const ComplexSpectrum& a, const ComplexSpectrum& b) {
    return pointwise(a, b, std::plus<>{});
}
ComplexSpectrum operator-(const ComplexSpectrum& a, const ComplexSpectrum& b) {
    return pointwise(a, b, std::minus<>{});
}
ComplexSpectrum operator*(const ComplexSpectrum& a, const ComplexSpectrum& b) {
    return pointwise(a, b, std::multiplies<>{});
}
ComplexSpectrum operator/(const ComplexSpectrum& a, const ComplexSpectrum& b) {
    return pointwise(a, b, std::divides<>{});
}

ComplexSpectrum reflect(const ComplexSpectrum& spectrum) {
    spectrum.grid().require_symmetric("reflect");
    std::vector<cdouble> out(spectrum.values().rbegin(), spectrum.values().rend());
    return {spectrum.grid(), std::move(out)};
}

// ------------------------- physical parameters ------------------------------

double CouplingSpec::bare_rate() const {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Qubit>) {
                if (v.omega_l == v.omega_01) {
                    throw InvalidArgument("CouplingSpec: qubit coupling needs omega_l != omega_01");
                }
                return v.g0 * v.g0 / (v.omega_l - v.omega_01);
            } else if constexpr (std::is_same_v<T, Mechanical>) {
                if (!(v.length > 0.0)) {
                    throw InvalidArgument("CouplingSpec: cavity length must be positive");
                }
                return v.omega_r / v.length;
            } else {
                return v.g;
            }
        },
        variant);
}

double CouplingSpec::effective_rate() const {
    if (!(n_cav_mean > 0.0)) {
        throw InvalidArgument("CouplingSpec: n_cav_mean must be positive");
    }
    return bare_rate() * std::sqrt(2.0 * n_cav_mean);
}

void CavityParams::validate() const {
    units.validate();
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InvalidArgument("CavityParams: gamma must be positive and finite");
    }
    if (!(gbar > 0.0) || !std::isfinite(gbar)) {
        throw InvalidArgument("CavityParams: gbar must be positive and finite");
    }
    if (!std::isfinite(delta) || !std::isfinite(theta)) {
        throw InvalidArgument("CavityParams: delta and theta must be finite");
    }
}

MechOscillator::MechOscillator(double omega_m, double gamma_m, double mass, double n,
                               UnitConvention u)
    : omega_m_(omega_m), gamma_m_(gamma_m), mass_(mass), n_occupation_(n), units_(u) {
    units_.validate();
    if (!(omega_m_ > 0.0) || !(gamma_m_ > 0.0) || !(mass_ > 0.0)) {
        throw InvalidArgument("MechOscillator: omega_m, gamma_m and mass must be positive");
    }
    if (!(n_occupation_ >= 0.0) || !std::isfinite(n_occupation_)) {
        throw InvalidArgument("MechOscillator: occupation must be non-negative and finite");
    }
}

MechOscillator MechOscillator::from_occupation(double omega_m, double gamma_m, double mass,
                                               double n_occupation, UnitConvention units) {
    return {omega_m, gamma_m, mass, n_occupation, units};
}

MechOscillator MechOscillator::from_temperature(double omega_m, double gamma_m, double mass,
                                                double temperature, UnitConvention units) {
    units.validate();
    if (!(temperature > 0.0)) {
        throw InvalidArgument("MechOscillator: temperature must be positive");
    }
    const double x = units.hbar * omega_m / (units.boltzmann * temperature);
    return {omega_m, gamma_m, mass, 1.0 / std::expm1(x), units};
}

cdouble MechOscillator::bare_susceptibility(double omega) const {
    const cdouble denom(omega_m_ * omega_m_ - omega * omega, -gamma_m_ * omega);
    return 1.0 / (mass_ * denom);
}

double MechOscillator::thermal_force_spectrum(double omega) const {
    const double hbar = units_.hbar;
    const double viscous = hbar * mass_ * gamma_m_;
    if (n_occupation_ == 0.0) {
        return viscous * std::abs(omega);
    }
    // ħω_m/(2k_BT) from coth(x_m) = 2n+1
    const double x_m = std::atanh(1.0 / (2.0 * n_occupation_ + 1.0));
    const double scale = x_m / omega_m_;
    if (omega == 0.0) {
        return viscous / scale;
    }
    const double x = scale * omega;
    return viscous * omega / std::tanh(x);
}

}  // namespace qnoise
