#include "oracles.hpp"

#include "qnoise/apps.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qnoise;

namespace {

CavityParams params(double gamma, double delta, double gbar, double theta) {
    CavityParams p;
    p.gamma = gamma;
    p.delta = delta;
    p.gbar = gbar;
    p.theta = theta;
    return p;
}

const double pi = std::numbers::pi;

/// Coupling with cooperativity ħḡ²/(γ m γ_m ω_m) = coop.
double weak_gbar(double coop, double gamma, const MechOscillator& osc) {
    return std::sqrt(coop * gamma * osc.mass() * osc.gamma_m() * osc.omega_m() / osc.units().hbar);
}

/// Resonant-approximation sideband area over ω_m ± 10 γ_eff:
/// π/(2mω_m)·[(S_th + S̄_FF)/(m ω_m γ_eff) ± ħ], times the Lorentzian weight inside the window.
double lorentzian_area(const CavityParams& p, const MechOscillator& osc, double sign) {
    const double w = osc.omega_m(), m = osc.mass(), hbar = osc.units().hbar;
    const auto c = oracle::cavity(p.gamma, p.delta, p.gbar, p.theta, hbar);
    const double s_ff = oracle::sym_spectrum(c.model, c.f, c.f, w, {{}}).real();
    const double im_ff = oracle::chi(c.model, c.f, c.f, w).imag();
    const double g_eff = osc.gamma_m() + im_ff / (m * w);
    const double weight = 2.0 / pi * std::atan(20.0);
    return weight * pi / (2 * m * w) *
           ((osc.thermal_force_spectrum(w) + s_ff) / (m * w * g_eff) + sign * hbar);
}

}  // namespace

TEST_CASE("qubit readout frozen values") {
    const auto r = qubit_rates(params(2, 0, 1, pi / 2));
    CHECK(r.gamma_meas == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.gamma_phi == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.theta_opt == doctest::Approx(pi / 2));
}

TEST_CASE("qubit rates against the ladder oracle") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ug(0.2, 5), ud(-5, 5), ut(0, 2 * pi), ub(0.1, 3);
    for (int draw = 0; draw < 30; ++draw) {
        const auto p = params(ug(rng), ud(rng), ub(rng), ut(rng));
        const auto c = oracle::cavity(p.gamma, p.delta, p.gbar, p.theta);
        const auto chi = oracle::chi(c.model, c.z, c.f, 0.0);
        const double szz = oracle::sym_spectrum(c.model, c.z, c.z, 0.0, {{}}).real();
        const double sff = oracle::sym_spectrum(c.model, c.f, c.f, 0.0, {{}}).real();
        const auto r = qubit_rates(p);
        CHECK(r.gamma_meas == doctest::Approx(std::norm(chi) / (2 * szz)).epsilon(1e-10));
        CHECK(r.gamma_phi == doctest::Approx(2 * sff).epsilon(1e-10));
        CHECK(r.ratio == doctest::Approx(r.gamma_phi / r.gamma_meas).epsilon(1e-10));
        CHECK(r.ratio >= 1.0 - 1e-12);
    }
}

TEST_CASE("optimal angle") {
    CHECK(optimal_angle(1, 1) == doctest::Approx(-pi / 4));
    CHECK(optimal_angle(2, 0) == doctest::Approx(pi / 2));
    CHECK(std::abs(optimal_angle(1e-3, 10.0)) < 1e-3);
    CHECK_THROWS_AS(optimal_angle(0, 0), InvalidArgument);
    for (double delta : {-3.0, -0.2, 0.7, 4.0}) {
        const auto at = qubit_rates(params(1.3, delta, 1.0, optimal_angle(1.3, delta)));
        CHECK(at.ratio == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("degenerate readout") {
    // Δ cos θ = γ sin θ
    const double gamma = 1.0, delta = 2.0;
    const double theta = std::atan2(delta, gamma);
    CHECK_THROWS_AS(qubit_rates(params(gamma, delta, 1, theta)), DegenerateReadout);
    CHECK_THROWS_AS(qubit_rates(params(2, 0, 1, 0)), DegenerateReadout);
}

TEST_CASE("modified mechanical susceptibility") {
    const auto osc = MechOscillator::from_occupation(1.0, 0.01, 2.0, 1.0);
    const auto grid = make_symmetric_grid(2.0, 10);
    const auto open = modified_mech_susceptibility(osc, ComplexSpectrum(grid, 0.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(open[i] == osc.bare_susceptibility(grid[i]));
    }
    // a loop gain of exactly one at ω = 0.4
    std::vector<cdouble> ff(grid.size(), 0.0);
    const std::size_t k = grid.index_of(0.4);
    ff[k] = 1.0 / osc.bare_susceptibility(0.4);
    try {
        modified_mech_susceptibility(osc, ComplexSpectrum(grid, ff));
        FAIL("expected InstabilityError");
    } catch (const InstabilityError& e) {
        CHECK(e.omega() == 0.4);
    }
}

TEST_CASE("effective damping") {
    const auto osc = MechOscillator::from_occupation(1.0, 1e-4, 1.0, 1.0);
    const auto red = params(1e-3, -1.0, 1e-4, 0.0);
    const auto blue = params(1e-3, +1.0, 1e-4, 0.0);
    const double opt = 1e-8 / 1e-3;  // ħḡ²/γ / (m ω_m)
    CHECK(effective_damping(red, osc) == doctest::Approx(1e-4 + opt).epsilon(1e-2));
    CHECK(effective_damping(blue, osc) == doctest::Approx(1e-4 - opt).epsilon(1e-2));
}

TEST_CASE("output spectrum terms add up") {
    const auto osc = MechOscillator::from_occupation(1.0, 1e-2, 1.0, 2.0);
    const auto grid = make_uniform_grid(0.8, 1.2, 41);
    const auto t = output_spectrum_terms(params(0.05, -1.0, 0.01, 0.3), osc, grid);
    const auto total = total_output_spectrum(params(0.05, -1.0, 0.01, 0.3), osc, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(t.total[i] - (t.imprecision[i] + t.correlation[i] + t.displacement[i])) <
              1e-12 * std::abs(t.total[i]));
        CHECK(t.total[i] == total[i]);
        CHECK(t.total[i].real() > 0.0);
    }
}

TEST_CASE("weak coupling limit of the output spectrum") {
    // s_zF does not depend on ḡ, so the correlation term survives as ḡ → 0
    const auto osc = MechOscillator::from_occupation(1.0, 1e-2, 1.0, 1.0);
    const auto grid = make_uniform_grid(0.9, 1.1, 21);
    double last_err = 1e300;
    for (double gbar : {1e-2, 1e-3, 1e-4}) {
        const auto p = params(0.05, -1.0, gbar, 0.3);
        const auto t = output_spectrum_terms(p, osc, grid);
        const auto c = oracle::cavity(p.gamma, p.delta, p.gbar, p.theta);
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double w = grid[i];
            const auto chi0 = osc.bare_susceptibility(w);
            const auto chi_zf = oracle::chi(c.model, c.z, c.f, w);
            const double szz = oracle::sym_spectrum(c.model, c.z, c.z, w, {{}}).real() / std::norm(chi_zf);
            const auto szF = oracle::sym_spectrum(c.model, c.z, c.f, w, {{}}) / chi_zf;
            const double limit = szz + 2 * (std::conj(chi0) * szF).real() +
                                 std::norm(chi0) * osc.thermal_force_spectrum(w);
            err = std::max(err, std::abs(t.total[i].real() - limit) / std::abs(limit));
        }
        CHECK(err < last_err);
        last_err = err;
    }
    CHECK(last_err < 1e-6);
}

TEST_CASE("sideband asymmetry against Lorentzian areas") {
    for (double n : {0.5, 2.0, 10.0}) {
        const auto osc = MechOscillator::from_occupation(1.0, 1e-5, 1.0, n);
        const double gamma = 1e-3;
        const auto tmpl = params(gamma, 0.0, weak_gbar(1e-3, gamma, osc), 0.0);
        const auto grid = sideband_grid(tmpl, osc, 4001);
        const auto r = sideband_asymmetry(tmpl, osc, grid);
        CHECK(r.warnings.empty());
        auto red = tmpl, blue = tmpl;
        red.delta = -1.0;
        blue.delta = 1.0;
        CHECK(r.area_red == doctest::Approx(lorentzian_area(red, osc, -1.0)).epsilon(1e-2));
        CHECK(r.area_blue == doctest::Approx(lorentzian_area(blue, osc, +1.0)).epsilon(1e-2));
        CHECK(r.ratio == doctest::Approx((n + 1) / n).epsilon(2e-2));
        CHECK(r.spectrum_red.size() == grid.size());
    }
}

TEST_CASE("sideband asymmetry edge cases") {
    const double gamma = 1e-3;
    SUBCASE("zero occupation cancels the red sideband") {
        const auto osc = MechOscillator::from_occupation(1.0, 1e-5, 1.0, 0.0);
        const auto tmpl = params(gamma, 0.0, weak_gbar(1e-3, gamma, osc), 0.0);
        const auto r = sideband_asymmetry(tmpl, osc, sideband_grid(tmpl, osc));
        CHECK(std::isinf(r.ratio));
    }
    SUBCASE("classical limit") {
        const auto osc = MechOscillator::from_occupation(1.0, 1e-5, 1.0, 1e4);
        const auto tmpl = params(gamma, 0.0, weak_gbar(1e-3, gamma, osc), 0.0);
        const auto r = sideband_asymmetry(tmpl, osc, sideband_grid(tmpl, osc));
        // optical damping at C = 1e-3 moves each area by about C
        CHECK(r.ratio == doctest::Approx(1.0).epsilon(3e-3));
    }
    SUBCASE("unresolved sideband warns") {
        const auto osc = MechOscillator::from_occupation(1.0, 1e-3, 1.0, 2.0);
        const auto tmpl = params(0.5, 0.0, 1e-3, 0.0);
        const auto r = sideband_asymmetry(tmpl, osc, sideband_grid(tmpl, osc));
        CHECK(r.warnings.size() == 1);
    }
    SUBCASE("grid must cover the window") {
        const auto osc = MechOscillator::from_occupation(1.0, 1e-5, 1.0, 2.0);
        const auto tmpl = params(gamma, 0.0, weak_gbar(1e-3, gamma, osc), 0.0);
        CHECK_THROWS_AS(sideband_asymmetry(tmpl, osc, make_uniform_grid(0.9999, 1.0001, 11)),
                        InvalidArgument);
    }
    SUBCASE("strong blue-detuned drive anti-damps") {
        const auto osc = MechOscillator::from_occupation(1.0, 1e-5, 1.0, 2.0);
        const auto tmpl = params(gamma, 0.0, weak_gbar(3.0, gamma, osc), 0.0);
        CHECK_THROWS_AS(sideband_grid(tmpl, osc), InstabilityError);
    }
}

TEST_CASE("trapezoid") {
    const auto g = make_uniform_grid(0.0, 1.0, 101);
    std::vector<double> y(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) y[i] = 3 * g[i] * g[i];
    CHECK(trapezoid(g, y, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(trapezoid(g, y, 0.5, 1.0) == doctest::Approx(0.875).epsilon(1e-3));
}

TEST_CASE("rate ratio from the correlation spectrum") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> ug(0.2, 5), ud(-5, 5), ut(0, 2 * pi);
    const FrequencyGrid dc({0.0});
    for (int draw = 0; draw < 20; ++draw) {
        const auto p = params(ug(rng), ud(rng), 1.0, ut(rng));
        const auto susc = cavity_susceptibilities(p, dc);
        if (std::abs(susc.chi_ZF[0]) < 1e-3) continue;
        const auto norm = normalize(cavity_spectra(p, dc), susc);
        const auto r = qubit_rates(p);
        CHECK(r.ratio == doctest::Approx(1 + 4 * std::norm(norm.s_zF[0])).epsilon(1e-9));
        const auto off = qubit_rates(params(p.gamma, p.delta, 1.0, r.theta_opt + 0.1));
        CHECK(off.ratio > 1 + 1e-6);
    }
}

TEST_CASE("correlation at the sideband tracks dynamical back action") {
    const FrequencyGrid at({1.0});
    for (double delta : {-1.0, 1.0}) {
        const auto p = params(1e-3, delta, 1e-4, 0.8);
        const auto susc = cavity_susceptibilities(p, at);
        const auto norm = normalize(cavity_spectra(p, at), susc);
        const double expected = -susc.chi_FF[0].imag() * norm.s_zz[0].real();
        CHECK(norm.s_zF[0].imag() == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("zero-point contribution doubles or cancels at zero occupation") {
    const auto osc = MechOscillator::from_occupation(1.0, 1e-5, 1.0, 0.0);
    const FrequencyGrid at({1.0});
    const double gbar = weak_gbar(1e-3, 1e-3, osc);
    const auto blue = output_spectrum_terms(params(1e-3, 1.0, gbar, 0.0), osc, at);
    const auto red = output_spectrum_terms(params(1e-3, -1.0, gbar, 0.0), osc, at);
    // the displacement term at ω_m is the zero-point part alone
    CHECK(blue.correlation[0].real() == doctest::Approx(blue.displacement[0].real()).epsilon(1e-2));
    CHECK(red.correlation[0].real() == doctest::Approx(-red.displacement[0].real()).epsilon(1e-2));
}
