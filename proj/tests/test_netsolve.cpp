#include "oracles.hpp"

#include "qnoise/cavity.hpp"
#include "qnoise/netsolve.hpp"

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

double max_abs(const ComplexSpectrum& s) {
    double m = 0.0;
    for (auto v : s.values()) m = std::max(m, std::abs(v));
    return m;
}

oracle::LadderOp to_ladder(const oracle::LadderModel& m, const Observable& obs) {
    // quadrature rows (x_k, y_k) → ladder coefficients
    oracle::LadderOp op = oracle::zero_op(m);
    const double r = 1.0 / std::numbers::sqrt2;
    for (Eigen::Index k = 0; k < m.modes(); ++k) {
        const double x = obs.modes(2 * k), y = obs.modes(2 * k + 1);
        op.u(k) = r * oracle::cd(x, -y);
        op.v(k) = r * oracle::cd(x, y);
    }
    for (Eigen::Index j = 0; j < m.ports(); ++j) {
        const double x = obs.outputs(2 * j), y = obs.outputs(2 * j + 1);
        op.s(j) = r * oracle::cd(x, -y);
        op.t(j) = r * oracle::cd(x, y);
    }
    return op;
}

const double half_pi = std::numbers::pi / 2;

}  // namespace

TEST_CASE("input states") {
    const auto grid = make_symmetric_grid(1.0, 2);
    const auto vac = InputState::vacuum().quadrature_matrix(grid, 0);
    CHECK(std::abs(vac(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(vac(0, 1) - oracle::cd(0, 0.5)) < 1e-15);
    CHECK(std::abs(vac(1, 0) - oracle::cd(0, -0.5)) < 1e-15);
    CHECK(std::abs(vac(1, 1) - 0.5) < 1e-15);

    const auto th = InputState::thermal(2.0).ladder_matrix(grid, 3);
    CHECK(std::abs(th(0, 0) - 3.0) < 1e-15);
    CHECK(std::abs(th(1, 1) - 2.0) < 1e-15);
    CHECK_FALSE(InputState::thermal(2.0).is_pure());
    CHECK(InputState::squeezed(0.3).is_pure());

    // φ = 0 anti-squeezes X
    const auto sq = InputState::squeezed(0.5).quadrature_matrix(grid, 1);
    CHECK(sq(0, 0).real() == doctest::Approx(0.5 * std::exp(1.0)));
    CHECK(sq(1, 1).real() == doctest::Approx(0.5 * std::exp(-1.0)));

    std::vector<cdouble> odd{0.1, 0.2, 0.3, 0.4, 0.5};
    CHECK_THROWS_AS(InputState::squeezed(odd).validate_for(grid), InvalidArgument);
    std::vector<cdouble> even{0.1, 0.2, 0.3, 0.2, 0.1};
    CHECK_NOTHROW(InputState::squeezed(even).validate_for(grid));
    CHECK_THROWS_AS(InputState::thermal(std::vector<double>{1.0, 2.0}).validate_for(grid),
                    InvalidArgument);
    CHECK_THROWS_AS(InputState::thermal(-1.0), InvalidArgument);
}

TEST_CASE("one-sided cavity network") {
    const auto net = build_one_sided_cavity(params(2, 0, 1, half_pi));
    CHECK(net.drift()(0, 0) == cdouble(-2.0));
    CHECK(net.is_stable());
    const auto detuned = build_one_sided_cavity(params(0.3, 4.0, 1, 0.1));
    CHECK(detuned.drift_eigenvalues()(0).real() == doctest::Approx(-0.3));
    // stationary commutator of a single mode equals the canonical one
    const Eigen::MatrixXd sigma = net.mode_commutator();
    CHECK(sigma(0, 1) == doctest::Approx(1.0));
    CHECK(sigma(1, 0) == doctest::Approx(-1.0));
    CHECK(std::abs(sigma(0, 0)) < 1e-14);
}

TEST_CASE("cavity engine reproduces frozen values") {
    const auto net = build_one_sided_cavity(params(2, 0, 1, half_pi));
    const auto grid = make_symmetric_grid(2.0, 4);
    const auto susc = solve_susceptibilities(net, grid);
    CHECK(susc.chi_ZF.at(0.0).real() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(susc.chi_FF[i]) < 1e-14);
        CHECK(std::abs(susc.chi_ZZ[i]) < 1e-14);
        CHECK(std::abs(susc.chi_FZ[i]) < 1e-14);
    }
    const auto sym = symmetrize(solve_unsym_spectra(net, grid));
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(sym.s_ZZ[i].real() == doctest::Approx(0.5));
    CHECK(sym.s_FF.at(0.0).real() == doctest::Approx(1.0));
}

TEST_CASE("unstable or malformed networks are rejected") {
    Eigen::MatrixXcd M(1, 1), K(1, 1), D(1, 1), L(1, 1);
    M << cdouble(0.1, 0.0);
    K << 1.0;
    D << 1.0;
    L << -1.0;
    const auto z = output_quadrature(1, 1, 0, 0.0);
    const auto f = mode_quadrature(1, 1, 0, 0.0);
    const LinearNetwork bad(M, K, D, L, {z}, {f}, {InputState::vacuum()});
    CHECK_FALSE(bad.is_stable());
    CHECK_THROWS_AS(solve_susceptibilities(bad, make_symmetric_grid(1.0, 2)), StabilityError);
    Eigen::MatrixXcd K2(2, 1);
    K2 << 1.0, 1.0;
    CHECK_THROWS_AS(LinearNetwork(M, K2, D, L, {z}, {f}, {InputState::vacuum()}), InvalidArgument);
}

TEST_CASE("unsymmetrized spectra need a symmetric grid") {
    const auto net = build_one_sided_cavity(params(1, 0.2, 1, 0.3));
    CHECK_THROWS_AS(solve_unsym_spectra(net, make_uniform_grid(0.0, 1.0, 5)), GridMismatch);
}

TEST_CASE("cavity engine against the ladder oracle with thermal and squeezed inputs") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ug(0.1, 5), ud(-5, 5), ut(0, 2 * std::numbers::pi);
    const auto grid = make_symmetric_grid(8.0, 32);
    for (int draw = 0; draw < 12; ++draw) {
        const auto p = params(ug(rng), ud(rng), 0.7, ut(rng));
        const double r = 0.4, phi = ut(rng), n_th = 1.3;
        for (int kind = 0; kind < 2; ++kind) {
            const InputState in = kind == 0 ? InputState::thermal(n_th)
                                            : InputState::squeezed(std::polar(r, phi));
            const oracle::PortNoise noise = kind == 0 ? oracle::PortNoise::thermal(n_th)
                                                      : oracle::PortNoise::squeezed(r, phi);
            const auto net = build_one_sided_cavity(p, in);
            const auto c = oracle::cavity(p.gamma, p.delta, p.gbar, p.theta);
            const auto uns = solve_unsym_spectra(net, grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double w = grid[i];
                const auto zz = oracle::spectrum(c.model, c.z, c.z, w, {noise});
                const auto zf = oracle::spectrum(c.model, c.z, c.f, w, {noise});
                const auto ff = oracle::spectrum(c.model, c.f, c.f, w, {noise});
                CHECK(std::abs(uns.s_ZZ[i] - zz) <= 1e-11 * (std::abs(zz) + 1));
                CHECK(std::abs(uns.s_ZF[i] - zf) <= 1e-11 * (std::abs(zf) + 1));
                CHECK(std::abs(uns.s_FF[i] - ff) <= 1e-11 * (std::abs(ff) + 1));
            }
        }
    }
}

TEST_CASE("random two-mode networks against the ladder oracle") {
    std::mt19937_64 rng(99);
    const auto grid = make_symmetric_grid(6.0, 30);
    for (int draw = 0; draw < 10; ++draw) {
        const auto rn = oracle::random_network(rng, 2, 2);
        const auto model = oracle::slh_model(rn);
        const auto z = output_quadrature(2, 2, 0, 0.3 * draw, 1.0);
        const auto f = mode_quadrature(2, 2, 1, 0.2, 0.8);
        const auto net = LinearNetwork::from_hamiltonian(
            rn.H, rn.L, {z}, {f}, {InputState::thermal(0.4), InputState::squeezed(0.3)});
        REQUIRE(net.is_stable());
        const auto oz = to_ladder(model, z);
        const auto of = to_ladder(model, f);
        const std::vector<oracle::PortNoise> noise{oracle::PortNoise::thermal(0.4),
                                                   oracle::PortNoise::squeezed(0.3, 0.0)};

        const auto susc = solve_susceptibilities(net, grid);
        const auto uns = solve_unsym_spectra(net, grid);
        const double zf_ref = max_abs(susc.chi_ZF);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double w = grid[i];
            const auto zf = oracle::chi(model, oz, of, w);
            const auto ff = oracle::chi(model, of, of, w);
            CHECK(std::abs(susc.chi_ZF[i] - zf) <= 1e-11 * (std::abs(zf) + 1e-3));
            CHECK(std::abs(susc.chi_FF[i] - ff) <= 1e-11 * (std::abs(ff) + 1e-3));
            CHECK(std::abs(susc.chi_ZZ[i]) <= 1e-12 * zf_ref);
            CHECK(std::abs(susc.chi_FZ[i]) <= 1e-12 * zf_ref);
            const auto szf = oracle::spectrum(model, oz, of, w, noise);
            const auto sff = oracle::spectrum(model, of, of, w, noise);
            CHECK(std::abs(uns.s_ZF[i] - szf) <= 1e-11 * (std::abs(szf) + 1e-3));
            CHECK(std::abs(uns.s_FF[i] - sff) <= 1e-11 * (std::abs(sff) + 1e-3));
        }
    }
}

TEST_CASE("Kubo formula holds for the engine") {
    std::mt19937_64 rng(3);
    const auto grid = make_symmetric_grid(10.0, 50);
    const auto rn = oracle::random_network(rng, 2, 2);
    const auto net = LinearNetwork::from_hamiltonian(
        rn.H, rn.L, {output_quadrature(2, 2, 1, 0.5)}, {mode_quadrature(2, 2, 0, 1.1, 1.7)},
        {InputState::thermal(0.8)});
    const auto uns = solve_unsym_spectra(net, grid);
    const auto susc = solve_susceptibilities(net, grid);
    const auto res = kubo_check(uns.s_FF, susc.chi_FF);
    const double scale = max_abs(uns.s_FF);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(res[i]) <= 1e-12 * scale);

    const auto resp =
        response_fluctuation_residual(susc.chi_FF, susc.chi_FF, uns.s_FF, net.units());
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(resp[i]) <= 1e-12 * scale);
}

TEST_CASE("Kubo residual for a detuned cavity with hbar != 1") {
    auto p = params(1e-2, 1.0, 0.05, 0.4);
    p.units.hbar = 2.5;
    const auto net = build_one_sided_cavity(p);
    const auto grid = make_symmetric_grid(1.0, 100);
    const auto uns = solve_unsym_spectra(net, grid);
    const auto susc = solve_susceptibilities(net, grid);
    const auto res = kubo_check(uns.s_FF, susc.chi_FF, p.units);
    const double scale = max_abs(susc.chi_FF);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(res[i]) <= 1e-10 * scale);
    CHECK(susc.chi_FF.at(1.0).imag() ==
          doctest::Approx(-p.units.hbar * p.gbar * p.gbar / p.gamma).epsilon(1e-2));
}

TEST_CASE("symmetrize is idempotent and fixes symmetric inputs") {
    const auto net = build_one_sided_cavity(params(0.8, 0.6, 1.2, 1.0), InputState::thermal(0.3));
    const auto grid = make_symmetric_grid(4.0, 16);
    const auto once = symmetrize(solve_unsym_spectra(net, grid));
    const auto twice = symmetrize(once);
    CHECK(once.symmetrized);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(once.s_ZF[i] - twice.s_ZF[i]) < 1e-15);
        CHECK(std::abs(once.s_FF[i] - twice.s_FF[i]) < 1e-15);
        CHECK(std::abs(once.s_FF[i].imag()) < 1e-15);
        CHECK(std::abs(once.s_ZZ[i].imag()) < 1e-15);
    }

    SpectraSet even;
    even.s_ZZ = ComplexSpectrum(grid, 2.0);
    even.s_FF = ComplexSpectrum(grid, 3.0);
    even.s_ZF = ComplexSpectrum(grid, cdouble(1.0, 0.0));
    const auto fixed = symmetrize(even);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(fixed.s_ZF[i] == cdouble(1.0));
}

TEST_CASE("spectral matrix ordering and block structure") {
    std::vector<CavityParams> ps{params(1, 0.5, 1, 0.2), params(2, -0.3, 0.5, 1.0)};
    const auto net = build_cavity_array(ps, {InputState::vacuum(), InputState::thermal(1.0)});
    const auto grid = make_symmetric_grid(3.0, 6);
    const auto mats = solve_spectral_matrix(net, grid);
    REQUIRE(mats.size() == grid.size());
    const auto first = solve_unsym_spectra(build_one_sided_cavity(ps[0]), grid);
    const auto second =
        solve_unsym_spectra(build_one_sided_cavity(ps[1], InputState::thermal(1.0)), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& m = mats[i];
        CHECK(m.rows() == 4);
        CHECK(std::abs(m(0, 1) - first.s_ZF[i]) < 1e-13);
        CHECK(std::abs(m(1, 1) - first.s_FF[i]) < 1e-13);
        CHECK(std::abs(m(2, 2) - second.s_ZZ[i]) < 1e-13);
        CHECK(std::abs(m(2, 3) - second.s_ZF[i]) < 1e-13);
        CHECK(m.block(0, 2, 2, 2).cwiseAbs().maxCoeff() < 1e-14);
    }
}
