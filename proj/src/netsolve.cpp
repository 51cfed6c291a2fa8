#include "qnoise/netsolve.hpp"

#include <cmath>
#include <sstream>

namespace qnoise {

namespace {

constexpr cdouble I{0.0, 1.0};

/// Real embedding of a complex ladder-basis matrix acting on interleaved
/// (X, Y) quadratures: z ↦ [[Re z, −Im z], [Im z, Re z]].
Eigen::MatrixXd embed(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXd out(2 * m.rows(), 2 * m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const cdouble z = m(r, c);
            out.block<2, 2>(2 * r, 2 * c) << z.real(), -z.imag(), z.imag(), z.real();
        }
    }
    return out;
}

/// [x_j, y_j] = i for every port: J = ⊕ [[0, 1], [−1, 0]].
Eigen::MatrixXd symplectic_form(Eigen::Index n_pairs) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_pairs, 2 * n_pairs);
    for (Eigen::Index k = 0; k < n_pairs; ++k) {
        j(2 * k, 2 * k + 1) = 1.0;
        j(2 * k + 1, 2 * k) = -1.0;
    }
    return j;
}

const Eigen::Matrix2cd& ladder_to_quadrature() {
    static const Eigen::Matrix2cd q = [] {
        Eigen::Matrix2cd m;
        m << 1.0, 1.0, -I, I;
        return Eigen::Matrix2cd(m / std::sqrt(2.0));
    }();
    return q;
}

void check_observable(const Observable& o, Eigen::Index n_modes, Eigen::Index n_ports) {
    if (o.modes.size() != 2 * n_modes || o.inputs.size() != 2 * n_ports ||
        o.outputs.size() != 2 * n_ports) {
        throw InvalidArgument("LinearNetwork: observable rows do not match network dimensions");
    }
}

}  // namespace

// ------------------------------ input states --------------------------------

InputState InputState::vacuum() { return {Kind::vacuum, {}, {}}; }

InputState InputState::thermal(double n_th) { return thermal(std::vector<double>{n_th}); }

InputState InputState::thermal(std::vector<double> n_th) {
    if (n_th.empty()) throw InvalidArgument("InputState: empty thermal occupation data");
    for (double n : n_th) {
        if (!(n >= 0.0) || !std::isfinite(n)) {
            throw InvalidArgument("InputState: thermal occupation must be non-negative");
        }
    }
    return {Kind::thermal, std::move(n_th), {}};
}

InputState InputState::squeezed(cdouble xi) { return squeezed(std::vector<cdouble>{xi}); }

InputState InputState::squeezed(std::vector<cdouble> xi) {
    if (xi.empty()) throw InvalidArgument("InputState: empty squeeze data");
    for (cdouble x : xi) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw InvalidArgument("InputState: squeeze parameter must be finite");
        }
    }
    return {Kind::squeezed, {}, std::move(xi)};
}

void InputState::validate_for(const FrequencyGrid& grid) const {
    const std::size_t n = kind_ == Kind::thermal ? n_th_.size() : xi_.size();
    if (kind_ == Kind::vacuum || n == 1) return;
    if (n != grid.size()) {
        throw InvalidArgument("InputState: per-frequency data does not match grid size");
    }
    if (kind_ == Kind::squeezed) {
        grid.require_symmetric("InputState(squeezed)");
        for (std::size_t i = 0; i < n; ++i) {
            const cdouble a = xi_[i];
            const cdouble b = xi_[grid.reflected_index(i)];
            if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
                throw InvalidArgument("InputState: squeeze data must satisfy xi(w) = xi(-w)");
            }
        }
    }
}

double InputState::n_at(const FrequencyGrid&, std::size_t i) const {
    return n_th_.size() == 1 ? n_th_.front() : n_th_[i];
}

Eigen::Matrix2cd InputState::ladder_matrix(const FrequencyGrid& grid, std::size_t i) const {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (kind_) {
        case Kind::vacuum:
            m(0, 0) = 1.0;
            break;
        case Kind::thermal: {
            // S_c†c(ω) = n(−ω): c† carries the opposite frequency
            const double n_pos = n_at(grid, i);
            const double n_neg = n_th_.size() == 1 ? n_pos : n_at(grid, grid.reflected_index(i));
            m(0, 0) = n_pos + 1.0;
            m(1, 1) = n_neg;
            break;
        }
        case Kind::squeezed: {
            const cdouble xi = xi_.size() == 1 ? xi_.front() : xi_[i];
            const double r = std::abs(xi);
            const double phi = std::arg(xi);
            const double ch = std::cosh(r);
            const double sh = std::sinh(r);
            m(0, 0) = ch * ch;
            m(1, 1) = sh * sh;
            m(0, 1) = std::polar(ch * sh, phi);
            m(1, 0) = std::conj(m(0, 1));
            break;
        }
    }
    return m;
}

Eigen::Matrix2cd InputState::quadrature_matrix(const FrequencyGrid& grid, std::size_t i) const {
    const auto& q = ladder_to_quadrature();
    return q * ladder_matrix(grid, i) * q.adjoint();
}

// ---------------------------- observables -----------------------------------

Observable mode_quadrature(Eigen::Index n_modes, Eigen::Index n_ports, Eigen::Index k,
                           double angle, double weight) {
    if (k < 0 || k >= n_modes) throw InvalidArgument("mode_quadrature: mode index out of range");
    Observable o{Eigen::RowVectorXd::Zero(2 * n_modes), Eigen::RowVectorXd::Zero(2 * n_ports),
                 Eigen::RowVectorXd::Zero(2 * n_ports)};
    o.modes(2 * k) = weight * std::cos(angle);
    o.modes(2 * k + 1) = weight * std::sin(angle);
    return o;
}

Observable output_quadrature(Eigen::Index n_modes, Eigen::Index n_ports, Eigen::Index j,
                             double angle, double weight) {
    if (j < 0 || j >= n_ports) throw InvalidArgument("output_quadrature: port index out of range");
    Observable o{Eigen::RowVectorXd::Zero(2 * n_modes), Eigen::RowVectorXd::Zero(2 * n_ports),
                 Eigen::RowVectorXd::Zero(2 * n_ports)};
    o.outputs(2 * j) = weight * std::cos(angle);
    o.outputs(2 * j + 1) = weight * std::sin(angle);
    return o;
}

// ------------------------------- network ------------------------------------

LinearNetwork::LinearNetwork(Eigen::MatrixXcd drift, Eigen::MatrixXcd input_coupling,
                             Eigen::MatrixXcd feedthrough, Eigen::MatrixXcd output_from_modes,
                             std::vector<Observable> z, std::vector<Observable> f,
                             std::vector<InputState> inputs, UnitConvention units)
    : drift_(std::move(drift)),
      input_coupling_(std::move(input_coupling)),
      feedthrough_(std::move(feedthrough)),
      output_from_modes_(std::move(output_from_modes)),
      z_(std::move(z)),
      f_(std::move(f)),
      inputs_(std::move(inputs)),
      units_(units) {
    units_.validate();
    const Eigen::Index n = drift_.rows();
    const Eigen::Index p = input_coupling_.cols();
    if (n == 0 || drift_.cols() != n) throw InvalidArgument("LinearNetwork: drift must be square");
    if (p == 0 || input_coupling_.rows() != n) {
        throw InvalidArgument("LinearNetwork: input coupling must be n_modes x n_ports");
    }
    if (feedthrough_.rows() != p || feedthrough_.cols() != p) {
        throw InvalidArgument("LinearNetwork: feedthrough must be n_ports x n_ports");
    }
    if (output_from_modes_.rows() != p || output_from_modes_.cols() != n) {
        throw InvalidArgument("LinearNetwork: output map must be n_ports x n_modes");
    }
    if (z_.empty() || z_.size() != f_.size()) {
        throw InvalidArgument("LinearNetwork: need matching, non-empty Z and F observable lists");
    }
    for (const auto& o : z_) check_observable(o, n, p);
    for (const auto& o : f_) check_observable(o, n, p);
    if (inputs_.size() != 1 && inputs_.size() != static_cast<std::size_t>(p)) {
        throw InvalidArgument("LinearNetwork: need one input state, or one per port");
    }
    a_ = embed(drift_);
    b_ = embed(input_coupling_);
    c_ = embed(output_from_modes_);
    d_ = embed(feedthrough_);
}

LinearNetwork LinearNetwork::from_hamiltonian(const Eigen::MatrixXcd& hamiltonian,
                                              const Eigen::MatrixXcd& coupling,
                                              std::vector<Observable> z,
                                              std::vector<Observable> f,
                                              std::vector<InputState> inputs,
                                              UnitConvention units) {
    if (hamiltonian.rows() != hamiltonian.cols() || coupling.cols() != hamiltonian.rows()) {
        throw InvalidArgument("from_hamiltonian: inconsistent dimensions");
    }
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, hamiltonian.cwiseAbs().maxCoeff())) {
        throw InvalidArgument("from_hamiltonian: hamiltonian must be Hermitian");
    }
    const Eigen::Index p = coupling.rows();
    Eigen::MatrixXcd drift = -I * hamiltonian - 0.5 * coupling.adjoint() * coupling;
    return {drift,
            -coupling.adjoint(),
            Eigen::MatrixXcd::Identity(p, p),
            coupling,
            std::move(z),
            std::move(f),
            std::move(inputs),
            units};
}

const InputState& LinearNetwork::input(Eigen::Index port) const {
    return inputs_.size() == 1 ? inputs_.front() : inputs_[static_cast<std::size_t>(port)];
}

Eigen::VectorXcd LinearNetwork::drift_eigenvalues() const {
    return Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(drift_, false).eigenvalues();
}

bool LinearNetwork::is_stable() const {
    const double scale = std::max(1.0, drift_.cwiseAbs().maxCoeff());
    return drift_eigenvalues().real().maxCoeff() < -1e-14 * scale;
}

void LinearNetwork::require_stable() const {
    if (!is_stable()) {
        std::ostringstream msg;
        msg << "LinearNetwork: drift is not strictly stable (max Re eigenvalue = "
            << drift_eigenvalues().real().maxCoeff() << ")";
        throw StabilityError(msg.str());
    }
}

Eigen::MatrixXd LinearNetwork::mode_commutator() const {
    // A Σ + Σ Aᵀ = −B J Bᵀ, solved through its Kronecker form.
    const Eigen::Index m = a_.rows();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd kron(m * m, m * m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
            kron.block(r * m, c * m, m, m) = eye(r, c) * a_ + a_(r, c) * eye;
        }
    }
    const Eigen::MatrixXd rhs = -b_ * symplectic_form(n_ports()) * b_.transpose();
    const Eigen::VectorXd vec_rhs = Eigen::Map<const Eigen::VectorXd>(rhs.data(), m * m);
    const Eigen::VectorXd sol = kron.partialPivLu().solve(vec_rhs);
    return Eigen::Map<const Eigen::MatrixXd>(sol.data(), m, m);
}

LinearNetwork build_one_sided_cavity(const CavityParams& params, InputState input) {
    return build_cavity_array({params}, {std::move(input)});
}

LinearNetwork build_cavity_array(const std::vector<CavityParams>& params,
                                 std::vector<InputState> inputs) {
    if (params.empty()) throw InvalidArgument("build_cavity_array: need at least one cavity");
    const auto n = static_cast<Eigen::Index>(params.size());
    const UnitConvention units = params.front().units;
    Eigen::MatrixXcd drift = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd coupling = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    std::vector<Observable> z, f;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& p = params[static_cast<std::size_t>(k)];
        p.validate();
        if (p.units.hbar != units.hbar) {
            throw InvalidArgument("build_cavity_array: all cavities must share one unit convention");
        }
        const double root = std::sqrt(2.0 * p.gamma);
        drift(k, k) = cdouble(-p.gamma, p.delta);
        coupling(k, k) = root;
        out(k, k) = -root;
        z.push_back(output_quadrature(n, n, k, p.theta));
        // ħḡ(a + a†) = √2·ħḡ·X
        f.push_back(mode_quadrature(n, n, k, 0.0, std::sqrt(2.0) * units.hbar * p.gbar));
    }
    return {drift,        coupling,     Eigen::MatrixXcd::Identity(n, n), out, std::move(z),
            std::move(f), std::move(inputs), units};
}

// ------------------------------- solver -------------------------------------

NetworkSolver::NetworkSolver(const LinearNetwork& net)
    : net_(net), port_commutator_(symplectic_form(net.n_ports())) {
    net_.require_stable();
    sigma_ = net_.mode_commutator();
}

namespace {

struct Reduced {
    Eigen::RowVectorXd modes;
    Eigen::RowVectorXd inputs;
};

Reduced reduce(const LinearNetwork& net, const Observable& o) {
    check_observable(o, net.n_modes(), net.n_ports());
    return {o.modes + o.outputs * net.quad_output(), o.inputs + o.outputs * net.quad_feedthrough()};
}

Eigen::PartialPivLU<Eigen::MatrixXcd> resolvent_lu(const LinearNetwork& net, double omega) {
    const Eigen::Index m = net.quad_drift().rows();
    Eigen::MatrixXcd lhs = -I * omega * Eigen::MatrixXcd::Identity(m, m);
    lhs -= net.quad_drift().cast<cdouble>();
    return lhs.partialPivLu();
}

}  // namespace

Eigen::RowVectorXcd NetworkSolver::transfer(const Observable& obs, double omega) const {
    const Reduced r = reduce(net_, obs);
    const auto lu = resolvent_lu(net_, omega);
    // row·R·B = (Rᵀ rowᵀ)ᵀ·B; R = (−iω − A)⁻¹
    const Eigen::VectorXcd rt = lu.transpose().solve(r.modes.transpose().cast<cdouble>());
    return rt.transpose() * net_.quad_input().cast<cdouble>() + r.inputs.cast<cdouble>();
}

cdouble NetworkSolver::susceptibility(const Observable& a, const Observable& b,
                                      double omega) const {
    const Reduced ra = reduce(net_, a);
    const Reduced rb = reduce(net_, b);
    const auto lu = resolvent_lu(net_, omega);
    const Eigen::VectorXd source = net_.quad_input() * port_commutator_ * rb.inputs.transpose() +
                                   sigma_ * rb.modes.transpose();
    const Eigen::VectorXcd propagated = lu.solve(source.cast<cdouble>());
    const cdouble delayed = ra.modes.cast<cdouble>().dot(propagated);
    const double instantaneous = 0.5 * ra.inputs.dot(port_commutator_ * rb.inputs.transpose());
    // (i/ħ)·i·[...] for commutators i·(real matrices)
    return -(delayed + instantaneous) / net_.units().hbar;
}

Eigen::MatrixXcd NetworkSolver::input_noise(const FrequencyGrid& grid, std::size_t i) const {
    const Eigen::Index p = net_.n_ports();
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(2 * p, 2 * p);
    for (Eigen::Index j = 0; j < p; ++j) {
        n.block<2, 2>(2 * j, 2 * j) = net_.input(j).quadrature_matrix(grid, i);
    }
    return n;
}

ComplexSpectrum NetworkSolver::spectrum(const Observable& a, const Observable& b,
                                        const FrequencyGrid& grid) const {
    for (Eigen::Index j = 0; j < net_.n_ports(); ++j) net_.input(j).validate_for(grid);
    std::vector<cdouble> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Eigen::RowVectorXcd ta = transfer(a, grid[i]);
        const Eigen::RowVectorXcd tb = transfer(b, grid[i]);
        out[i] = (ta * input_noise(grid, i) * tb.adjoint())(0, 0);
    }
    return {grid, std::move(out)};
}

ComplexSpectrum NetworkSolver::susceptibility(const Observable& a, const Observable& b,
                                              const FrequencyGrid& grid) const {
    std::vector<cdouble> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = susceptibility(a, b, grid[i]);
    return {grid, std::move(out)};
}

namespace {

void check_channel(const LinearNetwork& net, std::size_t channel) {
    if (channel >= net.n_channels()) throw InvalidArgument("netsolve: channel index out of range");
}

}  // namespace

SusceptibilitySet solve_susceptibilities(const LinearNetwork& net, const FrequencyGrid& grid,
                                         std::size_t channel) {
    check_channel(net, channel);
    const NetworkSolver solver(net);
    const auto& z = net.z()[channel];
    const auto& f = net.f()[channel];
    return {solver.susceptibility(z, f, grid), solver.susceptibility(f, f, grid),
            solver.susceptibility(z, z, grid), solver.susceptibility(f, z, grid), net.units()};
}

SpectraSet solve_unsym_spectra(const LinearNetwork& net, const FrequencyGrid& grid,
                               std::size_t channel) {
    check_channel(net, channel);
    grid.require_symmetric("solve_unsym_spectra");
    const NetworkSolver solver(net);
    const auto& z = net.z()[channel];
    const auto& f = net.f()[channel];
    return {solver.spectrum(z, z, grid), solver.spectrum(z, f, grid), solver.spectrum(f, f, grid),
            false, net.units()};
}

std::vector<Eigen::MatrixXcd> solve_spectral_matrix(const LinearNetwork& net,
                                                    const FrequencyGrid& grid) {
    const NetworkSolver solver(net);
    for (Eigen::Index j = 0; j < net.n_ports(); ++j) net.input(j).validate_for(grid);
    const auto n_obs = static_cast<Eigen::Index>(2 * net.n_channels());
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Eigen::MatrixXcd t(n_obs, 2 * net.n_ports());
        for (std::size_t k = 0; k < net.n_channels(); ++k) {
            t.row(static_cast<Eigen::Index>(2 * k)) = solver.transfer(net.z()[k], grid[i]);
            t.row(static_cast<Eigen::Index>(2 * k + 1)) = solver.transfer(net.f()[k], grid[i]);
        }
        out.push_back(t * solver.input_noise(grid, i) * t.adjoint());
    }
    return out;
}

SpectraSet symmetrize(const SpectraSet& s) {
    const auto& grid = s.grid();
    grid.require_symmetric("symmetrize");
    auto sym = [&](const ComplexSpectrum& x) {
        std::vector<cdouble> out(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out[i] = 0.5 * (x[i] + std::conj(x[grid.reflected_index(i)]));
        }
        return ComplexSpectrum(grid, std::move(out));
    };
    return {sym(s.s_ZZ), sym(s.s_ZF), sym(s.s_FF), true, s.units};
}

ComplexSpectrum kubo_check(const ComplexSpectrum& s_FF_unsym, const ComplexSpectrum& chi_FF,
                           const UnitConvention& units) {
    const auto& grid = s_FF_unsym.grid();
    grid.require_symmetric("kubo_check");
    if (!(grid == chi_FF.grid())) throw GridMismatch("kubo_check: grids differ");
    std::vector<cdouble> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double diff = (s_FF_unsym[i] - s_FF_unsym[grid.reflected_index(i)]).real();
        out[i] = chi_FF[i].imag() - diff / (2.0 * units.hbar);
    }
    return {grid, std::move(out)};
}

ComplexSpectrum response_fluctuation_residual(const ComplexSpectrum& chi_AB,
                                              const ComplexSpectrum& chi_BA,
                                              const ComplexSpectrum& s_AB_unsym,
                                              const UnitConvention& units) {
    const auto& grid = s_AB_unsym.grid();
    grid.require_symmetric("response_fluctuation_residual");
    if (!(grid == chi_AB.grid()) || !(grid == chi_BA.grid())) {
        throw GridMismatch("response_fluctuation_residual: grids differ");
    }
    std::vector<cdouble> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cdouble s_ba_reflected = std::conj(s_AB_unsym[grid.reflected_index(i)]);
        out[i] = chi_AB[i] - std::conj(chi_BA[i]) -
                 (I / units.hbar) * (s_AB_unsym[i] - s_ba_reflected);
    }
    return {grid, std::move(out)};
}

}  // namespace qnoise
