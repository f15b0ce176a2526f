#include "spintrend/spin_ring.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace spintrend {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_site(int spins, int site, const char* what) {
    if (site < 1 || site > spins) throw std::invalid_argument(std::string(what) + ": site out of range");
}

}  // namespace

SpinRingSpec SpinRingSpec::uniform(int spins, double epsilon, double coupling) {
    SpinRingSpec ring;
    ring.spins = spins;
    ring.couplings.assign(static_cast<std::size_t>(spins), coupling);
    ring.epsilon = epsilon;
    ring.validate();
    return ring;
}

void SpinRingSpec::validate() const {
    require(spins >= 3, "SpinRingSpec: need at least 3 spins");
    require(couplings.size() == static_cast<std::size_t>(spins), "SpinRingSpec: coupling count != spins");
    for (const double j : couplings) require(std::isfinite(j), "SpinRingSpec: non-finite coupling");
    require(epsilon == 0.0 || epsilon == 1.0, "SpinRingSpec: epsilon must be 0 (XX) or 1 (Heisenberg)");
}

void BiasController::validate(int spins) const {
    require(bias.size() == static_cast<std::size_t>(spins), "BiasController: bias length != spins");
    for (const double d : bias) require(std::isfinite(d), "BiasController: non-finite bias");
    require(std::isfinite(readout_time) && readout_time >= 0.0, "BiasController: readout time must be >= 0");
    if (window) {
        require(*window > 0.0, "BiasController: window width must be positive");
        require(readout_time - *window / 2.0 >= 0.0, "BiasController: window extends below t = 0");
    }
}

Eigen::MatrixXd build_single_excitation_hamiltonian(const SpinRingSpec& ring, const BiasController& ctrl) {
    ring.validate();
    ctrl.validate(ring.spins);
    const int m = ring.spins;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) h(i, i) = ctrl.bias[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) {
        h(i, i + 1) = h(i + 1, i) = ring.couplings[static_cast<std::size_t>(i)];
    }
    h(0, m - 1) = h(m - 1, 0) = ring.couplings[static_cast<std::size_t>(m - 1)];
    return h;
}

EigenSystem::EigenSystem(const Eigen::MatrixXd& h) {
    require(h.rows() == h.cols(), "EigenSystem: matrix not square");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    require((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, "EigenSystem: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    require(solver.info() == Eigen::Success, "EigenSystem: eigendecomposition failed");
    vecs_ = solver.eigenvectors();
    vals_ = solver.eigenvalues();
    spectral_norm_ = vals_.size() ? vals_.cwiseAbs().maxCoeff() : 0.0;
}

StateVector EigenSystem::propagate(double t, const StateVector& psi0) const {
    const Eigen::VectorXcd coeffs = vecs_.transpose().cast<Complex>() * psi0;
    Eigen::VectorXcd rotated(vals_.size());
    for (Eigen::Index k = 0; k < vals_.size(); ++k) rotated[k] = std::exp(-kI * vals_[k] * t) * coeffs[k];
    return vecs_.cast<Complex>() * rotated;
}

std::complex<double> EigenSystem::site_overlap(int out_site, double t, int in_site) const {
    const int m = static_cast<int>(vals_.size());
    check_site(m, in_site, "site_overlap");
    check_site(m, out_site, "site_overlap");
    Complex o{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
        o += vecs_(out_site - 1, k) * std::exp(-kI * vals_[k] * t) * vecs_(in_site - 1, k);
    }
    return o;
}

Eigen::MatrixXcd EigenSystem::loewner_factor(double t) const {
    const Eigen::Index m = vals_.size();
    // Degenerate pairs take the confluent limit -it e^{-i lambda t}; the
    // threshold is relative to the spectral norm.
    const double thr = 1e-9 * spectral_norm_;
    Eigen::MatrixXcd gamma(m, m);
    Eigen::VectorXcd phases(m);
    for (Eigen::Index k = 0; k < m; ++k) phases[k] = std::exp(-kI * vals_[k] * t);
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = 0; l < m; ++l) {
            const double dl = vals_[k] - vals_[l];
            if (std::abs(dl) <= thr)
                gamma(k, l) = -kI * t * phases[k];
            else
                gamma(k, l) = (phases[k] - phases[l]) / (-kI * dl);
        }
    }
    return gamma;
}

Eigen::MatrixXcd EigenSystem::propagator_derivative(double t, const Eigen::MatrixXd& dh) const {
    const Eigen::MatrixXd a = vecs_.transpose() * dh * vecs_;
    const Eigen::MatrixXcd inner = a.cast<Complex>().cwiseProduct(loewner_factor(t));
    return vecs_.cast<Complex>() * inner * vecs_.transpose().cast<Complex>();
}

TransferGradients EigenSystem::transfer_gradients(const SpinRingSpec& ring, double t, int in_site,
                                                  int out_site) const {
    const int m = ring.spins;
    check_site(m, in_site, "transfer_gradients");
    check_site(m, out_site, "transfer_gradients");

    const Eigen::VectorXd c = vecs_.row(in_site - 1);
    const Eigen::VectorXd w = vecs_.row(out_site - 1);

    Eigen::VectorXcd phases(m);
    for (int k = 0; k < m; ++k) phases[k] = std::exp(-kI * vals_[k] * t);

    Complex overlap{0.0, 0.0};
    Complex dt_inner{0.0, 0.0};
    for (int k = 0; k < m; ++k) {
        const Complex term = w[k] * phases[k] * c[k];
        overlap += term;
        dt_inner += term * (-kI * vals_[k]);
    }

    // <out| dU |in> for dH = B reduces to sum_kl A_kl G_kl with
    // G_kl = w_k Gamma_kl c_l and A = V^T B V; mapping back through V gives
    // T = V G V^T so that a bias at site s reads T(s,s) and a coupling on
    // the edge (a,b) reads T(a,b) + T(b,a).
    const Eigen::MatrixXcd gamma = loewner_factor(t);
    Eigen::MatrixXcd g(m, m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) g(k, l) = w[k] * gamma(k, l) * c[l];
    const Eigen::MatrixXcd tmap = vecs_.cast<Complex>() * g * vecs_.transpose().cast<Complex>();

    TransferGradients out;
    out.overlap = overlap;
    out.prob = std::norm(overlap);
    out.dprob_dJ.resize(m);
    out.dprob_dD.resize(m);
    const Complex oc = std::conj(overlap);
    for (int s = 0; s < m; ++s) {
        out.dprob_dD[s] = 2.0 * (oc * tmap(s, s)).real();
        const int b = (s + 1) % m;
        out.dprob_dJ[s] = 2.0 * (oc * (tmap(s, b) + tmap(b, s))).real();
    }
    out.dprob_dt = 2.0 * (oc * dt_inner).real();
    return out;
}

StateVector evolve(const Eigen::MatrixXd& h, double t, const StateVector& psi0) {
    require(t >= 0.0, "evolve: time must be >= 0");
    require(psi0.size() == h.rows(), "evolve: state dimension mismatch");
    require(std::abs(psi0.norm() - 1.0) <= 1e-10, "evolve: state not normalized");
    const EigenSystem es(h);  // checks symmetry
    return es.propagate(t, psi0);
}

StateVector site_state(int spins, int site) {
    check_site(spins, site, "site_state");
    StateVector e = StateVector::Zero(spins);
    e[site - 1] = Complex{1.0, 0.0};
    return e;
}

TransferGradients transfer_gradients(const SpinRingSpec& ring, const BiasController& ctrl, int in_site,
                                     int out_site) {
    const EigenSystem es(build_single_excitation_hamiltonian(ring, ctrl));
    return es.transfer_gradients(ring, ctrl.readout_time, in_site, out_site);
}

TransferMetrics transfer_metrics(const SpinRingSpec& ring, const BiasController& ctrl, int in_site,
                                 int out_site) {
    const TransferGradients g = transfer_gradients(ring, ctrl, in_site, out_site);

    TransferMetrics m;
    m.prob = g.prob;
    const double amp = std::abs(g.overlap);
    m.err = std::sqrt(std::max(0.0, 1.0 - amp));
    m.phase = -std::arg(g.overlap);
    m.dprob_dJ = g.dprob_dJ;
    m.sens_norm = g.dprob_dJ.norm();
    m.degenerate = (1.0 - m.prob < kProbClamp) || m.sens_norm == 0.0;
    if (1.0 - m.prob < kProbClamp) {
        m.logsens = std::numeric_limits<double>::quiet_NaN();
    } else {
        m.logsens = log_sensitivity(m);
    }
    return m;
}

double analytic_gradient(const SpinRingSpec& ring, const BiasController& ctrl, int in_site, int out_site,
                         ParamKind kind, int param_index) {
    check_site(ring.spins, param_index, "analytic_gradient: parameter");
    const TransferGradients g = transfer_gradients(ring, ctrl, in_site, out_site);
    return kind == ParamKind::coupling ? g.dprob_dJ[param_index - 1] : g.dprob_dD[param_index - 1];
}

double windowed_fidelity(const SpinRingSpec& ring, const BiasController& ctrl, int in_site, int out_site,
                         int nodes) {
    require(ctrl.window.has_value(), "windowed_fidelity: controller has no window");
    ring.validate();
    ctrl.validate(ring.spins);
    check_site(ring.spins, in_site, "windowed_fidelity");
    check_site(ring.spins, out_site, "windowed_fidelity");
    if (nodes < 3) nodes = 3;
    if (nodes % 2 == 0) ++nodes;  // Simpson needs an odd node count

    const double dt = *ctrl.window;
    const double t0 = ctrl.readout_time - dt / 2.0;
    const double h = dt / (nodes - 1);
    const EigenSystem es(build_single_excitation_hamiltonian(ring, ctrl));

    double integral = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double f = std::abs(es.site_overlap(out_site, t0 + h * i, in_site));
        const double weight = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        integral += weight * f;
    }
    integral *= h / 3.0;
    return integral / dt;
}

double log_sensitivity(const TransferMetrics& metrics) {
    const double denom = 1.0 - metrics.prob;
    if (denom < kProbClamp) throw std::domain_error("log_sensitivity: probability at clamp");
    double sum_sq = 0.0;
    for (Eigen::Index i = 0; i < metrics.dprob_dJ.size(); ++i) {
        const double r = metrics.dprob_dJ[i] / denom;
        sum_sq += r * r;
    }
    return 0.5 * std::log(sum_sq);  // -inf if every component vanishes
}

}  // namespace spintrend
