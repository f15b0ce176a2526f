#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace spintrend {

// Records with 1 - prob below this are flagged degenerate: the 1/(1-prob)
// normalization in the log-sensitivity blows up.
inline constexpr double kProbClamp = 1e-12;

// Ring of M spin-1/2 sites with nearest-neighbor coupling. couplings[m] is
// the strength between sites m+1 and m+2 (0-based storage, 1-based sites);
// the last entry closes the ring between sites M and 1.
struct SpinRingSpec {
    int spins = 0;
    std::vector<double> couplings;
    double epsilon = 0.0;  // 0 = XX, 1 = Heisenberg

    static SpinRingSpec uniform(int spins, double epsilon = 0.0, double coupling = 1.0);
    void validate() const;
};

// Static bias fields on the diagonal plus the readout time; the only control
// authority in this problem.
struct BiasController {
    std::vector<double> bias;
    double readout_time = 0.0;
    std::optional<double> window;  // averaging width for the windowed objective

    void validate(int spins) const;
};

using StateVector = Eigen::VectorXcd;

struct TransferMetrics {
    double prob = 0.0;                // |<out|psi(t_f)>|^2
    double err = 0.0;                 // sqrt(1 - |<out|psi(t_f)>|)
    double phase = 0.0;               // -arg <out|psi(t_f)>
    Eigen::VectorXd dprob_dJ;         // one entry per coupling
    double sens_norm = 0.0;           // ||dprob_dJ||_2
    double logsens = 0.0;             // 0.5 log sum |dprob_dJ/(1-prob)|^2
    bool degenerate = false;          // prob at clamp or vanishing gradient
};

// Gradients of the transfer probability with respect to every controllable
// or uncertain parameter, computed in one eigenbasis pass.
struct TransferGradients {
    std::complex<double> overlap;
    double prob = 0.0;
    Eigen::VectorXd dprob_dJ;
    Eigen::VectorXd dprob_dD;
    double dprob_dt = 0.0;
};

enum class ParamKind { coupling, bias };

Eigen::MatrixXd build_single_excitation_hamiltonian(const SpinRingSpec& ring, const BiasController& ctrl);

// Spectral factorization of a real symmetric Hamiltonian. Propagation and
// the exact parameter derivatives of exp(-iHt) both come from here.
class EigenSystem {
public:
    explicit EigenSystem(const Eigen::MatrixXd& h);

    StateVector propagate(double t, const StateVector& psi0) const;
    std::complex<double> site_overlap(int out_site, double t, int in_site) const;

    const Eigen::MatrixXd& vectors() const { return vecs_; }
    const Eigen::VectorXd& values() const { return vals_; }

    // d exp(-iHt) / d theta for dH/dtheta = B, as the Loewner/Daleckii-Krein
    // matrix V (V^T B V . Gamma(t)) V^T. Returned as the complex M x M map.
    Eigen::MatrixXcd propagator_derivative(double t, const Eigen::MatrixXd& dh) const;

    TransferGradients transfer_gradients(const SpinRingSpec& ring, double t, int in_site, int out_site) const;

private:
    Eigen::MatrixXcd loewner_factor(double t) const;

    Eigen::MatrixXd vecs_;
    Eigen::VectorXd vals_;
    double spectral_norm_ = 0.0;
};

// exp(-iHt) psi0 with contract checks (H symmetric, t >= 0, unit norm).
StateVector evolve(const Eigen::MatrixXd& h, double t, const StateVector& psi0);

// Site basis vector e_site (1-based site).
StateVector site_state(int spins, int site);

TransferMetrics transfer_metrics(const SpinRingSpec& ring, const BiasController& ctrl, int in_site, int out_site);

TransferGradients transfer_gradients(const SpinRingSpec& ring, const BiasController& ctrl, int in_site,
                                     int out_site);

double analytic_gradient(const SpinRingSpec& ring, const BiasController& ctrl, int in_site, int out_site,
                         ParamKind kind, int param_index);

// Window-averaged |<out|psi(t)>| over [t_f - dt/2, t_f + dt/2], composite
// Simpson with a fixed odd node count.
double windowed_fidelity(const SpinRingSpec& ring, const BiasController& ctrl, int in_site, int out_site,
                         int nodes = 33);

// y = 0.5 log sum_m |dprob_dJ[m]/(1-prob)|^2. Throws if prob is at the clamp.
double log_sensitivity(const TransferMetrics& metrics);

}  // namespace spintrend
