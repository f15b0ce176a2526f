#include "spintrend/full_space.hpp"

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <stdexcept>

namespace spintrend {

namespace {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using MatrixXc = Eigen::MatrixXcd;

Matrix2c pauli_x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2c pauli_y() {
    Matrix2c m;
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix2c pauli_z() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}

Matrix2c number_op() {
    Matrix2c m;
    m << 1, 0, 0, 0;  // (I + Z)/2
    return m;
}

// Kronecker chain with `op` placed at the (1-based) listed sites, identity
// elsewhere; site 1 is the leftmost tensor factor.
MatrixXc kron_chain(int spins, const Matrix2c& op, std::initializer_list<int> sites) {
    const Matrix2c id = Matrix2c::Identity();
    MatrixXc acc = MatrixXc::Identity(1, 1);
    for (int s = 1; s <= spins; ++s) {
        const bool hit = std::find(sites.begin(), sites.end(), s) != sites.end();
        const Matrix2c& f = hit ? op : id;
        MatrixXc next(acc.rows() * 2, acc.cols() * 2);
        for (Eigen::Index i = 0; i < acc.rows(); ++i)
            for (Eigen::Index j = 0; j < acc.cols(); ++j) next.block<2, 2>(2 * i, 2 * j) = acc(i, j) * f;
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

Eigen::MatrixXd FullSpaceModel::projected_block() const {
    return projector.transpose() * hamiltonian * projector;
}

FullSpaceModel full_hamiltonian_oracle(const SpinRingSpec& ring, const BiasController& ctrl) {
    ring.validate();
    ctrl.validate(ring.spins);
    const int m = ring.spins;
    if (m > 8) throw std::invalid_argument("full_hamiltonian_oracle: M > 8 exceeds the memory guard");

    const Eigen::Index dim = Eigen::Index{1} << m;
    MatrixXc h = MatrixXc::Zero(dim, dim);

    const Matrix2c sx = pauli_x(), sy = pauli_y(), sz = pauli_z(), num = number_op();
    for (int site = 1; site <= m; ++site) {
        const int next = site % m + 1;  // ring wrap
        const double j = ring.couplings[static_cast<std::size_t>(site - 1)];
        h += (j / 2.0) * kron_chain(m, sx, {site, next});
        h += (j / 2.0) * kron_chain(m, sy, {site, next});
        if (ring.epsilon != 0.0) h += (ring.epsilon * j / 2.0) * kron_chain(m, sz, {site, next});
        h += ctrl.bias[static_cast<std::size_t>(site - 1)] * kron_chain(m, num, {site});
    }

    FullSpaceModel model;
    model.hamiltonian = h.real();
    if (h.imag().cwiseAbs().maxCoeff() > 1e-12)
        throw std::logic_error("full_hamiltonian_oracle: Hamiltonian not real");

    model.excitation_basis.reserve(static_cast<std::size_t>(m));
    model.projector = Eigen::MatrixXd::Zero(dim, m);
    for (int site = 1; site <= m; ++site) {
        // site `site` up (tensor index bit 0), all others down (bit 1)
        const int idx = static_cast<int>((dim - 1) - (Eigen::Index{1} << (m - site)));
        model.excitation_basis.push_back(idx);
        model.projector(idx, site - 1) = 1.0;
    }
    return model;
}

std::vector<int> excitation_counts(int spins) {
    const int dim = 1 << spins;
    std::vector<int> counts(static_cast<std::size_t>(dim));
    for (int b = 0; b < dim; ++b) counts[static_cast<std::size_t>(b)] = spins - __builtin_popcount(static_cast<unsigned>(b));
    return counts;
}

}  // namespace spintrend
