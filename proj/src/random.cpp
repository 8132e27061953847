#include "qmeas/random.hpp"

#include <cmath>

namespace qm {

namespace {

Complex gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

}  // namespace

Rng stream_for(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x5eedu};
    return Rng(seq);
}

Vector random_pure_state(std::size_t dim, Rng& rng) {
    Vector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = gaussian(rng);
    v.normalize();
    return v;
}

Matrix random_mixed_state(std::size_t dim, std::size_t ancilla_dim, Rng& rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    const auto a = static_cast<Eigen::Index>(ancilla_dim);
    const Vector psi = random_pure_state(dim * ancilla_dim, rng);
    const Eigen::Map<const Matrix> amps(psi.data(), a, d);  // column-major: amps(anc, sys) = psi(sys*a + anc)
    Matrix rho = amps.transpose() * amps.conjugate();
    return 0.5 * (rho + rho.adjoint());
}

Matrix random_unitary(std::size_t dim, Rng& rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix g(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) g(r, c) = gaussian(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex diag = r(k, k);
        if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
    }
    return q;
}

Matrix random_hermitian(std::size_t dim, Rng& rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix g(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) g(r, c) = gaussian(rng);
    return 0.5 * (g + g.adjoint());
}

std::vector<double> random_simplex(std::size_t k, Rng& rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(k);
    double sum = 0.0;
    for (auto& x : w) {
        x = e(rng);
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return w;
}

}  // namespace qm
