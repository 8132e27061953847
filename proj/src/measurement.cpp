#include "qmeas/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmeas/kernels.hpp"

namespace qm {

namespace {

constexpr std::size_t kExplicitReducedLimit = 1024;

Factorization uniform_factorization(std::size_t n, std::size_t count) {
    return Factorization(std::vector<std::size_t>(count, n));
}

std::vector<std::size_t> range(std::size_t first, std::size_t last) {
    std::vector<std::size_t> out;
    for (std::size_t k = first; k < last; ++k) out.push_back(k);
    return out;
}

Vector normalized_alpha(std::span<const Complex> alpha, const char* what) {
    if (alpha.empty()) throw ValidationError(std::string(what) + ": amplitude list is empty");
    Vector a(static_cast<Eigen::Index>(alpha.size()));
    for (std::size_t i = 0; i < alpha.size(); ++i) a(static_cast<Eigen::Index>(i)) = alpha[i];
    if (std::abs(a.norm() - 1.0) > kNormTol) {
        std::ostringstream os;
        os << what << ": amplitudes are not normalized (norm = " << a.norm() << ")";
        throw ValidationError(os.str());
    }
    return a;
}

// alpha (x) |0 ... 0> on `f`, alpha living on factor 0.
Vector embed_system(const Vector& alpha, const Factorization& f) {
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(f.total()));
    const auto s = static_cast<Eigen::Index>(f.stride(0));
    for (Eigen::Index i = 0; i < alpha.size(); ++i) psi(i * s) = alpha(i);
    return psi;
}

// Applies `op` to factor 0 of psi.
Vector apply_on_first(const Vector& psi, const Factorization& f, const Matrix& op) {
    const auto d = static_cast<Eigen::Index>(f.dim(0));
    const auto rest = static_cast<Eigen::Index>(f.stride(0));
    // Row-major (d x rest) view of psi is a column-major (rest x d) map.
    const Eigen::Map<const Matrix> view(psi.data(), rest, d);
    Matrix out = view * op.transpose();
    return Eigen::Map<Vector>(out.data(), out.size());
}

double clean_zero(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

Matrix cnot_general(std::size_t n) {
    if (n < 2) throw ValidationError("cnot_general: dimension must be at least 2");
    const auto d = static_cast<Eigen::Index>(n);
    Matrix u = Matrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index k = 0; k < d; ++k) u(i * d + (k + i) % d, i * d + k) = 1.0;
    return u;
}

void require_within_memory_guard(const Factorization& f) {
    if (f.total() > (std::size_t{1} << kMaxQubitsEquivalent))
        throw NumericalGuardError("memory guard: joint dimension " + std::to_string(f.total()) + " exceeds 2^" +
                                  std::to_string(kMaxQubitsEquivalent));
}

MeasurementBasisMap::MeasurementBasisMap(Matrix u, double tol) : u_(std::move(u)) {
    require_square(u_, "basis map");
    if (u_.rows() < 1) throw ValidationError("basis map: empty matrix");
    const double defect = max_abs(u_.adjoint() * u_ - Matrix::Identity(u_.rows(), u_.cols()));
    if (defect > tol) {
        std::ostringstream os;
        os << "basis map is not unitary (max |U^dagger U - I| = " << defect << ")";
        throw ValidationError(os.str());
    }
}

MeasurementBasisMap MeasurementBasisMap::rotation(double theta) {
    Matrix u(2, 2);
    u << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return MeasurementBasisMap(std::move(u));
}

MeasurementBasisMap MeasurementBasisMap::random(std::size_t n, Rng& rng) {
    return MeasurementBasisMap(random_unitary(n, rng));
}

double MeasurementBasisMap::transition(std::size_t i, std::size_t j) const {
    return std::norm(u_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
}

ChainState measurement_chain(std::span<const Complex> alpha, std::size_t m) {
    const Vector a = normalized_alpha(alpha, "measurement_chain");
    if (m < 1) throw ValidationError("measurement_chain: need at least one ancilla");
    const std::size_t n = alpha.size();
    if (n < 2) throw ValidationError("measurement_chain: system dimension must be at least 2");

    auto f = uniform_factorization(n, m + 1);
    require_within_memory_guard(f);

    Vector psi = embed_system(a, f);
    for (std::size_t k = 1; k <= m; ++k) psi = kernels::controlled_shift_parallel(psi, f, 0, k);

    ChainState c{StateVector::normalized(std::move(psi), f), m, n, {}};
    for (Eigen::Index i = 0; i < a.size(); ++i) c.probabilities.push_back(std::norm(a(i)));
    return c;
}

ChainEntropies chain_entropies(const ChainState& chain) {
    const auto& f = chain.psi.factorization();
    const auto ancillas = range(1, f.size());

    ChainEntropies e;
    e.s_global = subsystem_entropy(chain.psi, range(0, f.size()));
    e.s_system = subsystem_entropy(chain.psi, {0});
    if (f.restrict_to(ancillas).total() <= kExplicitReducedLimit)
        e.s_ancillas = spectral_entropy(reduced_density(chain.psi, ancillas));
    else
        e.s_ancillas = subsystem_entropy(chain.psi, ancillas);
    e.s_system_given_ancillas = e.s_global - e.s_ancillas;
    return e;
}

StateVector unwind_chain(const ChainState& chain) {
    const auto& f = chain.psi.factorization();
    Vector psi = chain.psi.amplitudes();
    for (std::size_t k = f.size() - 1; k >= 1; --k) psi = kernels::controlled_shift_parallel(psi, f, 0, k, -1);
    return StateVector::normalized(std::move(psi), f);
}

RepeatedOutcome repeat_measurement(const ChainState& chain, std::size_t m2) {
    if (m2 < 1) throw ValidationError("repeat_measurement: need at least one ancilla in the second pack");
    const std::size_t n = chain.n;
    const std::size_t m1 = chain.m;
    auto f = uniform_factorization(n, 1 + m1 + m2);
    require_within_memory_guard(f);

    // |psi> (x) |0...0> for the new pack: old joint index times N^m2.
    const std::size_t pad = f.stride(m1);
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(f.total()));
    const Vector& old = chain.psi.amplitudes();
    for (Eigen::Index k = 0; k < old.size(); ++k) psi(k * static_cast<Eigen::Index>(pad)) = old(k);
    for (std::size_t k = m1 + 1; k <= m1 + m2; ++k) psi = kernels::controlled_shift_parallel(psi, f, 0, k);

    RepeatedOutcome out{ChainState{StateVector::normalized(psi, f), m1 + m2, n, chain.probabilities}, m1, m2,
                        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), 0.0};

    std::vector<std::size_t> digits(f.size());
    for (std::size_t idx = 0; idx < f.total(); ++idx) {
        const double p = std::norm(psi(static_cast<Eigen::Index>(idx)));
        if (p == 0.0) continue;
        std::size_t rem = idx;
        for (std::size_t k = f.size(); k-- > 0;) {
            digits[k] = rem % n;
            rem /= n;
        }
        const bool pack1 = std::all_of(digits.begin() + 2, digits.begin() + 1 + static_cast<long>(m1),
                                       [&](auto d) { return d == digits[1]; });
        const bool pack2 = std::all_of(digits.begin() + 1 + static_cast<long>(m1), digits.end(),
                                       [&](auto d) { return d == digits[1 + m1]; });
        if (pack1 && pack2)
            out.joint(static_cast<Eigen::Index>(digits[1]), static_cast<Eigen::Index>(digits[1 + m1])) += p;
        else
            out.off_diagonal_mass += p;
    }
    out.off_diagonal_mass += out.joint.sum() - out.joint.trace();
    return out;
}

Matrix consecutive_marginal_closed_form(std::span<const Complex> alpha, const Matrix& u) {
    const auto n = static_cast<Eigen::Index>(alpha.size());
    Matrix rho = Matrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index ip = 0; ip < n; ++ip)
            for (Eigen::Index j = 0; j < n; ++j)
                rho(i * n + j, ip * n + j) += alpha[static_cast<std::size_t>(i)] *
                                              std::conj(alpha[static_cast<std::size_t>(ip)]) * u(i, j) *
                                              std::conj(u(ip, j));
    return rho;
}

ConsecutiveMeasurement consecutive_measurement(std::span<const Complex> alpha, const MeasurementBasisMap& basis) {
    const Vector a = normalized_alpha(alpha, "consecutive_measurement");
    const std::size_t n = basis.dim();
    if (alpha.size() != n)
        throw ValidationError("consecutive_measurement: amplitude count " + std::to_string(alpha.size()) +
                              " does not match basis dimension " + std::to_string(n));
    if (n < 2) throw ValidationError("consecutive_measurement: dimension must be at least 2");

    const auto f = uniform_factorization(n, 3);
    require_within_memory_guard(f);

    // Q measured by A in the first eigenbasis, re-expressed in the second
    // eigenbasis (coefficients U^T alpha), then measured by B.
    Vector psi = embed_system(a, f);
    psi = kernels::controlled_shift_parallel(psi, f, 0, 1);
    psi = apply_on_first(psi, f, basis.u().transpose());
    psi = kernels::controlled_shift_parallel(psi, f, 0, 2);

    StateVector qab = StateVector::normalized(std::move(psi), f);
    const std::vector<std::size_t> ab{1, 2};
    DensityMatrix rho_ab(reduced_density(qab, ab), Factorization({n, n}));

    ConsecutiveMeasurement out{std::move(qab), std::move(rho_ab), {}, 0.0, 0.0, {}, {}};
    for (Eigen::Index i = 0; i < a.size(); ++i) out.p.push_back(std::norm(a(i)));

    std::vector<double> q_mixture(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q_mixture[j] += out.p[i] * basis.transition(i, j);

    const auto rho_b = out.rho_ab.reduce({1});
    for (std::size_t j = 0; j < n; ++j)
        out.q.push_back(rho_b.matrix()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real());

    out.record.s_a = von_neumann_entropy(out.rho_ab.reduce({0}));
    out.record.s_b = von_neumann_entropy(rho_b);
    out.record.h_q = shannon_entropy(q_mixture);
    out.record.bound_ours = entropic_bound(basis);
    out.record.bound_dk = deutsch_kraus_bound(basis);
    out.s_b_given_a = conditional_entropy(out.rho_ab, 0);
    out.s_global = subsystem_entropy(out.qab, {0, 1, 2});

    const double defect = std::abs(out.record.s_a + out.s_b_given_a - out.record.h_q);
    if (defect > 1e-6) {
        std::ostringstream os;
        os << "consecutive_measurement: S(A) + S(B|A) differs from H[q] by " << defect;
        throw NumericalGuardError(os.str());
    }
    return out;
}

double entropic_bound(const MeasurementBasisMap& basis) {
    const std::size_t n = basis.dim();
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) row[j] = basis.transition(i, j);
        best = std::min(best, shannon_entropy(row));
    }
    return clean_zero(best);
}

double deutsch_kraus_bound(const MeasurementBasisMap& basis) {
    const double c = basis.u().cwiseAbs2().maxCoeff();
    return clean_zero(-std::log2(c));
}

std::vector<ThetaRow> theta_sweep(std::span<const double> grid) {
    constexpr double slack = 1e-12;
    for (double t : grid)
        if (!(t >= -slack && t <= std::numbers::pi / 2 + slack))
            throw ValidationError("theta_sweep: angles must lie in [0, pi/2]");

    std::vector<ThetaRow> rows(grid.size());
    const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for num_threads(kernels::jobs())
    for (std::int64_t k = 0; k < n; ++k) {
        const auto u = static_cast<std::size_t>(k);
        const auto basis = MeasurementBasisMap::rotation(grid[u]);
        rows[u] = {grid[u], entropic_bound(basis), deutsch_kraus_bound(basis)};
    }
    return rows;
}

}  // namespace qm
