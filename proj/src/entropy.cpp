#include "qmeas/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmeas/kernels.hpp"

namespace qm {

namespace {

void require_two_factors(const DensityMatrix& rho, const char* what) {
    if (rho.factorization().size() != 2)
        throw ValidationError(std::string(what) + ": state must have exactly two factors, got " +
                              describe_dims(rho.factorization()));
}

void require_three_factors(const DensityMatrix& rho, const char* what) {
    if (rho.factorization().size() != 3)
        throw ValidationError(std::string(what) + ": state must have exactly three factors, got " +
                              describe_dims(rho.factorization()));
}

double entropy_of_spectrum(const RealVector& values) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        const double p = values(k);
        if (p > 0.0) s -= p * std::log2(p);
    }
    // Rounding near a pure spectrum can leave -1e-16.
    return std::clamp(s, 0.0, std::log2(static_cast<double>(std::max<Eigen::Index>(values.size(), 1))));
}

// Tolerance on Hermiticity scaled to the magnitude of the operator; logs of
// regularized kernels carry entries near log2(eps).
double scaled_tol(const Matrix& m, double tol) { return tol * std::max(1.0, max_abs(m)); }

double trace_against(const Matrix& rho, const Matrix& op) { return (rho.cwiseProduct(op.transpose())).sum().real(); }

// Trace of rho restricted to the complement of `support`.
double weight_outside(const Matrix& rho, const Matrix& support) {
    const Matrix outside = Matrix::Identity(rho.rows(), rho.cols()) - support;
    return (outside * rho * outside).trace().real();
}

}  // namespace

StateVector::StateVector(Vector amplitudes, Factorization factorization)
    : amps_(std::move(amplitudes)), f_(std::move(factorization)) {
    if (static_cast<std::size_t>(amps_.size()) != f_.total())
        throw ValidationError("state vector length " + std::to_string(amps_.size()) + " does not match factorization " +
                              describe_dims(f_));
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "state vector is not normalized (norm = " << norm << ")";
        throw ValidationError(os.str());
    }
}

StateVector StateVector::normalized(Vector amplitudes, Factorization factorization) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) throw ValidationError("cannot normalize a zero state vector");
    return StateVector(amplitudes / norm, std::move(factorization));
}

DensityMatrix::DensityMatrix(Matrix m, Factorization factorization, double tol)
    : m_(std::move(m)), f_(std::move(factorization)) {
    require_square(m_, "density matrix");
    if (static_cast<std::size_t>(m_.rows()) != f_.total())
        throw ValidationError("density matrix dimension " + std::to_string(m_.rows()) +
                              " does not match factorization " + describe_dims(f_));
    std::ostringstream os;
    const double defect = hermiticity_defect(m_);
    if (defect > tol) {
        os << "density matrix violates Hermiticity: max |rho - rho^dagger| = " << defect;
        throw ValidationError(os.str());
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
        os << "density matrix violates unit trace: trace = " << tr.real();
        if (tr.imag() != 0.0) os << (tr.imag() < 0 ? "" : "+") << tr.imag() << "i";
        throw ValidationError(os.str());
    }
    m_ = 0.5 * (m_ + m_.adjoint());
    const auto es = herm_eig(m_, tol);
    if (es.values(0) < -tol) {
        os << "density matrix violates positivity: eigenvalue " << es.values(0);
        throw ValidationError(os.str());
    }
}

DensityMatrix DensityMatrix::reduce(std::span<const std::size_t> keep) const {
    const auto kept = f_.normalize(keep);
    return DensityMatrix(partial_trace(m_, f_, kept), f_.restrict_to(kept));
}

DensityMatrix DensityMatrix::reduce(std::initializer_list<std::size_t> keep) const {
    return reduce(std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityMatrix DensityMatrix::transformed(const Matrix& u) const {
    return DensityMatrix(u * m_ * u.adjoint(), f_, 1e-9);
}

RealVector ConditionalOperator::eigenvalues() const {
    const auto es = herm_eig(log2_matrix, scaled_tol(log2_matrix, 1e-9));
    return es.values.unaryExpr([](double x) { return std::exp2(x); });
}

double ConditionalOperator::max_eigenvalue() const { return eigenvalues().maxCoeff(); }

DensityMatrix density_from_pure(const StateVector& psi) {
    const Vector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint(), psi.factorization());
}

double spectral_entropy(const Matrix& m) {
    const auto es = herm_eig(m, scaled_tol(m, 1e-9));
    return entropy_of_spectrum(es.values);
}

double von_neumann_entropy(const DensityMatrix& rho) { return spectral_entropy(rho.matrix()); }

double shannon_entropy(std::span<const double> p) {
    double s = 0.0;
    for (double x : p)
        if (x > 0.0) s -= x * std::log2(x);
    return std::max(s, 0.0);
}

Matrix reduced_density(const StateVector& psi, std::span<const std::size_t> keep) {
    return kernels::reduced_from_pure_parallel(psi.amplitudes(), psi.factorization(), keep);
}

double subsystem_entropy(const StateVector& psi, std::span<const std::size_t> keep) {
    const auto& f = psi.factorization();
    const auto kept = f.normalize(keep);
    const auto rest = f.complement(kept);
    if (kept.empty() || rest.empty()) {
        // Spectrum of |psi><psi| is {1, 0, ...}; evaluate it from the 1x1 Gram matrix.
        return spectral_entropy(psi.amplitudes().adjoint() * psi.amplitudes());
    }
    const bool keep_smaller = f.restrict_to(kept).total() <= f.restrict_to(rest).total();
    return spectral_entropy(reduced_density(psi, keep_smaller ? kept : rest));
}

double subsystem_entropy(const StateVector& psi, std::initializer_list<std::size_t> keep) {
    return subsystem_entropy(psi, std::span<const std::size_t>(keep.begin(), keep.size()));
}

ConditionalOperator conditional_density(const DensityMatrix& rho_ab, std::size_t condition_on, double eps) {
    require_two_factors(rho_ab, "conditional_density");
    const auto& f = rho_ab.factorization();
    f.dim(condition_on);

    const Matrix marginal = rho_ab.reduce({condition_on}).matrix();
    const Matrix other_id = Matrix::Identity(static_cast<Eigen::Index>(f.dim(1 - condition_on)),
                                             static_cast<Eigen::Index>(f.dim(1 - condition_on)));
    const Matrix lifted = condition_on == 1 ? kron(other_id, marginal) : kron(marginal, other_id);

    const auto log_joint = matrix_log2(rho_ab.matrix(), eps);
    const auto log_cond = matrix_log2(lifted, eps);

    ConditionalOperator op;
    op.factorization = f;
    op.kind = OperatorKind::conditional;
    op.support_projector = log_joint.support;
    op.log2_matrix = log_joint.log - log_cond.log;
    op.log2_matrix = 0.5 * (op.log2_matrix + op.log2_matrix.adjoint());
    op.matrix = matrix_exp2(op.log2_matrix, scaled_tol(op.log2_matrix, 1e-9));
    op.well_defined = weight_outside(rho_ab.matrix(), log_cond.support) <= 1e-9;
    return op;
}

ConditionalOperator mutual_density(const DensityMatrix& rho_ab, double eps) {
    require_two_factors(rho_ab, "mutual_density");
    const Matrix product = kron(rho_ab.reduce({0}).matrix(), rho_ab.reduce({1}).matrix());

    const auto log_joint = matrix_log2(rho_ab.matrix(), eps);
    const auto log_product = matrix_log2(product, eps);

    ConditionalOperator op;
    op.factorization = rho_ab.factorization();
    op.kind = OperatorKind::mutual;
    op.support_projector = log_joint.support;
    op.log2_matrix = log_product.log - log_joint.log;
    op.log2_matrix = 0.5 * (op.log2_matrix + op.log2_matrix.adjoint());
    op.matrix = matrix_exp2(op.log2_matrix, scaled_tol(op.log2_matrix, 1e-9));
    op.well_defined = weight_outside(rho_ab.matrix(), log_product.support) <= 1e-9;
    return op;
}

ConditionalEntropy conditional_entropy_detail(const DensityMatrix& rho_ab, std::size_t condition_on) {
    require_two_factors(rho_ab, "conditional_entropy");
    const auto op = conditional_density(rho_ab, condition_on);

    ConditionalEntropy out;
    out.value = von_neumann_entropy(rho_ab) - von_neumann_entropy(rho_ab.reduce({condition_on}));
    out.support_ok = op.well_defined;
    out.trace_form = op.well_defined ? -trace_against(rho_ab.matrix(), op.log2_matrix) : out.value;
    out.diagnostic = out.trace_form - out.value;
    return out;
}

double conditional_entropy(const DensityMatrix& rho_ab, std::size_t condition_on) {
    return conditional_entropy_detail(rho_ab, condition_on).value;
}

MutualEntropy mutual_entropy_detail(const DensityMatrix& rho_ab) {
    require_two_factors(rho_ab, "mutual_entropy");
    const auto op = mutual_density(rho_ab);

    MutualEntropy out;
    out.value = von_neumann_entropy(rho_ab.reduce({0})) + von_neumann_entropy(rho_ab.reduce({1})) -
                von_neumann_entropy(rho_ab);
    out.support_ok = op.well_defined;
    out.trace_form = op.well_defined ? -trace_against(rho_ab.matrix(), op.log2_matrix) : out.value;
    out.diagnostic = out.trace_form - out.value;
    return out;
}

double mutual_entropy(const DensityMatrix& rho_ab) { return mutual_entropy_detail(rho_ab).value; }

VennDiagram2 venn2_from_entropies(double s_a, double s_b, double s_ab) {
    VennDiagram2 v;
    v.s_a = s_a;
    v.s_b = s_b;
    v.s_ab = s_ab;
    v.s_a_given_b = s_ab - s_b;
    v.s_b_given_a = s_ab - s_a;
    v.s_a_mutual_b = s_a + s_b - s_ab;
    return v;
}

VennDiagram2 venn2(const DensityMatrix& rho_ab) {
    require_two_factors(rho_ab, "venn2");
    return venn2_from_entropies(von_neumann_entropy(rho_ab.reduce({0})), von_neumann_entropy(rho_ab.reduce({1})),
                                von_neumann_entropy(rho_ab));
}

VennDiagram3 venn3(const DensityMatrix& rho_abc) {
    require_three_factors(rho_abc, "venn3");
    VennDiagram3 v;
    v.s_a = von_neumann_entropy(rho_abc.reduce({0}));
    v.s_b = von_neumann_entropy(rho_abc.reduce({1}));
    v.s_c = von_neumann_entropy(rho_abc.reduce({2}));
    v.s_ab = von_neumann_entropy(rho_abc.reduce({0, 1}));
    v.s_ac = von_neumann_entropy(rho_abc.reduce({0, 2}));
    v.s_bc = von_neumann_entropy(rho_abc.reduce({1, 2}));
    v.s_abc = von_neumann_entropy(rho_abc);

    v.s_a_given_bc = v.s_abc - v.s_bc;
    v.s_b_given_ac = v.s_abc - v.s_ac;
    v.s_c_given_ab = v.s_abc - v.s_ab;
    v.s_ab_given_c = v.s_ac + v.s_bc - v.s_c - v.s_abc;
    v.s_ac_given_b = v.s_ab + v.s_bc - v.s_b - v.s_abc;
    v.s_bc_given_a = v.s_ab + v.s_ac - v.s_a - v.s_abc;
    v.s_center = v.s_a + v.s_b + v.s_c - v.s_ab - v.s_ac - v.s_bc + v.s_abc;
    return v;
}

}  // namespace qm
