#include "qmeas/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qmeas/kernels.hpp"

namespace qm {

Factorization::Factorization(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ValidationError("factorization needs at least one factor");
    for (auto d : dims_) {
        if (d == 0) throw ValidationError("factor dimensions must be positive");
        total_ *= d;
    }
}

std::size_t Factorization::dim(std::size_t factor) const {
    if (factor >= dims_.size())
        throw ValidationError("subsystem index " + std::to_string(factor) + " out of range for " +
                              std::to_string(dims_.size()) + " factors");
    return dims_[factor];
}

std::size_t Factorization::stride(std::size_t factor) const {
    dim(factor);
    std::size_t s = 1;
    for (std::size_t k = factor + 1; k < dims_.size(); ++k) s *= dims_[k];
    return s;
}

std::vector<std::size_t> Factorization::normalize(std::span<const std::size_t> factors) const {
    std::vector<std::size_t> out(factors.begin(), factors.end());
    for (auto f : out) dim(f);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> Factorization::complement(std::span<const std::size_t> factors) const {
    const auto in = normalize(factors);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dims_.size(); ++k)
        if (!std::binary_search(in.begin(), in.end(), k)) out.push_back(k);
    return out;
}

Factorization Factorization::restrict_to(std::span<const std::size_t> factors) const {
    const auto in = normalize(factors);
    std::vector<std::size_t> d;
    for (auto k : in) d.push_back(dims_[k]);
    if (d.empty()) d.push_back(1);
    return Factorization(std::move(d));
}

std::vector<std::size_t> Factorization::offsets(std::span<const std::size_t> factors) const {
    const auto in = normalize(factors);
    std::vector<std::size_t> out{0};
    for (auto k : in) {
        const auto s = stride(k);
        std::vector<std::size_t> next;
        next.reserve(out.size() * dims_[k]);
        for (auto base : out)
            for (std::size_t digit = 0; digit < dims_[k]; ++digit) next.push_back(base + digit * s);
        out = std::move(next);
    }
    return out;
}

std::string describe_dims(const Factorization& f) {
    std::ostringstream os;
    os << '[';
    for (std::size_t k = 0; k < f.size(); ++k) os << (k ? "," : "") << f.dims()[k];
    os << ']';
    return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) { return kernels::kron_parallel(a, b); }

Matrix kron_all(std::span<const Matrix> factors) {
    if (factors.empty()) return Matrix::Identity(1, 1);
    Matrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
    return out;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw ValidationError(std::string(what) + ": matrix must be square, got " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()));
}

void require_hermitian(const Matrix& m, double tol, const char* what) {
    require_square(m, what);
    const double defect = hermiticity_defect(m);
    if (defect > tol) {
        std::ostringstream os;
        os << what << ": matrix is not Hermitian (max |m - m^dagger| = " << defect << " > " << tol << ")";
        throw ValidationError(os.str());
    }
}

namespace {

void require_matches(const Matrix& m, const Factorization& f, const char* what) {
    require_square(m, what);
    if (static_cast<std::size_t>(m.rows()) != f.total())
        throw ValidationError(std::string(what) + ": matrix dimension " + std::to_string(m.rows()) +
                              " does not match factorization " + describe_dims(f));
}

Matrix from_spectrum(const Eigensystem& es, const RealVector& mapped) {
    return es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

}  // namespace

Matrix partial_trace(const Matrix& m, const Factorization& f, std::span<const std::size_t> keep) {
    require_matches(m, f, "partial_trace");
    f.normalize(keep);
    return kernels::partial_trace_parallel(m, f, keep);
}

Matrix partial_trace(const Matrix& m, const Factorization& f, std::initializer_list<std::size_t> keep) {
    return partial_trace(m, f, std::span<const std::size_t>(keep.begin(), keep.size()));
}

Matrix partial_transpose(const Matrix& m, const Factorization& f, std::size_t subsystem) {
    require_matches(m, f, "partial_transpose");
    if (f.size() != 2) throw ValidationError("partial_transpose: exactly two factors required");
    f.dim(subsystem);

    const auto da = static_cast<Eigen::Index>(f.dim(0));
    const auto db = static_cast<Eigen::Index>(f.dim(1));
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index ia = 0; ia < da; ++ia)
        for (Eigen::Index ib = 0; ib < db; ++ib)
            for (Eigen::Index ja = 0; ja < da; ++ja)
                for (Eigen::Index jb = 0; jb < db; ++jb) {
                    const Eigen::Index row = ia * db + ib, col = ja * db + jb;
                    if (subsystem == 0)
                        out(row, col) = m(ja * db + ib, ia * db + jb);
                    else
                        out(row, col) = m(ia * db + jb, ja * db + ib);
                }
    return out;
}

Eigensystem herm_eig(const Matrix& m, double tol) {
    require_hermitian(m, tol, "herm_eig");
    // Symmetrize so round-off in the input cannot bias the solver.
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericalGuardError("herm_eig: eigensolver did not converge");

    Eigensystem es{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index c = 0; c < es.vectors.cols(); ++c) {
        auto col = es.vectors.col(c);
        for (Eigen::Index r = 0; r < col.size(); ++r) {
            if (std::abs(col(r)) > 1e-12) {
                col *= std::conj(col(r)) / std::abs(col(r));
                col(r) = Complex(col(r).real(), 0.0);
                break;
            }
        }
    }
    return es;
}

SpectralLog matrix_log2(const Matrix& m, double eps, double tol) {
    const auto es = herm_eig(m, tol);
    const double floor_log = std::log2(eps);
    RealVector mapped(es.values.size());
    RealVector support(es.values.size());
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        const double lambda = es.values(k);
        if (lambda < -tol) {
            std::ostringstream os;
            os << "matrix_log2: negative eigenvalue " << lambda << " (operator is not positive semidefinite)";
            throw ValidationError(os.str());
        }
        if (lambda >= eps) {
            mapped(k) = std::log2(lambda);
            support(k) = 1.0;
            ++rank;
        } else {
            mapped(k) = floor_log;
            support(k) = 0.0;
        }
    }
    return SpectralLog{from_spectrum(es, mapped), from_spectrum(es, support), rank};
}

Matrix matrix_exp2(const Matrix& m, double tol) {
    const auto es = herm_eig(m, tol);
    RealVector mapped = es.values.unaryExpr([](double x) { return std::exp2(x); });
    return from_spectrum(es, mapped);
}

Matrix matrix_power(const Matrix& m, double exponent, double tol) {
    const auto es = herm_eig(m, tol);
    RealVector mapped(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        const double lambda = es.values(k);
        if (lambda < -tol) throw ValidationError("matrix_power: operator is not positive semidefinite");
        if (lambda <= tol) {
            if (exponent < 0.0) throw NumericalGuardError("matrix_power: negative power of a singular operator");
            mapped(k) = exponent == 0.0 ? 1.0 : 0.0;
        } else {
            mapped(k) = std::pow(lambda, exponent);
        }
    }
    return from_spectrum(es, mapped);
}

Matrix lie_trotter_product(const Matrix& a, const Matrix& b, std::size_t n) {
    if (n == 0) throw ValidationError("lie_trotter_product: n must be positive");
    require_square(a, "lie_trotter_product");
    if (a.rows() != b.rows() || b.rows() != b.cols())
        throw ValidationError("lie_trotter_product: operands must have equal square shapes");

    const double step = 1.0 / static_cast<double>(n);
    const Matrix factor = matrix_power(a, step) * matrix_power(b, -step);

    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix base = factor;
    for (std::size_t e = n; e > 0; e >>= 1) {
        if (e & 1U) result = result * base;
        if (e > 1) base = base * base;
    }
    return result;
}

Matrix lie_trotter_limit(const Matrix& a, const Matrix& b, double eps) {
    const auto la = matrix_log2(a, eps);
    const auto lb = matrix_log2(b, eps);
    if (lb.rank < static_cast<std::size_t>(b.rows()))
        throw NumericalGuardError("lie_trotter_limit: second operand is singular");
    return matrix_exp2(la.log - lb.log, 1e-8);
}

}  // namespace qm
