#pragma once

// Dense Hermitian linear algebra over factored Hilbert spaces.
//
// Conventions: subsystem 0 is the most significant digit of a joint basis
// index (|i0, i1, ...> maps to i0*d1*d2*... + i1*d2*... + ...), all
// logarithms are base two, and every function is a pure function of its
// arguments.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kSupportEps = 1e-12;

// Malformed input or an input that violates a documented precondition.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A numerical guard tripped: memory ceiling, singular operator on a required
// support, or a computed quantity leaving its tolerance band.
class NumericalGuardError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class Factorization {
  public:
    Factorization() = default;
    explicit Factorization(std::vector<std::size_t> dims);

    std::size_t size() const { return dims_.size(); }
    std::size_t dim(std::size_t factor) const;
    std::size_t total() const { return total_; }
    const std::vector<std::size_t>& dims() const { return dims_; }

    // Stride of a factor's digit inside the joint index.
    std::size_t stride(std::size_t factor) const;

    // Sorted, de-duplicated copy of `factors`, validated against size().
    std::vector<std::size_t> normalize(std::span<const std::size_t> factors) const;
    std::vector<std::size_t> complement(std::span<const std::size_t> factors) const;
    Factorization restrict_to(std::span<const std::size_t> factors) const;

    // Joint-index offsets contributed by every basis configuration of the
    // given factors. The offsets of disjoint factor sets add up to the full
    // joint index, which is what the partial-trace kernels rely on.
    std::vector<std::size_t> offsets(std::span<const std::size_t> factors) const;

    bool operator==(const Factorization&) const = default;

  private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

struct Eigensystem {
    RealVector values;  // ascending
    Matrix vectors;     // columns, first nonzero component real positive
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_all(std::span<const Matrix> factors);

double hermiticity_defect(const Matrix& m);
void require_square(const Matrix& m, const char* what);
void require_hermitian(const Matrix& m, double tol, const char* what);

Matrix partial_trace(const Matrix& m, const Factorization& f, std::span<const std::size_t> keep);
Matrix partial_trace(const Matrix& m, const Factorization& f, std::initializer_list<std::size_t> keep);
Matrix partial_transpose(const Matrix& m, const Factorization& f, std::size_t subsystem);

Eigensystem herm_eig(const Matrix& m, double tol = kHermitianTol);

struct SpectralLog {
    Matrix log;
    Matrix support;  // projector onto eigenvalues >= eps
    std::size_t rank = 0;
};

// Eigenvalues below eps are mapped to log2(eps) and excluded from the
// support projector. Eigenvalues below -tol throw ValidationError.
SpectralLog matrix_log2(const Matrix& m, double eps = kSupportEps, double tol = kHermitianTol);
Matrix matrix_exp2(const Matrix& m, double tol = kHermitianTol);

// Spectral power of a PSD matrix. Zero eigenvalues stay zero for positive
// exponents; negative exponents require a positive-definite argument.
Matrix matrix_power(const Matrix& m, double exponent, double tol = kHermitianTol);

// [a^(1/n) b^(-1/n)]^n. The outer power is computed by repeated squaring when
// n is a power of two.
Matrix lie_trotter_product(const Matrix& a, const Matrix& b, std::size_t n);

// Closed form the Lie-Trotter product converges to: 2^(log2 a - log2 b).
Matrix lie_trotter_limit(const Matrix& a, const Matrix& b, double eps = kSupportEps);

double max_abs(const Matrix& m);

std::string describe_dims(const Factorization& f);

}  // namespace qm
