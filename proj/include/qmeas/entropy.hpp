#pragma once

// Density operators and the entropy calculus built on them: von Neumann
// entropies, conditional and mutual density operators, and two- and
// three-party entropy Venn diagrams. All entropies are in bits.

#include <cstddef>
#include <span>
#include <string>

#include "qmeas/linalg.hpp"

namespace qm {

inline constexpr double kDensityTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

class StateVector {
  public:
    // Throws ValidationError unless | ||amps|| - 1 | <= kNormTol.
    StateVector(Vector amplitudes, Factorization factorization);

    // Normalizes first; throws on a zero vector.
    static StateVector normalized(Vector amplitudes, Factorization factorization);

    const Vector& amplitudes() const { return amps_; }
    const Factorization& factorization() const { return f_; }

  private:
    Vector amps_;
    Factorization f_;
};

class DensityMatrix {
  public:
    // Validates Hermiticity, unit trace and positivity within `tol`, naming
    // the violated invariant in the ValidationError message.
    DensityMatrix(Matrix m, Factorization factorization, double tol = kDensityTol);

    const Matrix& matrix() const { return m_; }
    const Factorization& factorization() const { return f_; }
    std::size_t dim() const { return f_.total(); }

    DensityMatrix reduce(std::span<const std::size_t> keep) const;
    DensityMatrix reduce(std::initializer_list<std::size_t> keep) const;

    // U rho U^dagger with U acting on the full space.
    DensityMatrix transformed(const Matrix& u) const;

  private:
    Matrix m_;
    Factorization f_;
};

enum class OperatorKind { conditional, mutual };

struct ConditionalOperator {
    Matrix matrix;
    Factorization factorization;
    OperatorKind kind = OperatorKind::conditional;
    Matrix support_projector;  // support of the state the operator acts on
    Matrix log2_matrix;        // the exponent, log2 of `matrix` on the regularized support
    bool well_defined = true;  // false when support containment failed

    RealVector eigenvalues() const;
    double max_eigenvalue() const;
};

DensityMatrix density_from_pure(const StateVector& psi);

double von_neumann_entropy(const DensityMatrix& rho);
// Entropy of the spectrum of a PSD matrix, 0 log 0 = 0.
double spectral_entropy(const Matrix& m);
double shannon_entropy(std::span<const double> p);

// Entropy of the reduced state of a pure state on `keep`, evaluated from the
// smaller side of the Schmidt cut.
double subsystem_entropy(const StateVector& psi, std::span<const std::size_t> keep);
double subsystem_entropy(const StateVector& psi, std::initializer_list<std::size_t> keep);
Matrix reduced_density(const StateVector& psi, std::span<const std::size_t> keep);

// rho_{X|Y} where Y is the factor `condition_on` of a two-factor state.
ConditionalOperator conditional_density(const DensityMatrix& rho_ab, std::size_t condition_on,
                                        double eps = kSupportEps);
ConditionalOperator mutual_density(const DensityMatrix& rho_ab, double eps = kSupportEps);

struct ConditionalEntropy {
    double value = 0.0;       // S(AB) - S(Y), the value of record
    double trace_form = 0.0;  // -Tr[rho_AB log2 rho_{X|Y}]
    double diagnostic = 0.0;  // trace_form - value
    bool support_ok = true;
};

ConditionalEntropy conditional_entropy_detail(const DensityMatrix& rho_ab, std::size_t condition_on);
double conditional_entropy(const DensityMatrix& rho_ab, std::size_t condition_on);

struct MutualEntropy {
    double value = 0.0;  // S(A) + S(B) - S(AB)
    double trace_form = 0.0;
    double diagnostic = 0.0;
    bool support_ok = true;
};

MutualEntropy mutual_entropy_detail(const DensityMatrix& rho_ab);
double mutual_entropy(const DensityMatrix& rho_ab);

struct VennDiagram2 {
    double s_a = 0, s_b = 0, s_ab = 0;
    double s_a_given_b = 0, s_b_given_a = 0, s_a_mutual_b = 0;
};

struct VennDiagram3 {
    double s_a = 0, s_b = 0, s_c = 0;
    double s_ab = 0, s_ac = 0, s_bc = 0, s_abc = 0;
    double s_a_given_bc = 0, s_b_given_ac = 0, s_c_given_ab = 0;
    double s_ab_given_c = 0;  // S(A:B|C)
    double s_ac_given_b = 0;  // S(A:C|B)
    double s_bc_given_a = 0;  // S(B:C|A)
    double s_center = 0;      // S(A:B:C)
};

VennDiagram2 venn2(const DensityMatrix& rho_ab);
VennDiagram2 venn2_from_entropies(double s_a, double s_b, double s_ab);
VennDiagram3 venn3(const DensityMatrix& rho_abc);

}  // namespace qm
