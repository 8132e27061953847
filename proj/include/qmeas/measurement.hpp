#pragma once

// Unitary measurement: a system Q is "measured" by entangling it with ancillas
// through the discrete shift |i, k> -> |i, (k + i) mod N>. Nothing collapses;
// probabilities show up only in reduced states that ignore Q.

#include <cstddef>
#include <span>
#include <vector>

#include "qmeas/entropy.hpp"
#include "qmeas/random.hpp"

namespace qm {

inline constexpr std::size_t kMaxQubitsEquivalent = 20;

// Permutation unitary on system (x) ancilla, both of dimension n.
Matrix cnot_general(std::size_t n);

// Throws NumericalGuardError when prod(dims) exceeds 2^kMaxQubitsEquivalent.
void require_within_memory_guard(const Factorization& f);

// U_ij = <b_j|a_i>: row i expands the i-th eigenstate of the first observable
// in the eigenbasis of the second.
class MeasurementBasisMap {
  public:
    explicit MeasurementBasisMap(Matrix u, double tol = 1e-10);

    // 2x2 real rotation with |U_11|^2 = |U_22|^2 = cos^2(theta).
    static MeasurementBasisMap rotation(double theta);
    static MeasurementBasisMap random(std::size_t n, Rng& rng);

    const Matrix& u() const { return u_; }
    std::size_t dim() const { return static_cast<std::size_t>(u_.rows()); }
    // q_{j|i} = |U_ij|^2
    double transition(std::size_t i, std::size_t j) const;

  private:
    Matrix u_;
};

struct ChainState {
    StateVector psi;  // factor 0 is Q, factors 1..m the ancillas
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<double> probabilities;  // |alpha_i|^2
};

ChainState measurement_chain(std::span<const Complex> alpha, std::size_t m);

struct ChainEntropies {
    double s_global = 0.0;
    double s_system = 0.0;
    double s_ancillas = 0.0;
    double s_system_given_ancillas = 0.0;
};

ChainEntropies chain_entropies(const ChainState& chain);

// Apply the inverse shifts in reverse order; returns Q (x) |0...0>.
StateVector unwind_chain(const ChainState& chain);

struct RepeatedOutcome {
    ChainState extended;                    // original ancillas then the second pack
    std::size_t first_pack = 0;
    std::size_t second_pack = 0;
    Eigen::MatrixXd joint;                  // joint(i, j): pack 1 reads i and pack 2 reads j
    double off_diagonal_mass = 0.0;         // includes configurations where a pack disagrees internally
};

RepeatedOutcome repeat_measurement(const ChainState& chain, std::size_t m2);

struct UncertaintyRecord {
    double s_a = 0.0;
    double s_b = 0.0;
    double h_q = 0.0;  // H[q_j], q_j = sum_i p_i |U_ij|^2
    double bound_ours = 0.0;
    double bound_dk = 0.0;
};

struct ConsecutiveMeasurement {
    StateVector qab;  // factors: Q, A, B
    DensityMatrix rho_ab;
    UncertaintyRecord record;
    double s_b_given_a = 0.0;
    double s_global = 0.0;
    std::vector<double> p;  // |alpha_i|^2
    std::vector<double> q;  // read off rho_B
};

ConsecutiveMeasurement consecutive_measurement(std::span<const Complex> alpha, const MeasurementBasisMap& basis);

// Closed-form marginal on AB: sum alpha_i alpha*_i' U_ij U*_i'j |i,j><i',j|.
Matrix consecutive_marginal_closed_form(std::span<const Complex> alpha, const Matrix& u);

// min_i H[|U_ij|^2]_{i fixed}
double entropic_bound(const MeasurementBasisMap& basis);
// -log2 max_ij |U_ij|^2
double deutsch_kraus_bound(const MeasurementBasisMap& basis);

struct ThetaRow {
    double theta = 0.0;
    double bound_ours = 0.0;
    double bound_dk = 0.0;
};

std::vector<ThetaRow> theta_sweep(std::span<const double> grid);

}  // namespace qm
