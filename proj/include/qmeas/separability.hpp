#pragma once

// Separability diagnostics for bipartite states: the conditional-spectrum
// criterion (every eigenvalue of rho_{A|B} and rho_{B|A} at most one), the
// partial-transpose criterion, the Werner family, and a randomized harness
// over sampled separable states.

#include <cstdint>
#include <utility>
#include <vector>

#include "qmeas/entropy.hpp"
#include "qmeas/random.hpp"

namespace qm {

inline constexpr double kCriterionTol = 1e-8;
inline constexpr double kEntropySlack = 1e-9;

struct SeparabilityReport {
    double max_cond_eig_ab = 0.0;  // max eigenvalue of rho_{A|B}
    double max_cond_eig_ba = 0.0;  // max eigenvalue of rho_{B|A}
    bool spectrum_classical = false;
    double min_ppt_eig = 0.0;
    bool ppt_pass = false;
    double cond_entropy_ab = 0.0;  // S(A|B)
    double cond_entropy_ba = 0.0;  // S(B|A)
    bool nonneg_cond_entropy = false;
    RealVector cond_spectrum_ab;
    RealVector cond_spectrum_ba;
    RealVector ppt_spectrum;
};

SeparabilityReport analyze(const DensityMatrix& rho_ab, double tol = kCriterionTol);

// x * |singlet><singlet| + (1 - x) * I/4, 0 <= x <= 1.
DensityMatrix werner(double x);

struct WernerRow {
    double x = 0.0;
    SeparabilityReport report;
};

// Rows come back in grid order; evaluation is parallel over grid points.
std::vector<WernerRow> werner_threshold_sweep(std::span<const double> grid, double tol = kCriterionTol);

struct SeparableSample {
    Matrix state;
    Factorization factorization;
    std::vector<double> weights;
    std::vector<Matrix> factors_a;
    std::vector<Matrix> factors_b;

    DensityMatrix density() const { return DensityMatrix(state, factorization); }
};

// sum_k w_k rho_A^(k) (x) rho_B^(k), Dirichlet(1, ..., 1) weights, each factor
// an induced-measure mixed state (`pure_factors` switches to random pure
// factors).
SeparableSample sample_separable(std::pair<std::size_t, std::size_t> dims, std::size_t k, Rng& rng,
                                 bool pure_factors = false);
SeparableSample sample_separable(std::pair<std::size_t, std::size_t> dims, std::size_t k, std::uint64_t seed,
                                 bool pure_factors = false);

struct Counterexample {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    SeparableSample sample;
    SeparabilityReport report;
};

struct ConjectureOutcome {
    std::uint64_t trials = 0;
    double max_cond_eig = 0.0;        // largest conditional eigenvalue seen
    double min_cond_entropy = 0.0;    // smallest conditional entropy seen
    std::vector<Counterexample> counterexamples;
    // Trials where the spectrum and partial-transpose verdicts differ.
    std::vector<std::uint64_t> criteria_disagreements;
};

struct ConjectureConfig {
    std::uint64_t trials = 0;
    std::pair<std::size_t, std::size_t> dims{2, 2};
    std::pair<std::size_t, std::size_t> k_range{1, 4};
    std::uint64_t seed = 0;
    double tol = kCriterionTol;
};

// Trial i draws its own stream from (seed, i); the outcome does not depend on
// the number of threads.
ConjectureOutcome conjecture_trial(const ConjectureConfig& config);
ConjectureOutcome conjecture_trial_serial(const ConjectureConfig& config);

}  // namespace qm
