#include "qmeas/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmeas/kernels.hpp"

namespace qm {

SeparabilityReport analyze(const DensityMatrix& rho_ab, double tol) {
    if (rho_ab.factorization().size() != 2) throw ValidationError("analyze: state must have exactly two factors");

    SeparabilityReport r;
    r.cond_spectrum_ab = conditional_density(rho_ab, 1).eigenvalues();
    r.cond_spectrum_ba = conditional_density(rho_ab, 0).eigenvalues();
    r.max_cond_eig_ab = r.cond_spectrum_ab.maxCoeff();
    r.max_cond_eig_ba = r.cond_spectrum_ba.maxCoeff();
    r.spectrum_classical = r.max_cond_eig_ab <= 1.0 + tol && r.max_cond_eig_ba <= 1.0 + tol;

    r.ppt_spectrum = herm_eig(partial_transpose(rho_ab.matrix(), rho_ab.factorization(), 1)).values;
    r.min_ppt_eig = r.ppt_spectrum.minCoeff();
    r.ppt_pass = r.min_ppt_eig >= -tol;

    r.cond_entropy_ab = conditional_entropy(rho_ab, 1);
    r.cond_entropy_ba = conditional_entropy(rho_ab, 0);
    r.nonneg_cond_entropy = r.cond_entropy_ab >= -kEntropySlack && r.cond_entropy_ba >= -kEntropySlack;
    return r;
}

DensityMatrix werner(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("werner: singlet fraction must lie in [0, 1]");
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = (1.0 - x) / 4.0;
    m(1, 1) = m(2, 2) = (1.0 + x) / 4.0;
    m(1, 2) = m(2, 1) = -x / 2.0;
    return DensityMatrix(std::move(m), Factorization({2, 2}));
}

std::vector<WernerRow> werner_threshold_sweep(std::span<const double> grid, double tol) {
    for (double x : grid)
        if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("werner_threshold_sweep: grid must lie in [0, 1]");

    std::vector<WernerRow> rows(grid.size());
    const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::jobs())
    for (std::int64_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        rows[u].x = grid[u];
        rows[u].report = analyze(werner(grid[u]), tol);
    }
    return rows;
}

SeparableSample sample_separable(std::pair<std::size_t, std::size_t> dims, std::size_t k, Rng& rng,
                                 bool pure_factors) {
    if (k == 0) throw ValidationError("sample_separable: need at least one component");
    const auto [da, db] = dims;
    if (da == 0 || db == 0) throw ValidationError("sample_separable: dimensions must be positive");

    auto factor = [&](std::size_t d) -> Matrix {
        if (pure_factors) {
            const Vector v = random_pure_state(d, rng);
            return v * v.adjoint();
        }
        return random_mixed_state(d, rng);
    };

    SeparableSample s;
    s.factorization = Factorization({da, db});
    s.weights = random_simplex(k, rng);
    s.state = Matrix::Zero(static_cast<Eigen::Index>(da * db), static_cast<Eigen::Index>(da * db));
    for (std::size_t c = 0; c < k; ++c) {
        s.factors_a.push_back(factor(da));
        s.factors_b.push_back(factor(db));
        s.state += s.weights[c] * kron(s.factors_a.back(), s.factors_b.back());
    }
    s.state = 0.5 * (s.state + s.state.adjoint());
    return s;
}

SeparableSample sample_separable(std::pair<std::size_t, std::size_t> dims, std::size_t k, std::uint64_t seed,
                                 bool pure_factors) {
    Rng rng = stream_for(seed, 0);
    return sample_separable(dims, k, rng, pure_factors);
}

namespace {

struct TrialResult {
    SeparableSample sample;
    SeparabilityReport report;
};

TrialResult run_trial(const ConjectureConfig& config, std::uint64_t trial) {
    Rng rng = stream_for(config.seed, trial);
    std::uniform_int_distribution<std::size_t> pick(config.k_range.first, config.k_range.second);
    const std::size_t k = pick(rng);
    TrialResult t{sample_separable(config.dims, k, rng), {}};
    t.report = analyze(t.sample.density(), config.tol);
    return t;
}

bool violates(const SeparabilityReport& r) { return !r.spectrum_classical || !r.nonneg_cond_entropy; }

void validate(const ConjectureConfig& config) {
    if (config.k_range.first == 0 || config.k_range.first > config.k_range.second)
        throw ValidationError("conjecture_trial: component range must satisfy 1 <= min <= max");
}

void fold(ConjectureOutcome& out, const ConjectureConfig& config, std::uint64_t trial, TrialResult&& t) {
    out.max_cond_eig = std::max({out.max_cond_eig, t.report.max_cond_eig_ab, t.report.max_cond_eig_ba});
    out.min_cond_entropy = std::min({out.min_cond_entropy, t.report.cond_entropy_ab, t.report.cond_entropy_ba});
    if (t.report.spectrum_classical != t.report.ppt_pass) out.criteria_disagreements.push_back(trial);
    if (violates(t.report)) out.counterexamples.push_back({config.seed, trial, std::move(t.sample), t.report});
}

}  // namespace

ConjectureOutcome conjecture_trial(const ConjectureConfig& config) {
    validate(config);
    ConjectureOutcome out;
    out.trials = config.trials;
    out.min_cond_entropy = config.trials ? std::numeric_limits<double>::infinity() : 0.0;

    const auto n = static_cast<std::int64_t>(config.trials);
    std::vector<TrialResult> flagged;
    std::vector<std::uint64_t> flagged_ids;
    std::vector<std::uint64_t> disagreements;
    double max_eig = 0.0;
    double min_entropy = out.min_cond_entropy;

#pragma omp parallel num_threads(kernels::jobs())
    {
        std::vector<std::pair<std::uint64_t, TrialResult>> local;
        std::vector<std::uint64_t> local_disagree;
        double local_max = 0.0;
        double local_min = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            auto t = run_trial(config, static_cast<std::uint64_t>(i));
            local_max = std::max({local_max, t.report.max_cond_eig_ab, t.report.max_cond_eig_ba});
            local_min = std::min({local_min, t.report.cond_entropy_ab, t.report.cond_entropy_ba});
            if (t.report.spectrum_classical != t.report.ppt_pass) local_disagree.push_back(static_cast<std::uint64_t>(i));
            if (violates(t.report)) local.emplace_back(static_cast<std::uint64_t>(i), std::move(t));
        }
#pragma omp critical
        {
            max_eig = std::max(max_eig, local_max);
            min_entropy = std::min(min_entropy, local_min);
            disagreements.insert(disagreements.end(), local_disagree.begin(), local_disagree.end());
            for (auto& [id, t] : local) {
                flagged_ids.push_back(id);
                flagged.push_back(std::move(t));
            }
        }
    }

    out.max_cond_eig = max_eig;
    out.min_cond_entropy = min_entropy;
    std::sort(disagreements.begin(), disagreements.end());
    out.criteria_disagreements = std::move(disagreements);

    std::vector<std::size_t> order(flagged.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return flagged_ids[a] < flagged_ids[b]; });
    for (auto i : order) out.counterexamples.push_back({config.seed, flagged_ids[i], std::move(flagged[i].sample), flagged[i].report});
    return out;
}

ConjectureOutcome conjecture_trial_serial(const ConjectureConfig& config) {
    validate(config);
    ConjectureOutcome out;
    out.trials = config.trials;
    out.min_cond_entropy = config.trials ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::uint64_t i = 0; i < config.trials; ++i) fold(out, config, i, run_trial(config, i));
    return out;
}

}  // namespace qm
