// Acceptance checks. One line per criterion; exit status is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qmeas/experiments.hpp"
#include "qmeas/measurement.hpp"
#include "qmeas/presets.hpp"
#include "qmeas/separability.hpp"

using namespace qm;

namespace {

constexpr double kVennTol = 1e-9;
constexpr double kGhzTol = 1e-7;
constexpr double kWernerSpectrumTol = 1e-10;
constexpr double kWernerCriterionTol = 1e-8;
constexpr double kBoundTol = 1e-9;
constexpr double kConsecutiveTol = 1e-6;
constexpr double kChainTol = 1e-7;
constexpr double kOffDiagonalTol = 1e-10;
constexpr double kPropertySlack = 1e-9;
constexpr double kBayesTol = 1e-7;
constexpr double kConjectureEigTol = 1e-8;
constexpr double kConjectureEntropyTol = 1e-9;
constexpr double kTaggedMax = 0.01;
constexpr double kErasedMin = 0.99;
constexpr double kPostSelectionTol = 1e-10;
constexpr double kFidelityTol = 1e-10;
constexpr double kTrotterMax = 1e-4;
constexpr double kMonotoneSlack = 1e-12;

constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
    bool pass = true;
    std::string detail;
};

double h_bits(const std::vector<double>& p) {
    double s = 0;
    for (double x : p)
        if (x > 0) s -= x * std::log(x) / std::numbers::ln2;
    return s;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<Complex> random_alpha(std::size_t n, Rng& rng) {
    const Vector v = random_pure_state(n, rng);
    return {v.data(), v.data() + v.size()};
}

Verdict venn_golden() {
    struct Case {
        const char* name;
        double a_given_b, mutual, b_given_a;
    };
    const Case cases[] = {{"case1", 1, 0, 1}, {"case2", 0, 1, 0}, {"case3", -1, 2, -1}};
    double worst = 0;
    for (const auto& c : cases) {
        const auto v = venn2(preset(c.name).density);
        worst = std::max({worst, std::abs(v.s_a_given_b - c.a_given_b), std::abs(v.s_a_mutual_b - c.mutual),
                          std::abs(v.s_b_given_a - c.b_given_a)});
    }
    return {worst <= kVennTol, "max deviation " + fmt(worst)};
}

Verdict ghz_ternary() {
    const auto rho = preset("ghz").density;
    const auto v = venn3(rho);
    double worst = 0;
    for (double c : {v.s_a_given_bc, v.s_b_given_ac, v.s_c_given_ab}) worst = std::max(worst, std::abs(c + 1));
    for (double c : {v.s_ab_given_c, v.s_ac_given_b, v.s_bc_given_a}) worst = std::max(worst, std::abs(c - 1));
    worst = std::max(worst, std::abs(v.s_center));
    // Tracing out one factor leaves the classically correlated pair (1, 1, 1, 0, 0, 1).
    for (const std::vector<std::size_t>& keep : {std::vector<std::size_t>{0, 1}, {0, 2}, {1, 2}}) {
        const auto p = venn2(rho.reduce(keep));
        worst = std::max({worst, std::abs(p.s_a - 1), std::abs(p.s_b - 1), std::abs(p.s_ab - 1),
                          std::abs(p.s_a_given_b), std::abs(p.s_b_given_a), std::abs(p.s_a_mutual_b - 1)});
    }
    return {worst <= kGhzTol, "max deviation " + fmt(worst)};
}

Verdict werner_threshold() {
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(k / 100.0);
    grid.push_back(1.0 / 3.0);
    double worst = 0;
    bool verdicts_ok = true;
    for (double x : grid) {
        const auto rho = werner(x);
        auto eig = conditional_density(rho, 1).eigenvalues();
        std::sort(eig.data(), eig.data() + eig.size());
        std::vector<double> expect{(1 - x) / 2, (1 - x) / 2, (1 - x) / 2, (1 + 3 * x) / 2};
        std::sort(expect.begin(), expect.end());
        for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(eig(k) - expect[static_cast<std::size_t>(k)]));
        const auto r = analyze(rho, kWernerCriterionTol);
        const bool separable = x <= 1.0 / 3.0;
        if (r.spectrum_classical != separable || r.ppt_pass != separable) verdicts_ok = false;
    }
    return {worst <= kWernerSpectrumTol && verdicts_ok,
            "spectrum deviation " + fmt(worst) + ", verdicts " + (verdicts_ok ? "flip at 1/3" : "WRONG")};
}

Verdict uncertainty_bounds() {
    const double pi = std::numbers::pi;
    std::vector<double> grid;
    for (int k = 0; k <= 200; ++k) grid.push_back(k * (pi / 2) / 200);
    const auto rows = theta_sweep(grid);
    double worst = 0;
    bool ordering = true, equality_ok = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const double c2 = std::cos(grid[k]) * std::cos(grid[k]), s2 = std::sin(grid[k]) * std::sin(grid[k]);
        const double ours = h_bits({c2, s2});
        const double dk = -std::log2(std::max(c2, s2));
        worst = std::max({worst, std::abs(rows[k].bound_ours - ours), std::abs(rows[k].bound_dk - dk)});
        const double gap = rows[k].bound_ours - rows[k].bound_dk;
        if (gap < -kBoundTol) ordering = false;
        const bool special = k == 0 || k == 100 || k == 200;
        if (special != (std::abs(gap) <= kBoundTol)) equality_ok = false;
    }
    return {worst <= kBoundTol && ordering && equality_ok,
            "closed-form deviation " + fmt(worst) + (ordering ? "" : ", ordering violated") +
                (equality_ok ? "" : ", equality set wrong")};
}

Verdict consecutive_identity() {
    double worst = 0;
    int bound_violations = 0;
    std::string error;
    for (std::uint64_t t = 0; t < 500; ++t) {
        Rng rng = stream_for(kSeed + 5, t);
        const std::size_t n = 2 + t % 4;
        const auto alpha = random_alpha(n, rng);
        const auto basis = MeasurementBasisMap::random(n, rng);
        std::vector<double> q(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) q[j] += std::norm(alpha[i]) * std::norm(basis.u()(i, j));
        try {
            const auto m = consecutive_measurement(alpha, basis);
            worst = std::max(worst, std::abs(m.record.s_a + m.s_b_given_a - h_bits(q)));
            if (m.record.s_a + m.record.s_b < entropic_bound(basis) - kBoundTol) ++bound_violations;
        } catch (const std::exception& e) {
            error = e.what();
            worst = INFINITY;
        }
    }
    return {worst <= kConsecutiveTol && bound_violations == 0,
            "max |S(A)+S(B|A)-H[q]| " + fmt(worst) + ", bound violations " + std::to_string(bound_violations) +
                (error.empty() ? "" : ", error: " + error)};
}

Verdict chain_ledger() {
    double worst = 0, worst_off = 0;
    int draws = 0;
    for (std::size_t n : {2u, 3u}) {
        for (std::size_t m = 1; m <= 6; ++m) {
            Rng rng = stream_for(kSeed + 6, n * 10 + m);
            const auto alpha = random_alpha(n, rng);
            std::vector<double> p;
            for (const auto& a : alpha) p.push_back(std::norm(a));
            const auto chain = measurement_chain(alpha, m);
            const auto e = chain_entropies(chain);
            worst = std::max({worst, std::abs(e.s_global), std::abs(e.s_ancillas - h_bits(p)),
                              std::abs(e.s_system_given_ancillas + e.s_ancillas)});
            const auto rep = repeat_measurement(chain, 2);
            double off = 0;
            for (Eigen::Index i = 0; i < rep.joint.rows(); ++i)
                for (Eigen::Index j = 0; j < rep.joint.cols(); ++j)
                    if (i != j) off += rep.joint(i, j);
            off = std::max(off, rep.off_diagonal_mass);
            worst_off = std::max(worst_off, off);
            for (std::size_t i = 0; i < n; ++i)
                worst_off = std::max(worst_off, std::abs(rep.joint(static_cast<Eigen::Index>(i),
                                                                   static_cast<Eigen::Index>(i)) - p[i]));
            ++draws;
        }
    }
    return {worst <= kChainTol && worst_off < kOffDiagonalTol,
            std::to_string(draws) + " chains, entropy deviation " + fmt(worst) + ", off-diagonal mass " +
                fmt(worst_off)};
}

Verdict property_suite() {
    constexpr int kStates = 1000;
    int araki = 0, bayes = 0, ssa = 0, unitary = 0, center = 0;
    for (std::uint64_t t = 0; t < kStates; ++t) {
        Rng rng = stream_for(kSeed + 7, t);
        const DensityMatrix rho(random_mixed_state(6, rng), Factorization({2, 3}));
        const auto v = venn2(rho);
        if (std::abs(v.s_a - v.s_b) > v.s_ab + kPropertySlack || v.s_ab > v.s_a + v.s_b + kPropertySlack) ++araki;
        const double s_ab = von_neumann_entropy(rho);
        const double direct_a_given_b = s_ab - von_neumann_entropy(rho.reduce({1}));
        const double direct_b_given_a = s_ab - von_neumann_entropy(rho.reduce({0}));
        if (std::abs(v.s_ab - (v.s_a + v.s_b_given_a)) > kBayesTol ||
            std::abs(v.s_ab - (v.s_b + v.s_a_given_b)) > kBayesTol ||
            std::abs(v.s_a_given_b - direct_a_given_b) > kBayesTol ||
            std::abs(v.s_b_given_a - direct_b_given_a) > kBayesTol)
            ++bayes;

        const Matrix u = random_unitary(6, rng);
        if (std::abs(von_neumann_entropy(rho.transformed(u)) - s_ab) > kPropertySlack) ++unitary;

        const StateVector four(random_pure_state(16, rng), Factorization({2, 2, 2, 2}));
        const DensityMatrix abc(reduced_density(four, std::vector<std::size_t>{0, 1, 2}), Factorization({2, 2, 2}));
        const auto v3 = venn3(abc);
        if (std::min({v3.s_ab_given_c, v3.s_ac_given_b, v3.s_bc_given_a}) < -kPropertySlack) ++ssa;

        const StateVector pure(random_pure_state(12, rng), Factorization({2, 3, 2}));
        if (std::abs(venn3(density_from_pure(pure)).s_center) > kChainTol) ++center;
    }
    const int total = araki + bayes + ssa + unitary + center;
    std::ostringstream d;
    d << kStates << " states each; violations araki-lieb=" << araki << " bayes=" << bayes << " ssa=" << ssa
      << " unitary=" << unitary << " center=" << center;
    return {total == 0, d.str()};
}

Verdict conjecture() {
    ConjectureConfig cfg;
    cfg.trials = 10000;
    cfg.dims = {2, 2};
    cfg.seed = kSeed + 8;
    cfg.tol = kConjectureEigTol;
    const auto out = conjecture_trial(cfg);
    const bool ok = out.counterexamples.empty() && out.max_cond_eig <= 1 + kConjectureEigTol &&
                    out.min_cond_entropy >= -kConjectureEntropyTol;
    return {ok, std::to_string(out.trials) + " trials, max eigenvalue " + fmt(out.max_cond_eig) +
                    ", min conditional entropy " + fmt(out.min_cond_entropy) + ", counterexamples " +
                    std::to_string(out.counterexamples.size())};
}

Verdict eraser() {
    const auto g = EraserGeometry::defaults();
    const auto tagged = quantum_eraser(EraserMode::tagged, g);
    const auto erased = quantum_eraser(EraserMode::erased, g);
    const auto recorded = quantum_eraser(EraserMode::recorded, g);
    const bool ok = tagged.visibility <= kTaggedMax && erased.visibility >= kErasedMin &&
                    recorded.visibility <= kTaggedMax &&
                    std::abs(erased.post_selection_probability - 0.5) <= kPostSelectionTol;
    return {ok, "visibility tagged " + fmt(tagged.visibility) + ", erased " + fmt(erased.visibility) + ", recorded " +
                    fmt(recorded.visibility) + ", P(pass) " + fmt(erased.post_selection_probability)};
}

Verdict reversibility() {
    Rng rng = stream_for(kSeed + 10, 0);
    double worst = 0;
    for (std::size_t n : {2u, 3u}) {
        const auto alpha = random_alpha(n, rng);
        const auto chain = measurement_chain(alpha, 4);
        const auto back = unwind_chain(chain);
        // Q (x) |0000>: amplitude alpha_i sits at index i * n^4.
        Complex overlap{0.0, 0.0};
        const auto stride = static_cast<Eigen::Index>(std::pow(n, 4));
        for (std::size_t i = 0; i < n; ++i)
            overlap += std::conj(alpha[i]) * back.amplitudes()(static_cast<Eigen::Index>(i) * stride);
        worst = std::max(worst, 1.0 - std::norm(overlap));
    }
    return {worst <= kFidelityTol, "max infidelity " + fmt(worst)};
}

Verdict trotter() {
    double worst_final = 0;
    int non_monotone = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
        Rng rng = stream_for(kSeed + 11, t);
        // The pair from the conditional-operator limit: a = rho_AB, b = 1 (x) rho_B.
        Matrix a, b;
        do {
            a = random_mixed_state(4, rng);
            b = kron(Matrix::Identity(2, 2), partial_trace(a, Factorization({2, 2}), {1}));
        } while ((a * b - b * a).cwiseAbs().maxCoeff() < 1e-6);
        const Matrix limit = lie_trotter_limit(a, b);
        double previous = INFINITY;
        for (std::size_t n = 64; n <= 4096; n *= 2) {
            const double dev = (lie_trotter_product(a, b, n) - limit).cwiseAbs().maxCoeff();
            if (dev > previous + kMonotoneSlack) ++non_monotone;
            previous = dev;
        }
        worst_final = std::max(worst_final, previous);
    }
    return {worst_final <= kTrotterMax && non_monotone == 0,
            "20 pairs, worst deviation at n=4096 " + fmt(worst_final) + ", monotonicity breaks " +
                std::to_string(non_monotone)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"venn golden values (cases I-III)", venn_golden},
        {"GHZ ternary diagram", ghz_ternary},
        {"Werner spectrum and threshold", werner_threshold},
        {"entropic uncertainty bounds", uncertainty_bounds},
        {"consecutive-measurement identity", consecutive_identity},
        {"measurement-chain ledger", chain_ledger},
        {"entropy property suite", property_suite},
        {"separability conjecture harness", conjecture},
        {"eraser visibilities", eraser},
        {"chain reversibility", reversibility},
        {"Lie-Trotter convergence", trotter},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str());
        if (!v.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
