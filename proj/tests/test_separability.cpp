#include <catch_amalgamated.hpp>

#include <cmath>

#include "qmeas/presets.hpp"
#include "qmeas/separability.hpp"
#include "support.hpp"

using namespace qm;
using qm::test::max_diff;

TEST_CASE("Werner matrix entries", "[werner]") {
    for (double x : {0.0, 0.3, 1.0}) {
        const Matrix m = werner(x).matrix();
        CHECK(std::abs(m(0, 0).real() - (1 - x) / 4) < 1e-15);
        CHECK(std::abs(m(1, 1).real() - (1 + x) / 4) < 1e-15);
        CHECK(std::abs(m(2, 2).real() - (1 + x) / 4) < 1e-15);
        CHECK(std::abs(m(3, 3).real() - (1 - x) / 4) < 1e-15);
        CHECK(std::abs(m(1, 2).real() + x / 2) < 1e-15);
        CHECK(std::abs(m(2, 1).real() + x / 2) < 1e-15);
        int nonzero = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j && std::abs(m(i, j)) > 0) ++nonzero;
        CHECK(nonzero == (x == 0.0 ? 0 : 2));
    }
    CHECK(max_diff(werner(0).matrix(), Matrix::Identity(4, 4) / 4.0) < 1e-15);
    Vector singlet = Vector::Zero(4);
    singlet(1) = 1 / std::sqrt(2.0);
    singlet(2) = -1 / std::sqrt(2.0);
    CHECK(max_diff(werner(1).matrix(), singlet * singlet.adjoint()) < 1e-15);
    CHECK_THROWS_AS(werner(-0.01), ValidationError);
    CHECK_THROWS_AS(werner(1.01), ValidationError);
}

TEST_CASE("analyze Werner states", "[analyze]") {
    const auto low = analyze(werner(0.2));
    CHECK(low.spectrum_classical);
    CHECK(low.ppt_pass);
    CHECK(low.nonneg_cond_entropy);
    CHECK(std::abs(low.max_cond_eig_ab - 0.8) < 1e-10);
    CHECK(std::abs(low.min_ppt_eig - 0.1) < 1e-12);

    const auto high = analyze(werner(0.5));
    CHECK_FALSE(high.spectrum_classical);
    CHECK_FALSE(high.ppt_pass);

    const auto edge = analyze(werner(1.0 / 3.0));
    CHECK(std::abs(edge.max_cond_eig_ab - 1.0) <= 1e-12);
    CHECK(edge.spectrum_classical);
    CHECK(edge.ppt_pass);

    const auto product = analyze(preset("case1").density);
    CHECK(product.spectrum_classical);
    CHECK(product.ppt_pass);
    CHECK(product.max_cond_eig_ab <= 1.0);

    const auto bell = analyze(preset("bell").density);
    CHECK(std::abs(bell.max_cond_eig_ab - 2.0) < 1e-9);
    CHECK_FALSE(bell.nonneg_cond_entropy);
    CHECK_FALSE(bell.spectrum_classical);
}

TEST_CASE("Werner sweep", "[werner]") {
    const std::vector<double> grid{0.3, 1.0 / 3.0, 0.35};
    const auto rows = werner_threshold_sweep(grid);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].report.spectrum_classical);
    CHECK(rows[0].report.ppt_pass);
    CHECK(rows[1].report.spectrum_classical);
    CHECK(rows[1].report.ppt_pass);
    CHECK_FALSE(rows[2].report.spectrum_classical);
    CHECK_FALSE(rows[2].report.ppt_pass);

    CHECK(werner_threshold_sweep(std::vector<double>{0.0})[0].report.ppt_pass);

    std::vector<double> dense;
    for (int k = 0; k <= 100; ++k) dense.push_back(k / 100.0);
    const auto table = werner_threshold_sweep(dense);
    int flips_spectrum = 0, flips_ppt = 0;
    for (std::size_t k = 0; k < table.size(); ++k) {
        const double x = table[k].x;
        CHECK(x == dense[k]);
        CHECK(table[k].report.spectrum_classical == table[k].report.ppt_pass);
        CHECK(std::abs(table[k].report.max_cond_eig_ab - (1 + 3 * x) / 2) < 1e-10);
        CHECK(std::abs(table[k].report.min_ppt_eig - (1 - 3 * x) / 4) < 1e-10);
        if (k > 0) {
            flips_spectrum += table[k].report.spectrum_classical != table[k - 1].report.spectrum_classical;
            flips_ppt += table[k].report.ppt_pass != table[k - 1].report.ppt_pass;
        }
    }
    CHECK(flips_spectrum == 1);
    CHECK(flips_ppt == 1);
    CHECK_THROWS_AS(werner_threshold_sweep(std::vector<double>{1.5}), ValidationError);
}

TEST_CASE("report is invariant under local unitaries", "[analyze]") {
    Rng rng = stream_for(51, 0);
    for (int t = 0; t < 20; ++t) {
        const auto rho = test::random_density({2, 2}, rng);
        const Matrix u = kron(random_unitary(2, rng), random_unitary(2, rng));
        const auto a = analyze(rho), b = analyze(rho.transformed(u));
        CHECK((a.cond_spectrum_ab - b.cond_spectrum_ab).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((a.cond_spectrum_ba - b.cond_spectrum_ba).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((a.ppt_spectrum - b.ppt_spectrum).cwiseAbs().maxCoeff() <= 1e-9);
        if (!a.nonneg_cond_entropy) CHECK_FALSE(a.spectrum_classical);
    }
}

TEST_CASE("separable sampling", "[sample]") {
    Rng rng = stream_for(52, 0);
    const auto pure = sample_separable({2, 2}, 1, rng, true);
    CHECK(herm_eig(pure.state).values.tail(1)(0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(herm_eig(pure.state).values.head(3).cwiseAbs().maxCoeff() < 1e-12);

    for (int t = 0; t < 50; ++t) {
        const auto s = sample_separable({2, 3}, 1 + t % 4, rng);
        CHECK(s.weights.size() == static_cast<std::size_t>(1 + t % 4));
        const auto rho = s.density();
        CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
        CHECK(herm_eig(rho.matrix()).values.minCoeff() > -1e-12);
        CHECK(conditional_entropy(rho, 1) >= -1e-9);
        CHECK(conditional_entropy(rho, 0) >= -1e-9);
        Matrix rebuilt = Matrix::Zero(6, 6);
        for (std::size_t k = 0; k < s.weights.size(); ++k) rebuilt += s.weights[k] * kron(s.factors_a[k], s.factors_b[k]);
        CHECK(max_diff(rebuilt, s.state) < 1e-14);
    }
    const auto a = sample_separable({2, 2}, 3, std::uint64_t{9});
    const auto b = sample_separable({2, 2}, 3, std::uint64_t{9});
    CHECK(max_diff(a.state, b.state) == 0.0);
    CHECK_THROWS_AS(sample_separable({2, 2}, 0, rng), ValidationError);
}

TEST_CASE("conjecture harness", "[conjecture]") {
    ConjectureConfig cfg;
    cfg.trials = 500;
    cfg.seed = 7;
    const auto par = conjecture_trial(cfg);
    const auto ser = conjecture_trial_serial(cfg);
    CHECK(par.trials == 500);
    CHECK(par.counterexamples.empty());
    CHECK(par.max_cond_eig <= 1 + 1e-8);
    CHECK(par.min_cond_entropy >= -1e-9);
    CHECK(par.max_cond_eig == ser.max_cond_eig);
    CHECK(par.min_cond_entropy == ser.min_cond_entropy);
    CHECK(par.criteria_disagreements == ser.criteria_disagreements);

    const auto again = conjecture_trial(cfg);
    CHECK(again.max_cond_eig == par.max_cond_eig);

    cfg.trials = 0;
    const auto none = conjecture_trial(cfg);
    CHECK(none.trials == 0);
    CHECK(none.counterexamples.empty());

    // A tolerance of -1 turns every trial into a reported violation with provenance.
    cfg.trials = 5;
    cfg.tol = -1.0;
    const auto all = conjecture_trial(cfg);
    REQUIRE(all.counterexamples.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(all.counterexamples[k].trial == k);
        CHECK(all.counterexamples[k].seed == 7);
        CHECK_FALSE(all.counterexamples[k].sample.weights.empty());
    }

    ConjectureConfig wide;
    wide.trials = 100;
    wide.dims = {2, 3};
    wide.seed = 3;
    CHECK(conjecture_trial(wide).counterexamples.empty());
}
