#include <catch_amalgamated.hpp>

#include <omp.h>

#include "qmeas/kernels.hpp"
#include "qmeas/random.hpp"
#include "support.hpp"

using namespace qm;
using qm::test::max_diff;

namespace {

struct JobsGuard {
    explicit JobsGuard(int j) { kernels::set_jobs(j); }
    ~JobsGuard() { kernels::set_jobs(0); }
};

}  // namespace

TEST_CASE("parallel kernels agree with the serial references", "[kernels]") {
    const int jobs = GENERATE(1, 2, 4);
    JobsGuard guard(jobs);
    Rng rng = stream_for(31, static_cast<std::uint64_t>(jobs));

    SECTION("kron") {
        const Matrix a = random_hermitian(5, rng), b = random_hermitian(7, rng);
        CHECK(max_diff(kernels::kron_parallel(a, b), kernels::kron_serial(a, b)) == 0.0);
    }
    SECTION("partial trace") {
        const Factorization f({2, 3, 2, 2});
        const Matrix m = random_mixed_state(f.total(), rng);
        for (const std::vector<std::size_t>& keep :
             {std::vector<std::size_t>{0}, {1}, {0, 2}, {1, 3}, {0, 1, 3}, {}}) {
            CHECK(max_diff(kernels::partial_trace_parallel(m, f, keep), kernels::partial_trace_serial(m, f, keep)) <
                  1e-14);
        }
    }
    SECTION("reduced state of a pure state") {
        const Factorization f({3, 2, 4});
        const Vector psi = random_pure_state(f.total(), rng);
        const Matrix full = psi * psi.adjoint();
        for (const std::vector<std::size_t>& keep : {std::vector<std::size_t>{0}, {2}, {0, 1}, {1, 2}}) {
            const Matrix par = kernels::reduced_from_pure_parallel(psi, f, keep);
            CHECK(max_diff(par, kernels::reduced_from_pure_serial(psi, f, keep)) < 1e-14);
            CHECK(max_diff(par, kernels::partial_trace_serial(full, f, keep)) < 1e-14);
        }
    }
    SECTION("controlled shift") {
        const Factorization f({3, 2, 3, 3});
        const Vector psi = random_pure_state(f.total(), rng);
        for (int sign : {1, -1}) {
            const Vector a = kernels::controlled_shift_parallel(psi, f, 0, 3, sign);
            CHECK((a - kernels::controlled_shift_serial(psi, f, 0, 3, sign)).cwiseAbs().maxCoeff() == 0.0);
            CHECK(std::abs(a.norm() - 1.0) < 1e-14);
        }
        const Vector there = kernels::controlled_shift_parallel(psi, f, 2, 0, 1);
        const Vector back = kernels::controlled_shift_parallel(there, f, 2, 0, -1);
        CHECK((back - psi).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("controlled shift on basis states", "[kernels]") {
    // |i, k> -> |i, (k + i) mod 3>
    const Factorization f({3, 3});
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            Vector e = Vector::Zero(9);
            e(i * 3 + k) = 1.0;
            const Vector out = kernels::controlled_shift_serial(e, f, 0, 1);
            CHECK(out((i * 3 + (k + i) % 3)) == Complex(1.0));
        }
}

TEST_CASE("job count setting", "[kernels]") {
    kernels::set_jobs(3);
    CHECK(kernels::jobs() == 3);
    kernels::set_jobs(0);
    CHECK(kernels::jobs() == omp_get_max_threads());
}
