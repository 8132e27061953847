#include "qmeas/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <cstdint>

namespace qm::kernels {

namespace {

std::atomic<int> g_jobs{0};

int thread_count() {
    const int j = g_jobs.load();
    return j > 0 ? j : omp_get_max_threads();
}

// Digits of a joint index, most significant factor first.
std::vector<std::size_t> digits_of(std::size_t index, const Factorization& f) {
    std::vector<std::size_t> digits(f.size());
    for (std::size_t k = f.size(); k-- > 0;) {
        digits[k] = index % f.dim(k);
        index /= f.dim(k);
    }
    return digits;
}

std::size_t index_of(std::span<const std::size_t> digits, const Factorization& f) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < digits.size(); ++k) index = index * f.dim(k) + digits[k];
    return index;
}

bool contains(std::span<const std::size_t> set, std::size_t x) {
    for (auto s : set)
        if (s == x) return true;
    return false;
}

}  // namespace

void set_jobs(int jobs) { g_jobs.store(jobs < 0 ? 0 : jobs); }
int jobs() { return thread_count(); }

Matrix kron_parallel(const Matrix& a, const Matrix& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    Matrix out(ar * br, ac * bc);
#pragma omp parallel for collapse(2) num_threads(thread_count())
    for (Eigen::Index i = 0; i < ar; ++i)
        for (Eigen::Index j = 0; j < ac; ++j) out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    return out;
}

Matrix kron_serial(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r)
        for (Eigen::Index c = 0; c < out.cols(); ++c)
            out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
    return out;
}

Matrix partial_trace_parallel(const Matrix& m, const Factorization& f, std::span<const std::size_t> keep) {
    const auto rest = f.complement(keep);
    const auto keep_off = f.offsets(keep);
    const auto rest_off = f.offsets(rest);
    const auto nk = static_cast<Eigen::Index>(keep_off.size());
    const auto nr = rest_off.size();

    Matrix out(nk, nk);
#pragma omp parallel for collapse(2) num_threads(thread_count())
    for (Eigen::Index i = 0; i < nk; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j) {
            Complex acc{0.0, 0.0};
            const auto row = keep_off[i];
            const auto col = keep_off[j];
            for (std::size_t r = 0; r < nr; ++r)
                acc += m(static_cast<Eigen::Index>(row + rest_off[r]), static_cast<Eigen::Index>(col + rest_off[r]));
            out(i, j) = acc;
        }
    }
    return out;
}

Matrix partial_trace_serial(const Matrix& m, const Factorization& f, std::span<const std::size_t> keep) {
    const auto kept = f.normalize(keep);
    const auto reduced = f.restrict_to(kept);
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(reduced.total()), static_cast<Eigen::Index>(reduced.total()));

    std::vector<std::size_t> sub(kept.size());
    for (std::size_t row = 0; row < f.total(); ++row) {
        const auto rd = digits_of(row, f);
        for (std::size_t col = 0; col < f.total(); ++col) {
            const auto cd = digits_of(col, f);
            bool diagonal_in_rest = true;
            for (std::size_t k = 0; k < f.size(); ++k)
                if (!contains(kept, k) && rd[k] != cd[k]) diagonal_in_rest = false;
            if (!diagonal_in_rest) continue;

            for (std::size_t k = 0; k < kept.size(); ++k) sub[k] = rd[kept[k]];
            const auto r = index_of(sub, reduced);
            for (std::size_t k = 0; k < kept.size(); ++k) sub[k] = cd[kept[k]];
            const auto c = index_of(sub, reduced);
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
                m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
        }
    }
    return out;
}

Matrix reduced_from_pure_parallel(const Vector& psi, const Factorization& f, std::span<const std::size_t> keep) {
    const auto rest = f.complement(keep);
    const auto keep_off = f.offsets(keep);
    const auto rest_off = f.offsets(rest);
    const auto nk = static_cast<Eigen::Index>(keep_off.size());
    const auto nr = static_cast<Eigen::Index>(rest_off.size());

    // Reshape psi into a (keep x rest) amplitude matrix; rho = M M^dagger.
    Matrix amps(nk, nr);
#pragma omp parallel for collapse(2) num_threads(thread_count())
    for (Eigen::Index i = 0; i < nk; ++i)
        for (Eigen::Index r = 0; r < nr; ++r) amps(i, r) = psi(static_cast<Eigen::Index>(keep_off[i] + rest_off[r]));

    Matrix out(nk, nk);
#pragma omp parallel for num_threads(thread_count())
    for (Eigen::Index i = 0; i < nk; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            // Eigen's dot conjugates its left operand.
            const Complex v = amps.row(j).dot(amps.row(i));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    return out;
}

Matrix reduced_from_pure_serial(const Vector& psi, const Factorization& f, std::span<const std::size_t> keep) {
    const Matrix rho = psi * psi.adjoint();
    return partial_trace_serial(rho, f, keep);
}

Vector controlled_shift_parallel(const Vector& psi, const Factorization& f, std::size_t control,
                                 std::size_t target, int sign) {
    const auto d = static_cast<std::int64_t>(f.dim(control));
    const auto cs = f.stride(control);
    const auto ts = f.stride(target);
    const auto n = static_cast<std::int64_t>(f.total());
    Vector out(psi.size());
#pragma omp parallel for num_threads(thread_count())
    for (std::int64_t idx = 0; idx < n; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        const auto c = static_cast<std::int64_t>((u / cs) % static_cast<std::size_t>(d));
        const auto t = static_cast<std::int64_t>((u / ts) % static_cast<std::size_t>(d));
        const auto shifted = ((t + sign * c) % d + d) % d;
        const auto dst = u + static_cast<std::size_t>(shifted) * ts - static_cast<std::size_t>(t) * ts;
        out(static_cast<Eigen::Index>(dst)) = psi(idx);
    }
    return out;
}

Vector controlled_shift_serial(const Vector& psi, const Factorization& f, std::size_t control,
                               std::size_t target, int sign) {
    const auto d = static_cast<long>(f.dim(control));
    Vector out = Vector::Zero(psi.size());
    for (std::size_t idx = 0; idx < f.total(); ++idx) {
        auto digits = digits_of(idx, f);
        const long shifted = ((static_cast<long>(digits[target]) + sign * static_cast<long>(digits[control])) % d + d) % d;
        digits[target] = static_cast<std::size_t>(shifted);
        out(static_cast<Eigen::Index>(index_of(digits, f))) += psi(static_cast<Eigen::Index>(idx));
    }
    return out;
}

}  // namespace qm::kernels
