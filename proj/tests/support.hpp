#pragma once
// Shared helpers for the unit tests. Oracles here deliberately avoid the
// library's own index arithmetic.

#include <cmath>
#include <vector>

#include "qmeas/entropy.hpp"
#include "qmeas/random.hpp"

namespace qm::test {

inline double max_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
    return (a - b).cwiseAbs().maxCoeff();
}

inline DensityMatrix random_density(const std::vector<std::size_t>& dims, Rng& rng, std::size_t ancilla = 0) {
    Factorization f(dims);
    const std::size_t n = f.total();
    return DensityMatrix(random_mixed_state(n, ancilla == 0 ? n : ancilla, rng), f);
}

inline StateVector random_state(const std::vector<std::size_t>& dims, Rng& rng) {
    Factorization f(dims);
    return StateVector(random_pure_state(f.total(), rng), f);
}

// Tr_B of a (da*db) x (da*db) operator with A the leading factor.
inline Matrix trace_out_second(const Matrix& m, std::size_t da, std::size_t db) {
    Matrix r = Matrix::Zero(da, da);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k) r(i, j) += m(i * db + k, j * db + k);
    return r;
}

// Tr_A of the same layout.
inline Matrix trace_out_first(const Matrix& m, std::size_t da, std::size_t db) {
    Matrix r = Matrix::Zero(db, db);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k) r(i, j) += m(k * db + i, k * db + j);
    return r;
}

// Shannon entropy written out independently of the library.
inline double h_bits(const std::vector<double>& p) {
    double s = 0;
    for (double x : p)
        if (x > 0) s -= x * std::log(x) / std::log(2.0);
    return s;
}

}  // namespace qm::test
