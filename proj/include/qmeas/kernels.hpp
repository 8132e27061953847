#pragma once

// Data-parallel inner loops. Every kernel has an OpenMP version, used by the
// public API, and a plain serial reference that walks the joint index digit
// by digit. The references are slow and kept for tests and benchmarks only.

#include <cstddef>
#include <span>

#include "qmeas/linalg.hpp"

namespace qm::kernels {

// Thread count for OpenMP regions started by this library. 0 leaves the
// OpenMP runtime default in place.
void set_jobs(int jobs);
int jobs();

Matrix kron_parallel(const Matrix& a, const Matrix& b);
Matrix kron_serial(const Matrix& a, const Matrix& b);

// No argument validation; callers go through qm::partial_trace.
Matrix partial_trace_parallel(const Matrix& m, const Factorization& f, std::span<const std::size_t> keep);
Matrix partial_trace_serial(const Matrix& m, const Factorization& f, std::span<const std::size_t> keep);

// Reduced density matrix of |psi><psi| on `keep` without forming the joint
// density matrix.
Matrix reduced_from_pure_parallel(const Vector& psi, const Factorization& f, std::span<const std::size_t> keep);
Matrix reduced_from_pure_serial(const Vector& psi, const Factorization& f, std::span<const std::size_t> keep);

// |..., i (control), ..., k (target), ...> -> |..., i, ..., (k + sign*i) mod d, ...>
// Control and target must have the same dimension d.
Vector controlled_shift_parallel(const Vector& psi, const Factorization& f, std::size_t control,
                                 std::size_t target, int sign = 1);
Vector controlled_shift_serial(const Vector& psi, const Factorization& f, std::size_t control,
                               std::size_t target, int sign = 1);

}  // namespace qm::kernels
