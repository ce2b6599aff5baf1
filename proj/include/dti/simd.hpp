#pragma once

#include <cstddef>

// Vectorized inner loops for the dense numeric kernels. Every primitive has a
// scalar reference implementation; on x86-64 an AVX2+FMA variant is selected
// at runtime when the CPU supports it, on aarch64 a NEON variant. The active
// backend can be forced to scalar with the environment variable
// DTIKIT_SIMD=scalar (read once at startup).
namespace dti::simd {

enum class Isa { scalar, avx2, neon };

Isa active_isa();
const char* active_isa_name();

// Scalar reference kernels. These define the semantics; the vector variants
// are tested for equivalence against them.
namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double sqdist(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double* x, std::size_t n, double a);
}  // namespace scalar

// Dispatched entry points.
double dot(const double* x, const double* y, std::size_t n);
double sqdist(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double* x, std::size_t n, double a);

}  // namespace dti::simd
