#include "dti/simd.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#define DTIKIT_X86 1
#include <immintrin.h>
#elif defined(__aarch64__)
#define DTIKIT_NEON 1
#include <arm_neon.h>
#endif

namespace dti::simd {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sqdist(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

double sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double* x, std::size_t n, double a) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace scalar

#ifdef DTIKIT_X86

__attribute__((target("avx2,fma"))) static double dot_avx2(const double* x, const double* y,
                                                           std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc0 = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc0);
    __m128d hi = _mm256_extractf128_pd(acc0, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

__attribute__((target("avx2,fma"))) static double sqdist_avx2(const double* x, const double* y,
                                                              std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) {
        double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

__attribute__((target("avx2"))) static double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) s += x[i];
    return s;
}

__attribute__((target("avx2,fma"))) static void axpy_avx2(double a, const double* x, double* y,
                                                          std::size_t n) {
    __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2"))) static void scale_avx2(double* x, std::size_t n, double a) {
    __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

#endif  // DTIKIT_X86

#ifdef DTIKIT_NEON

static double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

static double sqdist_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(x + i), vld1q_f64(y + i));
        acc = vfmaq_f64(acc, d, d);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) {
        double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

static double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += x[i];
    return s;
}

static void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

static void scale_neon(double* x, std::size_t n, double a) {
    float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

#endif  // DTIKIT_NEON

static Isa detect_isa() {
    const char* force = std::getenv("DTIKIT_SIMD");
    if (force && std::strcmp(force, "scalar") == 0) return Isa::scalar;
#ifdef DTIKIT_X86
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
#ifdef DTIKIT_NEON
    return Isa::neon;
#endif
    return Isa::scalar;
}

Isa active_isa() {
    static const Isa isa = detect_isa();
    return isa;
}

const char* active_isa_name() {
    switch (active_isa()) {
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
        default: return "scalar";
    }
}

double dot(const double* x, const double* y, std::size_t n) {
#ifdef DTIKIT_X86
    if (active_isa() == Isa::avx2) return dot_avx2(x, y, n);
#endif
#ifdef DTIKIT_NEON
    if (active_isa() == Isa::neon) return dot_neon(x, y, n);
#endif
    return scalar::dot(x, y, n);
}

double sqdist(const double* x, const double* y, std::size_t n) {
#ifdef DTIKIT_X86
    if (active_isa() == Isa::avx2) return sqdist_avx2(x, y, n);
#endif
#ifdef DTIKIT_NEON
    if (active_isa() == Isa::neon) return sqdist_neon(x, y, n);
#endif
    return scalar::sqdist(x, y, n);
}

double sum(const double* x, std::size_t n) {
#ifdef DTIKIT_X86
    if (active_isa() == Isa::avx2) return sum_avx2(x, n);
#endif
#ifdef DTIKIT_NEON
    if (active_isa() == Isa::neon) return sum_neon(x, n);
#endif
    return scalar::sum(x, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
#ifdef DTIKIT_X86
    if (active_isa() == Isa::avx2) return axpy_avx2(a, x, y, n);
#endif
#ifdef DTIKIT_NEON
    if (active_isa() == Isa::neon) return axpy_neon(a, x, y, n);
#endif
    scalar::axpy(a, x, y, n);
}

void scale(double* x, std::size_t n, double a) {
#ifdef DTIKIT_X86
    if (active_isa() == Isa::avx2) return scale_avx2(x, n, a);
#endif
#ifdef DTIKIT_NEON
    if (active_isa() == Isa::neon) return scale_neon(x, n, a);
#endif
    scalar::scale(x, n, a);
}

}  // namespace dti::simd
