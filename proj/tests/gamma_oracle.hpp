#pragma once

// Independent extended-precision oracle for the regularized lower
// incomplete gamma function, used to certify chi2_cdf. Route: adaptive
// Simpson quadrature in long double over the substituted integrand
//   P(a, x) = 2/Gamma(a) * integral_0^sqrt(x) u^(2a-1) exp(-u^2) du,
// which is smooth at 0 for every a >= 1/2. No series, no continued
// fraction, no code shared with the implementation under test.

#include <cmath>

namespace gamma_oracle {

inline long double integrand(long double a, long double u) {
    if (u <= 0.0L) return a == 0.5L ? std::exp(-std::lgamma(a)) * 2.0L : 0.0L;
    long double log_value = (2.0L * a - 1.0L) * std::log(u) - u * u -
                            std::lgamma(a) + std::log(2.0L);
    return std::exp(log_value);
}

inline long double simpson(long double a, long double lo, long double hi,
                           long double flo, long double fmid, long double fhi,
                           long double whole, long double tol, int depth) {
    long double mid = (lo + hi) / 2.0L;
    long double lmid = (lo + mid) / 2.0L;
    long double rmid = (mid + hi) / 2.0L;
    long double flmid = integrand(a, lmid);
    long double frmid = integrand(a, rmid);
    long double left = (mid - lo) / 6.0L * (flo + 4.0L * flmid + fmid);
    long double right = (hi - mid) / 6.0L * (fmid + 4.0L * frmid + fhi);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0L * tol)
        return left + right + (left + right - whole) / 15.0L;
    return simpson(a, lo, mid, flo, flmid, fmid, left, tol / 2.0L, depth - 1) +
           simpson(a, mid, hi, fmid, frmid, fhi, right, tol / 2.0L, depth - 1);
}

// Regularized lower incomplete gamma P(a, x) for a >= 0.5, x >= 0.
inline long double regularized_p(long double a, long double x) {
    if (x <= 0.0L) return 0.0L;
    long double hi = std::sqrt(x);
    long double lo = 0.0L;
    long double flo = integrand(a, lo);
    long double fhi = integrand(a, hi);
    long double mid = (lo + hi) / 2.0L;
    long double fmid = integrand(a, mid);
    long double whole = (hi - lo) / 6.0L * (flo + 4.0L * fmid + fhi);
    long double p = simpson(a, lo, hi, flo, fmid, fhi, whole, 1e-16L, 60);
    if (p < 0.0L) p = 0.0L;
    if (p > 1.0L) p = 1.0L;
    return p;
}

// Oracle for the chi-squared CDF with df degrees of freedom.
inline long double chi2_cdf(long double x, int df) {
    return regularized_p(static_cast<long double>(df) / 2.0L, x / 2.0L);
}

}  // namespace gamma_oracle
