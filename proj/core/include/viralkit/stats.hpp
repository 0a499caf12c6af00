// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <cstdint>
#include <span>

namespace viralkit {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Upper tail of the standard normal, P(Z > x).
///
/// Abramowitz & Stegun 26.2.17 (|error| < 7.5e-8), used instead of erfc so
/// that p-values are reproducible to 1e-7 in any language with the same
/// five coefficients.
double normal_sf(double x);

/// Regularized incomplete beta I_x(a, b), continued fraction (modified Lentz).
double incomplete_beta(double a, double b, double x);

/// Two-sided p-value of Student's t with `df` (possibly fractional) degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// Pooled two-proportion z test of x1/n1 against x2/n2, two-sided.
/// Throws ValidationError when a group is empty or a count exceeds its group.
TestResult two_prop_z(std::int64_t x1, std::int64_t n1, std::int64_t x2, std::int64_t n2);

/// Welch's unequal-variance t test, two-sided, Welch-Satterthwaite df.
/// Uses the normal tail when df > 30 and the exact t tail otherwise.
TestResult welch_t(std::span<const double> a, std::span<const double> b);

}  // namespace viralkit
