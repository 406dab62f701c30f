/*
 * Copyright 2026 The embias Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EMBIAS_ANALYSIS_STATS_CORE_HPP
#define EMBIAS_ANALYSIS_STATS_CORE_HPP

#include <span>

namespace embias::analysis {

/// R-squared of the simple least-squares regression of y on x, carrying the
/// sign of the fitted slope. Throws DataError for fewer than 3 pairs or
/// zero variance on either side.
double signed_r2(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta function I_x(a, b), evaluated by the Lentz
/// continued fraction. Relative accuracy around 1e-13 for moderate a, b.
double reg_incomplete_beta(double a, double b, double x);

struct WelchResult {
    double t = 0.0;
    double p = 1.0;
    double df = 0.0;
};

/// Two-sided unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom. Requires at least two values per sample and positive variance
/// in each (DataError otherwise).
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// Spearman rank correlation with average ranks for ties. Throws DataError
/// for fewer than 2 pairs or when either side has constant rank.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace embias::analysis

#endif  // EMBIAS_ANALYSIS_STATS_CORE_HPP
