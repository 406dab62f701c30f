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

#include "embias/analysis/stats_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "embias/error.hpp"

namespace embias::analysis {

namespace {

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

/// Unbiased sample variance (n-1 denominator), two-pass.
double sample_variance(std::span<const double> v, double mean) {
    double s = 0.0;
    for (double x : v) {
        double d = x - mean;
        s += d * d;
    }
    return s / static_cast<double>(v.size() - 1);
}

/// Lanczos approximation of ln Gamma(x) for x > 0, accurate to roughly
/// 1e-14 relative, kept local so concurrent callers share no state.
double ln_gamma(double x) {
    static const double g[9] = {
        0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
        771.32342877765313,   -176.61502916214059, 12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // Reflection keeps the approximation in its accurate range.
        return std::log(M_PI / std::sin(M_PI * x)) - ln_gamma(1.0 - x);
    }
    x -= 1.0;
    double a = g[0];
    double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += g[i] / (x + i);
    return 0.5 * std::log(2.0 * M_PI) + (x + 0.5) * std::log(t) - t + std::log(a);
}

/// Lentz's algorithm for the continued fraction of I_x(a, b).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw DataError("incomplete beta continued fraction failed to converge");
}

}  // namespace

double signed_r2(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw ConfigError("signed_r2: input lengths differ");
    size_t n = x.size();
    if (n < 3)
        throw DataError("signed_r2 needs at least 3 paired points, got " + std::to_string(n));
    double mx = mean_of(x), my = mean_of(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw DataError("signed_r2: x values have zero variance");
    if (syy == 0.0) throw DataError("signed_r2: y values have zero variance");
    double r2 = (sxy * sxy) / (sxx * syy);
    if (r2 > 1.0) r2 = 1.0;  // Cauchy-Schwarz bound, trimmed for rounding
    return sxy < 0.0 ? -r2 : r2;
}

double reg_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0)
        throw ConfigError("reg_incomplete_beta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double front = std::exp(ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * std::log(x) +
                            b * std::log1p(-x));
    // The continued fraction converges fast only on one side of the mean;
    // use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) for the other.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw DataError("welch_t_test needs at least 2 values per sample");
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double ma = mean_of(a), mb = mean_of(b);
    double va = sample_variance(a, ma), vb = sample_variance(b, mb);
    if (va == 0.0 || vb == 0.0)
        throw DataError("welch_t_test: a sample has zero variance");
    double sa = va / na, sb = vb / nb;
    WelchResult r;
    r.t = (ma - mb) / std::sqrt(sa + sb);
    r.df = (sa + sb) * (sa + sb) / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    // Two-sided p: P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2).
    double x = r.df / (r.df + r.t * r.t);
    r.p = reg_incomplete_beta(r.df / 2.0, 0.5, x);
    if (r.p > 1.0) r.p = 1.0;
    return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw ConfigError("spearman: input lengths differ");
    size_t n = x.size();
    if (n < 2) throw DataError("spearman needs at least 2 pairs");
    auto ranks = [n](std::span<const double> v) {
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return v[i] < v[j]; });
        std::vector<double> r(n);
        size_t i = 0;
        while (i < n) {
            size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    std::vector<double> rx = ranks(x), ry = ranks(y);
    double mx = mean_of(rx), my = mean_of(ry);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = rx[i] - mx, dy = ry[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DataError("spearman: a side has constant ranks");
    double rho = sxy / std::sqrt(sxx * syy);
    if (rho > 1.0) rho = 1.0;
    if (rho < -1.0) rho = -1.0;
    return rho;
}

}  // namespace embias::analysis
