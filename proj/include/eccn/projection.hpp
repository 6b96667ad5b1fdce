#pragma once

// Euclidean projections used to keep constrained models feasible after each
// optimizer step: interval clamps, the L1 ball (sort-and-threshold), and the
// nonnegative L1 ball (clamp, then threshold).

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace eccn {

inline void clamp_box(std::span<double> v, double lo, double hi) {
    for (double& x : v) x = std::min(hi, std::max(lo, x));
}

// Euclidean projection onto { x : ||x||_1 <= r }. Inside the ball the point is
// untouched; outside, soft-threshold by the unique lambda with
// sum(max(|x_i| - lambda, 0)) = r, found from the sorted magnitudes.
inline void project_l1(std::span<double> v, double r) {
    double norm = 0.0;
    for (double x : v) norm += std::fabs(x);
    if (norm <= r) return;
    std::vector<double> mag(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::fabs(v[i]);
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    double cum = 0.0;
    double lambda = 0.0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
        cum += mag[k];
        double cand = (cum - r) / static_cast<double>(k + 1);
        if (k + 1 == mag.size() || mag[k + 1] <= cand) {
            lambda = cand;
            break;
        }
    }
    for (double& x : v) {
        double m = std::fabs(x) - lambda;
        x = m > 0.0 ? (x < 0.0 ? -m : m) : 0.0;
    }
}

// Euclidean projection onto { x : x >= 0, ||x||_1 <= r }: clamp the negative
// part, then threshold as above if the sum still exceeds r. (The KKT system of
// the joint problem factors into exactly these two steps.)
inline void project_nonneg_l1(std::span<double> v, double r) {
    double sum = 0.0;
    for (double& x : v) {
        if (x < 0.0) x = 0.0;
        sum += x;
    }
    if (sum <= r) return;
    std::vector<double> mag(v.begin(), v.end());
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    double cum = 0.0;
    double lambda = 0.0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
        cum += mag[k];
        double cand = (cum - r) / static_cast<double>(k + 1);
        if (k + 1 == mag.size() || mag[k + 1] <= cand) {
            lambda = cand;
            break;
        }
    }
    for (double& x : v) x = std::max(x - lambda, 0.0);
}

}  // namespace eccn
