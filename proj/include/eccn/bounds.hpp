#pragma once

// Capacity and sample-complexity arithmetic: trainable-parameter counts,
// worst-case operation counts of the forward recurrences, the VC-dimension
// bound 2W(2T + log2(8e)), the (128/eps^2)(2 Pdim ln(34/eps) + ln(16/delta))
// sample bound, their closed-form compositions for the RNN shapes, the
// graph-level bounds, and the break-even share against the exact count of
// graphs with at most n vertices. All internal arithmetic is long double
// (80-bit on x86) so reported values are stable to well past the 12
// significant digits used for display.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "eccn/graph.hpp"

namespace eccn {

// log2(8e) = 3 + 1/ln(2), kept as a real number; flooring it would shift
// every capacity figure and the break-even ratios built on them.
inline long double log2_8e() {
    static const long double v = 3.0L + 1.0L / std::log(2.0L);
    return v;
}

inline std::int64_t param_count_single(std::int64_t a) {
    if (a < 1) throw std::invalid_argument("param_count_single: width must be >= 1");
    return a * a + 3 * a + 1;
}

inline std::int64_t param_count_multi(const std::vector<std::int64_t>& widths) {
    if (widths.empty()) throw std::invalid_argument("param_count_multi: need >= 1 layer");
    std::int64_t w = 0;
    for (std::int64_t a : widths) {
        if (a < 1) throw std::invalid_argument("param_count_multi: widths must be >= 1");
        w += a * a + 2 * a;
    }
    return w + widths.back() + 1;
}

inline std::int64_t op_count_single(std::int64_t a, std::int64_t b) {
    if (a < 1 || b < 1) throw std::invalid_argument("op_count_single: a, b must be >= 1");
    return b * (2 * a * a + 4 * a) + 2 * a + 5;
}

inline std::int64_t op_count_multi(const std::vector<std::int64_t>& widths, std::int64_t b) {
    if (widths.empty() || b < 1)
        throw std::invalid_argument("op_count_multi: need >= 1 layer and b >= 1");
    std::int64_t t = b * (2 * widths[0] * widths[0] + 4 * widths[0]);
    for (std::size_t j = 0; j + 1 < widths.size(); ++j)
        t += widths[j] * (2 * widths[j + 1] * widths[j + 1] + 4 * widths[j + 1]);
    return t + 2 * widths.back() + 5;
}

inline long double vcdim_bound(std::int64_t w, std::int64_t t) {
    if (w < 1 || t < 1) throw std::invalid_argument("vcdim_bound: W, T must be >= 1");
    return 2.0L * static_cast<long double>(w) *
           (2.0L * static_cast<long double>(t) + log2_8e());
}

inline std::int64_t vcdim_bound_floor(std::int64_t w, std::int64_t t) {
    return static_cast<std::int64_t>(std::floor(vcdim_bound(w, t)));
}

namespace detail {
inline void check_eps_delta(long double eps, long double delta) {
    if (!(eps > 0.0L) || !(delta > 0.0L))
        throw std::invalid_argument("sample complexity: eps and delta must be positive");
    if (eps > 1.0L || delta > 1.0L)
        throw std::invalid_argument("sample complexity: eps and delta must be <= 1");
}
}  // namespace detail

inline long double sample_complexity_from_pdim(long double pdim, long double eps,
                                               long double delta) {
    detail::check_eps_delta(eps, delta);
    if (pdim < 0.0L) throw std::invalid_argument("sample_complexity_from_pdim: pdim >= 0");
    return (128.0L / (eps * eps)) *
           (2.0L * pdim * std::log(34.0L / eps) + std::log(16.0L / delta));
}

// Closed form for d recurrent layers of the given widths over inputs of
// length at most b. (Single layer is the d=1 instance; routing it through the
// same code keeps the two bit-identical.)
inline long double sample_complexity_multi(const std::vector<std::int64_t>& widths,
                                           std::int64_t b, long double eps,
                                           long double delta) {
    detail::check_eps_delta(eps, delta);
    std::int64_t w = param_count_multi(widths);
    std::int64_t t = op_count_multi(widths, b);
    long double factor = 4.0L * static_cast<long double>(w + 2) *
                         (2.0L * static_cast<long double>(t) + log2_8e());
    return (128.0L / (eps * eps)) *
           (std::log(16.0L / delta) + std::log(34.0L / eps) * factor);
}

inline long double sample_complexity_single(std::int64_t a, std::int64_t b, long double eps,
                                            long double delta) {
    return sample_complexity_multi({a}, b, eps, delta);
}

// Graph-level bound for n-vertex inputs (width n, sequence length n^2).
// d = 1 uses a dedicated single-layer form whose prefactor 4(n^2+4n+3)
// differs from substituting a=n into the generic closed form (which gives
// 4(n^2+3n+3)); the headline break-even ratios are defined by the former.
// See sample_complexity_graph_substituted for the substitution variant.
// d >= 2 is the multi-layer form, which IS the generic substitution.
inline long double sample_complexity_graph(std::int64_t n, std::int64_t d, long double eps,
                                           long double delta) {
    detail::check_eps_delta(eps, delta);
    if (n < 1 || d < 1)
        throw std::invalid_argument("sample_complexity_graph: n, d must be >= 1");
    if (d == 1) {
        long double nn = static_cast<long double>(n);
        long double pre = 4.0L * (nn * nn + 4.0L * nn + 3.0L);
        long double ops = 4.0L * nn * nn * nn * nn + 8.0L * nn * nn * nn + 4.0L * nn +
                          10.0L + log2_8e();
        return (128.0L / (eps * eps)) *
               (std::log(16.0L / delta) + std::log(34.0L / eps) * pre * ops);
    }
    return sample_complexity_multi(std::vector<std::int64_t>(static_cast<std::size_t>(d), n),
                                   n * n, eps, delta);
}

// The value the generic closed form would give at the same (n, d).
inline long double sample_complexity_graph_substituted(std::int64_t n, std::int64_t d,
                                                       long double eps, long double delta) {
    if (n < 1 || d < 1)
        throw std::invalid_argument("sample_complexity_graph_substituted: n, d must be >= 1");
    return sample_complexity_multi(std::vector<std::int64_t>(static_cast<std::size_t>(d), n),
                                   n * n, eps, delta);
}

// Share of the space of labeled graphs with <= n vertices that the bound
// demands as samples. Exact big-integer denominator.
inline long double breakeven_ratio(std::int64_t n, std::int64_t d, long double eps,
                                   long double delta) {
    long double m = sample_complexity_graph(n, d, eps, delta);
    BigInt total = graph_space_size(static_cast<int>(n));
    return m / total.convert_to<long double>();
}

// Round-trip a long double through "N significant digits" formatting.
inline std::string format_sig(long double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*Lg", digits, v);
    return std::string(buf);
}

struct BoundReport {
    std::vector<std::int64_t> widths;  // per-layer widths (graph mode: n repeated d times)
    std::int64_t b = 0;                // max input length
    std::int64_t d = 0;                // layer count
    std::int64_t w = 0;                // trainable parameter count
    std::int64_t t = 0;                // worst-case operation count
    long double vcdim_real = 0.0L;     // VC bound of the thresholded class (W+2 params)
    std::int64_t vcdim_floor = 0;
    long double pdim = 0.0L;           // pseudo-dimension bound; coincides with vcdim_real
    long double sample_complexity = 0.0L;
    bool graph_mode = false;
    long double breakeven = -1.0L;     // graph mode only; fraction, not percent
};

inline BoundReport make_report_multi(const std::vector<std::int64_t>& widths, std::int64_t b,
                                     long double eps, long double delta) {
    BoundReport r;
    r.widths = widths;
    r.b = b;
    r.d = static_cast<std::int64_t>(widths.size());
    r.w = param_count_multi(widths);
    r.t = op_count_multi(widths, b);
    r.vcdim_real = vcdim_bound(r.w + 2, r.t);
    r.vcdim_floor = vcdim_bound_floor(r.w + 2, r.t);
    r.pdim = r.vcdim_real;
    r.sample_complexity = sample_complexity_multi(widths, b, eps, delta);
    return r;
}

inline BoundReport make_report_graph(std::int64_t n, std::int64_t d, long double eps,
                                     long double delta) {
    BoundReport r = make_report_multi(std::vector<std::int64_t>(static_cast<std::size_t>(d), n),
                                      n * n, eps, delta);
    r.graph_mode = true;
    r.sample_complexity = sample_complexity_graph(n, d, eps, delta);
    r.breakeven = breakeven_ratio(n, d, eps, delta);
    return r;
}

}  // namespace eccn
