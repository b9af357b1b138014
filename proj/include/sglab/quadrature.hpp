#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "sglab/errors.hpp"

namespace sglab {

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_floor = 1e-14;
    std::size_t max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

template <class Value>
struct QuadValue {
    Value value;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

// Gauss-7 / Kronrod-15 pair. Positive abscissae; index 7 is the midpoint.
// nodes[i] = {x, gauss weight (0 for Kronrod-only nodes), kronrod weight}
inline constexpr double kGK15[8][3] = {
    {0.991455371120813, 0.000000000000000, 0.022935322010529},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.864864423359769, 0.000000000000000, 0.104790010322250},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.586087235467691, 0.000000000000000, 0.169004726639267},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.207784955007898, 0.000000000000000, 0.204432940075298},
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
};

template <class Value>
struct Panel {
    double a, b;
    Value integral;
    double error;
};

// One Kronrod panel over [a,b]. Value must support v+v and v*double;
// norm maps Value to a nonnegative double.
template <class F, class NormFn>
auto gk15_panel(F& f, NormFn& norm, double a, double b) {
    using Value = std::decay_t<decltype(f(a))>;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Value fc = f(mid);
    Value gauss = fc * kGK15[7][1];
    Value kron = fc * kGK15[7][2];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGK15[i][0];
        Value pair = f(mid - dx) + f(mid + dx);
        kron = kron + pair * kGK15[i][2];
        if (kGK15[i][1] != 0.0) gauss = gauss + pair * kGK15[i][1];
    }
    Panel<Value> p;
    p.a = a;
    p.b = b;
    p.integral = kron * half;
    p.error = norm((kron + gauss * -1.0) * half);
    return p;
}

} // namespace detail

// Globally adaptive Gauss-Kronrod integration with interval halving: the
// panel with the largest embedded error estimate is bisected until the summed
// estimate meets max(abs_floor, rel_tol * |integral|) or the budget runs out.
template <class F, class NormFn>
auto integrate_general(F&& f, NormFn&& norm, double a, double b, const QuadOptions& opts = {}) {
    using Value = std::decay_t<decltype(f(a))>;
    QuadValue<Value> out;
    out.value = f(0.5 * (a + b)) * 0.0; // zero of the right shape
    out.evaluations = 1;
    if (!(b > a)) {
        out.converged = (b == a);
        return out;
    }

    std::vector<detail::Panel<Value>> panels;
    panels.reserve(64);
    panels.push_back(detail::gk15_panel(f, norm, a, b));
    out.evaluations += 15;

    double total_err = panels[0].error;
    double total_mag = norm(panels[0].integral);
    while (total_err > std::max(opts.abs_floor, opts.rel_tol * total_mag) &&
           panels.size() < opts.max_intervals) {
        std::size_t w = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[w].error) w = i;
        const double wa = panels[w].a, wb = panels[w].b, wm = 0.5 * (wa + wb);
        if (wm <= wa || wm >= wb) break; // machine-precision interval
        auto left = detail::gk15_panel(f, norm, wa, wm);
        auto right = detail::gk15_panel(f, norm, wm, wb);
        out.evaluations += 30;
        total_err += left.error + right.error - panels[w].error;
        panels[w] = std::move(left);
        panels.push_back(std::move(right));
        if ((panels.size() & 0x1f) == 0) { // periodic clean re-sum of magnitude
            Value acc = panels[0].integral;
            for (std::size_t i = 1; i < panels.size(); ++i) acc = acc + panels[i].integral;
            total_mag = norm(acc);
        }
    }

    Value acc = panels[0].integral;
    total_err = panels[0].error;
    for (std::size_t i = 1; i < panels.size(); ++i) {
        acc = acc + panels[i].integral;
        total_err += panels[i].error;
    }
    out.value = acc;
    out.error = total_err;
    out.converged = total_err <= std::max(opts.abs_floor, opts.rel_tol * norm(acc));
    return out;
}

template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadOptions& opts = {}) {
    auto r = integrate_general(std::forward<F>(f), [](double v) { return std::fabs(v); }, a, b,
                               opts);
    return QuadResult{r.value, r.error, r.evaluations, r.converged};
}

// Integral over [a, inf) of an (eventually) exponentially decaying integrand.
// Advances in geometrically growing chunks of initial length `scale` and stops
// once two consecutive chunks are negligible against the accumulated value.
template <class F>
QuadResult integrate_decaying(F&& f, double a, double scale, const QuadOptions& opts = {}) {
    QuadResult total;
    total.converged = false;
    double lo = a;
    double len = std::max(scale, 1e-300);
    int quiet_chunks = 0;
    const int max_chunks = 200;
    for (int chunk = 0; chunk < max_chunks; ++chunk) {
        QuadOptions chunk_opts = opts;
        chunk_opts.rel_tol = opts.rel_tol * 0.1;
        QuadResult piece = integrate_adaptive(f, lo, lo + len, chunk_opts);
        total.value += piece.value;
        total.error += piece.error;
        total.evaluations += piece.evaluations;
        if (!piece.converged) return total;
        const double cutoff =
            std::max(opts.abs_floor, 0.25 * opts.rel_tol * std::fabs(total.value));
        quiet_chunks = (std::fabs(piece.value) <= cutoff) ? quiet_chunks + 1 : 0;
        if (quiet_chunks >= 2) {
            total.converged = true;
            return total;
        }
        lo += len;
        len *= 2.0;
    }
    return total;
}

struct GoldenMax {
    double x = 0.0;
    double fx = 0.0;
};

// Golden-section search for the maximum of f on [a,b] (f assumed unimodal on
// the bracket). Returns the best point seen.
template <class F>
GoldenMax golden_section_max(F&& f, double a, double b, double x_tol, int max_iter = 240) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    GoldenMax best;
    if (fc >= fd) {
        best.x = c;
        best.fx = fc;
    } else {
        best.x = d;
        best.fx = fd;
    }
    return best;
}

} // namespace sglab
