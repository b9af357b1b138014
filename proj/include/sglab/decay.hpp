#pragma once

#include <functional>
#include <span>
#include <string>

#include "sglab/verdict.hpp"

namespace sglab {

enum class DecayModelKind { PowerLaw, PowerLogHalf, LogPower, LogOverT };

// Rate shapes the paper's O(.) statements come in.
//   PowerLaw(p)     t^{-p}
//   PowerLogHalf    sqrt(log t / t)
//   LogPower(beta)  (log t)^{-beta}
//   LogOverT        log t / t
// The log variants are only defined for t > 1.
struct DecayModel {
    DecayModelKind kind = DecayModelKind::PowerLaw;
    double param = 0.0;

    static DecayModel power_law(double p) { return {DecayModelKind::PowerLaw, p}; }
    static DecayModel power_log_half() { return {DecayModelKind::PowerLogHalf, 0.0}; }
    static DecayModel log_power(double beta) { return {DecayModelKind::LogPower, beta}; }
    static DecayModel log_over_t() { return {DecayModelKind::LogOverT, 0.0}; }

    double value(double t) const;
    std::string describe() const;
    // "power:0.5" | "powerlog" | "logpow:2" | "logovert"
    static DecayModel parse(const std::string& text);
};

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

struct DecayFit {
    double exponent = 0.0; // p in value ~ C t^{-p}
    double intercept = 0.0;
    double r2 = 0.0;
    double residual_max = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::size_t sample_count = 0;
};

// Ordinary least squares of log(value) against log(abscissa) inside the
// window. The lowest decade of the window is excluded (burn-in): the paper's
// estimates hold only for t >= t0 with t0 unspecified.
DecayFit fit_power(std::span<const double> abscissa, std::span<const double> value, Window window);

// sup of value/model over the window plus a consistency trend: the ratio of
// per-dyadic-window suprema (<= 1 + tolerance supports the O-claim).
InequalityVerdict check_order(std::span<const double> abscissa, std::span<const double> value,
                              const DecayModel& model, Window window);

// Same check against an arbitrary comparison function.
InequalityVerdict check_order_fn(std::span<const double> abscissa, std::span<const double> value,
                                 const std::function<double(double)>& model,
                                 const std::string& model_desc, Window window);

struct LiminfCheck {
    double weight_q = 0.0;
    double floor_c = 0.0;
    double min_weighted = 0.0; // min of t^q * value over the top half
    bool pass = false;
};

// min over the top (log-scale) half of the curve of t^q * value >= c - 1e-9.
// The curve must be sampled at witness abscissas for the bound to be sharp.
LiminfCheck liminf_check(std::span<const double> abscissa, std::span<const double> value, double q,
                         double c);

} // namespace sglab
