#include "sglab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "sglab/errors.hpp"

namespace sglab {

double DecayModel::value(double t) const {
    switch (kind) {
    case DecayModelKind::PowerLaw:
        if (!(t > 0.0)) throw ValidationError("decay model: power law needs t > 0");
        return std::pow(t, -param);
    case DecayModelKind::PowerLogHalf:
        if (!(t > 1.0)) throw ValidationError("decay model: sqrt(log t / t) needs t > 1");
        return std::sqrt(std::log(t) / t);
    case DecayModelKind::LogPower:
        if (!(t > 1.0)) throw ValidationError("decay model: (log t)^-beta needs t > 1");
        return std::pow(std::log(t), -param);
    case DecayModelKind::LogOverT:
        if (!(t > 1.0)) throw ValidationError("decay model: log t / t needs t > 1");
        return std::log(t) / t;
    }
    return 0.0;
}

std::string DecayModel::describe() const {
    std::ostringstream os;
    switch (kind) {
    case DecayModelKind::PowerLaw:
        os << "power:" << param;
        return os.str();
    case DecayModelKind::PowerLogHalf:
        return "powerlog";
    case DecayModelKind::LogPower:
        os << "logpow:" << param;
        return os.str();
    case DecayModelKind::LogOverT:
        return "logovert";
    }
    return "?";
}

DecayModel DecayModel::parse(const std::string& text) {
    auto param_of = [&text](std::size_t colon) {
        try {
            return std::stod(text.substr(colon + 1));
        } catch (...) {
            throw ValidationError("decay model: cannot parse parameter in \"" + text + "\"");
        }
    };
    if (text == "powerlog") return power_log_half();
    if (text == "logovert") return log_over_t();
    if (text.rfind("power:", 0) == 0) return power_law(param_of(5));
    if (text.rfind("logpow:", 0) == 0) return log_power(param_of(6));
    throw ValidationError("decay model: unknown model \"" + text + "\"");
}

namespace {

struct WindowedSamples {
    std::vector<double> t;
    std::vector<double> v;
};

WindowedSamples collect(std::span<const double> abscissa, std::span<const double> value,
                        Window window, bool burn_in) {
    if (abscissa.size() != value.size())
        throw ValidationError("decay: abscissa/value length mismatch");
    if (!(window.hi > window.lo) || !(window.lo > 0.0))
        throw ValidationError("decay: degenerate window");
    const double lo = burn_in ? window.lo * 10.0 : window.lo;
    WindowedSamples out;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        const double t = abscissa[i];
        if (t < lo || t > window.hi) continue;
        out.t.push_back(t);
        out.v.push_back(value[i]);
    }
    return out;
}

} // namespace

DecayFit fit_power(std::span<const double> abscissa, std::span<const double> value,
                   Window window) {
    WindowedSamples s = collect(abscissa, value, window, /*burn_in=*/true);
    if (s.t.size() < 8)
        throw ValidationError("fit_power: fewer than 8 samples in window after burn-in");
    const std::size_t n = s.t.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s.v[i] > 0.0)) throw ValidationError("fit_power: nonpositive value in window");
        lx[i] = std::log(s.t[i]);
        ly[i] = std::log(s.v[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx;
        const double dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw ValidationError("fit_power: degenerate abscissas");
    const double slope = sxy / sxx;
    DecayFit fit;
    fit.exponent = -slope;
    fit.intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + slope * lx[i]);
        ss_res += r * r;
        fit.residual_max = std::max(fit.residual_max, std::fabs(r));
    }
    fit.r2 = (syy > 0.0) ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
    fit.window_lo = window.lo;
    fit.window_hi = window.hi;
    fit.sample_count = n;
    return fit;
}

InequalityVerdict check_order_fn(std::span<const double> abscissa, std::span<const double> value,
                                 const std::function<double(double)>& model,
                                 const std::string& model_desc, Window window) {
    WindowedSamples s = collect(abscissa, value, window, /*burn_in=*/false);
    if (s.t.empty()) throw ValidationError("check_order: no samples in window");

    InequalityVerdict v;
    v.probe = "check_order(" + model_desc + ")";
    {
        std::ostringstream os;
        os << "window [" << window.lo << ", " << window.hi << "], " << s.t.size() << " samples";
        v.grid = os.str();
    }
    v.finite = true;
    std::vector<double> octave_sup;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        const double ratio = s.v[i] / model(s.t[i]);
        v.finite = v.finite && is_normal_or_zero(ratio);
        v.constant = std::max(v.constant, ratio);
        const auto octave = static_cast<std::size_t>(std::floor(std::log2(s.t[i] / window.lo)));
        if (octave >= octave_sup.size()) octave_sup.resize(octave + 1, 0.0);
        octave_sup[octave] = std::max(octave_sup[octave], ratio);
    }
    std::vector<double> nonempty;
    for (double x : octave_sup)
        if (x > 0.0) nonempty.push_back(x);
    v.trend = nonempty.size() >= 2 ? nonempty.back() / nonempty[nonempty.size() - 2] : 1.0;
    return v;
}

InequalityVerdict check_order(std::span<const double> abscissa, std::span<const double> value,
                              const DecayModel& model, Window window) {
    return check_order_fn(
        abscissa, value, [&model](double t) { return model.value(t); }, model.describe(), window);
}

LiminfCheck liminf_check(std::span<const double> abscissa, std::span<const double> value, double q,
                         double c) {
    if (abscissa.size() != value.size())
        throw ValidationError("liminf_check: abscissa/value length mismatch");
    if (abscissa.size() < 2) throw ValidationError("liminf_check: window too small");
    const double lo = abscissa.front(), hi = abscissa.back();
    if (!(lo > 0.0) || !(hi > lo)) throw ValidationError("liminf_check: window too small");
    const double split = std::sqrt(lo * hi); // log-scale midpoint
    LiminfCheck out;
    out.weight_q = q;
    out.floor_c = c;
    out.min_weighted = std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        if (abscissa[i] < split) continue;
        out.min_weighted = std::min(out.min_weighted, std::pow(abscissa[i], q) * value[i]);
        ++used;
    }
    if (used == 0) throw ValidationError("liminf_check: window too small");
    out.pass = out.min_weighted >= c - 1e-9;
    return out;
}

} // namespace sglab
