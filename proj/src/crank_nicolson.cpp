#include "sglab/crank_nicolson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "sglab/errors.hpp"
#include "sglab/parallel.hpp"
#include "sglab/rng.hpp"

namespace sglab {

StepsizeSchedule StepsizeSchedule::constant(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw ValidationError("schedule: constant tau must be positive and finite");
    StepsizeSchedule s;
    s.type_ = ScheduleType::Constant;
    s.taus_ = {tau};
    s.tau_min_ = s.tau_max_ = tau;
    return s;
}

StepsizeSchedule StepsizeSchedule::periodic(std::vector<double> taus) {
    if (taus.empty()) throw ValidationError("schedule: periodic list must be nonempty");
    for (double tau : taus)
        if (!(tau > 0.0) || !std::isfinite(tau))
            throw ValidationError("schedule: stepsizes must be positive and finite");
    StepsizeSchedule s;
    s.type_ = ScheduleType::Periodic;
    s.tau_min_ = *std::min_element(taus.begin(), taus.end());
    s.tau_max_ = *std::max_element(taus.begin(), taus.end());
    s.taus_ = std::move(taus);
    return s;
}

StepsizeSchedule StepsizeSchedule::uniform_random(double tau_min, double tau_max,
                                                  std::uint64_t seed) {
    if (!(tau_min > 0.0) || !(tau_max >= tau_min) || !std::isfinite(tau_max))
        throw ValidationError("schedule: need 0 < tau_min <= tau_max < inf");
    StepsizeSchedule s;
    s.type_ = ScheduleType::UniformRandom;
    s.tau_min_ = tau_min;
    s.tau_max_ = tau_max;
    s.seed_ = seed;
    return s;
}

double StepsizeSchedule::tau(std::size_t n) const {
    switch (type_) {
    case ScheduleType::Constant:
        return taus_[0];
    case ScheduleType::Periodic:
        return taus_[n % taus_.size()];
    case ScheduleType::UniformRandom:
        return tau_min_ + SplitMix64::uniform01(seed_, n) * (tau_max_ - tau_min_);
    }
    return 0.0;
}

std::string StepsizeSchedule::describe() const {
    std::ostringstream os;
    switch (type_) {
    case ScheduleType::Constant:
        os << "constant:" << taus_[0];
        break;
    case ScheduleType::Periodic:
        os << "periodic:";
        for (std::size_t i = 0; i < taus_.size(); ++i) os << (i ? "," : "") << taus_[i];
        break;
    case ScheduleType::UniformRandom:
        os << "random:" << tau_min_ << "," << tau_max_ << ",seed=" << seed_;
        break;
    }
    return os.str();
}

StepsizeSchedule StepsizeSchedule::parse(const std::string& text) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::istringstream is(s);
        std::string item;
        while (std::getline(is, item, sep)) parts.push_back(item);
        return parts;
    };
    try {
        if (text.rfind("constant:", 0) == 0) return constant(std::stod(text.substr(9)));
        if (text.rfind("periodic:", 0) == 0) {
            std::vector<double> taus;
            for (const auto& part : split(text.substr(9), ',')) taus.push_back(std::stod(part));
            return periodic(std::move(taus));
        }
        if (text.rfind("random:", 0) == 0) {
            const auto parts = split(text.substr(7), ',');
            if (parts.size() != 3 || parts[2].rfind("seed=", 0) != 0)
                throw ValidationError("schedule: random needs \"random:min,max,seed=N\"");
            return uniform_random(std::stod(parts[0]), std::stod(parts[1]),
                                  std::stoull(parts[2].substr(5)));
        }
    } catch (const ValidationError&) {
        throw;
    } catch (...) {
        throw ValidationError("schedule: cannot parse \"" + text + "\"");
    }
    throw ValidationError("schedule: unknown kind \"" + text + "\"");
}

Complex cayley_scalar(double tau, Complex lambda) {
    const Complex half = 0.5 * tau * lambda;
    return (1.0 + half) / (1.0 - half);
}

double cayley_log_modulus(double tau, Complex lambda) {
    // |1 + a|^2 - |1 - a|^2 = 4 Re a with a = tau lambda / 2
    const double re = lambda.real(), im = lambda.imag();
    const double dr = 1.0 - 0.5 * tau * re;
    const double di = 0.5 * tau * im;
    const double den = dr * dr + di * di;
    return 0.5 * std::log1p(2.0 * tau * re / den);
}

NormCurve TrajectoryResult::as_curve() const {
    NormCurve c;
    c.discrete = true;
    c.abscissa.reserve(steps.size());
    for (std::size_t n : steps) c.abscissa.push_back(static_cast<double>(n));
    c.value = value;
    c.argmax = argmax;
    c.spec_hash = spec_hash;
    c.kernel = "cayley_product";
    c.modes = modes;
    c.tail_safe = tail_safe;
    c.schedule = schedule;
    c.alpha = alpha;
    return c;
}

namespace {

void validate_samples(std::span<const std::size_t> samples, std::size_t n_steps) {
    if (samples.empty()) throw ValidationError("cn: sample list must be nonempty");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0 && !(samples[i] > samples[i - 1]))
            throw ValidationError("cn: samples must be strictly increasing");
    }
    if (samples.back() > n_steps)
        throw ValidationError("cn: samples exceed the step budget N");
}

} // namespace

TrajectoryResult cn_norm_curve(const SpectrumSpec& spec, const StepsizeSchedule& sched,
                               double alpha, std::size_t n_steps,
                               std::span<const std::size_t> samples) {
    if (!(alpha >= 0.0)) throw ValidationError("cn_norm_curve: alpha must be >= 0");
    validate_samples(samples, n_steps);
    const auto& ev = spec.eigenvalues();
    const std::size_t modes = ev.size();
    const std::size_t n_samples = samples.size();

    TrajectoryResult out;
    out.steps.assign(samples.begin(), samples.end());
    out.value.resize(n_samples);
    out.argmax.resize(n_samples);
    out.schedule = sched.describe();
    out.alpha = alpha;
    out.spec_hash = spec.hash();
    out.modes = modes;

    struct ChunkBest {
        double log_value;
        std::size_t argmax;
    };
    const std::size_t n_chunks = std::min<std::size_t>(64, modes);
    std::vector<ChunkBest> best(n_chunks * n_samples);

    if (sched.type() == ScheduleType::Constant) {
        // constant stepsize: the product collapses to n * log|a_d|, so each
        // sample costs O(K) and the step budget can be arbitrarily large
        const double tau = sched.tau(0);
        parallel_chunks(modes, [&](std::size_t c, std::size_t lo, std::size_t hi) {
            for (std::size_t s = 0; s < n_samples; ++s) {
                const double n = static_cast<double>(samples[s]);
                double b = -std::numeric_limits<double>::infinity();
                std::size_t bk = lo + 1;
                for (std::size_t i = lo; i < hi; ++i) {
                    const double v = n * cayley_log_modulus(tau, ev[i]) -
                                     0.5 * alpha * std::log(std::norm(ev[i]));
                    if (v > b) {
                        b = v;
                        bk = i + 1;
                    }
                }
                best[c * n_samples + s] = {b, bk};
            }
        }, n_chunks);
    } else {
        parallel_chunks(modes, [&](std::size_t c, std::size_t lo, std::size_t hi) {
            std::vector<double> acc(hi - lo, 0.0);
            std::vector<double> weight(hi - lo);
            for (std::size_t i = lo; i < hi; ++i)
                weight[i - lo] = -0.5 * alpha * std::log(std::norm(ev[i]));
            std::size_t next = 0;
            for (std::size_t n = 0; n <= samples.back(); ++n) {
                if (next < n_samples && samples[next] == n) {
                    double b = -std::numeric_limits<double>::infinity();
                    std::size_t bk = lo + 1;
                    for (std::size_t i = lo; i < hi; ++i) {
                        const double v = acc[i - lo] + weight[i - lo];
                        if (v > b) {
                            b = v;
                            bk = i + 1;
                        }
                    }
                    best[c * n_samples + next] = {b, bk};
                    ++next;
                }
                if (n == samples.back()) break;
                const double tau_n = sched.tau(n);
                for (std::size_t i = lo; i < hi; ++i)
                    acc[i - lo] += cayley_log_modulus(tau_n, ev[i]);
            }
        }, n_chunks);
    }

    out.tail_safe = true;
    for (std::size_t s = 0; s < n_samples; ++s) {
        double b = -std::numeric_limits<double>::infinity();
        std::size_t bk = 1;
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const ChunkBest& cb = best[c * n_samples + s];
            if (cb.log_value > b) {
                b = cb.log_value;
                bk = cb.argmax;
            }
        }
        out.value[s] = std::exp(b);
        out.argmax[s] = bk;
        out.tail_safe = out.tail_safe && (bk <= modes / 2 || modes == 1);
    }
    return out;
}

TrajectoryResult cn_trajectory_matrix(const DenseOperator& a, const StepsizeSchedule& sched,
                                      const Vector& x0, std::size_t n_steps,
                                      std::span<const std::size_t> samples) {
    validate_samples(samples, n_steps);
    if (x0.size() != a.dim()) throw ValidationError("cn_trajectory_matrix: x0 dimension mismatch");

    const Eigen::Index dim = a.dim();
    const Matrix id = Matrix::Identity(dim, dim);
    std::map<double, Eigen::PartialPivLU<Matrix>> lu_cache;

    TrajectoryResult out;
    out.steps.assign(samples.begin(), samples.end());
    out.value.resize(samples.size());
    out.schedule = sched.describe();
    out.modes = static_cast<std::size_t>(dim);
    out.tail_safe = true;

    Vector x = x0;
    std::size_t next = 0;
    for (std::size_t n = 0; n <= samples.back(); ++n) {
        if (next < samples.size() && samples[next] == n) {
            out.value[next] = x.norm();
            ++next;
        }
        if (n == samples.back()) break;
        const double tau = sched.tau(n);
        auto it = lu_cache.find(tau);
        if (it == lu_cache.end()) {
            if (lu_cache.size() > 64) lu_cache.clear(); // random schedules: bounded cache
            it = lu_cache.emplace(tau, Eigen::PartialPivLU<Matrix>(id - 0.5 * tau * a.entries()))
                     .first;
        }
        const Vector rhs = x + 0.5 * tau * (a.entries() * x);
        x = it->second.solve(rhs);
        if (!x.allFinite()) throw NumericsError("cn_trajectory_matrix: solver produced non-finite state");
    }
    return out;
}

ConstantMaximizer cn_constant_maximizer(double gamma, std::size_t n) {
    if (!(gamma > 0.0)) throw ValidationError("cn_constant_maximizer: gamma must be > 0");
    if (n == 0) throw ValidationError("cn_constant_maximizer: n must be >= 1");
    const double nd = static_cast<double>(n);
    const double w =
        2.0 * std::sqrt(gamma * gamma * nd * nd + gamma * gamma - gamma * nd) + 2.0 * gamma * nd -
        1.0;
    if (!(w >= gamma * gamma + 1.0))
        throw ValidationError("cn_constant_maximizer: n too small, w_n below gamma^2 + 1");
    const double log_ratio = std::log1p(-4.0 * gamma / (w + 1.0 + 2.0 * gamma));
    const double log_f = nd * log_ratio - std::log(w);
    ConstantMaximizer out;
    out.w = w;
    out.bound = std::exp(0.5 * log_f);
    return out;
}

std::vector<std::size_t> dyadic_samples(std::size_t n_steps) {
    std::vector<std::size_t> s{0};
    for (std::size_t n = 1; n <= n_steps; n *= 2) s.push_back(n);
    if (s.back() != n_steps) s.push_back(n_steps);
    return s;
}

} // namespace sglab
