#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sglab/matrix_backend.hpp"
#include "sglab/spectral_calculus.hpp"
#include "sglab/spectrum.hpp"

namespace sglab {

enum class ScheduleType { Constant, Periodic, UniformRandom };

// Stepsize rule tau_n in [tau_min, tau_max]. UniformRandom draws tau uniformly
// from [tau_min, tau_max) with the SplitMix64 counter generator, so the
// sequence is a pure function of (seed, n).
class StepsizeSchedule {
public:
    static StepsizeSchedule constant(double tau);
    static StepsizeSchedule periodic(std::vector<double> taus);
    static StepsizeSchedule uniform_random(double tau_min, double tau_max, std::uint64_t seed);

    ScheduleType type() const { return type_; }
    double tau(std::size_t n) const;
    double tau_min() const { return tau_min_; }
    double tau_max() const { return tau_max_; }
    std::uint64_t seed() const { return seed_; }

    std::string describe() const; // "constant:2" | "periodic:1,3" | "random:0.5,4,seed=42"
    static StepsizeSchedule parse(const std::string& text);

private:
    StepsizeSchedule() = default;
    ScheduleType type_ = ScheduleType::Constant;
    std::vector<double> taus_;
    double tau_min_ = 0.0;
    double tau_max_ = 0.0;
    std::uint64_t seed_ = 0;
};

// One-step Cayley multiplier (1 + tau lambda / 2)/(1 - tau lambda / 2);
// modulus < 1 whenever Re lambda < 0.
Complex cayley_scalar(double tau, Complex lambda);

// log |cayley_scalar|, evaluated as 0.5 log1p(2 tau Re lambda / |1 - tau lambda/2|^2)
// so that near-unit moduli keep full precision.
double cayley_log_modulus(double tau, Complex lambda);

// Sampled trajectory of the operator norm || prod_j A_d(tau_j) (-A)^{-alpha} ||
// on a spectral model (exact per-mode arithmetic, log-domain accumulation).
struct TrajectoryResult {
    std::vector<std::size_t> steps;
    std::vector<double> value;
    std::vector<std::size_t> argmax; // empty for matrix trajectories

    std::string schedule;
    double alpha = 0.0;
    std::uint64_t spec_hash = 0;
    std::size_t modes = 0;
    bool tail_safe = false;

    NormCurve as_curve() const;
};

TrajectoryResult cn_norm_curve(const SpectrumSpec& spec, const StepsizeSchedule& sched,
                               double alpha, std::size_t n_steps,
                               std::span<const std::size_t> samples);

// Advances x_{n+1} = A_d(tau_n) x_n by one linear solve per step (A_d is never
// formed) and records ||x_n|| at the sampled indices.
TrajectoryResult cn_trajectory_matrix(const DenseOperator& a, const StepsizeSchedule& sched,
                                      const Vector& x0, std::size_t n_steps,
                                      std::span<const std::size_t> samples);

// Maximizer analysis of the constant-stepsize example (tau = 2):
//   w_n = 2 sqrt(gamma^2 n^2 + gamma^2 - gamma n) + 2 gamma n - 1,
//   bound = sqrt(f_n(w_n)),  f_n(w) = ((w+1-2 gamma)/(w+1+2 gamma))^n / w.
// The bound dominates cn_norm_curve for ExpComb(gamma) at the same n.
struct ConstantMaximizer {
    double w = 0.0;
    double bound = 0.0;
};

ConstantMaximizer cn_constant_maximizer(double gamma, std::size_t n);

// {0, 1, 2, 4, ...} up to n_steps, always including n_steps itself.
std::vector<std::size_t> dyadic_samples(std::size_t n_steps);

} // namespace sglab
