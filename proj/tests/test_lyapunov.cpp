#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "sglab/errors.hpp"
#include "sglab/lyapunov.hpp"
#include "sglab/matrix_backend.hpp"
#include "sglab/quadrature.hpp"
#include "sglab/rng.hpp"
#include "sglab/spectral_calculus.hpp"

using namespace sglab;

namespace {

using Cx = std::complex<double>;

ModeVector random_modes(std::size_t n, std::uint64_t seed) {
    std::vector<Cx> c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = Cx(SplitMix64::uniform01(seed, 2 * i) - 0.5,
                  SplitMix64::uniform01(seed, 2 * i + 1) - 0.5);
    return ModeVector::from(std::move(c));
}

std::vector<double> dyadic_down(double top, int count) {
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) grid.push_back(top * std::pow(0.5, i));
    return grid;
}

} // namespace

TEST_CASE("p and q forms: scalar closed forms") {
    const auto one = SpectrumSpec::custom({Cx(-1.0, 0.0)});
    const auto x = ModeVector::constant(1);
    CHECK(p_form(one, 0.5, x) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(q_form(one, 0.5, x) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // Re(1/lambda) = -1/2 for lambda = -1+i
    const auto rot = SpectrumSpec::custom({Cx(-1.0, 1.0)});
    CHECK(q_form(rot, 0.5, x) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("forms match the quadrature of their defining integrals") {
    const auto spec = SpectrumSpec::exp_comb(1.0, 16);
    const auto x = random_modes(16, 13);
    const auto& ev = spec.eigenvalues();
    for (double xi : {0.1, 0.75}) {
        const auto p_int = integrate_decaying(
            [&](double t) {
                double sum = 0.0;
                for (std::size_t k = 0; k < ev.size(); ++k)
                    sum += std::norm(x.coeffs[k]) * std::exp(2.0 * t * ev[k].real());
                return std::exp(-2.0 * xi * t) * sum;
            },
            0.0, 0.5, QuadOptions{1e-11, 1e-16, 4000});
        CHECK(p_int.converged);
        CHECK(p_form(spec, xi, x) == doctest::Approx(p_int.value).epsilon(1e-8));

        const auto q_int = integrate_decaying(
            [&](double t) {
                double sum = 0.0;
                for (std::size_t k = 0; k < ev.size(); ++k)
                    sum += std::norm(x.coeffs[k]) *
                           std::exp(2.0 * t * ev[k].real() / std::norm(ev[k]));
                return std::exp(-2.0 * xi * t) * sum;
            },
            0.0, 0.5, QuadOptions{1e-11, 1e-16, 4000});
        CHECK(q_int.converged);
        CHECK(q_form(spec, xi, x) == doctest::Approx(q_int.value).epsilon(1e-8));
    }
}

TEST_CASE("r form: worked example and monotonicity") {
    const auto one = SpectrumSpec::custom({Cx(-1.0, 0.0)});
    const auto x = ModeVector::constant(1);
    CHECK(xi_of_r(0.5) == doctest::Approx(0.3).epsilon(1e-14));
    // (2/2) p(0.15) + 2*2 q(0.6) = 1/2.3 + 4/3.2
    CHECK(r_form(one, 2.0, 2.0, 0.5, x) ==
          doctest::Approx(1.0 / 2.3 + 4.0 / 3.2).epsilon(1e-13));

    double prev = 0.0;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const double v = r_form(one, 2.0, 2.0, r, x);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("p form bound and poly rejection at xi = 0") {
    const auto exp = SpectrumSpec::exp_comb(1.0, 256);
    const auto x = ModeVector::constant(256);
    const double denom = std::pow(x.norm(), 2);
    // sup_{xi > 0} <x,P(xi)x> <= K1 ||x||^2 with K1 = 1/(2 gamma) per mode
    for (double xi = 1e-6; xi <= 64.0; xi *= 4.0)
        CHECK(p_form(exp, xi, x) / denom <= 0.5 + 1e-12);
    CHECK(p_form(exp, 0.0, x) / denom <= 0.5 + 1e-12);

    const auto poly = SpectrumSpec::poly_comb(1.0, 16);
    CHECK_THROWS_AS(p_form(poly, 0.0, ModeVector::constant(16)), ValidationError);
}

TEST_CASE("mode vector norms") {
    const auto spec = SpectrumSpec::custom({Cx(-1.0, 0.0), Cx(-3.0, 4.0)});
    const auto x = ModeVector::from({Cx(2.0, 0.0), Cx(0.0, 1.0)});
    CHECK(x.norm() == doctest::Approx(std::sqrt(5.0)));
    // ||(-A)x||^2 = 4*1 + 1*25
    CHECK(x.weighted_norm(spec, 1.0) == doctest::Approx(std::sqrt(29.0)).epsilon(1e-14));
    CHECK(x.weighted_norm(spec, 0.0) == doctest::Approx(x.norm()));
    CHECK_THROWS_AS(x.weighted_norm(SpectrumSpec::exp_comb(1.0, 3), 1.0), ValidationError);
}

TEST_CASE("pz probe: single mode killed by tau = 2") {
    const auto one = SpectrumSpec::custom({Cx(-1.0, 0.0)});
    const auto sched = StepsizeSchedule::constant(2.0);
    const auto x0 = ModeVector::constant(1);
    const auto y = ModeVector::constant(1);
    const std::vector<double> r_grid{0.5, 0.75, 0.875};
    const auto v = pz_inequality_probe(one, sched, x0, y, r_grid, 64);
    CHECK(v.finite);
    // x_n = 0 for n >= 1, so the constant is the n = 0 term maximized over r
    double expect = 0.0;
    for (double r : r_grid)
        expect = std::max(expect, std::sqrt(1.0 - r) / std::sqrt(r_form(one, 2.0, 2.0, r, x0)));
    CHECK(v.constant == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("pz probe is finite and stable under truncation growth") {
    const std::vector<double> r_grid{0.5, 0.75, 0.875, 0.9375, 0.96875};
    const auto sched = StepsizeSchedule::uniform_random(0.5, 4.0, 11);
    double prev = -1.0;
    for (std::size_t modes : {256, 512}) {
        const auto spec = SpectrumSpec::exp_comb(1.0, modes);
        const auto x0 = ModeVector::inverse_square(modes);
        const auto y = ModeVector::inverse_square(modes);
        const auto v = pz_inequality_probe(spec, sched, x0, y, r_grid, 2048);
        CHECK(v.finite);
        CHECK(v.constant > 0.0);
        if (prev > 0.0) CHECK(std::fabs(v.constant - prev) / prev < 0.05);
        prev = v.constant;
    }
}

TEST_CASE("q bound check variants") {
    const auto exp = SpectrumSpec::exp_comb(1.0, 512);
    const auto x = ModeVector::inverse_square(512);
    const auto grid = dyadic_down(0.5, 20);

    const auto half = q_bound_check(exp, x, 0.5, grid);
    CHECK(half.finite);
    CHECK(half.constant > 0.0);

    const auto log_grid = dyadic_down(0.25, 20); // the log variant needs xi < 1/2
    const auto log_v = q_bound_check(exp, x, 1.0, log_grid);
    CHECK(log_v.finite);

    const auto poly = SpectrumSpec::poly_comb(1.0, 512);
    const auto poly_v = q_bound_check(poly, x, 1.0, grid, QBoundVariant::Polynomial, 1.0);
    CHECK(poly_v.finite);

    // single mode: q form is 1/(2(xi + 1)), so the weighted ratio vanishes with xi
    const auto one = SpectrumSpec::custom({Cx(-1.0, 0.0)});
    const auto v1 = q_bound_check(one, ModeVector::constant(1), 0.5, grid);
    CHECK(v1.finite);
    CHECK(v1.constant <= 0.5 * std::sqrt(0.5) / 1.5 + 1e-12);

    CHECK_THROWS_AS(q_bound_check(exp, x, 1.5, grid), ValidationError);
    const std::vector<double> bad{0.75};
    CHECK_THROWS_AS(q_bound_check(exp, x, 1.0, bad), ValidationError);
}

TEST_CASE("shifted inverse integral bound") {
    const auto one = SpectrumSpec::custom({Cx(-1.0, 0.0)});
    const auto x1 = ModeVector::constant(1);
    const std::vector<double> xi1{1.0};
    const auto v1 = shifted_inverse_integral_check(one, 1.0, xi1, x1);
    // LHS = 1/4 and the bound is K^2/(2 xi) = 1/2: measured constant 1/2
    CHECK(v1.constant == doctest::Approx(0.5).epsilon(1e-14));

    const auto grid = dyadic_down(8.0, 24);
    for (const auto& spec :
         {SpectrumSpec::exp_comb(1.0, 256), SpectrumSpec::poly_comb(1.0, 256)}) {
        const auto x = ModeVector::inverse_square(256);
        for (double gamma : {0.5, 1.0, 3.0}) {
            const auto v = shifted_inverse_integral_check(spec, gamma, grid, x);
            CHECK(v.finite);
            CHECK(v.constant <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("shifted inverse matches quadrature on a 3-mode spectrum") {
    const auto spec = SpectrumSpec::custom({Cx(-1.0, 1.0), Cx(-0.5, -2.0), Cx(-2.0, 0.5)});
    const auto x = ModeVector::from({Cx(1.0, 0.0), Cx(0.5, 0.5), Cx(0.0, -1.0)});
    const double gamma = 1.5, xi = 0.8;
    // ||e^{(gamma A - xi)^{-1} t} (gamma A - xi)^{-1} x||^2 summed over modes
    const auto& ev = spec.eigenvalues();
    const auto integral = integrate_decaying(
        [&](double t) {
            double sum = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                const Cx mu = gamma * ev[k] - xi;
                sum += std::norm(x.coeffs[k]) * std::exp(2.0 * t * (1.0 / mu).real()) /
                       std::norm(mu);
            }
            return sum;
        },
        0.0, 0.5, QuadOptions{1e-11, 1e-16, 4000});
    CHECK(integral.converged);
    double closed = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
        closed += std::norm(x.coeffs[k]) / (2.0 * (xi - gamma * ev[k].real()));
    CHECK(closed == doctest::Approx(integral.value).epsilon(1e-8));
}

TEST_CASE("step-1 xi log check") {
    const auto poly = SpectrumSpec::poly_comb(1.0, 2048);
    const auto x = ModeVector::inverse_square(2048);
    const auto grid = dyadic_down(0.25, 28);
    const auto v = step1_xi_log_check(poly, 1.0, grid, x);
    CHECK(v.finite);

    // truncation stability: constant moves by < 1% when modes double
    const auto poly2 = SpectrumSpec::poly_comb(1.0, 4096);
    const auto x2 = ModeVector::inverse_square(4096);
    const auto v2 = step1_xi_log_check(poly2, 1.0, grid, x2);
    CHECK(std::fabs(v2.constant - v.constant) / v.constant < 0.01);

    // single mode: xi |log xi|^2 / (2 (xi + 1)) -> 0 as xi -> 0
    const auto one = SpectrumSpec::custom({Cx(-1.0, 0.0)});
    const auto v3 = step1_xi_log_check(one, 1.0, grid, ModeVector::constant(1));
    CHECK(v3.finite);
    CHECK(v3.constant < 1.0);
    CHECK_THROWS_AS(step1_xi_log_check(poly, 1.0, std::vector<double>{0.75}, x),
                    ValidationError);
}

TEST_CASE("Gautschi exponential-integral bound") {
    for (double tau = 1e-3; tau <= 1e3; tau *= 10.0) {
        const auto integral = integrate_decaying(
            [](double t) { return std::exp(-t) / t; }, tau, std::max(tau, 1.0),
            QuadOptions{1e-11, 1e-18, 4000});
        CHECK(integral.converged);
        CHECK(integral.value <= std::exp(-tau) * std::log(1.0 + 1.0 / tau) * (1 + 1e-9));
    }
}

TEST_CASE("bounded inverse semigroup norm on the polynomial comb") {
    // light version of the sup_t finiteness check (dyadic t, two truncations)
    const auto kind = KernelKind::inv_semigroup_frac(1.0);
    double sup_small = 0.0, sup_big = 0.0;
    for (double t = 1.0; t <= 1e6; t *= 4.0) {
        sup_small = std::max(sup_small, kernel_norm(SpectrumSpec::poly_comb(1.0, 512), kind, t).value);
        sup_big = std::max(sup_big, kernel_norm(SpectrumSpec::poly_comb(1.0, 1024), kind, t).value);
    }
    CHECK(is_normal_or_zero(sup_small));
    CHECK(std::fabs(sup_big - sup_small) / sup_small < 0.01);
}

TEST_CASE("lyapunov solve quadratic form equals p_form on an embedded normal matrix") {
    // diagonal normal matrix embedded as a custom spectrum
    const std::vector<Cx> lambdas{Cx(-1.0, 2.0), Cx(-0.5, -1.0), Cx(-2.5, 0.0)};
    Matrix a = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) a(i, i) = lambdas[i];
    const DenseOperator op(a);
    const auto spec = SpectrumSpec::custom(lambdas);
    const auto x = ModeVector::from({Cx(1.0, 0.0), Cx(0.25, -0.5), Cx(-0.75, 0.0)});
    Vector xv(3);
    for (int i = 0; i < 3; ++i) xv(i) = x.coeffs[i];
    for (double xi : {0.25, 1.0}) {
        const Matrix p = lyapunov_solve(op, xi);
        const double form = (xv.adjoint() * (p * xv))(0, 0).real();
        CHECK(form == doctest::Approx(p_form(spec, xi, x)).epsilon(1e-9));
    }
}
