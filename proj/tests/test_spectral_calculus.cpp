#include "doctest.h"

#include <cmath>
#include <vector>

#include "sglab/errors.hpp"
#include "sglab/spectral_calculus.hpp"

using namespace sglab;

namespace {

// brute-force oracle: evaluate the scalar kernel mode by mode in plain
// arithmetic and take the max
double brute_force_sup(const SpectrumSpec& spec, const KernelKind& kind, double t) {
    double best = 0.0;
    for (auto lambda : spec.eigenvalues()) {
        double v = 0.0;
        switch (kind.tag) {
        case Kernel::Semigroup:
            v = std::exp(t * lambda.real());
            break;
        case Kernel::InvSemigroup:
            v = std::exp(t * lambda.real() / std::norm(lambda));
            break;
        case Kernel::InvSemigroupFrac:
            v = std::exp(t * lambda.real() / std::norm(lambda)) *
                std::pow(std::abs(lambda), -kind.alpha);
            break;
        case Kernel::SemigroupFrac:
            v = std::exp(t * lambda.real()) * std::pow(std::abs(lambda), -kind.alpha);
            break;
        case Kernel::SemigroupResolventShift:
            v = std::exp(t * lambda.real()) / std::abs(1.0 - lambda);
            break;
        }
        best = std::max(best, v);
    }
    return best;
}

} // namespace

TEST_CASE("witness values of the inverse-semigroup kernel on the exponential comb") {
    const auto spec = SpectrumSpec::exp_comb(1.0, 64);
    const auto kind = KernelKind::inv_semigroup_frac(1.0);

    // t = alpha (gamma^2 + k^2) / (2 gamma) with k = 1: exact value 1/sqrt(2e)
    const auto r = kernel_norm(spec, kind, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / std::sqrt(2.0 * std::exp(1.0))).epsilon(1e-12));
    CHECK(r.argmax_k == 1);
    CHECK(r.tail_safe);

    for (std::size_t k : {2, 5, 10}) {
        const auto w = optimality_witness(spec, 1.0, k);
        const auto at_witness = kernel_norm(spec, kind, w.t);
        CHECK(at_witness.value == doctest::Approx(w.lower_bound).epsilon(1e-12));
        CHECK(at_witness.argmax_k == k);
    }
}

TEST_CASE("kernel norms at t = 0 reduce to powers of |lambda|") {
    const auto exp = SpectrumSpec::exp_comb(1.0, 64);
    CHECK(kernel_norm(exp, KernelKind::inv_semigroup_frac(2.0), 0.0).value ==
          doctest::Approx(0.5).epsilon(1e-14)); // 1/|lambda_1|^2 = 1/2

    const auto poly = SpectrumSpec::poly_comb(1.0, 256);
    CHECK(kernel_norm(poly, KernelKind::inv_semigroup_frac(1.0), 0.0).value ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(kernel_norm(poly, KernelKind::inv_semigroup_frac(1.0), 0.0).value ==
          doctest::Approx(brute_force_sup(poly, KernelKind::inv_semigroup_frac(1.0), 0.0)));
}

TEST_CASE("kernel_norm agrees with the brute-force oracle") {
    const auto spec = SpectrumSpec::poly_comb(1.0, 512);
    for (const auto& kind :
         {KernelKind::semigroup(), KernelKind::inv_semigroup(),
          KernelKind::inv_semigroup_frac(1.5), KernelKind::semigroup_frac(0.5),
          KernelKind::semigroup_resolvent_shift()}) {
        for (double t : {0.0, 0.5, 3.0, 40.0}) {
            const auto r = kernel_norm(spec, kind, t);
            CHECK(r.value == doctest::Approx(brute_force_sup(spec, kind, t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("continuous envelope formula and threshold") {
    CHECK(continuous_envelope(1.0, 1.0, 1.0) ==
          doctest::Approx(0.42888194248035333).epsilon(1e-12));
    CHECK(continuous_envelope(1.0, 2.0, 10.0) ==
          doctest::Approx(1.0 / (10.0 * std::exp(1.0))).epsilon(1e-12));
    CHECK(continuous_envelope(2.0, 1.0, 100.0) ==
          doctest::Approx(std::sqrt(1.0 / (400.0 * std::exp(1.0)))).epsilon(1e-12));
    CHECK_THROWS_AS(continuous_envelope(1.0, 1.0, 0.99), ValidationError);
}

TEST_CASE("envelope dominates the spectral sup and touches it at witnesses") {
    const auto spec = SpectrumSpec::exp_comb(1.0, 512);
    const double alpha = 1.0;
    const auto kind = KernelKind::inv_semigroup_frac(alpha);
    for (double t = 1.0; t < 1e4; t *= 1.7)
        CHECK(kernel_norm(spec, kind, t).value <= continuous_envelope(1.0, alpha, t) * (1 + 1e-12));
    for (std::size_t k : {1, 3, 17}) {
        const auto w = optimality_witness(spec, alpha, k);
        CHECK(kernel_norm(spec, kind, w.t).value ==
              doctest::Approx(continuous_envelope(1.0, alpha, w.t)).epsilon(1e-12));
    }
}

TEST_CASE("optimality witnesses") {
    const auto exp = SpectrumSpec::exp_comb(1.0, 64);
    const auto w1 = optimality_witness(exp, 1.0, 1);
    CHECK(w1.t == doctest::Approx(1.0));
    CHECK(w1.lower_bound == doctest::Approx(0.42888194248035333).epsilon(1e-12));

    const auto w2 = optimality_witness(exp, 2.0, 2);
    CHECK(w2.t == doctest::Approx(5.0));
    CHECK(w2.lower_bound == doctest::Approx(2.0 / (10.0 * std::exp(1.0))).epsilon(1e-12));

    const auto poly = SpectrumSpec::poly_comb(1.0, 64);
    const auto w3 = optimality_witness(poly, 1.0, 3);
    CHECK(w3.t == doctest::Approx(9.0));
    CHECK(w3.lower_bound ==
          doctest::Approx(std::pow(2.0, -0.5) * std::pow(1.0 / (27.0 * std::exp(1.0)), 1.0 / 3.0))
              .epsilon(1e-12));
    // the truncated sup must reach the lower bound (cross-checked brute force)
    CHECK(brute_force_sup(poly, KernelKind::inv_semigroup_frac(1.0), w3.t) >=
          w3.lower_bound * (1 - 1e-12));

    CHECK_THROWS_AS(optimality_witness(SpectrumSpec::poly_comb(2.0, 8), 1.0, 2), ValidationError);
    CHECK_THROWS_AS(optimality_witness(SpectrumSpec::custom({Complex(-1, 0)}), 1.0, 1),
                    ValidationError);
    CHECK_THROWS_AS(optimality_witness(exp, 1.0, 65), ValidationError);
}

TEST_CASE("liminf floor holds at witness times") {
    const auto spec = SpectrumSpec::exp_comb(1.0, 2048);
    const double alpha = 1.0;
    const auto kind = KernelKind::inv_semigroup_frac(alpha);
    const double floor = std::pow(alpha / (2.0 * std::exp(1.0)), 0.5 * alpha);
    for (std::size_t k = 1; k <= 512; k *= 2) {
        const auto w = optimality_witness(spec, alpha, k);
        const double weighted = std::pow(w.t, 0.5 * alpha) * kernel_norm(spec, kind, w.t).value;
        CHECK(weighted >= floor - 1e-12);
    }
}

TEST_CASE("norm curves") {
    const auto spec = SpectrumSpec::exp_comb(1.0, 32);
    const std::vector<double> grid{0.0, 1.0, 2.0};
    const auto curve = norm_curve(spec, KernelKind::semigroup(), grid);
    CHECK(curve.value[0] == doctest::Approx(1.0));
    CHECK(curve.value[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(curve.value[2] == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(curve.tail_safe); // all modes tie; first index wins

    const std::vector<double> single{3.0};
    const auto kind = KernelKind::inv_semigroup_frac(1.0);
    CHECK(norm_curve(spec, kind, single).value[0] ==
          doctest::Approx(kernel_norm(spec, kind, 3.0).value));

    // dyadic grid: values monotone nonincreasing past the first witness
    const auto big = SpectrumSpec::exp_comb(1.0, 4096);
    const auto dy = dyadic_grid(1.0, 1UL << 20);
    const auto c = norm_curve(big, kind, dy);
    for (std::size_t i = 1; i < c.value.size(); ++i)
        if (c.abscissa[i - 1] >= 1.0) CHECK(c.value[i] <= c.value[i - 1] * (1 + 1e-12));

    CHECK_THROWS_AS(norm_curve(spec, kind, std::vector<double>{2.0, 1.0}), ValidationError);
}

TEST_CASE("truncation behavior") {
    // sup over a larger finite set can only grow
    const auto kind = KernelKind::inv_semigroup_frac(1.0);
    for (double t : {1.0, 64.0, 4096.0}) {
        double prev = 0.0;
        for (std::size_t modes : {16, 64, 256, 1024}) {
            const double v = kernel_norm(SpectrumSpec::exp_comb(1.0, modes), kind, t).value;
            CHECK(v >= prev * (1 - 1e-15));
            prev = v;
        }
    }

    // plain semigroup kernel on the polynomial comb peaks at the last mode:
    // the finite sup is truncation-contaminated and must be flagged
    const auto poly = SpectrumSpec::poly_comb(1.0, 128);
    const auto r = kernel_norm(poly, KernelKind::semigroup(), 5.0);
    CHECK(r.argmax_k == 128);
    CHECK_FALSE(r.tail_safe);
}

TEST_CASE("dyadic grids include the first point at or above hi") {
    CHECK(dyadic_grid(1.0, 1e6).size() == 21);
    CHECK(dyadic_grid(1.0, 1024.0).size() == 11);
    CHECK(dyadic_grid(1.0, 1024.0).back() == 1024.0);
    CHECK(dyadic_grid(1.0, 1e6).back() == 1048576.0);
}
