#include "doctest.h"

#include <cmath>
#include <vector>

#include "sglab/decay.hpp"
#include "sglab/errors.hpp"
#include "sglab/spectral_calculus.hpp"

using namespace sglab;

namespace {

struct Synthetic {
    std::vector<double> t;
    std::vector<double> v;
};

Synthetic power_curve(double c, double p, double lo, double hi) {
    Synthetic s;
    for (double t = lo; t <= hi; t *= 2.0) {
        s.t.push_back(t);
        s.v.push_back(c * std::pow(t, -p));
    }
    return s;
}

} // namespace

TEST_CASE("exact power-law data is recovered exactly") {
    const auto s = power_curve(3.0, 0.5, 1.0, 1 << 20);
    const auto fit = fit_power(s.t, s.v, Window{1.0, 1 << 20});
    CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.residual_max < 1e-12);
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("fits are invariant under positive rescaling") {
    const auto s = power_curve(1.0, 0.75, 1.0, 1 << 16);
    auto scaled = s;
    for (auto& v : scaled.v) v *= 17.0;
    const Window w{1.0, 1 << 16};
    CHECK(fit_power(s.t, s.v, w).exponent ==
          doctest::Approx(fit_power(scaled.t, scaled.v, w).exponent).epsilon(1e-13));
}

TEST_CASE("fit preconditions") {
    const auto s = power_curve(1.0, 0.5, 1.0, 64.0);
    CHECK_THROWS_AS(fit_power(s.t, s.v, Window{1.0, 64.0}), ValidationError); // < 8 after burn-in
    auto bad = power_curve(1.0, 0.5, 1.0, 1 << 16);
    bad.v[10] = 0.0;
    CHECK_THROWS_AS(fit_power(bad.t, bad.v, Window{1.0, 1 << 16}), ValidationError);
}

TEST_CASE("check_order identity and model mismatch") {
    Synthetic s;
    for (double t = 2.0; t <= 1 << 16; t *= 2.0) {
        s.t.push_back(t);
        s.v.push_back(std::pow(t, -0.5));
    }
    const Window w{2.0, 1 << 16};
    const auto ok = check_order(s.t, s.v, DecayModel::power_law(0.5), w);
    CHECK(ok.constant == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ok.trend == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(ok.finite);

    // a model decaying faster than the data must show trend > 1
    const auto wrong = check_order(s.t, s.v, DecayModel::power_law(0.6), w);
    CHECK(wrong.trend > 1.0);
}

TEST_CASE("decay model values and parsing") {
    CHECK(DecayModel::power_law(0.5).value(4.0) == doctest::Approx(0.5));
    CHECK(DecayModel::power_log_half().value(std::exp(1.0)) ==
          doctest::Approx(std::sqrt(1.0 / std::exp(1.0))));
    CHECK(DecayModel::log_power(2.0).value(std::exp(2.0)) == doctest::Approx(0.25));
    CHECK(DecayModel::log_over_t().value(std::exp(1.0)) ==
          doctest::Approx(1.0 / std::exp(1.0)));
    CHECK(DecayModel::parse("power:0.5").param == 0.5);
    CHECK(DecayModel::parse("powerlog").kind == DecayModelKind::PowerLogHalf);
    CHECK(DecayModel::parse("logpow:2").param == 2.0);
    CHECK_THROWS_AS(DecayModel::parse("cubic"), ValidationError);
    CHECK_THROWS_AS(DecayModel::power_log_half().value(0.5), ValidationError);
}

TEST_CASE("liminf on synthetic data") {
    Synthetic s;
    for (double t = 1.0; t <= 1024.0; t *= 2.0) {
        s.t.push_back(t);
        s.v.push_back(std::pow(t, -0.5));
    }
    const auto check = liminf_check(s.t, s.v, 0.5, 1.0);
    CHECK(check.pass);
    CHECK(check.min_weighted == doctest::Approx(1.0));
    CHECK_FALSE(liminf_check(s.t, s.v, 0.5, 1.0 + 1e-6).pass);
    CHECK_THROWS_AS(liminf_check(std::vector<double>{1.0}, std::vector<double>{1.0}, 0.5, 1.0),
                    ValidationError);
}

TEST_CASE("fitted exponent of the spectral curve hits alpha/2 for any gamma") {
    for (double gamma : {0.5, 1.0, 2.0}) {
        const auto spec = SpectrumSpec::exp_comb(gamma, 4096);
        const auto curve =
            norm_curve(spec, KernelKind::inv_semigroup_frac(1.0), dyadic_grid(1.0, 1e6));
        const auto fit = fit_power(curve.abscissa, curve.value, Window{1e2, 1e6});
        CHECK(fit.exponent > 0.45);
        CHECK(fit.exponent < 0.55);
    }
}
