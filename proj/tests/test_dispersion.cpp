#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/helpers.hpp"
#include "support/oracles.hpp"

#include "wavekit/dispersion.hpp"
#include "wavekit/presets.hpp"

#include <cmath>
#include <random>

using namespace wavekit;

TEST_CASE("dispersion function at reference points")
{
    CHECK(dispersion_l(1, -1.0, 1.0).value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dispersion_l(0, -1.0, 1.0).value() ==
          doctest::Approx(1.0 / std::tan(1.0)).epsilon(1e-15));
    CHECK(dispersion_l(2, -1.0, 1.0).value() ==
          doctest::Approx(std::sqrt(3.0) / std::tanh(std::sqrt(3.0))).epsilon(1e-15));
}

TEST_CASE("dispersion poles are reported as undefined")
{
    CHECK_FALSE(dispersion_l(0, -M_PI * M_PI, 1.0).has_value());
    CHECK_FALSE(dispersion_l(0, -4.0 * M_PI * M_PI, 1.0).has_value());
    CHECK_FALSE(dispersion_l(2, -M_PI * M_PI - 4.0, 1.0).has_value());
    CHECK(dispersion_l(0, -M_PI * M_PI + 1e-3, 1.0).has_value());
}

TEST_CASE("kernel equation right-hand side at the named examples")
{
    for (const char* name : {"ek1", "ek2", "ek3"}) {
        const Preset* p = find_preset(name);
        REQUIRE(p != nullptr);
        CHECK(rhs_r(p->params) == doctest::Approx(1.0).epsilon(1e-14));
    }
    // mu^2 = -2/(|alpha|^{3/2} sin 2 lambda) with lambda in (pi/2, pi) forces r = 0
    const double alpha = -3.7;
    const double lambda = 2.2;
    const double mu =
        std::sqrt(-2.0 / (std::pow(-alpha, 1.5) * std::sin(2.0 * lambda)));
    CHECK(std::abs(rhs_r({mu, alpha, lambda, 1.0})) < 1e-12);
}

TEST_CASE("kernel sets of the named examples")
{
    CHECK(kernel_set(find_preset("ek1")->params).modes == std::vector<int>{1});
    CHECK(kernel_set(find_preset("ek2")->params).modes == std::vector<int>{1, 2});
    CHECK(kernel_set(find_preset("ek3")->params).modes == std::vector<int>{2, 3});
    CHECK(kernel_set(find_preset("ek1")->params).dimension() == 1);
    CHECK_FALSE(kernel_set(find_preset("ek1")->params).contains_zero);
}

TEST_CASE("amplitude chart for a prescribed mode")
{
    CHECK(mu_for_mode(1, -1.0, M_PI / 2, 1.0).value() ==
          doctest::Approx(1.0).epsilon(1e-14));

    const double sigma = sigma_constant();
    const double kappa = sigma / std::sqrt(3.0);
    CHECK(mu_for_mode(2, -4.0 * kappa * kappa, M_PI / 2, kappa).value() ==
          doctest::Approx(1.0 / (2.0 * kappa)).epsilon(1e-13));

    // mode 0 also admits a chart value, and then genuinely joins the kernel:
    // zero-mode membership must be checked separately by callers.
    const double mu0 = mu_for_mode(0, -1.0, M_PI / 2, 1.0).value();
    CHECK(mu0 == doctest::Approx(1.0 / std::sqrt(1.0 / std::tan(1.0))).epsilon(1e-12));
    CHECK(kernel_set({mu0, -1.0, M_PI / 2, 1.0}).contains_zero);
}

TEST_CASE("transversality condition")
{
    CHECK(transversality_ok(find_preset("ek1")->params));
    CHECK(transversality_ok({1.0, -1.0, 3.0 * M_PI / 4.0, 1.0}));
    // cot(lambda) = -mu^2 |alpha|^{3/2}/2 exactly: mu=1, alpha=-1, cot = -1/2
    const double lambda_bad = M_PI - std::atan(2.0);
    CHECK_FALSE(transversality_ok({1.0, -1.0, lambda_bad, 1.0}));
}

TEST_CASE("fixed point of tan")
{
    const double sigma = sigma_constant();
    CHECK(std::abs(sigma - oracle::tan_fixed_point()) < 1e-14);
    CHECK(std::abs(sigma / std::tan(sigma) - 1.0) < 1e-12);
    CHECK(std::abs(std::sin(sigma) / sigma - std::cos(sigma)) < 1e-12);
    CHECK(sigma == doctest::Approx(4.493409457909).epsilon(1e-12));
}

TEST_CASE("upper semicontinuity of the kernel set under perturbations")
{
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int done = 0;
    while (done < 100) {
        const auto sample = testutil::sample_kernel_point(rng);
        if (!sample)
            continue;
        ++done;
        const TrivialParameters& base = sample->params;
        const KernelSet ks_strict = kernel_set(base);
        REQUIRE(ks_strict.contains(sample->n));

        for (int rep = 0; rep < 100; ++rep) {
            const double d = 1e-4;
            TrivialParameters p = base;
            p.mu += d * (2.0 * u01(rng) - 1.0) * std::abs(base.mu);
            p.alpha += d * (2.0 * u01(rng) - 1.0) * std::abs(base.alpha);
            p.lambda += d * (2.0 * u01(rng) - 1.0);
            const KernelSet ks_pert = kernel_set(p);

            // the base membership band is widened by the observed drift of the
            // kernel equation between the two parameter points
            double drift = std::abs(rhs_r(p) - rhs_r(base));
            for (int n = 0; n <= 40; ++n) {
                const auto la = dispersion_l(n, p.alpha, p.kappa);
                const auto lb = dispersion_l(n, base.alpha, base.kappa);
                if (la && lb)
                    drift = std::max(drift, std::abs(*la - *lb));
            }
            const double tol_base = 2.0 * drift + 1e-8;
            const KernelSet ks_wide = kernel_set(base, tol_base);
            for (int n : ks_pert.modes)
                CHECK(ks_wide.contains(n));
        }
    }
}

TEST_CASE("chart consistency under perturbations of alpha and lambda")
{
    std::mt19937 rng(515151);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int done = 0;
    while (done < 100) {
        const auto sample = testutil::sample_kernel_point(rng);
        if (!sample)
            continue;
        ++done;
        const TrivialParameters& base = sample->params;
        const double alpha = base.alpha * (1.0 + 1e-3 * (2.0 * u01(rng) - 1.0));
        const double lambda = base.lambda + 1e-3 * (2.0 * u01(rng) - 1.0);
        const auto mu = mu_for_mode(sample->n, alpha, lambda, base.kappa,
                                    base.mu > 0 ? +1 : -1);
        if (!mu)
            continue;
        CHECK(kernel_set({*mu, alpha, lambda, base.kappa}).contains(sample->n));
    }
}

TEST_CASE("dispersion is increasing beyond the oscillatory range")
{
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> ua(-60.0, -0.2);
    std::uniform_real_distribution<double> uk(0.3, 2.5);
    for (int trial = 0; trial < 500; ++trial) {
        const double alpha = ua(rng);
        const double kappa = uk(rng);
        const int n_min = static_cast<int>(std::ceil(std::sqrt(-alpha) / kappa));
        for (int n = n_min; n < n_min + 6; ++n) {
            const auto a = dispersion_l(n, alpha, kappa);
            const auto b = dispersion_l(n + 1, alpha, kappa);
            REQUIRE(a.has_value());
            REQUIRE(b.has_value());
            CHECK(*b > *a);
        }
    }
}

TEST_CASE("transversality fails exactly at the critical points of the chart")
{
    // mu*(lambda) = mu_for_mode(n, alpha, lambda): its lambda-derivative
    // vanishes exactly where the transversality quantity changes sign.
    const double alpha = -1.0;
    const double kappa = 1.0;
    const int n = 2;
    auto mu_chart = [&](double lam) { return mu_for_mode(n, alpha, lam, kappa).value(); };
    auto dmu = [&](double lam) {
        const double h = 1e-7;
        return (mu_chart(lam + h) - mu_chart(lam - h)) / (2.0 * h);
    };
    auto quantity = [&](double lam) {
        const double mu = mu_chart(lam);
        return 1.0 / std::tan(lam) + 0.5 * mu * mu; // |alpha|^{3/2} = 1
    };

    // bracket a sign change of the derivative inside (pi/2, pi)
    double lo = M_PI / 2 + 0.05, hi = M_PI - 0.35;
    REQUIRE(dmu(lo) * dmu(hi) < 0.0);
    CHECK(quantity(lo) * quantity(hi) < 0.0);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dmu(lo) * dmu(mid) <= 0.0 ? hi : lo) = mid;
    }
    const double lam_crit = 0.5 * (lo + hi);
    CHECK(std::abs(quantity(lam_crit)) < 1e-6);

    // away from the critical point the condition holds...
    CHECK(transversality_ok({mu_chart(lam_crit - 0.3), alpha, lam_crit - 0.3, kappa}));
    // ...and at an exact root of the quantity it is rejected
    double qlo = lam_crit - 0.1, qhi = lam_crit + 0.1;
    REQUIRE(quantity(qlo) * quantity(qhi) < 0.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (qlo + qhi);
        (quantity(qlo) * quantity(mid) <= 0.0 ? qhi : qlo) = mid;
    }
    const double lam_zero = 0.5 * (qlo + qhi);
    CHECK_FALSE(transversality_ok({mu_chart(lam_zero), alpha, lam_zero, kappa}));
}
