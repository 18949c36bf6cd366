#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <doctest.h>

#include "twrelay/analysis.hpp"

using namespace twr;
using namespace twr::analysis;

namespace {

const ModulationConstant bpsk_c{2.0};

// Gaussian tail by quadrature; independent of erfc.
double q_oracle(double x) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double tail = integrator.integrate([x](double t) { return std::exp(-(x + t) * (x + t) / 2.0); });
    return tail / std::sqrt(2.0 * M_PI);
}

// K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt
double bessel_k_oracle(int nu, double z) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([=](double t) {
        if (t > 700.0) return 0.0;
        const double e = -z * std::cosh(t);
        return 0.5 * (std::exp(e + nu * t) + std::exp(e - nu * t));
    });
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("power profile derived quantities") {
    const PowerProfile pp(1.0, 1.0, 0.01);
    CHECK(pp.lambda() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pp.psi_s() == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(pp.psi_r() == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(pp.psi() == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(pp.total() == doctest::Approx(3.0));

    const PowerProfile odd(0.3, 1.7, 0.02);
    CHECK(rel(odd.lambda(), 0.3 / 1.7) < 1e-12);

    CHECK_THROWS_AS(PowerProfile(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PowerProfile(1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PowerProfile(1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(ModulationConstant(0.0), std::domain_error);
}

TEST_CASE("q_function") {
    CHECK(q_function(0.0) == 0.5);
    CHECK(q_function(1.0) + q_function(-1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(q_function(1.2816) - 0.1000) < 1e-4);
    // frozen high-precision values
    CHECK(rel(q_function(1.2816), 0.0999915000976751) < 1e-12);
    CHECK(rel(q_function(3.0), 0.00134989803163009) < 1e-12);
    CHECK(rel(q_function(-0.7), 0.758036347776927) < 1e-12);
    CHECK(rel(q_function(5.0), 2.86651571879194e-7) < 1e-12);
    CHECK_THROWS_AS(q_function(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(q_function(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("q_function agrees with quadrature of the Gaussian tail") {
    for (double x : {-2.0, -0.3, 0.0, 0.5, 1.2816, 2.0, 3.5, 6.0}) {
        CAPTURE(x);
        CHECK(rel(q_function(x), q_oracle(x)) < 1e-10);
    }
}

TEST_CASE("q_function symmetry and monotonicity") {
    double prev = q_function(-8.0);
    for (int i = -799; i <= 800; ++i) {
        const double x = i / 100.0;
        const double q = q_function(x);
        CHECK(std::abs(q + q_function(-x) - 1.0) < 1e-12);
        // below about -5 the value is within a few ulps of 1
        if (x > -5.0) CHECK(q < prev);
        else CHECK(q <= prev);
        CHECK(q > 0.0);
        CHECK(q < 1.0);
        prev = q;
    }
}

TEST_CASE("odd double factorial") {
    CHECK(odd_double_factorial(0) == 1);
    CHECK(odd_double_factorial(1) == 1);
    CHECK(odd_double_factorial(3) == 15);
    CHECK(odd_double_factorial(4) == 105);
    // 39!! = 319830986772877770815625
    const uint128 expect = static_cast<uint128>(319830986772877ULL) * 1000000000ULL + 770815625ULL;
    CHECK(odd_double_factorial(20) == expect);
    CHECK_THROWS_AS(odd_double_factorial(21), std::out_of_range);
}

TEST_CASE("asymptotic_ser_rs") {
    const PowerProfile pp(1.0, 1.0, 0.01);
    CHECK(asymptotic_ser_rs(1, pp, bpsk_c) == doctest::Approx(0.015).epsilon(1e-12));
    // N=3: (15/2)(psi/c)^3
    CHECK(asymptotic_ser_rs(3, pp, bpsk_c) == doctest::Approx(7.5 * std::pow(0.03, 3)).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_ser_rs(0, pp, bpsk_c), std::domain_error);

    for (std::size_t n = 1; n <= 6; ++n) {
        double prev = asymptotic_ser_rs(n, pp, bpsk_c);
        for (double n0 : {3e-3, 1e-3, 1e-4, 1e-6}) {
            const double v = asymptotic_ser_rs(n, pp.with_noise(n0), bpsk_c);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("asymptotic_ser_ap") {
    const PowerProfile pp(1.0, 1.0, 0.01);
    // (3/4)((2/100 + 1/50)/2)^2
    CHECK(asymptotic_ser_ap(2, pp, bpsk_c) == doctest::Approx(0.0003).epsilon(1e-12));
    const double ratio = asymptotic_ser_ap(2, pp.with_noise(0.1), bpsk_c) / asymptotic_ser_ap(2, pp, bpsk_c);
    CHECK(ratio == doctest::Approx(100.0).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_ser_ap(0, pp, bpsk_c), std::domain_error);
}

TEST_CASE("RS over AP: formula values") {
    CHECK(ser_ratio_rs_over_ap(1, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ser_ratio_rs_over_ap(1, 7.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rel(ser_ratio_rs_over_ap(2, 1.0), 0.72) < 1e-14);
    CHECK(rel(ser_ratio_rs_over_ap(3, 1.0), 0.472303206997085) < 1e-14);
    CHECK(rel(ser_ratio_rs_over_ap(4, 1.0), 0.296296296296296) < 1e-14);
    CHECK_THROWS_AS(ser_ratio_rs_over_ap(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(ser_ratio_rs_over_ap(2, -1.0), std::domain_error);
}

TEST_CASE("RS over AP is below one once lambda exceeds about 0.354") {
    for (std::size_t n = 2; n <= 10; ++n) {
        for (int k = 36; k <= 1000; ++k) {
            const double lambda = k / 100.0;
            CHECK(ser_ratio_rs_over_ap(n, lambda) < 1.0);
        }
        // tends to N! as lambda -> 0
        CHECK(ser_ratio_rs_over_ap(n, 1e-9) == doctest::Approx(std::tgamma(n + 1.0)).epsilon(1e-6));
    }
    // N = 2 crosses one exactly at 1 / (2 sqrt 2)
    CHECK(ser_ratio_rs_over_ap(2, 1.0 / (2.0 * std::sqrt(2.0))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_SUITE("claims") {

// Stated as holding for every positive lambda; it fails below the crossover above.
TEST_CASE("RS over AP is below one for every N > 1 and every lambda in (0, 10]") {
    int violations = 0;
    for (std::size_t n = 2; n <= 10; ++n) {
        for (int k = 1; k <= 1000; ++k) violations += ser_ratio_rs_over_ap(n, k / 100.0) >= 1.0;
    }
    CHECK(violations == 0);
}

// Stated: the two asymptotes, taken as written, divide to the ratio formula.
TEST_CASE("asymptote quotient equals the ratio formula") {
    int mismatches = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        for (double lambda : {0.25, 0.5, 1.0, 2.0}) {
            const PowerProfile pp(lambda, 1.0, 1e-3);
            const double q = asymptotic_ser_rs(n, pp, bpsk_c) / asymptotic_ser_ap(n, pp, bpsk_c);
            mismatches += rel(q, ser_ratio_rs_over_ap(n, lambda)) > 1e-12;
        }
    }
    CHECK(mismatches == 0);
    const PowerProfile pp(1.0, 1.0, 0.01);
    CHECK(asymptotic_ser_ap(1, pp, bpsk_c) == asymptotic_ser_rs(1, pp, bpsk_c));
}

// Stated: within 5% of the exponential limit at x = 1 for psi_r = psi_s = 100.
TEST_CASE("exact density within 5% of its limit at x = 1") {
    const double limit = 0.02 * std::exp(-0.02);
    CHECK(rel(exact_snr_pdf(1.0, 100.0, 100.0), limit) < 0.05);
}

}  // TEST_SUITE

// The two closed-form asymptotes, taken as written, are related by
// N! [2(1+2l)/(1+(N+1)l)]^N rather than by the compact ratio formula.
// Pin the relation the implemented formulas actually satisfy.
TEST_CASE("RS and AP asymptotes: implemented relation") {
    for (std::size_t n = 1; n <= 6; ++n) {
        for (double lambda : {0.25, 0.5, 1.0, 2.0}) {
            const PowerProfile pp(lambda, 1.0, 1e-3);
            const double got = asymptotic_ser_rs(n, pp, bpsk_c) / asymptotic_ser_ap(n, pp, bpsk_c);
            double fact = 1.0;
            for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
            const double expect =
                fact * std::pow(2.0 * (1.0 + 2.0 * lambda) / (1.0 + (n + 1.0) * lambda), static_cast<double>(n));
            CAPTURE(n);
            CAPTURE(lambda);
            CHECK(rel(got, expect) < 1e-12);
        }
    }
}

TEST_CASE("opa_gain") {
    CHECK(opa_gain(0) == 1.0);
    CHECK(opa_gain(1) == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(rel(opa_gain(3), 0.702331961591221) < 1e-14);
}

TEST_CASE("exact_snr_pdf point values") {
    CHECK(exact_snr_pdf(0.0, 100.0, 50.0) == 0.0);
    CHECK(rel(exact_snr_pdf(1.0, 100.0, 50.0), 0.0319234573036382) < 1e-10);
    CHECK(rel(exact_snr_pdf(20.0, 100.0, 50.0), 0.0203695348624127) < 1e-10);
    CHECK(rel(exact_snr_pdf(0.5, 10.0, 1.0), 0.730378846269473) < 1e-10);
    CHECK(rel(exact_snr_pdf(1.0, 100.0, 100.0), 0.0211656946636464) < 1e-10);
    CHECK_THROWS_AS(exact_snr_pdf(-1.0, 100.0, 50.0), std::domain_error);

    const PowerProfile pp(1.0, 1.0, 0.01);
    CHECK(exact_snr_pdf(3.0, pp) == doctest::Approx(exact_snr_pdf(3.0, pp.psi_r(), pp.psi_s())));
}

TEST_CASE("exact_snr_pdf continuity at the origin") {
    const double a = 100.0, b = 50.0;
    const double at0 = (a + b) / (a * b);  // limit of the density as x -> 0
    CHECK(exact_snr_pdf(1e-9, a, b) == doctest::Approx(at0).epsilon(1e-6));
}

TEST_CASE("exact_snr_pdf near the exponential limit") {
    // For psi_r = psi_s = 100 the density approaches (psi/2) exp(-(psi/2) x), psi = 0.04.
    const auto limit = [](double x) { return 0.02 * std::exp(-0.02 * x); };
    CHECK(rel(exact_snr_pdf(0.01, 100.0, 100.0), limit(0.01)) < 0.05);
    CHECK(rel(exact_snr_pdf(0.01, 100.0, 100.0), 0.0200305223408584) < 1e-10);
    // At x = 1 the K0 term already contributes about 8%.
    CHECK(rel(exact_snr_pdf(1.0, 100.0, 100.0), limit(1.0)) == doctest::Approx(0.0797).epsilon(0.01));
}

TEST_CASE("Bessel K0 and K1 against their integral definitions") {
    for (double z : {1e-3, 0.5, 1.0, 5.0, 20.0, 50.0}) {
        CAPTURE(z);
        const double k0 = bessel_k_oracle(0, z);
        const double k1 = bessel_k_oracle(1, z);
        CHECK(rel(std::cyl_bessel_k(0.0, z), k0) < 1e-10);
        CHECK(rel(std::cyl_bessel_k(1.0, z), k1) < 1e-10);
    }
    CHECK(rel(std::cyl_bessel_k(0.0, 0.5), 0.924419071227666) < 1e-12);
    CHECK(rel(std::cyl_bessel_k(1.0, 1.0), 0.601907230197235) < 1e-12);
    CHECK(rel(std::cyl_bessel_k(0.0, 50.0), 3.41016774978950e-23) < 1e-10);
    CHECK(rel(std::cyl_bessel_k(0.0, 1e-8), 18.5366122596108) < 1e-10);
}

TEST_CASE("exact_snr_pdf integrates to one") {
    boost::math::quadrature::exp_sinh<double> integrator;
    for (double psi_r : {1.0, 10.0, 100.0}) {
        for (double psi_s : {1.0, 10.0, 100.0}) {
            CAPTURE(psi_r);
            CAPTURE(psi_s);
            double mass = integrator.integrate([=](double x) { return exact_snr_pdf(x, psi_r, psi_s); });
            CHECK(std::abs(mass - 1.0) < 1e-3);
            for (double x : {0.0, 0.1, 1.0, 10.0, 100.0, 1e4}) CHECK(exact_snr_pdf(x, psi_r, psi_s) >= 0.0);
        }
    }
}

TEST_CASE("selected_snr_cdf_approx") {
    CHECK(selected_snr_cdf_approx(0.0, 0.5, 3) == 0.0);
    CHECK(selected_snr_cdf_approx(1e6, 0.5, 3) == doctest::Approx(1.0));
    CHECK(rel(selected_snr_cdf_approx(1.0, 0.1, 2), 0.00905591700606271) < 1e-12);
    CHECK(selected_snr_cdf_approx(1.0, 0.1, 2, CdfForm::Limit) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(selected_snr_cdf_approx(100.0, 0.1, 2, CdfForm::Limit) > 1.0);
    double prev = 0.0;
    for (int i = 1; i < 200; ++i) {
        const double v = selected_snr_cdf_approx(i * 0.1, 0.3, 4);
        CHECK(v >= prev);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("asymptotic SER minimized at p_s = p/4 along the budget line") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const double p = 3.0;
        auto ser_at = [&](double p_s) {
            return asymptotic_ser_rs(n, PowerProfile(p_s, p - 2.0 * p_s, 0.01), bpsk_c);
        };
        const double best = ser_at(p / 4.0);
        for (double p_s : {0.5, 0.7, 0.74, 0.76, 0.8, 1.0}) CHECK(ser_at(p_s) > best);
    }
}
