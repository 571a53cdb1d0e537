#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>

#include "hubbell/special.hpp"
#include "support.hpp"

using namespace hubbell;

TEST_CASE("pochhammer basic values") {
    CHECK(pochhammer(0.5, 0) == 1.0);
    CHECK(pochhammer(0.5, 3) == 0.5 * 1.5 * 2.5);
    CHECK(pochhammer(2.0, 4) == 120.0); // Gamma(6)/Gamma(2)
    CHECK(pochhammer(-2.0, 4) == 0.0);  // crosses zero
}

TEST_CASE("pochhammer recurrence is exact in floating arithmetic") {
    auto rng = test_rng(11);
    std::uniform_real_distribution<double> alpha_dist(-5.0, 5.0);
    std::uniform_int_distribution<int> k_dist(0, 40);
    for (int i = 0; i < 200; ++i) {
        const double alpha = alpha_dist(rng);
        const std::size_t k = static_cast<std::size_t>(k_dist(rng));
        CHECK(pochhammer(alpha, k + 1) ==
              pochhammer(alpha, k) * (alpha + static_cast<double>(k)));
    }
}

TEST_CASE("pochhammer overflows to infinity without crashing") {
    const double v = pochhammer(10.0, 400);
    CHECK(std::isinf(v));
}

TEST_CASE("hyp2f1 trivial and frozen values") {
    SECTION("z = 0 gives 1") {
        EvalResult r = hyp2f1(0.7, 2.3, 1.9, 0.0);
        CHECK(r.value == 1.0);
        CHECK(r.converged);
    }
    SECTION("arctan value at z = -1") {
        EvalResult r = hyp2f1(1.0, 0.5, 1.5, -1.0);
        CHECK(rel_diff(r.value, std::numbers::pi / 4.0) < 1e-15);
    }
    SECTION("direct series vs high-precision oracle") {
        EvalResult r = hyp2f1(0.5, 0.5, 1.0, -0.02 / 1.04);
        CHECK(r.method == Method::Series);
        CHECK(rel_diff(r.value, ref::hyp_half_half_one_m1o52) < 1e-13);

        CHECK(rel_diff(hyp2f1(0.75, 1.25, 2.5, -0.3).value, ref::hyp_direct_case) < 1e-13);
    }
    SECTION("Pfaff path") {
        EvalResult r = hyp2f1(0.75, 1.25, 2.5, -7.0);
        CHECK(r.method == Method::Pfaff);
        CHECK(rel_diff(r.value, ref::hyp_pfaff_case) < 1e-13);
    }
    SECTION("inverse-argument path") {
        EvalResult r = hyp2f1(2.4, 0.5, 1.5, -300.0);
        CHECK(r.method == Method::LargeZ);
        CHECK(rel_diff(r.value, ref::hyp_largez_case) < 1e-13);

        EvalResult deep = hyp2f1(3.7, 0.5, 1.5, -1e6);
        CHECK(deep.method == Method::LargeZ);
        CHECK(rel_diff(deep.value, ref::hyp_largez_deep) < 1e-13);
    }
    SECTION("integer parameter difference falls back to Pfaff") {
        // gamma - max = -1 makes the retained-min series terminate
        EvalResult r = hyp2f1(2.5, 0.5, 1.5, -300.0);
        CHECK(r.method == Method::Pfaff);
        CHECK(r.converged);
        CHECK(rel_diff(r.value, ref::hyp_intdiff_case) < 1e-13);
    }
    SECTION("large first parameter keeps full accuracy") {
        // direct-region argument where the plain series loses ~14 digits
        EvalResult r = hyp2f1(296.0, 0.5, 1.5, -0.222);
        CHECK(r.method == Method::Pfaff);
        CHECK(r.converged);
        CHECK(rel_diff(r.value, ref::hyp_large_param) < 1e-13);
    }
}

TEST_CASE("hyp2f1 domain errors") {
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 0.0, -0.1), domain_error);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, -3.0, -0.1), domain_error);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, 1.0, 0.1), domain_error);
    CHECK_NOTHROW(hyp2f1(0.5, 0.5, -2.5, -0.1)); // negative non-integer gamma is fine
}

TEST_CASE("hyp2f1 reports non-convergence with the best value so far") {
    SeriesControl tiny;
    tiny.max_terms = 5;
    EvalResult r = hyp2f1(0.5, 0.5, 1.0, -0.49, tiny);
    CHECK_FALSE(r.converged);
    CHECK(r.terms_used == 5);
    CHECK(std::isfinite(r.value));
    CHECK(rel_diff(r.value, hyp2f1(0.5, 0.5, 1.0, -0.49).value) < 1e-2);
}

TEST_CASE("arctan identity x 2F1(1,1/2;3/2;-x^2) = arctan(x)") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        const double lhs = x * hyp2f1(1.0, 0.5, 1.5, -x * x).value;
        CHECK(rel_diff(lhs, std::atan(x)) < 1e-13);
    }
}

TEST_CASE("direct series and Pfaff transformation agree") {
    auto rng = test_rng(23);
    std::uniform_real_distribution<double> param(0.0, 5.0);
    std::uniform_real_distribution<double> zdist(-0.49, 0.0);
    SeriesControl ctl;
    for (int i = 0; i < 500; ++i) {
        const double alpha = param(rng) + 1e-3;
        const double beta = param(rng) + 1e-3;
        const double gamma = beta + param(rng) + 1e-3;
        const double z = zdist(rng);
        const double direct = detail::hyp2f1_direct(alpha, beta, gamma, z, ctl).value;
        const double pfaff = detail::hyp2f1_pfaff(alpha, beta, gamma, z, ctl).value;
        REQUIRE(rel_diff(direct, pfaff) < 1e-12);
    }
}

TEST_CASE("hyp2f1 is bounded in (0,1] for positive parameters, gamma above min") {
    auto rng = test_rng(37);
    std::uniform_real_distribution<double> param(0.05, 5.0);
    std::uniform_real_distribution<double> zdist(-30.0, 0.0);
    for (int i = 0; i < 300; ++i) {
        const double alpha = param(rng);
        const double beta = param(rng);
        const double gamma = std::min(alpha, beta) + param(rng);
        const double z = zdist(rng);
        EvalResult r = hyp2f1(alpha, beta, gamma, z);
        REQUIRE(r.value > 0.0);
        REQUIRE(r.value <= 1.0 + 1e-12);
    }
}

TEST_CASE("converged results honour the est_error contract") {
    SeriesControl ctl;
    for (double z : {-0.01, -0.3, -0.8, -5.0, -200.0}) {
        EvalResult r = hyp2f1(0.9, 0.45, 1.7, z, ctl);
        if (r.converged)
            CHECK(r.est_error <=
                  ctl.rel_tol * std::max(std::fabs(r.value),
                                         std::numeric_limits<double>::min()));
    }
}
