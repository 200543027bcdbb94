#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "wolffpot/exponents.hpp"

using namespace wolffpot;

TEST_CASE("gamma exponents: worked values") {
    const Exponents e = gamma_exponents(3.0, 1.0, 0.5);
    CHECK(e.gamma1 == doctest::Approx(12.0 / 7.0).epsilon(1e-15));
    CHECK(e.gamma2 == doctest::Approx(10.0 / 7.0).epsilon(1e-15));
    CHECK(e.denom == doctest::Approx(3.5).epsilon(1e-15));

    const Exponents s = gamma_exponents(2.0, 0.5, 0.5);
    CHECK(s.gamma1 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.gamma2 == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("q1 = q2 collapses to (p-1)/(p-1-q) and gamma1 = gamma2") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> up(1.05, 8.0);
    std::uniform_real_distribution<double> uq(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        const double p = up(rng);
        const double q = uq(rng) * (p - 1.0);
        const Exponents e = gamma_exponents(p, q, q);
        CHECK(e.gamma1 == e.gamma2);
        CHECK(e.gamma1 == doctest::Approx((p - 1.0) / (p - 1.0 - q)).epsilon(1e-13));
    }
}

TEST_CASE("exponent identities hold to a few ulp over random triples") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> up(1.02, 10.0);
    std::uniform_real_distribution<double> uq(0.001, 0.999);
    for (int i = 0; i < 10000; ++i) {
        const double p = up(rng);
        const double q1 = uq(rng) * (p - 1.0);
        const double q2 = uq(rng) * (p - 1.0);
        const Exponents e = gamma_exponents(p, q1, q2);
        const double id1 = q1 / (p - 1.0) * e.gamma2 + 1.0;
        const double id2 = q2 / (p - 1.0) * e.gamma1 + 1.0;
        const double ulp1 = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(e.gamma1);
        const double ulp2 = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(e.gamma2);
        CHECK(std::abs(e.gamma1 - id1) <= ulp1);
        CHECK(std::abs(e.gamma2 - id2) <= ulp2);
        CHECK(e.gamma1 > 1.0);
        CHECK(e.gamma2 > 1.0);
    }
}

TEST_CASE("delta recursion: hand-computed second step and monotone limit") {
    // p = 2, q1 = q2 = 0.5: delta_2 = 0.5 (0.5 * 1 + 1) + 1 = 1.75, limit 2
    const LowerBoundSequence seq = lower_bound_sequence(2.0, 0.5, 0.5, 1.0, 1.0, 60, 0.0);
    CHECK(seq.deltas[0] == 1.0);
    CHECK(seq.deltas[1] == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(seq.gamma1_limit == doctest::Approx(2.0).epsilon(1e-15));
    for (size_t i = 1; i < seq.deltas.size(); ++i) {
        CHECK(seq.deltas[i] >= seq.deltas[i - 1]);        // nondecreasing
        if (seq.gamma1_limit - seq.deltas[i] > 1e-13)
            CHECK(seq.deltas[i] > seq.deltas[i - 1]);     // strict until the plateau
        CHECK(seq.deltas[i] < seq.gamma1_limit + 1e-12);  // bounded by gamma1
    }
    CHECK(std::abs(seq.deltas.back() - 2.0) < 1e-12);
}

TEST_CASE("kappa = 1 collapses the constant recursion to c1 powers") {
    const LowerBoundSequence seq = lower_bound_sequence(2.0, 0.5, 0.5, 1.0, 0.3, 40, 0.0);
    const double ratio = 0.25;
    for (size_t j = 0; j < seq.consts.size(); ++j) {
        const double want = std::pow(0.3, std::pow(ratio, static_cast<double>(j)));
        CHECK(seq.consts[j] == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(seq.consts.back() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(seq.const_limit == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("delta error contracts geometrically (ratio 1/8 example)") {
    const LowerBoundSequence seq = lower_bound_sequence(3.0, 1.0, 0.5, 1.0, 1.0, 200, 0.0);
    const Exponents e = gamma_exponents(3.0, 1.0, 0.5);
    CHECK(e.contraction_ratio == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(std::abs(seq.deltas.back() - e.gamma1) <= 1e-10);
    // exact geometric bound
    for (size_t j = 0; j < std::min<size_t>(seq.deltas.size(), 40); ++j) {
        const double bound =
            std::pow(e.contraction_ratio, static_cast<double>(j)) * (e.gamma1 - 1.0);
        CHECK(std::abs(seq.deltas[j] - e.gamma1) <= bound * (1.0 + 1e-12) + 1e-15);
    }
}

TEST_CASE("c_j limit matches the closed form at kappa != 1") {
    for (auto [p, q1, q2, kappa] :
         {std::tuple{2.0, 0.5, 0.5, 0.37}, std::tuple{3.0, 1.0, 0.5, 2.4},
          std::tuple{2.5, 0.9, 0.3, 0.05}}) {
        const LowerBoundSequence seq = lower_bound_sequence(p, q1, q2, kappa, 0.7, 5000, 0.0);
        CHECK(seq.consts.back() == doctest::Approx(seq.const_limit).epsilon(1e-8));
    }
}

TEST_CASE("subsolution scale") {
    CHECK(subsolution_scale(2.0, 0.5, 0.5, 1.0) == 1.0);
    // p=2, q=0.5, kappa=0.5: lambda1 = 0.5^{(0.5*2)/0.5} = 0.25
    CHECK(subsolution_scale(2.0, 0.5, 0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    // nonincreasing as kappa decreases below 1
    double prev = 1.0;
    for (double k : {0.9, 0.7, 0.5, 0.2, 0.05}) {
        const double l = subsolution_scale(2.0, 0.4, 0.7, k);
        CHECK(l <= prev + 1e-15);
        prev = l;
    }
}

TEST_CASE("validate: accepts the reference quintuple, rejects each violation") {
    Params ok;
    ok.n = 3;
    ok.p = 2.0;
    ok.alpha = 1.0;
    ok.q1 = ok.q2 = 0.5;
    CHECK(&validate(ok) == &ok);

    Params bad = ok;
    bad.q1 = 1.5;
    CHECK_THROWS_WITH_AS(validate(bad), "q1 out of range (0, p-1)", std::invalid_argument);
    bad = ok;
    bad.q2 = -0.1;
    CHECK_THROWS_WITH_AS(validate(bad), "q2 out of range (0, p-1)", std::invalid_argument);
    bad = ok;
    bad.alpha = 2.0;  // 2 >= 3/2
    CHECK_THROWS_WITH_AS(validate(bad), "alpha >= n/p", std::invalid_argument);
    bad = ok;
    bad.p = 3.0;
    bad.q1 = bad.q2 = 0.5;
    bad.mode = Params::Mode::pde_equivalent;
    CHECK_THROWS_WITH_AS(validate(bad), "p >= n: nonexistence", std::invalid_argument);
    bad = ok;
    bad.mode = Params::Mode::pde_equivalent;
    bad.alpha = 0.5;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("argument validation of the sequence builders") {
    CHECK_THROWS_AS(gamma_exponents(0.5, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(gamma_exponents(2.0, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_sequence(2.0, 0.5, 0.5, -1.0, 1.0, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_sequence(2.0, 0.5, 0.5, 1.0, 0.0, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_sequence(2.0, 0.5, 0.5, 1.0, 1.0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(subsolution_scale(2.0, 0.5, 0.5, 0.0), std::invalid_argument);
}
