#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "logfano/thresholds.hpp"

using namespace logfano;

namespace {

LogFanoCurve curve(std::initializer_list<Rational> ws) {
    return LogFanoCurve::from_weights(std::vector<Rational>(ws));
}

LogFanoCurve random_curve(std::mt19937_64& rng, int max_m = 4) {
    std::uniform_int_distribution<int> mdist(0, max_m);
    std::uniform_int_distribution<long long> den(2, 16);
    while (true) {
        int m = mdist(rng);
        std::vector<Rational> ws;
        Rational sum(0);
        for (int i = 0; i < m; ++i) {
            long long q = den(rng);
            std::uniform_int_distribution<long long> num(1, q - 1);
            Rational w(num(rng), q);
            ws.push_back(w);
            sum = sum + w;
        }
        if (sum < Rational(2)) return LogFanoCurve::from_weights(std::move(ws));
    }
}

} // namespace

TEST_CASE("gamma_n closed form") {
    CHECK(gamma_n(curve({}), 10) == Rational(9, 10));
    CHECK(gamma_n(curve({}), 2) == Rational(1, 2));
    // two points of weight 1/2, V = 1, N = 5: min{8/5, 1} = 1
    CHECK(gamma_n(curve({Rational(1, 2), Rational(1, 2)}), 5) == Rational(1));
    CHECK_THROWS_AS(gamma_n(curve({}), 1), ValidationError);
}

TEST_CASE("gamma_n_reduced closed form") {
    CHECK(gamma_n_reduced(curve({}), 5) == RationalOrInf(Rational(2)));
    CHECK(gamma_n_reduced(curve({}), 3) == RationalOrInf::infinity());
    CHECK(gamma_n_reduced(curve({}), 2) == RationalOrInf::infinity());
    // Delta_w with w = 1/2, V = 1, N = 6: min{5/3, 5/2} = 5/3
    CHECK(gamma_n_reduced(curve({Rational(1, 2), Rational(1, 2)}), 6) ==
          RationalOrInf(Rational(5, 3)));
    // N = 2, 3 fall back to the diagonal-only value 2(1-1/N)/V
    CHECK(gamma_n_reduced(curve({Rational(1, 2), Rational(1, 2)}), 2) ==
          RationalOrInf(Rational(1)));
    CHECK(gamma_n_reduced(curve({Rational(1, 2), Rational(1, 2)}), 3) ==
          RationalOrInf(Rational(4, 3)));
    CHECK_THROWS_AS(gamma_n_reduced(curve({Rational(1, 2)}), 5), ValidationError);
    // trivial automorphisms: reduced equals unreduced
    auto c3 = curve({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    CHECK(gamma_n_reduced(c3, 17) == RationalOrInf(gamma_n(c3, 17)));
}

TEST_CASE("oracle: unrestricted witness is the full diagonal for the round case") {
    auto rep = lct_oracle(curve({}), 7, false);
    CHECK(rep.value == RationalOrInf(Rational(6, 7)));
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->family == ValFamily::Diagonal);
    CHECK(rep.witness->codim == 6);
}

TEST_CASE("oracle: restricted round case, N = 5") {
    auto rep = lct_oracle(curve({}), 5, true);
    CHECK(rep.value == RationalOrInf(Rational(2)));
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->family == ValFamily::Diagonal);
    // argmin by enumeration: codim floor(N/2) - 1 = 1, i.e. floor(N/2) = 2
    // points colliding, ratio 2k/(c+1) = (N-1)/floor(N/2) = 2
    CHECK(rep.witness->codim == 1);
}

TEST_CASE("oracle: restricted two-point case, w = 3/4, N = 9") {
    auto rep = lct_oracle(curve({Rational(3, 4), Rational(3, 4)}), 9, true);
    CHECK(rep.value == RationalOrInf(Rational(8, 3)));
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->family == ValFamily::Marked);
    CHECK(rep.witness->codim == 4); // floor(N/2)
}

TEST_CASE("oracle: empty restricted candidate set is infinite") {
    auto rep = lct_oracle(curve({}), 3, true);
    CHECK(rep.value == RationalOrInf::infinity());
    CHECK_FALSE(rep.witness.has_value());
}

TEST_CASE("witness attains the reported minimum") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = random_curve(rng);
        long long N = 2 + static_cast<long long>(rng() % 40);
        auto rep = lct_oracle(c, N, false);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->ratio(c, N) == rep.value.value());
    }
}

TEST_CASE("oracle equals the closed forms on a randomized sweep") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        auto c = random_curve(rng);
        for (long long N = 2; N <= 40; ++N) {
            CHECK(lct_oracle(c, N, false).value == RationalOrInf(gamma_n(c, N)));
            if (c.m() == 0 || c.m() == 2)
                CHECK(lct_oracle(c, N, true).value == gamma_n_reduced(c, N));
        }
    }
}

TEST_CASE("reduced thresholds for the round case increase to 2") {
    auto c = curve({});
    Rational prev(0);
    for (long long N = 4; N <= 200; ++N) {
        auto g = gamma_n_reduced(c, N);
        REQUIRE_FALSE(g.is_infinite());
        if (N % 2 == 1) {
            CHECK(g.value() == Rational(2));
        } else {
            CHECK(g.value() == Rational(2) * Rational(N - 1) / Rational(N));
            CHECK(g.value() > prev);
            prev = g.value();
        }
        CHECK(g.value() <= Rational(2));
    }
}

TEST_CASE("asymptotic thresholds") {
    auto a0 = asymptotic_thresholds(curve({}));
    CHECK(a0.gamma_limit == Rational(1));
    CHECK(*a0.gamma_limit_reduced == Rational(2));
    CHECK(*a0.delta_a_reduced == Rational(2));
    CHECK(*a0.alpha_restricted == Rational(1));

    auto a14 = asymptotic_thresholds(curve({Rational(1, 4), Rational(1, 4)}));
    CHECK(*a14.delta_a_reduced == Rational(4, 3));
    CHECK(*a14.alpha_restricted == Rational(2, 3));

    auto a34 = asymptotic_thresholds(curve({Rational(3, 4), Rational(3, 4)}));
    CHECK(*a34.delta_a_reduced == Rational(2));

    auto atriv = asymptotic_thresholds(curve({Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
    CHECK(atriv.gamma_limit == Rational(4, 3));
    CHECK_FALSE(atriv.gamma_limit_reduced.has_value());
    CHECK_THROWS_AS(asymptotic_thresholds(curve({Rational(1, 2)})), ValidationError);
}

TEST_CASE("gibbs classification") {
    auto g0 = gibbs_classify(curve({}));
    CHECK(g0.semistable);
    CHECK_FALSE(g0.uniformly_stable);
    CHECK(*g0.polystable);
    CHECK(*g0.uniformly_polystable);
    CHECK_FALSE(g0.first_stable_level_N.has_value()); // never Gibbs stable

    // w = (2/3, 2/3, 1/2): V = 1/6, V/2 = 1/12 below 1 - w at every point,
    // so the curve is stable; the first stable level solves N(2-V) > 2.
    auto gs = gibbs_classify(curve({Rational(2, 3), Rational(2, 3), Rational(1, 2)}));
    CHECK(gs.semistable);
    CHECK(gs.uniformly_stable);
    CHECK(gs.first_stable_level_N.has_value());
    CHECK(*gs.polystable);

    auto gw = gibbs_classify(curve({Rational(1, 3), Rational(1, 3)}));
    CHECK(gw.semistable);
    CHECK_FALSE(gw.uniformly_stable);
    CHECK(*gw.polystable);

    auto gb = gibbs_classify(curve({Rational(1, 2)}));
    CHECK_FALSE(gb.polystable.has_value()); // non-reductive: no poly verdict
    CHECK_FALSE(gb.semistable);
}

TEST_CASE("first stable level matches the level predicate") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        auto c = random_curve(rng);
        auto g = gibbs_classify(c);
        if (g.first_stable_level_N) {
            long long n0 = *g.first_stable_level_N;
            CHECK(gibbs_stable_at_level(c, n0));
            if (n0 > 2) CHECK_FALSE(gibbs_stable_at_level(c, n0 - 1));
            CHECK(gibbs_stable_at_level(c, n0 + 7));
        } else {
            for (long long N : {2, 3, 10, 50, 400}) CHECK_FALSE(gibbs_stable_at_level(c, N));
        }
    }
}
