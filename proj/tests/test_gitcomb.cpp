#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "logfano/gitcomb.hpp"

using namespace logfano;

namespace {

P1Config config(std::initializer_list<const char*> labels) {
    P1Config c;
    for (const char* l : labels) c.points.push_back(P1Point::parse(l));
    return c;
}

} // namespace

TEST_CASE("PGL2 semistability counts multiplicities") {
    CHECK(is_semistable(config({"0.5", "0.5", "2", "3"}), GitGroup::PGL2));       // 2/4 allowed
    CHECK_FALSE(is_semistable(config({"0.5", "0.5", "0.5", "3"}), GitGroup::PGL2)); // 3/4 too many
}

TEST_CASE("CStar only restricts the fixed points") {
    CHECK(is_semistable(config({"2", "2", "2", "5"}), GitGroup::CStar));
    CHECK_FALSE(is_semistable(config({"0", "0", "0", "5"}), GitGroup::CStar));
    CHECK_FALSE(is_semistable(config({"inf", "inf", "inf", "5"}), GitGroup::CStar));
    // boundary multiplicity N/2 is inside the semistable locus
    CHECK(is_semistable(config({"0", "0", "5", "7"}), GitGroup::CStar));
    CHECK(is_semistable(config({"0", "0", "5", "7"}), GitGroup::PGL2));
}

TEST_CASE("semistability is permutation invariant") {
    std::mt19937_64 rng(3);
    std::vector<std::string> labels = {"0", "0", "inf", "1", "1", "2+1i", "2+1i", "2+1i"};
    P1Config c;
    for (const auto& l : labels) c.points.push_back(P1Point::parse(l));
    bool base_p = is_semistable(c, GitGroup::PGL2);
    bool base_c = is_semistable(c, GitGroup::CStar);
    for (int t = 0; t < 50; ++t) {
        std::shuffle(c.points.begin(), c.points.end(), rng);
        CHECK(is_semistable(c, GitGroup::PGL2) == base_p);
        CHECK(is_semistable(c, GitGroup::CStar) == base_c);
    }
}

TEST_CASE("hypersimplex N = 3: the six permutations of (1, 1/2, 0)") {
    auto verts = hypersimplex_vertices(3);
    CHECK(verts.size() == 6);
    std::vector<Rational> base = {Rational(1), Rational(1, 2), Rational(0)};
    std::sort(base.begin(), base.end());
    for (auto v : verts) {
        Rational sum(0);
        for (const auto& c : v) sum = sum + c;
        CHECK(sum == Rational(3, 2));
        std::sort(v.begin(), v.end());
        CHECK(v == base);
    }
}

TEST_CASE("hypersimplex vertex structure for N = 5, 7") {
    for (int N : {5, 7}) {
        auto verts = hypersimplex_vertices(N);
        CHECK(!verts.empty());
        for (const auto& v : verts) {
            int halves = 0, ones = 0, zeros = 0;
            Rational sum(0);
            for (const auto& c : v) {
                sum = sum + c;
                if (c == Rational(1, 2))
                    ++halves;
                else if (c == Rational(1))
                    ++ones;
                else if (c == Rational(0))
                    ++zeros;
                else
                    FAIL("coordinate outside {0, 1/2, 1}");
            }
            CHECK(halves == 1);
            CHECK(ones == (N - 1) / 2);
            CHECK(zeros == (N - 1) / 2);
            CHECK(sum == Rational(N, 2));
        }
    }
}

TEST_CASE("vertices are extremal along coordinate-pair lines") {
    for (int N : {3, 5}) {
        for (const auto& v : hypersimplex_vertices(N)) {
            for (size_t i = 0; i < v.size(); ++i) {
                for (size_t j = i + 1; j < v.size(); ++j) {
                    // Both perturbations v +- a (e_i - e_j) stay feasible only
                    // if both coordinates are strictly interior, which the
                    // {0,1/2,1}-with-one-half structure rules out.
                    bool i_interior = v[i] != Rational(0) && v[i] != Rational(1);
                    bool j_interior = v[j] != Rational(0) && v[j] != Rational(1);
                    bool both_interior = i_interior && j_interior;
                    CHECK_FALSE(both_interior);
                }
            }
        }
    }
}

TEST_CASE("distortion extremum") {
    CHECK(distortion_extremum(3) == Rational(1, 3));
    CHECK(distortion_extremum(5) == Rational(1, 5));
    for (int N : {3, 5, 7, 9}) CHECK((distortion_extremum(N) * Rational(N) == Rational(1)));
    CHECK_THROWS_AS(distortion_extremum(4), ValidationError);
    CHECK_THROWS_AS(hypersimplex_vertices(11), ValidationError);
    CHECK_THROWS_AS(hypersimplex_vertices(4), ValidationError);
}

TEST_CASE("point parsing") {
    CHECK(P1Point::parse("inf") == P1Point::inf());
    CHECK(P1Point::parse("1.5") == P1Point::finite({1.5, 0.0}));
    CHECK(P1Point::parse("2+1i") == P1Point::finite({2.0, 1.0}));
    CHECK(P1Point::parse("2-1i") == P1Point::finite({2.0, -1.0}));
    CHECK_THROWS_AS(P1Point::parse("zebra"), ValidationError);
}
