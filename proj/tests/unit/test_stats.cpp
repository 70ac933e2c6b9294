#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "govpulse/errors.hpp"
#include "govpulse/stats.hpp"

using namespace govpulse;
using namespace govpulse::stats;

namespace {
// two-sided t p-value through the regularized incomplete beta, in long double
double oracle_t_p(double t, double dof) {
    const long double x = static_cast<long double>(dof) / (dof + static_cast<long double>(t) * t);
    return static_cast<double>(boost::math::ibeta(static_cast<long double>(dof) / 2, 0.5L, x));
}
}  // namespace

TEST_SUITE("stats") {

TEST_CASE("t p-values match a high-precision incomplete beta at fixed points") {
    struct Point {
        double t, dof;
    };
    const Point points[] = {{0.0, 5},    {0.5, 1},    {1.0, 2},    {1.5, 3},     {1.96, 125}, {2.0, 10},  {2.5, 30},
                            {3.0, 4},    {-1.2, 20},  {0.1, 200},  {4.0, 60},    {6.0, 125},  {1.86, 125}, {-2.7, 7},
                            {0.75, 1000}, {10.0, 3},  {1.645, 50}, {2.326, 15},  {0.3, 2.5},  {3.5, 125}};
    static_assert(sizeof points / sizeof points[0] == 20);
    for (const auto& p : points) {
        CAPTURE(p.t);
        CAPTURE(p.dof);
        const double got = t_two_sided_p(p.t, p.dof);
        const double want = oracle_t_p(p.t, p.dof);
        CHECK(std::abs(got - want) <= 1e-10);
    }
}

TEST_CASE("incomplete beta agrees with the oracle over a grid") {
    for (double a : {0.5, 1.0, 2.5, 10.0, 62.5}) {
        for (double b : {0.5, 1.0, 3.0, 20.0}) {
            for (double x : {0.001, 0.1, 0.35, 0.5, 0.9, 0.999}) {
                CHECK(std::abs(incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)) < 1e-12);
            }
        }
    }
    CHECK(incomplete_beta(2, 3, 0) == 0.0);
    CHECK(incomplete_beta(2, 3, 1) == 1.0);
}

TEST_CASE("F and chi-square tails") {
    for (double f : {0.01, 0.5, 1.0, 3.9, 12.0, 150.0}) {
        for (auto [d1, d2] : {std::pair{1.0, 125.0}, std::pair{1.0, 3.0}, std::pair{4.0, 40.0}}) {
            const boost::math::fisher_f dist(d1, d2);
            CHECK(std::abs(f_survival(f, d1, d2) - boost::math::cdf(boost::math::complement(dist, f))) < 1e-12);
        }
    }
    for (double x : {0.01, 1.0, 3.841458820694124, 10.0, 40.0}) {
        for (double k : {1.0, 2.0, 7.0}) {
            const boost::math::chi_squared dist(k);
            CHECK(std::abs(chi2_survival(x, k) - boost::math::cdf(boost::math::complement(dist, x))) < 1e-12);
        }
    }
    CHECK(chi2_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(f_survival(std::numeric_limits<double>::infinity(), 1, 10) == 0.0);
    CHECK(t_two_sided_p(std::numeric_limits<double>::infinity(), 10) == 0.0);
    CHECK(gamma_p(2.0, 1.5) + gamma_q(2.0, 1.5) == doctest::Approx(1.0));
}

TEST_CASE("stars") {
    CHECK(stars(0.2) == "");
    CHECK(stars(0.10) == "*");
    CHECK(stars(0.07) == "*");
    CHECK(stars(0.05) == "**");
    CHECK(stars(0.009) == "***");
    CHECK(stars(std::nan("")) == "");
    StarThresholds custom{{0.2, 0.1, 0.001}};
    CHECK(stars(0.15, custom) == "*");
    CHECK(stars(0.01, custom) == "**");
}

TEST_CASE("summaries") {
    const std::vector<double> v{4, 1, 3, 2};
    const auto s = summarize(v);
    CHECK(s.mean == 2.5);
    CHECK(s.median == 2.5);
    CHECK(s.maximum == 4);
    CHECK(s.minimum == 1);
    CHECK(s.std == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(s.n == 4);
    CHECK(summarize(std::vector<double>{7}).std == 0.0);
    CHECK(summarize(std::vector<double>{1, 9, 5}).median == 5);
    CHECK_THROWS_AS(summarize(std::vector<double>{}), DomainError);
    CHECK(sample_std(std::vector<double>{0.01, 0.03}) == doctest::Approx(0.0141421356237).epsilon(1e-10));
}

}
