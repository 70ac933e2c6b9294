#include <doctest.h>

#include <cmath>
#include <random>

#include "govpulse/centrality.hpp"
#include "govpulse/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace govpulse;
using namespace govpulse::centrality;
using govdata::final_ballots;
using testutil::ev;
using testutil::make_log;
using testutil::poll;

namespace {
constexpr std::int64_t kDay0 = 1546300800;  // 2019-01-01

std::vector<FinalBallot> ballots_of(std::initializer_list<double> weights) {
    std::vector<FinalBallot> out;
    int i = 0;
    for (double w : weights) {
        FinalBallot b;
        b.voter = testutil::addr(++i);
        b.weight = TokenAmount::from_double(w);
        out.push_back(b);
    }
    return out;
}
}  // namespace

TEST_SUITE("centrality") {

TEST_CASE("participation") {
    const auto p = poll_participation(ballots_of({5, 3, 2}));
    CHECK(p.total_votes == TokenAmount::whole(10));
    CHECK(p.voters == 3);
    const auto e = poll_participation({});
    CHECK(e.total_votes.is_zero());
    CHECK(e.voters == 0);
}

TEST_CASE("poll gini hand cases") {
    CHECK(poll_gini(ballots_of({10, 10, 10})) == 0.0);
    CHECK(poll_gini(ballots_of({1, 1, 1, 97})) == 0.72);
    CHECK(gini(std::vector<double>{0, 1}) == 0.5);
    CHECK(gini(std::vector<double>{5}) == 0.0);
    CHECK(gini(std::vector<double>{0, 0, 0}) == 0.0);
    CHECK(gini(std::vector<double>{}) == 0.0);
}

TEST_CASE("oracles agree on hand cases") {
    const std::vector<double> w{1, 1, 1, 97};
    CHECK(synthgov::gini_oracle(w) == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(synthgov::gini_pairwise_oracle(w) == doctest::Approx(0.72).epsilon(1e-15));
    CHECK(synthgov::gini_oracle(std::vector<double>{10, 10, 10}) == 0.0);
    CHECK(synthgov::gini_oracle(std::vector<double>{0, 1}) == 0.5);
}

TEST_CASE("property: gini matches the sorted-rank oracle and is scale invariant") {
    std::mt19937_64 rng(99);
    std::lognormal_distribution<double> dist(0.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> w(2 + rng() % 63);
        for (auto& x : w) x = dist(rng);
        const double g = gini(w);
        CHECK(std::abs(g - synthgov::gini_oracle(w)) < 1e-10);
        CHECK(g >= 0.0);
        CHECK(g < 1.0);
        auto scaled = w;
        for (auto& x : scaled) x *= 37.5;
        CHECK(std::abs(gini(scaled) - g) < 1e-12);
        std::shuffle(w.begin(), w.end(), rng);
        CHECK(std::abs(gini(w) - g) < 1e-12);
    }
}

TEST_CASE("pareto mle gini") {
    CHECK(pareto_mle_gini(std::vector<double>{4, 4, 4}) == 0.0);
    CHECK(pareto_mle_gini(std::vector<double>{4}) == 0.0);
    CHECK(pareto_mle_gini(std::vector<double>{0, -1, 4}) == 0.0);
    // two points: alpha = 2 / ln(e) = 2 -> 1/3
    CHECK(pareto_mle_gini(std::vector<double>{1, std::exp(1.0)}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    // alpha <= 1/2 clips below one
    const double clipped = pareto_mle_gini(std::vector<double>{1, 1e6});
    CHECK(clipped == 1.0 - kGiniCeilingGap);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> draws(10000);
    for (auto& x : draws) x = std::pow(1.0 - u(rng), -1.0 / 1.5);
    CHECK(std::abs(pareto_mle_gini(draws) - 0.5) < 0.05);
}

TEST_CASE("daily gini pools voters across polls") {
    const auto log = make_log({ev(1, 1, 1, "1", kDay0 + 10), ev(2, 1, 1, "1", kDay0 + 10), ev(1, 2, 1, "2", kDay0 + 10)},
                              {poll(1, kDay0), poll(2, kDay0)});
    auto day = final_ballots(log, 1);
    const auto second = final_ballots(log, 2);
    day.insert(day.end(), second.begin(), second.end());
    CHECK(pooled_voter_totals(day) == std::vector<double>{2.0, 2.0});
    CHECK(daily_gini(day) == 0.0);
    CHECK(daily_gini(final_ballots(log, 2)) == 0.0);
}

TEST_CASE("largest voter stats") {
    SUBCASE("single voter") {
        const auto log = make_log({ev(1, 1, 2, "7", kDay0 + 5)}, {poll(1, kDay0)});
        const auto b = final_ballots(log, 1);
        const auto s = largest_voter_stats(b, 2);
        CHECK(s.largest_share == 1.0);
        CHECK(s.ifwin == 1);
        CHECK(s.largest_share_win == 1.0);
        CHECK(s.order == 1.0);
    }
    SUBCASE("largest voter second of two records") {
        const auto log = make_log({ev(1, 2, 2, "40", kDay0 + 5), ev(1, 1, 1, "60", kDay0 + 9)}, {poll(1, kDay0)});
        const auto b = final_ballots(log, 1);
        const auto s = largest_voter_stats(b, 1);
        CHECK(s.largest_share == 0.6);
        CHECK(s.ifwin == 1);
        CHECK(s.largest_share_win == 0.6);
        CHECK(s.order == 1.0);
        const auto lost = largest_voter_stats(b, 2);
        CHECK(lost.ifwin == 0);
        CHECK(lost.largest_share_win == 0.0);
    }
    SUBCASE("first-appearance order rule") {
        const auto log = make_log({ev(1, 1, 1, "60", kDay0 + 1), ev(1, 2, 2, "40", kDay0 + 2),
                                   ev(1, 3, 2, "1", kDay0 + 3), ev(1, 1, 1, "60", kDay0 + 4)},
                                  {poll(1, kDay0)});
        const auto b = final_ballots(log, 1);
        CHECK(largest_voter_stats(b, 1, OrderRule::last).order == 1.0);
        CHECK(largest_voter_stats(b, 1, OrderRule::first).order == 0.25);
    }
    CHECK_THROWS_AS(largest_voter_stats({}, 1), DomainError);
}

TEST_CASE("speed") {
    const auto two = make_log({ev(1, 1, 1, "1", kDay0 + 100), ev(1, 2, 1, "1", kDay0 + 300)}, {poll(1, kDay0)});
    CHECK(poll_speed(final_ballots(two, 1), kDay0).seconds == 200.0);
    const auto revised = make_log({ev(1, 1, 1, "1", kDay0 + 100), ev(1, 1, 2, "1", kDay0 + 500)}, {poll(1, kDay0)});
    CHECK(poll_speed(final_ballots(revised, 1), kDay0).seconds == 500.0);
    const auto early = make_log({ev(1, 1, 1, "1", kDay0 - 100), ev(1, 2, 1, "1", kDay0 + 300)}, {poll(1, kDay0)});
    const auto s = poll_speed(final_ballots(early, 1), kDay0);
    CHECK(s.seconds == 150.0);
    CHECK(s.clamped == 1);
    CHECK_THROWS_AS(poll_speed({}, kDay0), DomainError);
}

TEST_CASE("poll metrics and breakdown") {
    const auto log = make_log({ev(1, 1, 1, "5", kDay0 + 10), ev(1, 2, 0, "3", kDay0 + 20), ev(1, 3, 2, "2", kDay0 + 30)},
                              {poll(1, kDay0, {0, 1, 2}, {0}), poll(2, kDay0)});
    const auto all = all_poll_metrics(log);
    REQUIRE(all.size() == 1);
    const auto& m = all[0];
    CHECK(m.voters == 3);
    CHECK(m.total_votes == TokenAmount::whole(10));
    CHECK(m.breakdown_votes == TokenAmount::whole(7));
    CHECK(m.breakdown_voters == 2);
    CHECK(m.breakdown_ratio == 0.7);
    CHECK(m.winner == 1);
    CHECK(m.largest_share == 0.5);
    CHECK(m.speed_seconds == 20.0);
    CHECK(m.date.to_string() == "2019-01-01");
    CHECK_FALSE(poll_metrics(log, 2));
    CHECK_FALSE(poll_metrics(log, 3));
}

TEST_CASE("daily aggregation") {
    SUBCASE("one poll equals its own metrics") {
        const auto log = make_log({ev(1, 1, 1, "6", kDay0 + 10), ev(1, 2, 2, "4", kDay0 + 50)}, {poll(1, kDay0)});
        const auto p = *poll_metrics(log, 1);
        const auto d = daily_metrics(log);
        REQUIRE(d.size() == 1);
        CHECK(d[0].voters == p.voters);
        CHECK(d[0].total_votes == p.total_votes);
        CHECK(d[0].largest_share == p.largest_share);
        CHECK(d[0].largest_share_win == p.largest_share_win);
        CHECK(d[0].order == p.order);
        CHECK(d[0].speed == p.speed_seconds);
        CHECK(d[0].poll_count == 1);
    }
    SUBCASE("two identical polls double the additive measures only") {
        const auto one = make_log({ev(1, 1, 1, "6", kDay0 + 10), ev(1, 2, 2, "4", kDay0 + 50)}, {poll(1, kDay0)});
        const auto two = make_log({ev(1, 1, 1, "6", kDay0 + 10), ev(1, 2, 2, "4", kDay0 + 50),
                                   ev(2, 1, 1, "6", kDay0 + 10), ev(2, 2, 2, "4", kDay0 + 50)},
                                  {poll(1, kDay0), poll(2, kDay0)});
        const auto a = daily_metrics(one)[0];
        const auto b = daily_metrics(two)[0];
        CHECK(b.voters == 2 * a.voters);
        CHECK(b.total_votes == a.total_votes + a.total_votes);
        CHECK(b.largest_share == a.largest_share);
        CHECK(b.largest_share_win == a.largest_share_win);
        CHECK(b.order == a.order);
        CHECK(b.speed == a.speed);
        CHECK(b.poll_count == 2);
    }
    SUBCASE("calendar modes") {
        const auto log = make_log({ev(1, 1, 1, "6", kDay0 + 10), ev(2, 1, 1, "6", kDay0 + 3 * 86400 + 10)},
                                  {poll(1, kDay0), poll(2, kDay0 + 3 * 86400)});
        CHECK(daily_metrics(log).size() == 2);
        MetricOptions full;
        full.calendar = CalendarMode::full_calendar;
        const auto d = daily_metrics(log, full);
        REQUIRE(d.size() == 4);
        CHECK(d[1].missing);
        CHECK(d[1].voters == 0);
        CHECK_FALSE(d[3].missing);
    }
    SUBCASE("daily gini modes") {
        const auto log = make_log({ev(1, 1, 1, "1", kDay0 + 10), ev(1, 2, 1, "3", kDay0 + 10)}, {poll(1, kDay0)});
        MetricOptions opt;
        opt.daily_gini = DailyGiniMode::mean_of_polls;
        CHECK(daily_metrics(log, opt)[0].gini == 0.25);
        opt.daily_gini = DailyGiniMode::pooled_sample;
        CHECK(daily_metrics(log, opt)[0].gini == 0.25);
    }
}

TEST_CASE("threads do not change metrics") {
    std::vector<govdata::VoteEvent> events;
    std::vector<govdata::PollRecord> polls;
    std::mt19937_64 rng(3);
    for (int p = 1; p <= 30; ++p) {
        polls.push_back(poll(p, kDay0 + (p % 5) * 86400));
        for (int v = 0; v < 8; ++v) {
            events.push_back(ev(p, static_cast<int>(rng() % 20), 1 + static_cast<int>(rng() % 2),
                                std::to_string(1 + rng() % 1000), kDay0 + (p % 5) * 86400 + 100 + v));
        }
    }
    const auto log = make_log(events, polls);
    MetricOptions one, many;
    many.threads = 4;
    CHECK(metrics_csv(daily_metrics(log, one)) == metrics_csv(daily_metrics(log, many)));
    CHECK(poll_metrics_csv(all_poll_metrics(log, one)) == poll_metrics_csv(all_poll_metrics(log, many)));
}

TEST_CASE("lorenz curve") {
    const auto eq = lorenz_points(std::vector<double>{1, 1});
    REQUIRE(eq.points.size() == 3);
    CHECK(eq.points[1].population == 0.5);
    CHECK(eq.points[1].share == 0.5);
    CHECK(eq.points[2].share == 1.0);
    CHECK(eq.area_gini() == 0.0);
    const auto skew = lorenz_points(std::vector<double>{3, 1});
    CHECK(skew.points[1].share == 0.25);
    CHECK(skew.points[2].population == 1.0);
    CHECK_THROWS_AS(lorenz_points(std::vector<double>{0, 0}), DomainError);

    std::mt19937_64 rng(8);
    std::exponential_distribution<double> dist(1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> w(2 + rng() % 40);
        for (auto& x : w) x = dist(rng);
        const auto c = lorenz_points(w);
        for (std::size_t k = 1; k < c.points.size(); ++k) CHECK(c.points[k].share >= c.points[k - 1].share);
        // trapezoid area over n equal steps reproduces the discrete Gini
        CHECK(std::abs(c.area_gini() - gini(w)) < 1e-12);
    }
}

TEST_CASE("measure names") {
    for (auto m : kAllMeasures) CHECK(parse_measure(measure_name(m)) == m);
    CHECK(parse_measure("largest_share_win") == Measure::largest_share_win);
    CHECK(parse_measure("TOTALVOTES") == Measure::total_votes);
    CHECK_FALSE(parse_measure("bogus"));
}

}
