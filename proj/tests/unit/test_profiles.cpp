#include <doctest.h>

#include "govpulse/errors.hpp"
#include "govpulse/profiles.hpp"
#include "govpulse/synthgov.hpp"
#include "test_util.hpp"

using namespace govpulse;
using namespace govpulse::profiles;
using testutil::addr;
using testutil::ev;
using testutil::make_log;
using testutil::poll;

namespace {
constexpr std::int64_t kT = 1546300800;

const DescribedColumn& column(const std::vector<DescribedColumn>& cols, std::string_view name) {
    for (const auto& c : cols) {
        if (c.name == name) return c;
    }
    throw std::runtime_error("no column " + std::string(name));
}
}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("poll descriptives of one poll") {
    const auto log = make_log({ev(1, 1, 1, "5", kT + 1), ev(1, 2, 1, "3", kT + 2), ev(1, 3, 2, "2", kT + 3)},
                              {poll(1, kT)});
    const auto d = poll_descriptives(log);
    const auto& total = column(d.columns, "Total votes").stats;
    CHECK(total.mean == 10);
    CHECK(total.median == 10);
    CHECK(total.maximum == 10);
    CHECK(total.minimum == 10);
    CHECK(column(d.columns, "Total voters").stats.mean == 3);
    CHECK(column(d.columns, "Breakdown ratio").stats.mean == 1.0);
    CHECK_FALSE(d.breakdown_definition.empty());
}

TEST_CASE("largest share mean over two polls") {
    const auto log = make_log({ev(1, 1, 1, "6", kT + 1), ev(1, 2, 2, "4", kT + 2), ev(2, 1, 1, "8", kT + 1),
                               ev(2, 2, 2, "2", kT + 2)},
                              {poll(1, kT), poll(2, kT)});
    const auto d = poll_descriptives(log);
    CHECK(column(d.columns, "Vote share of the largest voter").stats.mean == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("empty log cannot be described") {
    CHECK_THROWS_AS(poll_descriptives(make_log({}, {poll(1, kT)})), DomainError);
    CHECK_THROWS_AS(voter_descriptives({}), DomainError);
}

TEST_CASE("a voter casting 32160 in three polls") {
    const auto log = make_log({ev(631, 7, 1, "32160", kT + 10), ev(640, 7, 1, "32160", kT + 86400 + 10),
                               ev(650, 7, 2, "32160", kT + 2 * 86400 + 10), ev(640, 8, 1, "1", kT + 86400 + 20)},
                              {poll(631, kT), poll(640, kT + 86400), poll(650, kT + 2 * 86400)});
    const auto profiles = voter_profiles(log);
    REQUIRE(profiles.size() == 2);
    const auto& p = profiles[0];
    CHECK(p.address == addr(7));
    CHECK(p.involved_polls == 3);
    CHECK(p.total_votes.to_string() == "96480");
    CHECK(p.highest_single_vote.to_string() == "32160");
    CHECK(p.first_poll == 631);
    CHECK(p.first_date.to_string() == "2019-01-01");
    CHECK(profiles[1].total_votes == profiles[1].highest_single_vote);
    CHECK(profiles[1].involved_polls == 1);
}

TEST_CASE("revisions count once per poll") {
    const auto log = make_log({ev(1, 1, 1, "5", kT + 1), ev(1, 1, 2, "9", kT + 2)}, {poll(1, kT)});
    const auto profiles = voter_profiles(log);
    REQUIRE(profiles.size() == 1);
    CHECK(profiles[0].involved_polls == 1);
    CHECK(profiles[0].total_votes == TokenAmount::whole(9));
    CHECK(voter_profiles(log, govdata::BallotRule::first)[0].total_votes == TokenAmount::whole(5));
}

TEST_CASE("ranking") {
    std::vector<VoterProfile> ps(4);
    ps[0].address = addr(3);
    ps[0].total_votes = TokenAmount::whole(5);
    ps[1].address = addr(1);
    ps[1].total_votes = TokenAmount::whole(9);
    ps[2].address = addr(2);
    ps[2].total_votes = TokenAmount::whole(5);
    ps[3].address = addr(4);
    ps[3].total_votes = TokenAmount::whole(1);
    const auto top = rank_voters(ps, RankCriterion::total_votes, 3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].address == addr(1));
    CHECK(top[1].address == addr(2));
    CHECK(top[2].address == addr(3));
    CHECK(rank_voters(ps, RankCriterion::total_votes, 10).size() == 4);
    CHECK(parse_criterion("highest_single_vote") == RankCriterion::highest_single_vote);
    CHECK_FALSE(parse_criterion("loudest"));
}

TEST_CASE("property: voter totals add up to poll totals") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        synthgov::SynthConfig cfg;
        cfg.days = 40;
        cfg.total_polls = 50;
        cfg.voter_pool = 60;
        cfg.seed = seed;
        const auto log = synthgov::gen_history(cfg);
        TokenAmount by_voter, by_poll;
        for (const auto& p : voter_profiles(log)) by_voter += p.total_votes;
        for (const auto& m : centrality::all_poll_metrics(log)) by_poll += m.total_votes;
        CHECK(by_voter == by_poll);
    }
}

TEST_CASE("csv output carries identities") {
    auto log = govdata::VoteLog({ev(1, 1, 1, "5", kT + 1)}, {{1, poll(1, kT)}}, {{addr(1), "a16z"}});
    const auto text = profiles_csv(voter_profiles(log));
    CHECK(text.find("a16z") != std::string::npos);
    CHECK(text.rfind("address,identity,", 0) == 0);
}

}
