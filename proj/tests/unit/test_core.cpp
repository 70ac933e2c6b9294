#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "govpulse/amount.hpp"
#include "govpulse/csv.hpp"
#include "govpulse/date.hpp"
#include "govpulse/errors.hpp"
#include "govpulse/io.hpp"
#include "govpulse/parallel.hpp"
#include "test_util.hpp"

using namespace govpulse;

TEST_SUITE("core") {

TEST_CASE("token amounts parse exactly and print shortest text") {
    CHECK(TokenAmount::parse("32160")->to_string() == "32160");
    CHECK(TokenAmount::parse("0.000000000000000001")->units() == 1);
    CHECK(TokenAmount::parse("1.50")->to_string() == "1.5");
    CHECK(TokenAmount::parse("-2.25")->to_string() == "-2.25");
    CHECK(TokenAmount::parse(".5")->to_string() == "0.5");
    CHECK_FALSE(TokenAmount::parse("1e5"));
    CHECK_FALSE(TokenAmount::parse("1.0000000000000000001"));
    CHECK_FALSE(TokenAmount::parse(""));
    CHECK_FALSE(TokenAmount::parse("abc"));
    CHECK_FALSE(TokenAmount::parse("1.2.3"));
}

TEST_CASE("token sums do not depend on order") {
    const auto a = *TokenAmount::parse("0.1");
    const auto b = *TokenAmount::parse("0.2");
    const auto c = *TokenAmount::parse("0.3");
    CHECK((a + b) + c == a + (b + c));
    CHECK((a + b).to_string() == "0.3");
    CHECK((a + b) == c);
}

TEST_CASE("token amount conversions") {
    CHECK(TokenAmount::from_double(1.2345678, 6).to_string() == "1.234568");
    CHECK(TokenAmount::whole(3).to_double() == 3.0);
    CHECK(TokenAmount::parse("96480")->to_double() == 96480.0);
    CHECK(TokenAmount::parse("0.25")->to_double() == 0.25);
}

TEST_CASE("dates and timestamps") {
    CHECK(Date::parse("2019-01-01")->days() == 17897);
    CHECK(Date(17897).to_string() == "2019-01-01");
    CHECK(Date::from_unix_seconds(1546300800 + 86399).to_string() == "2019-01-01");
    CHECK(Date::from_unix_seconds(-1).to_string() == "1969-12-31");
    CHECK_FALSE(Date::parse("2019-13-01"));
    CHECK_FALSE(Date::parse("2019-02-30"));
    CHECK(Date::parse("2020-02-29"));
    CHECK(parse_timestamp("1546300800") == 1546300800);
    CHECK(parse_timestamp("2019-01-01T00:00:10Z") == 1546300810);
    CHECK(parse_timestamp("2019-01-01 00:00:10") == 1546300810);
    CHECK(parse_timestamp("2019-01-01T00:00:10+00:00") == 1546300810);
    CHECK(parse_timestamp("2019-01-01") == 1546300800);
    CHECK_FALSE(parse_timestamp("yesterday"));
    CHECK(format_timestamp(1546300810) == "2019-01-01T00:00:10Z");
}

TEST_CASE("csv reader honours quoting") {
    std::istringstream in("a,b\n\"x,1\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",z\n");
    csv::Reader r(in);
    auto h = r.next();
    REQUIRE(h);
    CHECK(h->fields == std::vector<std::string>{"a", "b"});
    auto r1 = r.next();
    REQUIRE(r1);
    CHECK(r1->fields == std::vector<std::string>{"x,1", "say \"hi\""});
    CHECK(r1->line == 2);
    auto r2 = r.next();
    REQUIRE(r2);
    CHECK(r2->fields[0] == "multi\nline");
    CHECK(r2->line == 4);
    CHECK_FALSE(r.next());
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::join_row({"a", "b\"c"}) == "a,\"b\"\"c\"");
}

TEST_CASE("atomic writes and digests") {
    testutil::TempDir dir;
    const auto p = dir.path() / "sub" / "out.txt";
    write_file_atomic(p, "abc");
    CHECK(read_file(p) == "abc");
    CHECK_FALSE(std::filesystem::exists(p.string() + ".tmp"));
    CHECK(sha256_file(p) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK_THROWS_AS(read_file(dir.path() / "missing"), IoError);
}

TEST_CASE("double formatting round-trips") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(kMissing) == "");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("parallel_map keeps slot order and propagates failures") {
    for (unsigned threads : {1u, 2u, 7u}) {
        const auto out = parallel_map(100, threads, [](std::size_t i) { return i * i; });
        for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == i * i);
    }
    CHECK_THROWS_AS(parallel_map(10, 3,
                                 [](std::size_t i) -> int {
                                     if (i == 5) throw std::runtime_error("boom");
                                     return 0;
                                 }),
                    std::runtime_error);
}

TEST_CASE("thread count honours GOVPULSE_THREADS") {
    ::setenv("GOVPULSE_THREADS", "3", 1);
    CHECK(default_thread_count() == 3);
    ::setenv("GOVPULSE_THREADS", "0", 1);
    CHECK(default_thread_count() >= 1);
    ::unsetenv("GOVPULSE_THREADS");
    CHECK(default_thread_count() >= 1);
}

}
