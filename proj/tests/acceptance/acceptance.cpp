// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli.hpp"
#include "govpulse/centrality.hpp"
#include "govpulse/econ.hpp"
#include "govpulse/factorlab.hpp"
#include "govpulse/govdata.hpp"
#include "govpulse/profiles.hpp"
#include "govpulse/synthgov.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace govpulse;
using centrality::Measure;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<centrality::FinalBallot> ballots_from(const std::vector<double>& weights) {
    std::vector<centrality::FinalBallot> out;
    out.reserve(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        centrality::FinalBallot b;
        b.voter = testutil::addr(static_cast<int>(i) + 1);
        b.weight = TokenAmount::from_double(weights[i]);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<double> weights_of(const std::vector<centrality::FinalBallot>& ballots) {
    std::vector<double> w;
    for (const auto& b : ballots) w.push_back(b.weight.to_double());
    return w;
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "govpulse");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = govpulse::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) std::cerr << err.str();
    return code;
}

// ---------------------------------------------------------------------------

Outcome gini_oracle_equivalence() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> size(2, 64);
    std::lognormal_distribution<double> weight(3.0, 2.0);
    double worst = 0.0, worst_scale = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> w(static_cast<std::size_t>(size(rng)));
        for (auto& x : w) x = weight(rng);
        const auto ballots = ballots_from(w);
        const auto exact = weights_of(ballots);  // the values poll_gini actually sees
        const double g = centrality::poll_gini(ballots);
        worst = std::max(worst, std::abs(g - synthgov::gini_oracle(exact)));
        auto scaled = exact;
        const double k = std::exp(std::uniform_real_distribution<double>(-5.0, 5.0)(rng));
        for (auto& x : scaled) x *= k;
        worst_scale = std::max(worst_scale, std::abs(centrality::gini(scaled) - centrality::gini(exact)));
        const std::vector<double> equal(w.size(), w[0]);
        o.require(centrality::gini(equal) == 0.0, "equal weights not exactly 0");
    }
    const double elapsed = seconds_since(t0);
    o.require(worst <= 1e-10, fmt::format("oracle gap {:.3g}", worst));
    o.require(worst_scale <= 1e-12, fmt::format("scale gap {:.3g}", worst_scale));
    o.require(elapsed < 1.0, fmt::format("runtime {:.2f}s", elapsed));
    o.note(fmt::format("max oracle gap {:.2e}, max scale gap {:.2e}, {:.3f}s", worst, worst_scale, elapsed));
    return o;
}

Outcome gini_hand_case() {
    Outcome o;
    const std::vector<double> w{1, 1, 1, 97};
    const double g = centrality::poll_gini(ballots_from(w));
    o.require(g == 0.72, fmt::format("poll_gini {:.17g}", g));
    const double brute = synthgov::gini_pairwise_oracle(w);
    o.require(std::abs(brute - 0.72) < 1e-15, fmt::format("pairwise oracle {:.17g}", brute));
    o.note(fmt::format("poll_gini {:.17g}", g));
    return o;
}

Outcome daily_gini_calibration() {
    Outcome o;
    const auto t0 = Clock::now();
    std::string spread;
    for (double alpha : {1.2, 1.5, 2.0}) {
        const double target = 1.0 / (2.0 * alpha - 1.0);
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            std::mt19937_64 rng(seed * 7919 + static_cast<std::uint64_t>(alpha * 10));
            std::uniform_real_distribution<double> u(0.0, 1.0);
            std::vector<double> draws(10000);
            for (auto& x : draws) x = std::pow(1.0 - u(rng), -1.0 / alpha);
            const double g = centrality::daily_gini(ballots_from(draws));
            worst = std::max(worst, std::abs(g - target));
        }
        o.require(worst <= 0.05, fmt::format("alpha {} off by {:.4f}", alpha, worst));
        spread += fmt::format("{}alpha {}: max |err| {:.4f}", spread.empty() ? "" : ", ", alpha, worst);
    }
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 5.0, fmt::format("runtime {:.2f}s", elapsed));
    o.note(fmt::format("{}, {:.2f}s", spread, elapsed));
    return o;
}

Outcome metric_shape_bracket() {
    Outcome o;
    const auto t0 = Clock::now();
    double gini_sum = 0.0, share_sum = 0.0;
    const int seeds = 50;
    for (int seed = 1; seed <= seeds; ++seed) {
        synthgov::SynthConfig c;
        c.holdings_alpha = 1.2;
        c.voter_pool = 200;
        c.total_polls = 638;
        c.seed = static_cast<std::uint64_t>(seed);
        const auto polls = centrality::all_poll_metrics(synthgov::gen_history(c));
        double g = 0.0, s = 0.0;
        for (const auto& p : polls) {
            g += p.gini;
            s += p.largest_share;
        }
        gini_sum += g / static_cast<double>(polls.size());
        share_sum += s / static_cast<double>(polls.size());
    }
    const double gini = gini_sum / seeds, share = share_sum / seeds;
    const double elapsed = seconds_since(t0);
    o.require(gini >= 0.75 && gini <= 0.95, fmt::format("mean Gini {:.4f}", gini));
    o.require(share >= 0.35 && share <= 0.70, fmt::format("mean largest share {:.4f}", share));
    o.require(elapsed < 30.0, fmt::format("runtime {:.2f}s", elapsed));
    o.note(fmt::format("mean Gini {:.4f}, mean largest share {:.4f}, {:.2f}s", gini, share, elapsed));
    return o;
}

Outcome ols_correctness() {
    Outcome o;
    std::mt19937_64 rng(5005);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 3 + rng() % 200;
        const double slope = 4 * g(rng), loc = 10 * g(rng), scale = std::exp(g(rng));
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = loc + scale * g(rng);
            y[i] = 2.0 + slope * x[i] + g(rng);
        }
        const auto fit = econ::ols(y, x);
        const auto [b0, b1] = synthgov::ols_oracle(y, x);
        worst = std::max({worst, std::abs(fit.beta1 - b1) / std::max(1.0, std::abs(b1)),
                          std::abs(fit.beta0 - b0) / std::max(1.0, std::abs(b0))});
    }
    o.require(worst <= 1e-10, fmt::format("oracle gap {:.3g}", worst));

    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
        x.push_back(0.37 * i - 2.0);
        y.push_back(2.0 * x.back() + 1.0);
    }
    const auto exact = econ::ols(y, x);
    o.require(exact.r2 == 1.0, fmt::format("exact-fit r2 {:.17g}", exact.r2));

    int rejections = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> a(127), b(127);
        for (auto& v : a) v = g(rng);
        for (auto& v : b) v = g(rng);
        rejections += econ::ols(a, b).p1 <= 0.05;
    }
    const double size = static_cast<double>(rejections) / trials;
    o.require(size >= 0.03 && size <= 0.07, fmt::format("size {:.3f}", size));
    o.note(fmt::format("max oracle gap {:.2e}, exact r2 {}, size at 5% {:.3f}", worst, exact.r2, size));
    return o;
}

Outcome iv_correctness() {
    Outcome o;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(6006);
    std::normal_distribution<double> g(0.0, 1.0);

    double self_gap = 0.0, f_gap = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 10 + rng() % 200;
        std::vector<double> x(n), y(n), z(n);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = g(rng);
            x[i] = 0.5 * z[i] + g(rng);
            y[i] = 1.0 - 2.0 * x[i] + g(rng);
        }
        const auto self = econ::two_sls(y, x, x);
        const auto plain = econ::ols(y, x);
        self_gap = std::max(self_gap, std::abs(self.second_stage.beta1 - plain.beta1) / std::max(1.0, std::abs(plain.beta1)));
        const auto iv = econ::two_sls(y, x, z);
        const double t2 = iv.first_stage.t1 * iv.first_stage.t1;
        f_gap = std::max(f_gap, std::abs(iv.partial_f - t2) / std::max(1.0, t2));
    }
    o.require(self_gap <= 1e-9, fmt::format("self-instrument gap {:.3g}", self_gap));
    o.require(f_gap <= 1e-9, fmt::format("partial F gap {:.3g}", f_gap));

    const std::size_t n = 127;
    auto draw = [&](bool endogenous, std::vector<double>& y, std::vector<double>& x, std::vector<double>& z) {
        y.resize(n);
        x.resize(n);
        z.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double zi = g(rng), u = g(rng), e = g(rng);
            const double v = endogenous ? 0.8 * u + 0.6 * e : e;
            z[i] = zi;
            x[i] = zi + v;
            y[i] = 3.0 * x[i] + u;
        }
    };
    std::vector<double> y, x, z;
    int durbin_hits = 0, wh_hits = 0, closer = 0, upward = 0;
    const int endo_trials = 200;
    for (int s = 0; s < endo_trials; ++s) {
        draw(true, y, x, z);
        const auto iv = econ::two_sls(y, x, z);
        const auto plain = econ::ols(y, x);
        durbin_hits += iv.durbin_p <= 0.05;
        wh_hits += iv.wu_hausman_p <= 0.05;
        closer += std::abs(iv.second_stage.beta1 - 3.0) < std::abs(plain.beta1 - 3.0);
        upward += plain.beta1 > 3.0;
    }
    const double durbin_power = static_cast<double>(durbin_hits) / endo_trials;
    const double wh_power = static_cast<double>(wh_hits) / endo_trials;
    const double closer_rate = static_cast<double>(closer) / endo_trials;
    o.require(durbin_power >= 0.8, fmt::format("Durbin power {:.3f}", durbin_power));
    o.require(wh_power >= 0.8, fmt::format("Wu-Hausman power {:.3f}", wh_power));
    o.require(closer_rate >= 0.9, fmt::format("2SLS closer in {:.3f}", closer_rate));

    int durbin_size = 0, wh_size = 0;
    const int exo_trials = 1000;
    for (int s = 0; s < exo_trials; ++s) {
        draw(false, y, x, z);
        const auto iv = econ::two_sls(y, x, z);
        durbin_size += iv.durbin_p <= 0.05;
        wh_size += iv.wu_hausman_p <= 0.05;
    }
    const double ds = static_cast<double>(durbin_size) / exo_trials, ws = static_cast<double>(wh_size) / exo_trials;
    o.require(ds >= 0.02 && ds <= 0.08, fmt::format("Durbin size {:.3f}", ds));
    o.require(ws >= 0.02 && ws <= 0.08, fmt::format("Wu-Hausman size {:.3f}", ws));
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 60.0, fmt::format("runtime {:.2f}s", elapsed));
    o.note(fmt::format("power Durbin {:.3f} WH {:.3f}, 2SLS closer {:.3f}, OLS upward {:.3f}, size Durbin {:.3f} WH "
                       "{:.3f}, {:.2f}s",
                       durbin_power, wh_power, closer_rate, static_cast<double>(upward) / endo_trials, ds, ws,
                       elapsed));
    return o;
}

Outcome planted_effect_pipeline() {
    Outcome o;
    const auto t0 = Clock::now();
    struct Planted {
        govdata::Category category;
        std::string factor;
        Measure measure;
        double loading;
        double noise;
    };
    const Planted planted[] = {{govdata::Category::exchange, "NetMkr", Measure::voters, 1.0, 0.2},
                               {govdata::Category::sentiment, "Positive", Measure::speed, -0.5, 0.1}};
    int detected = 0, total = 0;
    std::size_t min_n = std::numeric_limits<std::size_t>::max();
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        synthgov::SynthConfig c;
        c.days = 300;
        c.total_polls = 240;
        c.seed = seed;
        const auto log = synthgov::gen_history(c);
        const auto days = centrality::daily_metrics(log);
        synthgov::PanelPlan plan;
        plan.tokens = {"MKR"};
        for (const auto& p : planted) {
            synthgov::FactorPlan f;
            f.token = "MKR";
            f.category = p.category;
            f.factor = p.factor;
            f.intercept = 3.0;
            f.loadings[p.measure] = p.loading;
            f.noise_std = p.noise;
            plan.factors.push_back(f);
        }
        const auto panel = factorlab::build_panel(synthgov::gen_panel(days, plan, seed + 500), days);
        const std::vector<std::string> tokens{"MKR"};
        const auto grid = econ::run_factor_matrix(panel, tokens);
        for (const auto& p : planted) {
            ++total;
            for (const auto& cell : grid.cells) {
                if (cell.key.factor != p.factor || cell.key.measure != p.measure) continue;
                if (cell.status != econ::CellStatus::ok) break;
                min_n = std::min(min_n, cell.fit.n);
                const bool sign_ok = (cell.fit.beta1 > 0) == (p.loading > 0);
                detected += sign_ok && cell.fit.p1 <= 0.01;
            }
        }
    }
    const double rate = static_cast<double>(detected) / total;
    o.require(rate >= 0.99, fmt::format("recovered {}/{}", detected, total));
    o.require(min_n >= 100, fmt::format("smallest sample {}", min_n));
    o.note(fmt::format("recovered {}/{} planted effects at 1%, smallest n {}, {:.2f}s", detected, total, min_n,
                       seconds_since(t0)));
    return o;
}

Outcome determinism() {
    Outcome o;
    testutil::TempDir dir;
    const auto a = dir.path() / "a", b = dir.path() / "b";
    const auto cfg = dir.write("cfg.json", R"({"days": 400, "total_polls": 320})");
    o.require(cli({"synth", "--config", cfg.string(), "--seed", "42", "--out-dir", a.string()}) == 0, "synth a");
    o.require(cli({"synth", "--config", cfg.string(), "--seed", "42", "--out-dir", b.string()}) == 0, "synth b");
    for (const char* name : {"votes.csv", "polls.csv", "identities.csv", "factors.csv"}) {
        o.require(testutil::slurp(a / name) == testutil::slurp(b / name), fmt::format("{} differs", name));
    }
    std::vector<fs::path> runs;
    int k = 0;
    for (const auto& [data, threads] : {std::pair{a, "1"}, std::pair{b, "4"}, std::pair{a, "2"}}) {
        ::setenv("GOVPULSE_THREADS", threads, 1);
        const auto out = dir.path() / fmt::format("report{}", k++);
        o.require(cli({"report", "--votes", (data / "votes.csv").string(), "--polls", (data / "polls.csv").string(),
                       "--identities", (data / "identities.csv").string(), "--factors",
                       (data / "factors.csv").string(), "--formats", "csv,markdown,svg", "--out-dir",
                       out.string()}) == 0,
                  "report failed");
        runs.push_back(out);
    }
    ::unsetenv("GOVPULSE_THREADS");
    std::size_t compared = 0;
    std::set<std::string> required{"metrics.csv", "ols_grid.csv", "iv_grid.csv", "report.md"};
    for (const auto& e : fs::recursive_directory_iterator(runs[0])) {
        if (!e.is_regular_file() || e.path().filename() == "run_manifest.json") continue;
        const auto rel = fs::relative(e.path(), runs[0]);
        required.erase(rel.string());
        const auto bytes = testutil::slurp(e.path());
        for (std::size_t r = 1; r < runs.size(); ++r) {
            o.require(fs::exists(runs[r] / rel) && testutil::slurp(runs[r] / rel) == bytes,
                      fmt::format("{} differs", rel.string()));
        }
        ++compared;
    }
    o.require(required.empty(), "missing outputs");
    o.note(fmt::format("{} files byte-identical across GOVPULSE_THREADS=1,4,2", compared));
    return o;
}

Outcome replication_contract() {
    Outcome o;
    testutil::TempDir dir;
    fs::path data;
    bool real = false;
    if (const char* env = std::getenv("GOVPULSE_REAL_DATA"); env && *env) {
        data = env;
        real = true;
    } else {
        data = dir.path() / "standin";
        o.require(cli({"synth", "--seed", "2022", "--out-dir", data.string()}) == 0, "synth failed");
    }
    const auto out = dir.path() / "describe";
    std::vector<std::string> args{"describe", "--votes", (data / "votes.csv").string(), "--polls",
                                  (data / "polls.csv").string(), "--out-dir", out.string()};
    if (fs::exists(data / "identities.csv")) {
        args.push_back("--identities");
        args.push_back((data / "identities.csv").string());
    }
    o.require(cli(args) == 0, "describe failed");
    for (const char* t : {"poll_descriptives", "known_voters", "gini", "measures"}) {
        o.require(fs::exists(out / "tables" / fmt::format("{}.csv", t)), fmt::format("table {} missing", t));
    }

    const auto log = govdata::load_vote_log(data / "votes.csv", data / "polls.csv");
    const auto polls = centrality::all_poll_metrics(log);
    std::size_t violations = 0;
    TokenAmount by_poll, by_voter;
    for (const auto& p : polls) {
        violations += p.largest_share_win > p.largest_share;
        by_poll += p.total_votes;
    }
    const auto voters = profiles::voter_profiles(log);
    for (const auto& v : voters) by_voter += v.total_votes;
    o.require(violations == 0, fmt::format("{} polls with share_win > share", violations));
    o.require(by_poll == by_voter, "voter totals differ from poll totals");
    o.note(fmt::format("{} data: {} polls, {} voters, totals {} both ways", real ? "supplied" : "synthetic stand-in",
                       log.registry().size(), voters.size(), by_poll.to_string()));
    return o;
}

Outcome performance_envelope() {
    Outcome o;
    testutil::TempDir dir;
    const auto data = dir.path() / "data";
    o.require(cli({"synth", "--seed", "10", "--out-dir", data.string()}) == 0, "synth failed");
    const auto log = govdata::load_vote_log(data / "votes.csv", data / "polls.csv");
    std::size_t ballots = 0;
    for (const auto& [id, p] : log.registry()) ballots += govdata::final_ballots(log, id).size();
    const auto t0 = Clock::now();
    const int code = cli({"report", "--votes", (data / "votes.csv").string(), "--polls", (data / "polls.csv").string(),
                          "--identities", (data / "identities.csv").string(), "--factors",
                          (data / "factors.csv").string(), "--out-dir", (dir.path() / "out").string()});
    const double elapsed = seconds_since(t0);
    o.require(code == 0, "report failed");
    const auto grid = testutil::slurp(dir.path() / "out" / "ols_grid.csv");
    std::size_t cells = 0, ok = 0;
    std::istringstream lines(grid);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        ++cells;
        ok += line.find(",ok,") != std::string::npos;
    }
    const auto days = centrality::daily_metrics(log);
    const int span = days.back().date - days.front().date + 1;
    o.require(log.registry().size() == 638, "poll count");
    o.require(cells == 37 * 3 * 7, fmt::format("{} grid cells", cells));
    o.require(elapsed < 2.0, fmt::format("runtime {:.2f}s", elapsed));
    o.note(fmt::format("{} polls, {:.1f} voters/poll, {}-day span, {} cells ({} ok), {:.2f}s", log.registry().size(),
                       static_cast<double>(ballots) / static_cast<double>(log.registry().size()), span, cells, ok,
                       elapsed));
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "Gini oracle equivalence", gini_oracle_equivalence},
        {2, "Gini hand case [1,1,1,97] = 0.72", gini_hand_case},
        {3, "daily Gini MLE calibration", daily_gini_calibration},
        {4, "synthetic metric-shape bracket", metric_shape_bracket},
        {5, "OLS correctness", ols_correctness},
        {6, "IV correctness", iv_correctness},
        {7, "planted-effect pipeline", planted_effect_pipeline},
        {8, "determinism across thread counts", determinism},
        {9, "replication contract identities", replication_contract},
        {10, "performance envelope", performance_envelope},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = fmt::format("exception: {}", e.what());
        }
        failed += !o.pass;
        std::cout << fmt::format("{} criterion {}: {} ({})", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail)
                  << std::endl;
    }
    std::cout << fmt::format("{} of {} criteria passed", std::size(criteria) - failed, std::size(criteria))
              << std::endl;
    return failed == 0 ? 0 : 1;
}
