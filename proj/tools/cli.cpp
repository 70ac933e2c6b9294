#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "govpulse/csv.hpp"
#include "govpulse/errors.hpp"
#include "govpulse/io.hpp"
#include "govpulse/kernels.hpp"
#include "govpulse/parallel.hpp"
#include "govpulse/pipeline.hpp"
#include "govpulse/profiles.hpp"
#include "govpulse/report.hpp"
#include "govpulse/synthgov.hpp"

#ifndef GOVPULSE_VERSION
#define GOVPULSE_VERSION "0.0.0"
#endif

namespace govpulse::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Args {
    std::string votes, polls, identities, factors, out_dir, config;
    std::string calendar = "drop", ballot = "last", order = "last", daily_gini = "mle", vol = "simple";
    std::string tokens, measures, alpha_stars = "0.10,0.05,0.01", formats = "csv,markdown";
    bool raw = false;
    bool winner_excludes_abstain = false;
    bool breakdown_all_options = false;
    std::optional<std::uint64_t> seed;
};

/// Raised for a run that must stop with exit code 1.
struct RunFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            auto t = std::string(csv::trim(cur));
            if (!t.empty()) out.push_back(std::move(t));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

class Run {
public:
    Run(std::string command, const Args& args) : command_(std::move(command)), args_(args) {}

    void input(const std::string& role, const std::string& path) {
        if (path.empty()) return;
        json entry{{"role", role}, {"path", path}};
        if (fs::exists(path)) {
            entry["sha256"] = sha256_file(path);
            entry["bytes"] = fs::file_size(path);
        }
        inputs_.push_back(std::move(entry));
    }

    void emit(const std::string& relative, const std::string& content) {
        write_file_atomic(fs::path(args_.out_dir) / relative, content);
        outputs_.push_back(relative);
    }

    void note(const std::string& key, json value) { notes_[key] = std::move(value); }

    /// The manifest is written last, also for failed runs.
    void finish(const std::optional<std::string>& failure) {
        json config{{"votes", args_.votes},
                    {"polls", args_.polls},
                    {"identities", args_.identities},
                    {"factors", args_.factors},
                    {"config", args_.config},
                    {"out_dir", args_.out_dir},
                    {"calendar", args_.calendar},
                    {"ballot", args_.ballot},
                    {"order", args_.order},
                    {"daily_gini", args_.daily_gini},
                    {"vol", args_.vol},
                    {"tokens", args_.tokens},
                    {"measures", args_.measures},
                    {"standardize", !args_.raw},
                    {"alpha_stars", args_.alpha_stars},
                    {"formats", args_.formats},
                    {"winner_excludes_abstain", args_.winner_excludes_abstain},
                    {"breakdown_excludes_abstain", !args_.breakdown_all_options}};
        if (args_.seed) config["seed"] = *args_.seed;
        std::sort(outputs_.begin(), outputs_.end());
        json outputs = json::array();
        for (const auto& o : outputs_) {
            outputs.push_back({{"path", o}, {"sha256", sha256_file(fs::path(args_.out_dir) / o)}});
        }
        json manifest{{"tool", "govpulse"},
                      {"version", GOVPULSE_VERSION},
                      {"command", command_},
                      {"status", failure ? "failed" : "ok"},
                      {"config", config},
                      {"inputs", inputs_},
                      {"outputs", outputs},
                      {"kernel_isa", kernels::isa_name(kernels::active().isa)},
                      {"threads", default_thread_count()},
                      {"notes", notes_}};
        if (failure) manifest["error"] = *failure;
        write_file_atomic(fs::path(args_.out_dir) / "run_manifest.json", manifest.dump(2) + "\n");
    }

private:
    std::string command_;
    const Args& args_;
    json inputs_ = json::array();
    std::vector<std::string> outputs_;
    json notes_ = json::object();
};

centrality::MetricOptions metric_options(const Args& a) {
    centrality::MetricOptions o;
    o.calendar = a.calendar == "full" ? centrality::CalendarMode::full_calendar : centrality::CalendarMode::drop_missing;
    o.ballot = a.ballot == "first" ? govdata::BallotRule::first : govdata::BallotRule::last;
    o.order = a.order == "first" ? centrality::OrderRule::first : centrality::OrderRule::last;
    if (a.daily_gini == "mean") {
        o.daily_gini = centrality::DailyGiniMode::mean_of_polls;
    } else if (a.daily_gini == "pooled") {
        o.daily_gini = centrality::DailyGiniMode::pooled_sample;
    } else {
        o.daily_gini = centrality::DailyGiniMode::mle;
    }
    o.winner_excludes_abstain = a.winner_excludes_abstain;
    o.breakdown_excludes_abstain = !a.breakdown_all_options;
    o.threads = default_thread_count();
    return o;
}

stats::StarThresholds thresholds(const Args& a) {
    const auto parts = split_list(a.alpha_stars);
    if (parts.size() != 3) throw CLI::ValidationError("--alpha-stars", "expects three comma-separated levels");
    stats::StarThresholds t;
    for (std::size_t i = 0; i < 3; ++i) {
        try {
            t.levels[i] = std::stod(parts[i]);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--alpha-stars", fmt::format("\"{}\" is not a number", parts[i]));
        }
        if (!(t.levels[i] > 0.0 && t.levels[i] < 1.0)) {
            throw CLI::ValidationError("--alpha-stars", "levels must lie in (0, 1)");
        }
    }
    if (!(t.levels[0] >= t.levels[1] && t.levels[1] >= t.levels[2])) {
        throw CLI::ValidationError("--alpha-stars", "levels must be loosest first");
    }
    return t;
}

std::vector<centrality::Measure> measures(const Args& a, std::span<const centrality::Measure> fallback) {
    if (a.measures.empty()) return {fallback.begin(), fallback.end()};
    std::vector<centrality::Measure> out;
    for (const auto& name : split_list(a.measures)) {
        const auto m = centrality::parse_measure(name);
        if (!m) throw CLI::ValidationError("--measures", fmt::format("unknown measure \"{}\"", name));
        if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
    }
    return out;
}

std::vector<std::string> tokens(const Args& a) {
    std::vector<std::string> out;
    for (auto t : split_list(a.tokens)) {
        std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
}

std::vector<report::Format> formats(const Args& a) {
    std::vector<report::Format> out;
    for (const auto& name : split_list(a.formats)) {
        const auto f = report::parse_format(name);
        if (!f) throw CLI::ValidationError("--formats", fmt::format("unknown format \"{}\"", name));
        out.push_back(*f);
    }
    if (out.empty()) throw CLI::ValidationError("--formats", "at least one format is required");
    return out;
}

std::string anomalies_csv(const govdata::ValidationReport& report) {
    std::string out = "source,line,kind,severity,row_skipped,detail\n";
    for (const auto& a : report.anomalies) {
        out += csv::join_row({a.source, std::to_string(a.line), a.kind, std::string(govdata::severity_name(a.severity)),
                              a.row_skipped ? "1" : "0", a.detail}) +
               "\n";
    }
    return out;
}

json report_summary(const govdata::ValidationReport& r) {
    std::map<std::string, std::size_t> kinds;
    for (const auto& a : r.anomalies) ++kinds[a.kind];
    return {{"events", r.events}, {"polls", r.polls}, {"voters", r.voters}, {"input_rows", r.input_rows},
            {"skipped_rows", r.skipped_rows()}, {"anomalies", kinds}, {"fatal", r.has_fatal()}};
}

govdata::VoteLog load_log(Run& run, const Args& a) {
    run.input("votes", a.votes);
    run.input("polls", a.polls);
    run.input("identities", a.identities);
    auto log = govdata::load_vote_log(a.votes, a.polls,
                                      a.identities.empty() ? std::nullopt : std::optional<fs::path>(a.identities));
    run.note("ingest", report_summary(log.ingest_report()));
    if (log.ingest_report().has_fatal()) {
        run.emit("anomalies.csv", anomalies_csv(log.ingest_report()));
        throw RunFailure("fatal validation anomalies in the vote inputs (see anomalies.csv)");
    }
    return log;
}

govdata::FactorPanel load_factor_file(Run& run, const Args& a) {
    run.input("factors", a.factors);
    auto panel = govdata::load_factors(a.factors);
    run.note("factors", report_summary(panel.report));
    if (panel.report.has_fatal()) throw RunFailure("fatal validation anomalies in the factor input");
    return panel;
}

PipelineConfig pipeline_config(const Args& a, bool ols_measures_from_flag, bool iv_measures_from_flag) {
    PipelineConfig c;
    c.metrics = metric_options(a);
    c.panel.vol = a.vol == "log" ? factorlab::VolBasis::log : factorlab::VolBasis::simple;
    c.grid.standardize = !a.raw;
    c.grid.thresholds = thresholds(a);
    c.grid.threads = default_thread_count();
    c.tokens = tokens(a);
    if (ols_measures_from_flag) c.ols_measures = measures(a, centrality::kAllMeasures);
    if (iv_measures_from_flag) c.iv_measures = measures(a, econ::kDefaultIvMeasures);
    return c;
}

void emit_files(Run& run, const report::Files& files) {
    for (const auto& [name, content] : files) run.emit(name, content);
}

// --- subcommands -----------------------------------------------------------

void cmd_ingest(Run& run, const Args& a) {
    const auto log = load_log(run, a);
    auto report = govdata::validate_dataset(log);
    run.emit("votes.csv", govdata::votes_csv(log));
    run.emit("polls.csv", govdata::polls_csv(log));
    run.emit("identities.csv", govdata::identities_csv(log));
    if (!a.factors.empty()) {
        const auto panel = load_factor_file(run, a);
        run.emit("factors.csv", govdata::factors_csv(panel));
        for (const auto& an : panel.report.anomalies) report.anomalies.push_back(an);
    }
    run.emit("anomalies.csv", anomalies_csv(report));
    run.emit("validation.json", report_summary(report).dump(2) + "\n");
    run.note("validation", report_summary(report));
}

void cmd_metrics(Run& run, const Args& a) {
    const auto log = load_log(run, a);
    std::vector<centrality::PollMetrics> polls;
    const auto days = compute_days(log, polls, metric_options(a));
    run.emit("metrics.csv", centrality::metrics_csv(days));
    run.emit("poll_metrics.csv", centrality::poll_metrics_csv(polls));
}

std::vector<double> voter_totals(std::span<const profiles::VoterProfile> voters) {
    std::vector<double> out;
    for (const auto& v : voters) out.push_back(v.total_votes.to_double());
    return out;
}

void cmd_describe(Run& run, const Args& a) {
    const auto log = load_log(run, a);
    const auto options = metric_options(a);
    std::vector<centrality::PollMetrics> polls;
    const auto days = compute_days(log, polls, options);
    const auto voters = profiles::voter_profiles(log, options.ballot);
    const auto totals = voter_totals(voters);
    report::ReportInputs in;
    in.polls = polls;
    in.days = days;
    if (!polls.empty()) {
        in.poll_descriptives = profiles::poll_descriptives(polls, options);
        run.emit("poll_descriptives.csv", profiles::descriptives_csv(in.poll_descriptives->columns));
    }
    in.voters = voters;
    in.voter_totals = totals;
    run.emit("profiles.csv", profiles::profiles_csv(voters));
    if (!voters.empty()) run.emit("voter_descriptives.csv", profiles::descriptives_csv(profiles::voter_descriptives(voters)));
    emit_files(run, report::render_report(in, formats(a)));
}

void cmd_regress(Run& run, const Args& a) {
    const auto log = load_log(run, a);
    const auto factors = load_factor_file(run, a);
    auto config = pipeline_config(a, true, false);
    config.run_iv = false;
    const auto r = run_pipeline(log, factors, config);
    run.emit("panel.csv", govdata::factors_csv(r.panel.to_long()));
    run.emit("ols_grid.csv", econ::ols_grid_csv(*r.ols));
    report::ReportInputs in;
    in.ols = &*r.ols;
    in.thresholds = config.grid.thresholds;
    emit_files(run, report::render_report(in, formats(a)));
    run.note("tokens", r.tokens);
}

void cmd_iv(Run& run, const Args& a) {
    const auto log = load_log(run, a);
    const auto factors = load_factor_file(run, a);
    auto config = pipeline_config(a, false, true);
    config.run_ols = false;
    const auto r = run_pipeline(log, factors, config);
    if (!r.iv) throw RunFailure("the factor input carries no instrument rows (category instrument)");
    run.emit("iv_grid.csv", econ::iv_grid_csv(*r.iv));
    run.emit("instrument_screen.csv", econ::instrument_screen_csv(*r.screen));
    report::ReportInputs in;
    in.iv = &*r.iv;
    in.screen = &*r.screen;
    in.thresholds = config.grid.thresholds;
    emit_files(run, report::render_report(in, formats(a)));
    run.note("tokens", r.tokens);
    run.note("instrument_token", r.panel.instrument_token);
}

void cmd_synth(Run& run, const Args& a) {
    synthgov::SynthConfig config;
    std::optional<synthgov::PanelPlan> plan;
    if (!a.config.empty()) {
        run.input("config", a.config);
        const std::string text = read_file(a.config);
        config = synthgov::config_from_json(text);
        try {
            const auto j = json::parse(text);
            if (j.contains("panel")) plan = synthgov::plan_from_json(j["panel"].dump());
        } catch (const json::exception& e) {
            throw DomainError(e.what());
        }
    }
    if (a.seed) config.seed = *a.seed;
    if (!plan) plan = synthgov::PanelPlan{};
    const auto log = synthgov::gen_history(config);
    run.emit("votes.csv", govdata::votes_csv(log));
    run.emit("polls.csv", govdata::polls_csv(log));
    run.emit("identities.csv", govdata::identities_csv(log));
    std::vector<centrality::PollMetrics> polls;
    centrality::MetricOptions mo;
    mo.threads = default_thread_count();
    const auto days = compute_days(log, polls, mo);
    if (!days.empty()) {
        const auto panel = synthgov::gen_panel(days, *plan, config.seed ^ 0x9e3779b97f4a7c15ULL);
        run.emit("factors.csv", govdata::factors_csv(panel));
    }
    run.emit("synth_config.json", synthgov::config_to_json(config) + "\n");
    run.note("forcing_infeasible", log.ingest_report().count(synthgov::kForcingInfeasible));
}

void cmd_report(Run& run, const Args& a) {
    const auto log = load_log(run, a);
    const auto factors = load_factor_file(run, a);
    const auto config = pipeline_config(a, true, false);
    const auto r = run_pipeline(log, factors, config);
    const auto voters = profiles::voter_profiles(log, config.metrics.ballot);
    const auto totals = voter_totals(voters);

    run.emit("metrics.csv", centrality::metrics_csv(r.days));
    run.emit("poll_metrics.csv", centrality::poll_metrics_csv(r.polls));
    run.emit("profiles.csv", profiles::profiles_csv(voters));
    run.emit("ols_grid.csv", econ::ols_grid_csv(*r.ols));
    if (r.iv) {
        run.emit("iv_grid.csv", econ::iv_grid_csv(*r.iv));
        run.emit("instrument_screen.csv", econ::instrument_screen_csv(*r.screen));
    } else {
        run.note("iv", "skipped: no instrument rows in the factor input");
    }

    report::ReportInputs in;
    in.polls = r.polls;
    in.days = r.days;
    if (!r.polls.empty()) in.poll_descriptives = profiles::poll_descriptives(r.polls, config.metrics);
    in.voters = voters;
    in.voter_totals = totals;
    in.ols = &*r.ols;
    if (r.iv) {
        in.iv = &*r.iv;
        in.screen = &*r.screen;
    }
    in.thresholds = config.grid.thresholds;
    emit_files(run, report::render_report(in, formats(a)));
    run.note("tokens", r.tokens);
}

// --- option wiring ---------------------------------------------------------

void add_votes(CLI::App* c, Args& a) {
    c->add_option("--votes", a.votes, "votes.csv (poll_id,voter,option_id,weight,timestamp)")->required();
    c->add_option("--polls", a.polls, "polls.csv (poll_id,deploy_timestamp,title,options,abstain_options)")
        ->required();
    c->add_option("--identities", a.identities, "identities.csv (address,name)");
}

void add_metric_flags(CLI::App* c, Args& a) {
    c->add_option("--calendar", a.calendar, "days without polls: drop or full (zero rows)")
        ->check(CLI::IsMember({"drop", "full"}))
        ->capture_default_str();
    c->add_option("--ballot", a.ballot, "counted record per voter and poll")
        ->check(CLI::IsMember({"first", "last"}))
        ->capture_default_str();
    c->add_option("--order", a.order, "largest voter's record used for Order")
        ->check(CLI::IsMember({"first", "last"}))
        ->capture_default_str();
    c->add_option("--daily-gini", a.daily_gini, "daily Gini estimator")
        ->check(CLI::IsMember({"mle", "mean", "pooled"}))
        ->capture_default_str();
    c->add_flag("--winner-excludes-abstain", a.winner_excludes_abstain, "abstain options never win");
    c->add_flag("--breakdown-all-options", a.breakdown_all_options, "breakdown counts include abstain options");
}

void add_out(CLI::App* c, Args& a) { c->add_option("--out-dir", a.out_dir, "output directory")->required(); }

void add_regression_flags(CLI::App* c, Args& a) {
    c->add_option("--factors", a.factors, "factors.csv (date,token,category,factor,value)")->required();
    c->add_option("--tokens", a.tokens, "comma-separated tokens (default: all in the factor file)");
    c->add_option("--measures", a.measures, "comma-separated measures");
    c->add_flag("--raw", a.raw, "regress raw values instead of z-scores");
    c->add_option("--alpha-stars", a.alpha_stars, "significance levels for *, **, ***")->capture_default_str();
    c->add_option("--vol", a.vol, "return basis of rolling volatility")
        ->check(CLI::IsMember({"simple", "log"}))
        ->capture_default_str();
}

void add_formats(CLI::App* c, Args& a) {
    c->add_option("--formats", a.formats, "comma-separated subset of csv,markdown,svg")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"govpulse: governance centralization metrics and factor regressions"};
    app.name("govpulse");
    app.set_version_flag("--version", GOVPULSE_VERSION);
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    Args a;

    auto* ingest = app.add_subcommand("ingest", "validate and normalize input files");
    add_votes(ingest, a);
    ingest->add_option("--factors", a.factors, "factors.csv");
    add_out(ingest, a);

    auto* metrics = app.add_subcommand("metrics", "per-poll and daily centralization measures");
    add_votes(metrics, a);
    add_metric_flags(metrics, a);
    add_out(metrics, a);

    auto* describe = app.add_subcommand("describe", "descriptive tables for polls and voters");
    add_votes(describe, a);
    add_metric_flags(describe, a);
    add_formats(describe, a);
    add_out(describe, a);

    auto* regress = app.add_subcommand("regress", "univariate factor regressions on each measure");
    add_votes(regress, a);
    add_metric_flags(regress, a);
    add_regression_flags(regress, a);
    add_formats(regress, a);
    add_out(regress, a);

    auto* iv = app.add_subcommand("iv", "2SLS regressions with the instrument");
    add_votes(iv, a);
    add_metric_flags(iv, a);
    add_regression_flags(iv, a);
    add_formats(iv, a);
    add_out(iv, a);

    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    synth->add_option("--config", a.config, "JSON generator configuration");
    synth->add_option("--seed", a.seed, "overrides the configured seed");
    add_out(synth, a);

    auto* rep = app.add_subcommand("report", "full pipeline with tables and figures");
    add_votes(rep, a);
    add_metric_flags(rep, a);
    add_regression_flags(rep, a);
    add_formats(rep, a);
    add_out(rep, a);

    try {
        app.parse(argc, argv);
        // flag values that CLI11 cannot check on its own
        thresholds(a);
        if (!a.measures.empty()) measures(a, centrality::kAllMeasures);
        formats(a);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    Run run(sub->get_name(), a);
    std::optional<std::string> failure;
    try {
        if (sub == ingest) cmd_ingest(run, a);
        else if (sub == metrics) cmd_metrics(run, a);
        else if (sub == describe) cmd_describe(run, a);
        else if (sub == regress) cmd_regress(run, a);
        else if (sub == iv) cmd_iv(run, a);
        else if (sub == synth) cmd_synth(run, a);
        else cmd_report(run, a);
    } catch (const std::exception& e) {
        failure = e.what();
    }
    try {
        run.finish(failure);
    } catch (const std::exception& e) {
        err << "govpulse: cannot write run_manifest.json: " << e.what() << "\n";
        return 1;
    }
    if (failure) {
        err << "govpulse " << sub->get_name() << ": " << *failure << "\n";
        return 1;
    }
    return 0;
}

}  // namespace govpulse::cli
