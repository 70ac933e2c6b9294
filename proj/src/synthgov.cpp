#include "govpulse/synthgov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "govpulse/catalogue.hpp"
#include "govpulse/errors.hpp"

namespace govpulse::synthgov {
namespace {

using govdata::Address;
using govdata::OptionId;
using govdata::PollId;
using json = nlohmann::json;

constexpr OptionId kAbstainId = 0;

void require(bool ok, std::string_view field, std::string_view what) {
    if (!ok) throw DomainError(fmt::format("synth config: {} {}", field, what));
}

bool is_fraction(double v) { return v >= 0.0 && v <= 1.0; }

// One seeded stream per generation call.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    bool bernoulli(double p) { return uniform() < p; }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
    int poisson(double mean) { return mean > 0.0 ? std::poisson_distribution<int>(mean)(engine_) : 0; }
    /// Pareto(alpha) with minimum xm by inversion.
    double pareto(double alpha, double xm) { return xm * std::pow(1.0 - uniform(), -1.0 / alpha); }
    double delay(const DelaySpec& spec) {
        switch (spec.kind) {
            case DelaySpec::Kind::constant: return spec.a;
            case DelaySpec::Kind::exponential: return std::exponential_distribution<double>(1.0 / spec.a)(engine_);
            case DelaySpec::Kind::uniform: return uniform(spec.a, spec.b);
        }
        return 0.0;
    }
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

Address random_address(Rng& rng) {
    std::string hex;
    while (hex.size() < 40) hex += fmt::format("{:016x}", rng.bits());
    return "0x" + hex.substr(0, 40);
}

struct Ballot {
    std::size_t voter = 0;
    OptionId option = 0;
    std::int64_t first_ts = 0;
    std::optional<std::int64_t> revision_ts;
    OptionId first_option = 0;  ///< option of the first record when revised
};

// Same rule as winning_option: largest total, ties to the smallest id.
OptionId leader(const std::map<OptionId, TokenAmount>& totals) {
    OptionId best = totals.begin()->first;
    for (const auto& [id, t] : totals) {
        if (totals.at(best) < t) best = id;
    }
    return best;
}

}  // namespace

void SynthConfig::validate() const {
    require(days >= 1, "days", "must be at least 1");
    require(!total_polls || *total_polls >= 1, "total_polls", "must be at least 1");
    require(polls_per_day.mean >= 0.0, "polls_per_day.mean", "must be non-negative");
    require(voter_pool >= 1, "voter_pool", "must be at least 1");
    require(holdings_alpha > 1.0, "holdings_alpha", "must exceed 1");
    require(holdings_scale > 0.0, "holdings_scale", "must be positive");
    require(is_fraction(dust_fraction), "dust_fraction", "must lie in [0, 1]");
    require(dust_scale > 0.0 && dust_scale <= 1.0, "dust_scale", "must lie in (0, 1]");
    require(is_fraction(participation_rate), "participation_rate", "must lie in [0, 1]");
    require(is_fraction(revision_rate), "revision_rate", "must lie in [0, 1]");
    require(is_fraction(largest_wins_prob), "largest_wins_prob", "must lie in [0, 1]");
    require(is_fraction(abstain_rate), "abstain_rate", "must lie in [0, 1]");
    require(options >= 2, "options", "must be at least 2");
    require(vote_delay.a >= 0.0, "vote_delay", "must be non-negative");
    require(vote_delay.kind != DelaySpec::Kind::exponential || vote_delay.a > 0.0, "vote_delay.mean",
            "must be positive");
    require(vote_delay.kind != DelaySpec::Kind::uniform || vote_delay.b >= vote_delay.a, "vote_delay.high",
            "must not be below low");
}

govdata::VoteLog gen_history(const SynthConfig& config) {
    config.validate();
    Rng rng(config.seed);

    // holders
    std::vector<Address> addresses;
    std::set<Address> seen;
    while (addresses.size() < config.voter_pool) {
        auto a = random_address(rng);
        if (seen.insert(a).second) addresses.push_back(std::move(a));
    }
    std::vector<TokenAmount> holdings;
    holdings.reserve(config.voter_pool);
    for (std::size_t i = 0; i < config.voter_pool; ++i) {
        double h = rng.pareto(config.holdings_alpha, config.holdings_scale);
        if (rng.bernoulli(config.dust_fraction)) h *= config.dust_scale;
        holdings.push_back(TokenAmount::from_double(h, 6));
    }

    // schedule
    std::vector<int> poll_days;
    if (config.total_polls) {
        for (std::size_t p = 0; p < *config.total_polls; ++p) {
            poll_days.push_back(static_cast<int>(rng.index(static_cast<std::size_t>(config.days))));
        }
        std::sort(poll_days.begin(), poll_days.end());
    } else {
        for (int d = 0; d < config.days; ++d) {
            const int k = config.polls_per_day.kind == CountSpec::Kind::constant
                              ? static_cast<int>(std::lround(config.polls_per_day.mean))
                              : rng.poisson(config.polls_per_day.mean);
            for (int j = 0; j < k; ++j) poll_days.push_back(d);
        }
    }

    std::map<PollId, govdata::PollRecord> registry;
    std::vector<govdata::VoteEvent> events;
    govdata::ValidationReport report;

    for (std::size_t p = 0; p < poll_days.size(); ++p) {
        govdata::PollRecord poll;
        poll.poll_id = static_cast<PollId>(p + 1);
        poll.deploy_timestamp = (config.start_date + poll_days[p]).unix_seconds() +
                                static_cast<std::int64_t>(rng.index(86400));
        poll.title = fmt::format("Synthetic poll {}", poll.poll_id);
        poll.options.push_back({kAbstainId, "Abstain"});
        for (int o = 1; o <= config.options; ++o) poll.options.push_back({o, fmt::format("Option {}", o)});
        poll.abstain_option_ids = {kAbstainId};

        const auto pick_option = [&] {
            if (rng.bernoulli(config.abstain_rate)) return kAbstainId;
            return static_cast<OptionId>(1 + rng.index(static_cast<std::size_t>(config.options)));
        };

        std::vector<Ballot> ballots;
        for (std::size_t v = 0; v < config.voter_pool; ++v) {
            if (rng.bernoulli(config.participation_rate)) ballots.push_back({v, 0, 0, std::nullopt, 0});
        }
        if (ballots.empty()) ballots.push_back({rng.index(config.voter_pool), 0, 0, std::nullopt, 0});
        for (auto& b : ballots) {
            b.first_option = b.option = pick_option();
            b.first_ts = poll.deploy_timestamp + static_cast<std::int64_t>(std::llround(rng.delay(config.vote_delay)));
            if (rng.bernoulli(config.revision_rate)) {
                b.revision_ts = b.first_ts + 1 + static_cast<std::int64_t>(std::llround(rng.delay(config.vote_delay)));
                b.option = pick_option();
            }
        }

        // largest voter in final-ballot order: weight desc, final time asc, address asc
        const auto final_ts = [](const Ballot& b) { return b.revision_ts.value_or(b.first_ts); };
        std::size_t largest = 0;
        for (std::size_t i = 1; i < ballots.size(); ++i) {
            const auto& a = ballots[i];
            const auto& c = ballots[largest];
            if (holdings[a.voter] > holdings[c.voter] ||
                (holdings[a.voter] == holdings[c.voter] &&
                 std::make_tuple(final_ts(a), addresses[a.voter]) < std::make_tuple(final_ts(c), addresses[c.voter]))) {
                largest = i;
            }
        }
        Ballot& big = ballots[largest];
        if (big.option == kAbstainId) big.option = static_cast<OptionId>(1 + rng.index(static_cast<std::size_t>(config.options)));
        if (!big.revision_ts) big.first_option = big.option;

        std::map<OptionId, TokenAmount> totals;
        for (const auto& o : poll.options) totals[o.id] = TokenAmount{};
        for (const auto& b : ballots) totals[b.option] = totals[b.option] + holdings[b.voter];

        // smallest holders are nudged first
        std::vector<std::size_t> order(ballots.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            return holdings[ballots[a].voter] < holdings[ballots[c].voter];
        });
        const auto move = [&](Ballot& b, OptionId to) {
            totals[b.option] = totals[b.option] - holdings[b.voter];
            b.option = to;
            totals[to] = totals[to] + holdings[b.voter];
            if (!b.revision_ts) b.first_option = to;
        };

        const bool want_win = rng.bernoulli(config.largest_wins_prob);
        const OptionId mine = big.option;
        if (want_win) {
            for (std::size_t i : order) {
                if (leader(totals) == mine) break;
                if (ballots[i].option != mine) move(ballots[i], mine);
            }
        } else if (leader(totals) == mine) {
            OptionId rival = 0;
            for (const auto& [id, t] : totals) {
                if (id == kAbstainId || id == mine) continue;
                if (rival == 0 || totals[rival] < t) rival = id;
            }
            for (int pass = 0; pass < 2 && leader(totals) == mine; ++pass) {
                for (std::size_t i : order) {
                    if (leader(totals) != mine) break;
                    Ballot& b = ballots[i];
                    if (i == largest || b.option == rival) continue;
                    // first pass drains the largest voter's side, second pass everyone else
                    if ((pass == 0) == (b.option == mine)) move(b, rival);
                }
            }
            if (leader(totals) == mine) {
                report.anomalies.push_back({"synth", 0, std::string(kForcingInfeasible),
                                            fmt::format("poll {}: largest voter cannot be outvoted", poll.poll_id),
                                            govdata::Severity::info, false});
            }
        }

        for (const auto& b : ballots) {
            if (b.revision_ts) {
                events.push_back({poll.poll_id, addresses[b.voter], b.first_option, holdings[b.voter], b.first_ts, 0});
                events.push_back({poll.poll_id, addresses[b.voter], b.option, holdings[b.voter], *b.revision_ts, 0});
            } else {
                events.push_back({poll.poll_id, addresses[b.voter], b.option, holdings[b.voter], b.first_ts, 0});
            }
        }
        registry.emplace(poll.poll_id, std::move(poll));
    }

    std::map<Address, std::string> identities;
    std::vector<std::size_t> by_holding(config.voter_pool);
    std::iota(by_holding.begin(), by_holding.end(), std::size_t{0});
    std::stable_sort(by_holding.begin(), by_holding.end(),
                     [&](std::size_t a, std::size_t b) { return holdings[b] < holdings[a]; });
    for (std::size_t i = 0; i < std::min(config.identified_voters, by_holding.size()); ++i) {
        identities.emplace(addresses[by_holding[i]], fmt::format("delegate-{}", i + 1));
    }

    report.events = events.size();
    report.input_rows = events.size();
    govdata::VoteLog log(std::move(events), std::move(registry), std::move(identities));
    report.polls = log.registry().size();
    std::set<std::string_view> voters;
    for (const auto& e : log.events()) voters.insert(e.voter);
    report.voters = voters.size();
    log.set_ingest_report(std::move(report));
    return log;
}

// ---------------------------------------------------------------------------
// Factor panels

void PanelPlan::validate() const {
    require(default_noise_std >= 0.0, "panel.default_noise_std", "must be non-negative");
    require(price_start > 0.0, "panel.price_start", "must be positive");
    require(price_vol >= 0.0, "panel.price_vol", "must be non-negative");
    for (const auto& f : factors) {
        require(f.noise_std >= 0.0, "panel.factors.noise_std", "must be non-negative");
        require(!f.token.empty() && !f.factor.empty(), "panel.factors", "need token and factor");
    }
    require(instrument.sd >= 0.0, "panel.instrument.sd", "must be non-negative");
}

namespace {

std::vector<double> zscore(const std::vector<double>& v, const std::vector<bool>& present) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (present[i]) {
            sum += v[i];
            ++n;
        }
    }
    std::vector<double> out(v.size(), 0.0);
    if (n == 0) return out;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (present[i]) ss += (v[i] - mean) * (v[i] - mean);
    }
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (present[i]) out[i] = sd > 0.0 ? (v[i] - mean) / sd : 0.0;
    }
    return out;
}

}  // namespace

govdata::FactorPanel gen_panel(std::span<const centrality::DailyMetrics> metrics, const PanelPlan& plan,
                               std::uint64_t seed) {
    if (metrics.empty()) throw DomainError("gen_panel needs at least one day of metrics");
    plan.validate();
    Rng rng(seed);

    const Date first = metrics.front().date;
    const Date last = metrics.back().date;
    const auto span_days = static_cast<std::size_t>(last - first + 1);
    std::vector<bool> present(span_days, false);
    std::map<centrality::Measure, std::vector<double>> zm;
    {
        std::map<centrality::Measure, std::vector<double>> raw;
        for (auto m : centrality::kAllMeasures) raw[m].assign(span_days, 0.0);
        for (const auto& d : metrics) {
            const auto i = static_cast<std::size_t>(d.date - first);
            if (d.missing) continue;
            present[i] = true;
            for (auto m : centrality::kAllMeasures) raw[m][i] = centrality::measure_value(d, m);
        }
        for (auto& [m, v] : raw) zm[m] = zscore(v, present);
    }

    // instrument and, in endogenous mode, the confound orthogonal to it
    const auto& target = zm.at(plan.instrument.measure);
    std::vector<double> z(span_days, 0.0);
    for (std::size_t i = 0; i < span_days; ++i) {
        const double eta = rng.normal();
        if (present[i]) z[i] = plan.instrument.strength * target[i] + eta;
    }
    std::vector<bool> window = present;
    if (plan.instrument.days > 0) {
        std::size_t kept = 0;
        for (std::size_t i = span_days; i-- > 0;) {
            if (!window[i]) continue;
            if (kept < plan.instrument.days) {
                ++kept;
            } else {
                window[i] = false;
            }
        }
    }
    const auto zs = zscore(z, present);
    std::vector<double> emitted(span_days, 0.0);
    for (std::size_t i = 0; i < span_days; ++i) {
        if (!present[i]) continue;
        double v = plan.instrument.mean + plan.instrument.sd * zs[i];
        if (plan.instrument.integer) v = std::max(0.0, std::round(v));
        emitted[i] = v;
    }
    std::vector<double> confound(span_days, 0.0);
    if (plan.endogeneity.enabled) {
        double mz = 0.0, mm = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < span_days; ++i) {
            if (!present[i]) continue;
            mz += emitted[i];
            mm += target[i];
            ++n;
        }
        mz /= static_cast<double>(n);
        mm /= static_cast<double>(n);
        double szz = 0.0, szm = 0.0;
        for (std::size_t i = 0; i < span_days; ++i) {
            if (!present[i]) continue;
            szz += (emitted[i] - mz) * (emitted[i] - mz);
            szm += (emitted[i] - mz) * (target[i] - mm);
        }
        const double kappa = szz > 0.0 ? szm / szz : 0.0;
        for (std::size_t i = 0; i < span_days; ++i) {
            if (present[i]) confound[i] = (target[i] - mm) - kappa * (emitted[i] - mz);
        }
    }

    govdata::FactorPanel panel;
    std::set<std::tuple<std::string, govdata::Category, std::string>> planned;
    for (const auto& f : plan.factors) planned.emplace(f.token, f.category, f.factor);

    const auto emit_plan = [&](const FactorPlan& f) {
        for (std::size_t i = 0; i < span_days; ++i) {
            double v = f.intercept + f.noise_std * rng.normal();
            if (present[i]) {
                for (const auto& [m, loading] : f.loadings) v += loading * zm.at(m)[i];
                if (plan.endogeneity.enabled && f.confounded) v += plan.endogeneity.gamma * confound[i];
            }
            panel.set({first + static_cast<std::int32_t>(i), f.token, f.category, f.factor}, v);
        }
    };

    if (plan.fill_catalogue) {
        for (const auto& token : plan.tokens) {
            for (const auto& spec : factorlab::catalogue_for(token)) {
                if (spec.derivation == factorlab::Derivation::derived) continue;
                if (planned.contains({token, spec.category, spec.name})) continue;
                if (spec.name == "Price") {
                    double price = plan.price_start;
                    for (std::size_t i = 0; i < span_days; ++i) {
                        if (i > 0) price *= std::exp(plan.price_vol * rng.normal());
                        panel.set({first + static_cast<std::int32_t>(i), token, spec.category, spec.name}, price);
                    }
                } else {
                    emit_plan({token, spec.category, spec.name, 0.0, {}, plan.default_noise_std, false});
                }
            }
        }
    }
    for (const auto& f : plan.factors) emit_plan(f);

    if (plan.instrument.emit) {
        for (std::size_t i = 0; i < span_days; ++i) {
            if (!window[i]) continue;
            panel.set({first + static_cast<std::int32_t>(i), plan.instrument.token, govdata::Category::instrument,
                       std::string(govdata::kInstrumentFactor)},
                      emitted[i]);
        }
    }
    return panel;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <typename T>
void read(const json& j, std::string_view key, T& out) {
    if (const auto it = j.find(std::string(key)); it != j.end() && !it->is_null()) out = it->get<T>();
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known, std::string_view where) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw DomainError(fmt::format("{}: unknown key \"{}\"", where, key));
        }
    }
}

centrality::Measure measure_from(const std::string& text) {
    const auto m = centrality::parse_measure(text);
    if (!m) throw DomainError(fmt::format("unknown measure \"{}\"", text));
    return *m;
}

}  // namespace

SynthConfig config_from_json(std::string_view text) {
    SynthConfig c;
    try {
        const json j = json::parse(text);
        if (!j.is_object()) throw DomainError("synth config must be a JSON object");
        reject_unknown(j,
                       {"days", "total_polls", "polls_per_day", "voter_pool", "holdings_alpha", "holdings_scale",
                        "dust_fraction", "dust_scale", "participation_rate", "revision_rate", "largest_wins_prob",
                        "abstain_rate", "options", "vote_delay", "identified_voters", "seed", "start_date", "panel"},
                       "synth config");
        read(j, "days", c.days);
        if (j.contains("total_polls")) {
            c.total_polls = j["total_polls"].is_null() ? std::nullopt
                                                       : std::optional<std::size_t>(j["total_polls"].get<std::size_t>());
        }
        if (const auto it = j.find("polls_per_day"); it != j.end()) {
            const std::string kind = it->value("kind", "poisson");
            if (kind == "constant") {
                c.polls_per_day.kind = CountSpec::Kind::constant;
            } else if (kind == "poisson") {
                c.polls_per_day.kind = CountSpec::Kind::poisson;
            } else {
                throw DomainError(fmt::format("polls_per_day.kind \"{}\" is not constant or poisson", kind));
            }
            read(*it, "mean", c.polls_per_day.mean);
        }
        read(j, "voter_pool", c.voter_pool);
        read(j, "holdings_alpha", c.holdings_alpha);
        read(j, "holdings_scale", c.holdings_scale);
        read(j, "dust_fraction", c.dust_fraction);
        read(j, "dust_scale", c.dust_scale);
        read(j, "participation_rate", c.participation_rate);
        read(j, "revision_rate", c.revision_rate);
        read(j, "largest_wins_prob", c.largest_wins_prob);
        read(j, "abstain_rate", c.abstain_rate);
        read(j, "options", c.options);
        if (const auto it = j.find("vote_delay"); it != j.end()) {
            const std::string kind = it->value("kind", "exponential");
            if (kind == "constant") {
                c.vote_delay = {DelaySpec::Kind::constant, it->value("value", 0.0), 0.0};
            } else if (kind == "exponential") {
                c.vote_delay = {DelaySpec::Kind::exponential, it->value("mean", c.vote_delay.a), 0.0};
            } else if (kind == "uniform") {
                c.vote_delay = {DelaySpec::Kind::uniform, it->value("low", 0.0), it->value("high", 0.0)};
            } else {
                throw DomainError(fmt::format("vote_delay.kind \"{}\" is not constant, exponential or uniform", kind));
            }
        }
        read(j, "identified_voters", c.identified_voters);
        read(j, "seed", c.seed);
        if (const auto it = j.find("start_date"); it != j.end()) {
            const auto d = Date::parse(it->get<std::string>());
            if (!d) throw DomainError("start_date must be YYYY-MM-DD");
            c.start_date = *d;
        }
    } catch (const json::exception& e) {
        throw DomainError(fmt::format("synth config: {}", e.what()));
    }
    c.validate();
    return c;
}

std::string config_to_json(const SynthConfig& c) {
    json j;
    j["days"] = c.days;
    j["total_polls"] = c.total_polls ? json(*c.total_polls) : json(nullptr);
    j["polls_per_day"] = {{"kind", c.polls_per_day.kind == CountSpec::Kind::constant ? "constant" : "poisson"},
                          {"mean", c.polls_per_day.mean}};
    j["voter_pool"] = c.voter_pool;
    j["holdings_alpha"] = c.holdings_alpha;
    j["holdings_scale"] = c.holdings_scale;
    j["dust_fraction"] = c.dust_fraction;
    j["dust_scale"] = c.dust_scale;
    j["participation_rate"] = c.participation_rate;
    j["revision_rate"] = c.revision_rate;
    j["largest_wins_prob"] = c.largest_wins_prob;
    j["abstain_rate"] = c.abstain_rate;
    j["options"] = c.options;
    switch (c.vote_delay.kind) {
        case DelaySpec::Kind::constant: j["vote_delay"] = {{"kind", "constant"}, {"value", c.vote_delay.a}}; break;
        case DelaySpec::Kind::exponential: j["vote_delay"] = {{"kind", "exponential"}, {"mean", c.vote_delay.a}}; break;
        case DelaySpec::Kind::uniform:
            j["vote_delay"] = {{"kind", "uniform"}, {"low", c.vote_delay.a}, {"high", c.vote_delay.b}};
            break;
    }
    j["identified_voters"] = c.identified_voters;
    j["seed"] = c.seed;
    j["start_date"] = c.start_date.to_string();
    return j.dump(2);
}

PanelPlan plan_from_json(std::string_view text) {
    PanelPlan p;
    try {
        const json j = json::parse(text);
        if (!j.is_object()) throw DomainError("panel plan must be a JSON object");
        reject_unknown(j,
                       {"tokens", "fill_catalogue", "default_noise_std", "price_start", "price_vol", "factors",
                        "instrument", "endogeneity"},
                       "panel plan");
        read(j, "tokens", p.tokens);
        read(j, "fill_catalogue", p.fill_catalogue);
        read(j, "default_noise_std", p.default_noise_std);
        read(j, "price_start", p.price_start);
        read(j, "price_vol", p.price_vol);
        if (const auto it = j.find("factors"); it != j.end()) {
            for (const auto& f : *it) {
                reject_unknown(f, {"token", "category", "factor", "intercept", "loadings", "noise_std", "confounded"},
                               "panel plan factor");
                FactorPlan fp;
                fp.token = f.at("token").get<std::string>();
                const auto cat = govdata::parse_category(f.value("category", "financial"));
                if (!cat) throw DomainError("panel plan factor: unknown category");
                fp.category = *cat;
                fp.factor = f.at("factor").get<std::string>();
                read(f, "intercept", fp.intercept);
                read(f, "noise_std", fp.noise_std);
                read(f, "confounded", fp.confounded);
                if (const auto l = f.find("loadings"); l != f.end()) {
                    for (const auto& [name, value] : l->items()) fp.loadings[measure_from(name)] = value.get<double>();
                }
                p.factors.push_back(std::move(fp));
            }
        }
        if (const auto it = j.find("instrument"); it != j.end()) {
            reject_unknown(*it, {"emit", "token", "measure", "strength", "mean", "sd", "integer", "days"},
                           "panel plan instrument");
            read(*it, "emit", p.instrument.emit);
            read(*it, "token", p.instrument.token);
            if (it->contains("measure")) p.instrument.measure = measure_from((*it)["measure"].get<std::string>());
            read(*it, "strength", p.instrument.strength);
            read(*it, "mean", p.instrument.mean);
            read(*it, "sd", p.instrument.sd);
            read(*it, "integer", p.instrument.integer);
            read(*it, "days", p.instrument.days);
        }
        if (const auto it = j.find("endogeneity"); it != j.end()) {
            reject_unknown(*it, {"enabled", "gamma"}, "panel plan endogeneity");
            read(*it, "enabled", p.endogeneity.enabled);
            read(*it, "gamma", p.endogeneity.gamma);
        }
    } catch (const json::exception& e) {
        throw DomainError(fmt::format("panel plan: {}", e.what()));
    }
    p.validate();
    return p;
}

}  // namespace govpulse::synthgov
