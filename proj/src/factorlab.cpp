#include "govpulse/factorlab.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "govpulse/errors.hpp"
#include "govpulse/kernels.hpp"
#include "govpulse/stats.hpp"

namespace govpulse::factorlab {
namespace {

template <typename Transform>
Series returns_with(const Series& prices, std::vector<govdata::Anomaly>* anomalies, Transform&& transform) {
    Series out;
    out.dates = prices.dates;
    out.values.assign(prices.size(), kMissing);
    for (std::size_t t = 0; t < prices.size(); ++t) {
        const double p = prices.values[t];
        if (!is_missing(p) && p <= 0.0 && anomalies) {
            anomalies->push_back({"panel", 0, "non-positive price",
                                  fmt::format("{} price {}", prices.dates[t].to_string(), p),
                                  govdata::Severity::warning, false});
        }
        if (t == 0) continue;
        const double prev = prices.values[t - 1];
        if (is_missing(p) || is_missing(prev) || p <= 0.0 || prev <= 0.0) continue;
        out.values[t] = transform(p, prev);
    }
    return out;
}

}  // namespace

std::string_view vol_basis_name(VolBasis b) { return b == VolBasis::simple ? "simple" : "log"; }

Series daily_return(const Series& prices, std::vector<govdata::Anomaly>* anomalies) {
    return returns_with(prices, anomalies, [](double p, double prev) { return p / prev - 1.0; });
}

Series log_return(const Series& prices, std::vector<govdata::Anomaly>* anomalies) {
    return returns_with(prices, anomalies, [](double p, double prev) { return std::log(p / prev); });
}

Series rolling_vol(const Series& returns, int k) {
    if (k < 2) throw DomainError("rolling volatility window must be at least 2");
    const auto window = static_cast<std::size_t>(k);
    Series out;
    out.dates = returns.dates;
    out.values.assign(returns.size(), kMissing);
    std::size_t run = 0;  // consecutive present values ending at t
    for (std::size_t t = 0; t < returns.size(); ++t) {
        run = is_missing(returns.values[t]) ? 0 : run + 1;
        if (run < window) continue;
        const std::span<const double> w(returns.values.data() + t + 1 - window, window);
        out.values[t] = stats::sample_std(w);
    }
    return out;
}

const Series* Panel::factor(std::string_view token, govdata::Category category, std::string_view name) const {
    const auto it = factors.find(SeriesKey{std::string(token), category, std::string(name)});
    return it == factors.end() ? nullptr : &it->second;
}

std::vector<std::string> Panel::tokens() const {
    std::set<std::string> set;
    for (const auto& [key, s] : factors) set.insert(key.token);
    return {set.begin(), set.end()};
}

govdata::FactorPanel Panel::to_long() const {
    govdata::FactorPanel out;
    for (const auto& [key, s] : factors) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!is_missing(s.values[i])) out.set({s.dates[i], key.token, key.category, key.factor}, s.values[i]);
        }
    }
    for (std::size_t i = 0; i < instrument.size(); ++i) {
        if (!is_missing(instrument.values[i])) {
            out.set({instrument.dates[i], instrument_token, govdata::Category::instrument, std::string(govdata::kInstrumentFactor)},
                    instrument.values[i]);
        }
    }
    return out;
}

Panel build_panel(const govdata::FactorPanel& raw, std::span<const centrality::DailyMetrics> metrics,
                  const PanelOptions& options) {
    Panel panel;
    panel.vol = options.vol;
    for (auto& [key, series] : raw.split()) {
        if (key.category == govdata::Category::instrument) {
            if (panel.instrument_token.empty() && key.factor == govdata::kInstrumentFactor) panel.instrument_token = key.token;
            continue;
        }
        panel.factors.emplace(key, std::move(series));
    }
    panel.instrument = raw.instrument();

    std::vector<std::string> priced;
    for (const auto& [key, s] : panel.factors) {
        if (key.category == govdata::Category::financial && key.factor == "Price") priced.push_back(key.token);
    }
    for (const auto& token : priced) {
        const Series prices = *panel.factor(token, govdata::Category::financial, "Price");
        Series r = daily_return(prices, &panel.anomalies);
        const Series vol_input = options.vol == VolBasis::simple ? r : log_return(prices);
        for (int k : kVolatilityWindows) {
            SeriesKey key{token, govdata::Category::financial, fmt::format("v{}", k)};
            if (panel.factors.contains(key)) {
                panel.anomalies.push_back({"panel", 0, "derived factor overrides input", key.token + " " + key.factor,
                                           govdata::Severity::info, false});
            }
            panel.factors[key] = rolling_vol(vol_input, k);
        }
        SeriesKey rkey{token, govdata::Category::financial, "r"};
        if (panel.factors.contains(rkey)) {
            panel.anomalies.push_back({"panel", 0, "derived factor overrides input", token + " r",
                                       govdata::Severity::info, false});
        }
        panel.factors[rkey] = std::move(r);
    }

    for (auto m : centrality::kAllMeasures) {
        Series s;
        for (const auto& d : metrics) s.push_back(d.date, centrality::measure_value(d, m));
        panel.measures.emplace(m, std::move(s));
    }
    return panel;
}

AlignedSample align(const Series& y, const Series& x) {
    AlignedSample out;
    std::size_t i = 0, j = 0;
    while (i < y.size() && j < x.size()) {
        if (y.dates[i] < x.dates[j]) {
            ++i;
        } else if (x.dates[j] < y.dates[i]) {
            ++j;
        } else {
            if (!is_missing(y.values[i]) && !is_missing(x.values[j])) {
                out.dates.push_back(y.dates[i]);
                out.y.push_back(y.values[i]);
                out.x.push_back(x.values[j]);
            }
            ++i;
            ++j;
        }
    }
    return out;
}

AlignedTriple align(const Series& y, const Series& x, const Series& z) {
    const AlignedSample yx = align(y, x);
    AlignedTriple out;
    std::size_t i = 0, k = 0;
    while (i < yx.dates.size() && k < z.size()) {
        if (yx.dates[i] < z.dates[k]) {
            ++i;
        } else if (z.dates[k] < yx.dates[i]) {
            ++k;
        } else {
            if (!is_missing(z.values[k])) {
                out.dates.push_back(yx.dates[i]);
                out.y.push_back(yx.y[i]);
                out.x.push_back(yx.x[i]);
                out.z.push_back(z.values[k]);
            }
            ++i;
            ++k;
        }
    }
    return out;
}

double standardize(std::vector<double>& values) {
    if (values.empty()) return 0.0;
    const double mean = kernels::sum(values) / static_cast<double>(values.size());
    const double sd = stats::sample_std(values);
    for (double& v : values) v = sd > 0.0 ? (v - mean) / sd : v - mean;
    return sd;
}

}  // namespace govpulse::factorlab
