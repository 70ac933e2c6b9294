#include "govpulse/catalogue.hpp"

#include <algorithm>
#include <cctype>

namespace govpulse::factorlab {
namespace {

using govdata::Category;

struct Family {
    std::string_view pattern;  // "{T}" is replaced by the token suffix
    Category category;
    Derivation derivation;
    std::string_view description;
};

constexpr Family kFamilies[] = {
    {"Price", Category::financial, Derivation::ingested, "Price by day (USD)"},
    {"r", Category::financial, Derivation::derived, "Daily return"},
    {"v2", Category::financial, Derivation::derived, "2-day volatility"},
    {"v3", Category::financial, Derivation::derived, "3-day volatility"},
    {"v4", Category::financial, Derivation::derived, "4-day volatility"},
    {"v5", Category::financial, Derivation::derived, "5-day volatility"},
    {"v6", Category::financial, Derivation::derived, "6-day volatility"},
    {"v7", Category::financial, Derivation::derived, "7-day volatility"},
    {"v14", Category::financial, Derivation::derived, "14-day volatility"},
    {"v30", Category::financial, Derivation::derived, "30-day volatility"},
    {"v60", Category::financial, Derivation::derived, "60-day volatility"},

    {"AvgBlcUsd", Category::transaction, Derivation::ingested, "Market cap (USD) per address with a balance"},
    {"AvgSize{T}", Category::transaction, Derivation::ingested, "Transaction value (token) per transaction"},
    {"AvgSizeUsd", Category::transaction, Derivation::ingested, "Transaction value (USD) per transaction"},
    {"LargeVol{T}", Category::transaction, Derivation::ingested, "Daily volume (token) of transactions over $100,000"},
    {"LargeVolUsd", Category::transaction, Derivation::ingested, "Daily volume (USD) of transactions over $100,000"},
    {"LargeCnt", Category::transaction, Derivation::ingested, "Daily count of transactions over $100,000"},
    {"Vol{T}", Category::transaction, Derivation::ingested, "On-chain volume (token)"},
    {"VolUsd", Category::transaction, Derivation::ingested, "On-chain volume (USD)"},
    {"TxnCnt", Category::transaction, Derivation::ingested, "Number of transactions"},

    {"InCnt", Category::exchange, Derivation::ingested, "Exchange deposit transactions"},
    {"InVol{T}", Category::exchange, Derivation::ingested, "Amount (token) entering exchanges"},
    {"InVolUsd", Category::exchange, Derivation::ingested, "Amount (USD) entering exchanges"},
    {"OutCnt", Category::exchange, Derivation::ingested, "Exchange withdrawal transactions"},
    {"OutVol{T}", Category::exchange, Derivation::ingested, "Amount (token) leaving exchanges"},
    {"OutVolUsd", Category::exchange, Derivation::ingested, "Amount (USD) leaving exchanges"},
    {"Net{T}", Category::exchange, Derivation::ingested, "Exchange netflow (token)"},
    {"NetUsd", Category::exchange, Derivation::ingested, "Exchange netflow (USD)"},
    {"Total{T}", Category::exchange, Derivation::ingested, "Exchange inflow plus outflow (token)"},
    {"TotalUsd", Category::exchange, Derivation::ingested, "Exchange inflow plus outflow (USD)"},

    {"TotalWithBlc", Category::network, Derivation::ingested, "Addresses with a balance"},
    {"New", Category::network, Derivation::ingested, "New addresses created"},
    {"Active", Category::network, Derivation::ingested, "Addresses that made a transaction"},
    {"ActiveRatio", Category::network, Derivation::ingested, "Active addresses / addresses with a balance"},

    {"Positive", Category::sentiment, Derivation::ingested, "Tweets with positive connotation"},
    {"Neutral", Category::sentiment, Derivation::ingested, "Tweets with neutral connotation"},
    {"Negative", Category::sentiment, Derivation::ingested, "Tweets with negative connotation"},
};

std::string expand(std::string_view pattern, std::string_view suffix) {
    std::string out(pattern);
    if (const auto at = out.find("{T}"); at != std::string::npos) out.replace(at, 3, suffix);
    return out;
}

}  // namespace

std::string token_suffix(std::string_view token) {
    std::string out;
    for (std::size_t i = 0; i < token.size(); ++i) {
        const auto c = static_cast<unsigned char>(token[i]);
        out.push_back(static_cast<char>(i == 0 ? std::toupper(c) : std::tolower(c)));
    }
    return out;
}

std::vector<FactorSpec> catalogue_for(std::string_view token) {
    const std::string suffix = token_suffix(token);
    std::vector<FactorSpec> out;
    out.reserve(std::size(kFamilies));
    for (const auto& f : kFamilies) {
        out.push_back({expand(f.pattern, suffix), f.category, f.derivation, std::string(f.description)});
    }
    return out;
}

bool is_registered(std::string_view token, govdata::Category category, std::string_view factor) {
    if (category == Category::instrument) return factor == govdata::kInstrumentFactor;
    const std::string suffix = token_suffix(token);
    return std::any_of(std::begin(kFamilies), std::end(kFamilies), [&](const Family& f) {
        return f.category == category && expand(f.pattern, suffix) == factor;
    });
}

}  // namespace govpulse::factorlab
