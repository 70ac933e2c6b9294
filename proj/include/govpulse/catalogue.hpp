#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "govpulse/govdata.hpp"

namespace govpulse::factorlab {

enum class Derivation { ingested, derived };

struct FactorSpec {
    std::string name;
    govdata::Category category = govdata::Category::financial;
    Derivation derivation = Derivation::ingested;
    std::string description;
};

inline constexpr std::array<int, 9> kVolatilityWindows{2, 3, 4, 5, 6, 7, 14, 30, 60};

/// "MKR" -> "Mkr": the suffix used by token-denominated factor names.
std::string token_suffix(std::string_view token);

/// Registered factors for one token in table order: 11 financial,
/// 9 transaction, 10 exchange, 4 network, 3 sentiment. Token-denominated
/// families (Vol<T>, Net<T>, ...) are expanded with token_suffix(token).
std::vector<FactorSpec> catalogue_for(std::string_view token);

/// True for catalogue names of `token` and for the instrument factor.
bool is_registered(std::string_view token, govdata::Category category, std::string_view factor);

}  // namespace govpulse::factorlab
