#include "polyent/diagnostics.hpp"

#include <string_view>
#include <unordered_set>

namespace polyent {

std::uint64_t word_complexity(const SymbolicWord& word, std::size_t n) {
    if (n == 0) throw std::invalid_argument("word_complexity: n must be >= 1");
    if (word.size() < n) throw std::invalid_argument("word_complexity: range shorter than n");
    std::unordered_set<std::string_view> factors;
    const auto last_start = word.last() - static_cast<std::int64_t>(n) + 1;
    for (std::int64_t k = word.first(); k <= last_start; ++k) factors.insert(word.factor(k, n));
    return factors.size();
}

std::vector<std::uint64_t> complexity_profile(const SymbolicWord& word, std::size_t n_max) {
    std::vector<std::uint64_t> out;
    out.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) out.push_back(word_complexity(word, n));
    return out;
}

MorseHedlundVerdict morse_hedlund(std::span<const std::uint64_t> profile) {
    MorseHedlundVerdict v;
    v.above_diagonal = true;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile[i] < i + 2) v.above_diagonal = false;
        if (!v.plateau_at && i + 1 < profile.size() && profile[i] == profile[i + 1]) v.plateau_at = i + 1;
    }
    v.eventually_periodic = v.plateau_at.has_value();
    return v;
}

}  // namespace polyent
