#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polyent/system.hpp"

namespace polyent {

using Symbol = std::uint8_t;

/// x_k = pattern[k mod |pattern|]
struct PeriodicRule {
    std::vector<Symbol> pattern;
};

/// x_k = floor((k+1) alpha + intercept) - floor(k alpha + intercept), binary.
/// Evaluated in long double; exact for |k| <= kSturmianIndexBudget when alpha
/// is badly approximable (bounded partial quotients).
struct SturmianRule {
    long double alpha = 0;
    long double intercept = 0;
};

/// x_k = symbols[k - first] inside the stored window, `fill` outside it.
struct ExplicitRule {
    std::int64_t first = 0;
    std::vector<Symbol> symbols;
    Symbol fill = 0;
};

using SymbolRule = std::variant<PeriodicRule, SturmianRule, ExplicitRule>;

inline constexpr std::int64_t kSturmianIndexBudget = 100'000'000;

Symbol symbol_at(const SymbolRule& rule, std::int64_t k);

/// A two-sided sequence: coordinate k is rule(offset + k). Applying the
/// shift increments the offset.
struct SymbolicPoint {
    std::shared_ptr<const SymbolRule> rule;
    std::int64_t offset = 0;

    Symbol at(std::int64_t k) const { return symbol_at(*rule, offset + k); }
};

/// Finite window [first, first + size) of a symbol sequence. Keeps the
/// generating rule (when there is one) so windows can be lifted back to
/// points of the subshift.
class SymbolicWord {
public:
    SymbolicWord() = default;
    SymbolicWord(std::int64_t first, std::vector<Symbol> symbols,
                 std::shared_ptr<const SymbolRule> rule = nullptr);

    /// Symbols of `rule` on [k_lo, k_hi].
    static SymbolicWord generate(std::shared_ptr<const SymbolRule> rule, std::int64_t k_lo,
                                 std::int64_t k_hi);

    std::int64_t first() const { return first_; }
    std::int64_t last() const { return first_ + static_cast<std::int64_t>(data_.size()) - 1; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    Symbol at(std::int64_t k) const;
    std::vector<Symbol> symbols() const;

    /// The length-n window starting at absolute coordinate k.
    std::string_view factor(std::int64_t k, std::size_t n) const;

    /// The point whose coordinate 0 is coordinate k of this word. Without a
    /// generating rule the word is extended periodically.
    SymbolicPoint point_at(std::int64_t k) const;

    const std::shared_ptr<const SymbolRule>& rule() const { return rule_; }

private:
    std::int64_t first_ = 0;
    std::string data_;  // one byte per symbol, so factors hash as string_views
    std::shared_ptr<const SymbolRule> rule_;
};

/// Throws std::invalid_argument unless 0 < alpha < 1 and alpha is at least
/// kRationalTolerance away from every p/q with q <= kRationalMaxDenominator.
void validate_sturmian_alpha(long double alpha);
inline constexpr int kRationalMaxDenominator = 1000;
inline constexpr long double kRationalTolerance = 1e-9L;

inline const long double kGoldenAlpha = 0.6180339887498948482045868343656381L;  // (sqrt5 - 1)/2

SymbolicWord sturmian_generate(long double alpha, std::int64_t k_lo, std::int64_t k_hi);

struct ShiftDistance {
    double value = 0.0;
    /// No difference inside |k| <= window; the true distance is < 2^-window.
    bool window_limited = false;
    std::size_t window = 0;
};

/// 2^-m with m = min{|k| <= window : x_k != y_k}.
ShiftDistance shift_metric(const SymbolicPoint& x, const SymbolicPoint& y, std::size_t window);

/// Two-sided shift restricted to the orbit closure of a generating rule, or
/// the full shift on `alphabet` symbols.
class Subshift {
public:
    using point_type = SymbolicPoint;
    enum class Kind { full, sturmian, periodic };

    static constexpr std::size_t kDefaultMetricWindow = 60;

    static Subshift full_shift(unsigned alphabet, std::size_t metric_window = kDefaultMetricWindow);
    static Subshift sturmian(long double alpha, std::size_t metric_window = kDefaultMetricWindow);
    static Subshift periodic(std::vector<Symbol> pattern,
                             std::size_t metric_window = kDefaultMetricWindow);

    Kind kind() const { return kind_; }
    unsigned alphabet() const { return alphabet_; }
    std::size_t metric_window() const { return window_; }
    std::string describe() const;

    /// Generating point (orbit-closure subshifts only).
    SymbolicPoint base_point() const;
    /// Periodic point repeating `word`.
    SymbolicPoint periodic_point(std::vector<Symbol> word) const;

    double dist(const SymbolicPoint& x, const SymbolicPoint& y) const;
    SymbolicPoint map(const SymbolicPoint& x) const { return {x.rule, x.offset + 1}; }
    SymbolicPoint inverse(const SymbolicPoint& x) const { return {x.rule, x.offset - 1}; }

    /// 2^-j where j is the distance from the nearest differing coordinate to
    /// the window [0, n); 0 if none within metric_window of it.
    double bowen_dist(const SymbolicPoint& x, const SymbolicPoint& y, std::size_t n, double stop) const;

    /// Orbit subshifts: shifts 0..points-1 of the base point. Full shift: the
    /// periodic points of all words of length `points` (a seeded random
    /// subset of kMaxFullSample words when there are more).
    std::vector<SymbolicPoint> sample(const Resolution& res) const;
    static constexpr std::size_t kMaxFullSample = std::size_t{1} << 16;

    /// Window [0, length) of the base point (orbit subshifts only).
    SymbolicWord language_word(std::size_t length) const;

private:
    Subshift(Kind k, unsigned alphabet, std::size_t window, std::shared_ptr<const SymbolRule> rule)
        : kind_(k), alphabet_(alphabet), window_(window), rule_(std::move(rule)) {}

    Kind kind_;
    unsigned alphabet_;
    std::size_t window_;
    std::shared_ptr<const SymbolRule> rule_;
};

}  // namespace polyent
