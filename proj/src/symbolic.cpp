#include "polyent/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "polyent/format.hpp"

namespace polyent {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

Symbol symbol_at(const SymbolRule& rule, std::int64_t k) {
    return std::visit(
        overloaded{
            [k](const PeriodicRule& r) -> Symbol {
                const auto p = static_cast<std::int64_t>(r.pattern.size());
                return r.pattern[static_cast<std::size_t>(((k % p) + p) % p)];
            },
            [k](const SturmianRule& r) -> Symbol {
                const long double x = static_cast<long double>(k);
                return static_cast<Symbol>(std::floor((x + 1) * r.alpha + r.intercept) -
                                           std::floor(x * r.alpha + r.intercept));
            },
            [k](const ExplicitRule& r) -> Symbol {
                const std::int64_t i = k - r.first;
                if (i < 0 || i >= static_cast<std::int64_t>(r.symbols.size())) return r.fill;
                return r.symbols[static_cast<std::size_t>(i)];
            },
        },
        rule);
}

SymbolicWord::SymbolicWord(std::int64_t first, std::vector<Symbol> symbols,
                           std::shared_ptr<const SymbolRule> rule)
    : first_(first), data_(symbols.begin(), symbols.end()), rule_(std::move(rule)) {}

SymbolicWord SymbolicWord::generate(std::shared_ptr<const SymbolRule> rule, std::int64_t k_lo,
                                    std::int64_t k_hi) {
    if (!rule) throw std::invalid_argument("generate: null rule");
    if (k_hi < k_lo) throw std::invalid_argument("generate: k_lo must not exceed k_hi");
    std::vector<Symbol> symbols;
    symbols.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (std::int64_t k = k_lo; k <= k_hi; ++k) symbols.push_back(symbol_at(*rule, k));
    return SymbolicWord(k_lo, std::move(symbols), std::move(rule));
}

Symbol SymbolicWord::at(std::int64_t k) const {
    if (k < first_ || k > last()) throw std::out_of_range("coordinate outside the word");
    return static_cast<Symbol>(data_[static_cast<std::size_t>(k - first_)]);
}

std::vector<Symbol> SymbolicWord::symbols() const { return {data_.begin(), data_.end()}; }

std::string_view SymbolicWord::factor(std::int64_t k, std::size_t n) const {
    if (k < first_ || k + static_cast<std::int64_t>(n) - 1 > last())
        throw std::out_of_range("factor outside the word");
    return std::string_view(data_).substr(static_cast<std::size_t>(k - first_), n);
}

SymbolicPoint SymbolicWord::point_at(std::int64_t k) const {
    if (rule_) return {rule_, k};
    if (data_.empty()) throw std::logic_error("point_at on an empty word");
    auto periodic = std::make_shared<const SymbolRule>(PeriodicRule{symbols()});
    return {std::move(periodic), k - first_};
}

void validate_sturmian_alpha(long double alpha) {
    if (!(alpha > 0.0L && alpha < 1.0L)) throw std::invalid_argument("Sturmian alpha must lie in (0, 1)");
    for (int q = 1; q <= kRationalMaxDenominator; ++q) {
        const long double p = std::nearbyint(alpha * q);
        if (std::fabs(alpha - p / q) < kRationalTolerance)
            throw std::invalid_argument("Sturmian alpha is too close to the rational " +
                                        std::to_string(static_cast<long long>(p)) + "/" + std::to_string(q));
    }
}

SymbolicWord sturmian_generate(long double alpha, std::int64_t k_lo, std::int64_t k_hi) {
    validate_sturmian_alpha(alpha);
    if (std::max(std::abs(k_lo), std::abs(k_hi)) > kSturmianIndexBudget)
        throw std::invalid_argument("Sturmian index outside the precision budget");
    auto rule = std::make_shared<const SymbolRule>(SturmianRule{alpha, 0.0L});
    return SymbolicWord::generate(std::move(rule), k_lo, k_hi);
}

ShiftDistance shift_metric(const SymbolicPoint& x, const SymbolicPoint& y, std::size_t window) {
    for (std::size_t m = 0; m <= window; ++m) {
        const auto k = static_cast<std::int64_t>(m);
        if (x.at(k) != y.at(k) || x.at(-k) != y.at(-k))
            return {std::ldexp(1.0, -static_cast<int>(m)), false, window};
    }
    return {0.0, true, window};
}

Subshift Subshift::full_shift(unsigned alphabet, std::size_t metric_window) {
    if (alphabet < 2 || alphabet > 256) throw std::invalid_argument("full shift needs 2..256 symbols");
    return Subshift(Kind::full, alphabet, metric_window, nullptr);
}

Subshift Subshift::sturmian(long double alpha, std::size_t metric_window) {
    validate_sturmian_alpha(alpha);
    auto rule = std::make_shared<const SymbolRule>(SturmianRule{alpha, 0.0L});
    return Subshift(Kind::sturmian, 2, metric_window, std::move(rule));
}

Subshift Subshift::periodic(std::vector<Symbol> pattern, std::size_t metric_window) {
    if (pattern.empty()) throw std::invalid_argument("periodic subshift needs a nonempty pattern");
    const unsigned alphabet = std::max(2u, static_cast<unsigned>(*std::max_element(pattern.begin(), pattern.end())) + 1);
    auto rule = std::make_shared<const SymbolRule>(PeriodicRule{std::move(pattern)});
    return Subshift(Kind::periodic, alphabet, metric_window, std::move(rule));
}

std::string Subshift::describe() const {
    switch (kind_) {
        case Kind::full: return "full-shift:" + std::to_string(alphabet_);
        case Kind::sturmian:
            return "sturmian:" + format_real(static_cast<double>(std::get<SturmianRule>(*rule_).alpha));
        case Kind::periodic: {
            std::string s = "periodic:";
            for (Symbol c : std::get<PeriodicRule>(*rule_).pattern) s += std::to_string(c);
            return s;
        }
    }
    return {};
}

SymbolicPoint Subshift::base_point() const {
    if (!rule_) throw std::logic_error("the full shift has no generating point");
    return {rule_, 0};
}

SymbolicPoint Subshift::periodic_point(std::vector<Symbol> word) const {
    if (word.empty()) throw std::invalid_argument("periodic point needs a nonempty word");
    for (Symbol s : word)
        if (s >= alphabet_) throw std::invalid_argument("symbol outside the alphabet");
    return {std::make_shared<const SymbolRule>(PeriodicRule{std::move(word)}), 0};
}

double Subshift::dist(const SymbolicPoint& x, const SymbolicPoint& y) const {
    return shift_metric(x, y, window_).value;
}

double Subshift::bowen_dist(const SymbolicPoint& x, const SymbolicPoint& y, std::size_t n, double) const {
    if (x.rule == y.rule && x.offset == y.offset) return 0.0;
    const auto len = static_cast<std::int64_t>(n);
    for (std::int64_t k = 0; k < len; ++k)
        if (x.at(k) != y.at(k)) return 1.0;
    for (std::size_t j = 1; j <= window_; ++j) {
        const auto jj = static_cast<std::int64_t>(j);
        if (x.at(-jj) != y.at(-jj) || x.at(len - 1 + jj) != y.at(len - 1 + jj))
            return std::ldexp(1.0, -static_cast<int>(j));
    }
    return 0.0;
}

std::vector<SymbolicPoint> Subshift::sample(const Resolution& res) const {
    if (res.points == 0) throw std::invalid_argument("subshift sample needs points >= 1");
    std::vector<SymbolicPoint> out;
    if (kind_ != Kind::full) {
        out.reserve(res.points);
        for (std::size_t i = 0; i < res.points; ++i) out.push_back({rule_, static_cast<std::int64_t>(i)});
        return out;
    }
    const std::size_t w = res.points;
    std::size_t total = 1;
    bool enumerate = true;
    for (std::size_t i = 0; i < w && enumerate; ++i) {
        total *= alphabet_;
        enumerate = total <= kMaxFullSample;
    }
    std::vector<Symbol> word(w);
    if (enumerate) {
        out.reserve(total);
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t c = code;
            for (std::size_t i = w; i-- > 0;) {
                word[i] = static_cast<Symbol>(c % alphabet_);
                c /= alphabet_;
            }
            out.push_back(periodic_point(word));
        }
        return out;
    }
    std::mt19937_64 rng(res.seed);
    std::uniform_int_distribution<unsigned> pick(0, alphabet_ - 1);
    std::set<std::vector<Symbol>> seen;
    out.reserve(kMaxFullSample);
    while (out.size() < kMaxFullSample) {
        for (auto& s : word) s = static_cast<Symbol>(pick(rng));
        if (seen.insert(word).second) out.push_back(periodic_point(word));
    }
    return out;
}

SymbolicWord Subshift::language_word(std::size_t length) const {
    if (!rule_) throw std::logic_error("the full shift has no generating word");
    if (length == 0) throw std::invalid_argument("language_word: length must be >= 1");
    return SymbolicWord::generate(rule_, 0, static_cast<std::int64_t>(length) - 1);
}

}  // namespace polyent
