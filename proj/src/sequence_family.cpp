#include "polyent/sequence_family.hpp"

#include <cmath>
#include <stdexcept>

#include "polyent/format.hpp"

namespace polyent {

namespace {
constexpr double kMaxExactExponent = 16.0;
}

SequenceFamily SequenceFamily::exponential() { return SequenceFamily(Kind::exponential, 0.0, {}); }

SequenceFamily SequenceFamily::power(double c) {
    if (!(c >= 1.0) || !std::isfinite(c)) throw std::invalid_argument("power family needs c >= 1");
    return SequenceFamily(Kind::power, c, {});
}

SequenceFamily SequenceFamily::custom(std::vector<double> terms) {
    if (terms.empty()) throw std::invalid_argument("custom family needs at least one term");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!(terms[i] > 0.0)) throw std::invalid_argument("custom family terms must be positive");
        if (i > 0 && !(terms[i] < terms[i - 1]))
            throw std::invalid_argument("custom family terms must be strictly decreasing");
    }
    return SequenceFamily(Kind::custom, 0.0, std::move(terms));
}

bool SequenceFamily::integer_exponent() const {
    return kind_ == Kind::power && exponent_ == std::floor(exponent_) && exponent_ <= kMaxExactExponent;
}

std::optional<std::uint32_t> SequenceFamily::length() const {
    if (kind_ == Kind::custom) return static_cast<std::uint32_t>(terms_.size());
    return std::nullopt;
}

bool SequenceFamily::has_term(std::uint32_t n) const {
    return n >= 1 && (kind_ != Kind::custom || n <= terms_.size());
}

double SequenceFamily::term(std::uint32_t n) const {
    if (n == 0) throw std::out_of_range("sequence terms start at n = 1");
    switch (kind_) {
        case Kind::exponential:
            return std::exp(-static_cast<double>(n));
        case Kind::power: {
            const double x = static_cast<double>(n);
            if (integer_exponent()) {
                double p = 1.0;
                for (int i = 0; i < static_cast<int>(exponent_); ++i) p *= x;
                return 1.0 / p;
            }
            return 1.0 / std::pow(x, exponent_);
        }
        case Kind::custom:
            if (n > terms_.size()) throw std::out_of_range("custom sequence too short");
            return terms_[n - 1];
    }
    return 0.0;
}

std::string SequenceFamily::describe() const {
    switch (kind_) {
        case Kind::exponential: return "tower-exp";
        case Kind::power: return "tower-power:" + format_real(exponent_);
        case Kind::custom: return "tower-custom:" + std::to_string(terms_.size());
    }
    return {};
}

}  // namespace polyent
