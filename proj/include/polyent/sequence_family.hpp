#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polyent {

/// Decreasing positive sequence a_1 > a_2 > ... -> 0 giving the rotation
/// angle of each tower level.
class SequenceFamily {
public:
    enum class Kind { exponential, power, custom };

    /// a_n = e^{-n}
    static SequenceFamily exponential();
    /// a_n = n^{-c}, c >= 1. Integer c is evaluated as one division by an
    /// exact product so thresholds are reproducible at boundary values.
    static SequenceFamily power(double c);
    /// Explicit finite list; must be strictly decreasing and positive.
    static SequenceFamily custom(std::vector<double> terms);

    Kind kind() const { return kind_; }
    double exponent() const { return exponent_; }
    bool integer_exponent() const;

    /// Number of available terms; nullopt for the infinite families.
    std::optional<std::uint32_t> length() const;
    bool has_term(std::uint32_t n) const;

    /// a_n for n >= 1. Throws std::out_of_range past the end of a custom list.
    double term(std::uint32_t n) const;

    /// Short name used in reports, e.g. "tower-exp" or "tower-power:2".
    std::string describe() const;

    friend bool operator==(const SequenceFamily&, const SequenceFamily&) = default;

private:
    SequenceFamily(Kind k, double c, std::vector<double> terms)
        : kind_(k), exponent_(c), terms_(std::move(terms)) {}

    Kind kind_;
    double exponent_ = 0.0;
    std::vector<double> terms_;
};

}  // namespace polyent
