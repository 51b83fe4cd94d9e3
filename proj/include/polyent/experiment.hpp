#pragma once

// Experiment driver behind the polyent command line tool.

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "polyent/product.hpp"
#include "polyent/symbolic.hpp"
#include "polyent/tower.hpp"

namespace polyent {

/// Bad flags, bad config values, or a request the system cannot serve.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitVerificationFailed = 2;
inline constexpr int kExitUsage = 64;

struct ExperimentConfig {
    std::string system = "tower-exp";
    std::uint64_t n0 = 16;
    std::uint64_t ratio = 2;
    std::uint64_t steps = 9;
    std::vector<double> eps{0.2, 0.1, 0.05, 0.02};
    std::uint64_t grid = 1000;
    std::string level_policy = "auto";  // auto | fixed | spanning | separated
    std::uint64_t levels = 10;
    std::uint64_t level_margin = 5;
    std::string method = "analytic";
    std::string mode = "polynomial";  // polynomial | topological
    double tail = 0.5;
    std::uint64_t seed = 20150603;
    std::string out = "out";

    // verify-construction
    std::string which = "A";  // A | S | hedlund
    std::uint64_t N = 100;

    // diagnose
    std::string check = "recurrence";  // recurrence | distality | complexity
    std::uint64_t m = 0;               // 0: ceil(1/eps) per eps
    std::string x = "0@1";
    std::string y = "0@2";
    std::uint64_t window = 1000;
    std::uint64_t n_max = 20;
};

/// Ordered key/value view of a config; the inverse of apply_setting.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

/// Sets one key from its text form. Throws UsageError on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat "key = value" file ('#' starts a comment).
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Cross-field checks: nonempty grids, g >= 10 / min eps, known names.
void validate(const ExperimentConfig& cfg);

std::vector<double> parse_eps_list(const std::string& text);

using TowerTower = ProductSystem<CircleTower, CircleTower>;
using TowerShift = ProductSystem<CircleTower, Subshift>;
using ShiftTower = ProductSystem<Subshift, CircleTower>;
using ShiftShift = ProductSystem<Subshift, Subshift>;
using SystemHandle = std::variant<CircleTower, Subshift, TowerTower, TowerShift, ShiftTower, ShiftShift>;

/// tower-exp | tower-power:c | sturmian:alpha | sturmian:golden | full-shift:l |
/// periodic:0110 | product:spec,spec
SystemHandle parse_system(const std::string& spec);

/// Each command writes its files under cfg.out and returns the exit status.
/// Diagnostics lines go to `log`.
int run_estimate(const ExperimentConfig& cfg, std::ostream& log);
int run_verify_construction(const ExperimentConfig& cfg, std::ostream& log);
int run_diagnose(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace polyent
