#include "polyent/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "polyent/bowen.hpp"
#include "polyent/constructions.hpp"
#include "polyent/diagnostics.hpp"
#include "polyent/estimation.hpp"
#include "polyent/format.hpp"
#include "polyent/version.hpp"

namespace polyent {

using json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw UsageError(key + ": expected a nonnegative integer, got '" + text + "'");
    return v;
}

double parse_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(v))
        throw UsageError(key + ": expected a real number, got '" + text + "'");
    return v;
}

std::string join_reals(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_real(xs[i]);
    return out;
}

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
    return std::any_of(options.begin(), options.end(), [&](const char* o) { return v == o; });
}

}  // namespace

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const double e = parse_real("eps", item);
        if (!(e > 0.0)) throw UsageError("eps: values must be positive");
        out.push_back(e);
    }
    if (out.empty()) throw UsageError("eps: empty list");
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& c) {
    return {
        {"system", c.system},
        {"n0", std::to_string(c.n0)},
        {"ratio", std::to_string(c.ratio)},
        {"steps", std::to_string(c.steps)},
        {"eps", join_reals(c.eps)},
        {"grid", std::to_string(c.grid)},
        {"level_policy", c.level_policy},
        {"levels", std::to_string(c.levels)},
        {"level_margin", std::to_string(c.level_margin)},
        {"method", c.method},
        {"mode", c.mode},
        {"tail", format_real(c.tail)},
        {"seed", std::to_string(c.seed)},
        {"out", c.out},
        {"which", c.which},
        {"N", std::to_string(c.N)},
        {"check", c.check},
        {"m", std::to_string(c.m)},
        {"x", c.x},
        {"y", c.y},
        {"window", std::to_string(c.window)},
        {"n_max", std::to_string(c.n_max)},
    };
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "system") c.system = v;
    else if (key == "n0") c.n0 = parse_uint(key, v);
    else if (key == "ratio") c.ratio = parse_uint(key, v);
    else if (key == "steps") c.steps = parse_uint(key, v);
    else if (key == "eps") c.eps = parse_eps_list(v);
    else if (key == "grid") c.grid = parse_uint(key, v);
    else if (key == "level_policy") c.level_policy = v;
    else if (key == "levels") c.levels = parse_uint(key, v);
    else if (key == "level_margin") c.level_margin = parse_uint(key, v);
    else if (key == "method") c.method = v;
    else if (key == "mode") c.mode = v;
    else if (key == "tail") c.tail = parse_real(key, v);
    else if (key == "seed") c.seed = parse_uint(key, v);
    else if (key == "out") c.out = v;
    else if (key == "which") c.which = v;
    else if (key == "N") c.N = parse_uint(key, v);
    else if (key == "check") c.check = v;
    else if (key == "m") c.m = parse_uint(key, v);
    else if (key == "x") c.x = v;
    else if (key == "y") c.y = v;
    else if (key == "window") c.window = parse_uint(key, v);
    else if (key == "n_max") c.n_max = parse_uint(key, v);
    else throw UsageError("unknown config key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

void validate(const ExperimentConfig& c) {
    if (c.eps.empty()) throw UsageError("eps grid is empty");
    if (c.n0 == 0 || c.steps == 0) throw UsageError("n grid needs n0 >= 1 and steps >= 1");
    if (c.ratio < 2) throw UsageError("ratio must be >= 2");
    const double min_eps = c.eps.back();
    if (static_cast<double>(c.grid) < 10.0 / min_eps - 1e-9)
        throw UsageError("grid " + std::to_string(c.grid) + " is below 10 / min eps = " + format_real(10.0 / min_eps));
    if (!one_of(c.level_policy, {"auto", "fixed", "spanning", "separated"}))
        throw UsageError("level_policy must be auto, fixed, spanning or separated");
    if (!one_of(c.mode, {"polynomial", "topological"})) throw UsageError("mode must be polynomial or topological");
    if (!(c.tail > 0.0 && c.tail <= 1.0)) throw UsageError("tail must lie in (0, 1]");
    if (!one_of(c.which, {"A", "S", "hedlund"})) throw UsageError("which must be A, S or hedlund");
    if (!one_of(c.check, {"recurrence", "distality", "complexity"}))
        throw UsageError("check must be recurrence, distality or complexity");
    if (c.N == 0) throw UsageError("N must be >= 1");
    if (c.window == 0 || c.n_max == 0) throw UsageError("window and n_max must be >= 1");
    if (c.levels > 1'000'000 || c.level_margin > 1'000'000) throw UsageError("level counts out of range");
    if (c.out.empty()) throw UsageError("out directory is empty");
}

namespace {

using Leaf = std::variant<CircleTower, Subshift>;

Leaf parse_leaf(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (head == "tower-exp" && arg.empty()) return CircleTower(SequenceFamily::exponential());
        if (head == "tower-power") return CircleTower(SequenceFamily::power(parse_real("system", arg)));
        if (head == "sturmian") {
            if (arg == "golden") return Subshift::sturmian(kGoldenAlpha);
            long double alpha = std::stold(arg);
            return Subshift::sturmian(alpha);
        }
        if (head == "full-shift") return Subshift::full_shift(static_cast<unsigned>(parse_uint("system", arg)));
        if (head == "periodic") {
            std::vector<Symbol> pattern;
            for (char ch : arg) {
                if (ch < '0' || ch > '9') throw UsageError("periodic: pattern must be decimal digits");
                pattern.push_back(static_cast<Symbol>(ch - '0'));
            }
            if (pattern.empty()) throw UsageError("periodic: empty pattern");
            return Subshift::periodic(std::move(pattern));
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError("system '" + spec + "': " + e.what());
    } catch (const std::out_of_range&) {
        throw UsageError("system '" + spec + "': value out of range");
    }
    throw UsageError("unknown system '" + spec + "'");
}

template <class S>
std::string describe_system(const S& s) {
    if constexpr (std::is_same_v<S, CircleTower>) return s.family().describe();
    else if constexpr (std::is_same_v<S, Subshift>) return s.describe();
    else return "product:" + describe_system(s.first()) + "," + describe_system(s.second());
}

std::string describe(const SystemHandle& sys) {
    return std::visit([](const auto& s) { return describe_system(s); }, sys);
}

}  // namespace

SystemHandle parse_system(const std::string& spec) {
    const std::string prefix = "product:";
    if (spec.rfind(prefix, 0) != 0) {
        return std::visit([](auto&& leaf) -> SystemHandle { return leaf; }, parse_leaf(spec));
    }
    const std::string rest = spec.substr(prefix.size());
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw UsageError("product needs two specs separated by ','");
    Leaf a = parse_leaf(rest.substr(0, comma));
    Leaf b = parse_leaf(rest.substr(comma + 1));
    return std::visit([](auto&& x, auto&& y) -> SystemHandle { return product_system(x, y); }, a, b);
}

namespace {

LevelCapPolicy policy_of(const std::string& name) {
    if (name == "fixed") return LevelCapPolicy::fixed;
    if (name == "spanning") return LevelCapPolicy::spanning_threshold;
    if (name == "separated") return LevelCapPolicy::separated_threshold;
    return LevelCapPolicy::automatic;
}

SamplerSpec sampler_of(const ExperimentConfig& c) {
    SamplerSpec s;
    s.grid = c.grid;
    s.policy = policy_of(c.level_policy);
    s.fixed_levels = static_cast<std::uint32_t>(c.levels);
    s.level_margin = static_cast<std::uint32_t>(c.level_margin);
    s.seed = c.seed;
    return s;
}

bool is_pure_shift(const SystemHandle& sys) {
    return std::holds_alternative<Subshift>(sys) || std::holds_alternative<ShiftShift>(sys);
}

bool has_tower(const SystemHandle& sys) { return !is_pure_shift(sys); }

CountMethod method_for(const std::string& name, const SystemHandle& sys) {
    if (name == "greedy" || name == "greedy-separated") return CountMethod::greedy_separated;
    if (name == "greedy-spanning") return CountMethod::greedy_spanning;
    if (name == "analytic" || name == "construction-A")
        return is_pure_shift(sys) ? CountMethod::symbolic_exact : CountMethod::construction_A;
    if (name == "analytic-s" || name == "construction-S")
        return is_pure_shift(sys) ? CountMethod::symbolic_exact : CountMethod::construction_S;
    if (name == "symbolic" || name == "symbolic-exact") {
        if (has_tower(sys)) throw UsageError("method symbolic needs a subshift system");
        return CountMethod::symbolic_exact;
    }
    throw UsageError("unknown method '" + name + "'");
}

json config_json(const ExperimentConfig& c) {
    json j = json::object();
    for (const auto& [k, v] : config_entries(c)) j[k] = v;
    return j;
}

json envelope(const ExperimentConfig& c, const char* command) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["config"] = config_json(c);
    return j;
}

std::string text_header(const ExperimentConfig& c, const char* command) {
    std::string h = std::string("# ") + kToolName + " " + kToolVersion + " " + command + "\n";
    for (const auto& [k, v] : config_entries(c)) h += "# " + k + " = " + v + "\n";
    return h;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

std::filesystem::path prepare_out(const ExperimentConfig& c) {
    std::filesystem::path dir(c.out);
    std::filesystem::create_directories(dir);
    return dir;
}

json fit_json(const EpsFit& f) {
    json j;
    j["eps"] = f.eps;
    j["slope"] = f.fit.slope;
    j["intercept"] = f.fit.intercept;
    j["residual"] = f.fit.residual;
    j["n_min"] = f.fit.n_min;
    j["n_max"] = f.fit.n_max;
    j["points_used"] = f.fit.points_used;
    return j;
}

}  // namespace

int run_estimate(const ExperimentConfig& cfg, std::ostream& log) {
    validate(cfg);
    const SystemHandle sys = parse_system(cfg.system);
    const CountMethod method = method_for(cfg.method, sys);
    const auto ns = geometric_grid(cfg.n0, cfg.ratio, static_cast<std::size_t>(cfg.steps));
    if (static_cast<std::size_t>(std::ceil(cfg.tail * static_cast<double>(ns.size()) - 1e-12)) < 3)
        throw UsageError("the fit tail holds fewer than 3 n values; raise steps or tail");
    const SamplerSpec spec = sampler_of(cfg);
    const EntropyMode mode = cfg.mode == "topological" ? EntropyMode::topological : EntropyMode::polynomial;

    EntropyEstimate est = std::visit(
        [&](const auto& s) {
            try {
                return eps_sweep(s, spec, ns, cfg.eps, method, mode, cfg.tail);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        },
        sys);

    const auto dir = prepare_out(cfg);
    std::string csv = text_header(cfg, "estimate") + "n,eps,count,method,bound\n";
    for (const auto& r : est.records)
        csv += std::to_string(r.n) + "," + format_real(r.eps) + "," + std::to_string(r.count) + "," +
               std::string(to_string(r.method)) + "," + std::string(to_string(r.bound)) + "\n";
    write_file(dir / "counts.csv", csv);

    json fits = envelope(cfg, "estimate");
    fits["system"] = describe(sys);
    fits["method"] = to_string(method);
    fits["bound"] = to_string(bound_of(method));
    fits["mode"] = to_string(mode);
    fits["tail_fraction"] = cfg.tail;
    fits["headline"] = est.headline;
    fits["note"] = est.note;
    fits["fits"] = json::array();
    for (const auto& f : est.fits) fits["fits"].push_back(fit_json(f));
    write_json(dir / "fits.json", fits);

    for (double eps : cfg.eps) {
        std::string dat = text_header(cfg, "estimate") + "# " +
                          (mode == EntropyMode::polynomial ? "log(n)" : "n") + " log(count) at eps = " +
                          format_real(eps) + "\n";
        for (const auto& r : est.records)
            if (r.eps == eps) {
                const double x = mode == EntropyMode::polynomial ? std::log(static_cast<double>(r.n))
                                                                 : static_cast<double>(r.n);
                dat += format_real(x) + " " + format_real(std::log(static_cast<double>(r.count))) + "\n";
            }
        write_file(dir / ("loglog-" + format_real(eps) + ".dat"), dat);
    }

    log << describe(sys) << " " << to_string(method) << ": ";
    for (const auto& f : est.fits) log << "eps=" << format_real(f.eps) << " slope=" << format_real(f.fit.slope) << "  ";
    log << "\nheadline " << to_string(mode) << " entropy estimate " << format_real(est.headline) << "\n";
    return kExitOk;
}

namespace {

json construction_json(const TowerConstruction& c) {
    json j;
    j["kind"] = c.kind == ConstructionKind::spanning_A ? "A" : "S";
    j["family"] = c.family.describe();
    j["N"] = c.N;
    j["eps"] = c.eps;
    j["cardinality"] = c.points.size();
    j["predicted_cardinality"] = c.predicted_cardinality;
    if (c.H) j["H"] = *c.H;
    if (c.D) j["D"] = *c.D;
    j["angles"] = c.points.angles().size();
    j["max_level"] = c.points.max_level();
    j["includes_base"] = c.points.includes_base();
    j["verified"] = c.verified;
    j["strict"] = c.strict;
    j["non_strict"] = c.non_strict;
    if (c.kind == ConstructionKind::separated_S) j["drift_strict"] = c.drift_strict;
    j["levels_dropped"] = c.levels_dropped;
    j["checked_against"] = c.checked_against;
    j["witness"] = c.witness;
    return j;
}

const CircleTower& tower_or_usage(const SystemHandle& sys, const char* which) {
    if (!std::holds_alternative<CircleTower>(sys))
        throw UsageError(std::string("construction ") + which + " needs a single tower system");
    return std::get<CircleTower>(sys);
}

double power_exponent(const CircleTower& t) {
    if (t.family().kind() != SequenceFamily::Kind::power)
        throw UsageError("construction S needs the power family (tower-power:c)");
    return t.family().exponent();
}

json verify_one(const SystemHandle& sys, const ExperimentConfig& cfg, double eps, bool& ok) {
    if (cfg.which == "A") {
        auto rep = build_A(cfg.N, eps, tower_or_usage(sys, "A").family());
        certify_A(rep, cfg.grid, static_cast<std::uint32_t>(cfg.level_margin));
        ok = rep.verified;
        return construction_json(rep);
    }
    if (cfg.which == "S") {
        if (std::holds_alternative<TowerTower>(sys)) {
            const auto& prod = std::get<TowerTower>(sys);
            auto a = build_S(cfg.N, eps, power_exponent(prod.first()));
            auto b = build_S(cfg.N, eps, power_exponent(prod.second()));
            certify_S(a);
            certify_S(b);
            const auto pts = TowerTower::product_points(a.points.materialize(), b.points.materialize());
            const auto chk = verify_separated(prod, std::span<const TowerTower::point_type>(pts), cfg.N, eps);
            ok = a.verified && b.verified && chk.separated;
            json j;
            j["kind"] = "S-product";
            j["N"] = cfg.N;
            j["eps"] = eps;
            j["cardinality"] = pts.size();
            j["predicted_cardinality"] = checked_mul(a.predicted_cardinality, b.predicted_cardinality);
            j["verified"] = ok;
            j["strict"] = chk.strict;
            j["non_strict"] = chk.non_strict_pairs;
            j["factors"] = json::array({construction_json(a), construction_json(b)});
            if (chk.witness)
                j["witness"] = "pair " + std::to_string(chk.witness->first) + " " + std::to_string(chk.witness->second) +
                               " at distance " + format_real(chk.witness_distance);
            return j;
        }
        const auto& t = tower_or_usage(sys, "S");
        auto rep = build_S(cfg.N, eps, power_exponent(t));
        certify_S(rep);
        ok = rep.verified;
        return construction_json(rep);
    }
    // hedlund
    if (!std::holds_alternative<Subshift>(sys) || std::get<Subshift>(sys).kind() == Subshift::Kind::full)
        throw UsageError("hedlund needs an orbit subshift (sturmian:alpha or periodic:pattern)");
    const auto& shift = std::get<Subshift>(sys);
    const std::size_t n = static_cast<std::size_t>(cfg.N);
    const std::size_t range = std::max<std::size_t>(10 * n, n + 64);
    const auto word = shift.language_word(range);
    json j;
    j["kind"] = "hedlund";
    j["system"] = shift.describe();
    j["n"] = n;
    j["eps"] = 1.0;
    j["range"] = range;
    try {
        const auto starts = hedlund_separated(word, n);
        std::vector<SymbolicPoint> pts;
        for (auto k : starts) pts.push_back(word.point_at(k));
        const auto chk = verify_separated(shift, std::span<const SymbolicPoint>(pts), n, 1.0);
        ok = chk.separated && pts.size() == n + 1;
        j["cardinality"] = pts.size();
        j["predicted_cardinality"] = n + 1;
        j["starts"] = starts;
        j["verified"] = ok;
        j["witness"] = chk.witness ? "pair " + std::to_string(chk.witness->first) + " " +
                                         std::to_string(chk.witness->second)
                                   : "";
    } catch (const ConstructionError& e) {
        ok = false;
        j["cardinality"] = word_complexity(word, n);
        j["predicted_cardinality"] = n + 1;
        j["verified"] = false;
        j["witness"] = std::string(e.what()) + ": " + std::to_string(word_complexity(word, n)) +
                       " distinct factors of length " + std::to_string(n);
    }
    return j;
}

}  // namespace

int run_verify_construction(const ExperimentConfig& cfg, std::ostream& log) {
    validate(cfg);
    const SystemHandle sys = parse_system(cfg.system);
    const std::vector<double> epss = cfg.which == "hedlund" ? std::vector<double>{1.0} : cfg.eps;
    json doc = envelope(cfg, "verify-construction");
    doc["system"] = describe(sys);
    doc["which"] = cfg.which;
    doc["reports"] = json::array();
    bool all_ok = true;
    bool errored = false;
    for (double eps : epss) {
        bool ok = false;
        try {
            doc["reports"].push_back(verify_one(sys, cfg, eps, ok));
        } catch (const ConstructionError& e) {
            json j;
            j["kind"] = cfg.which;
            j["N"] = cfg.N;
            j["eps"] = eps;
            j["verified"] = false;
            j["error"] = e.what();
            doc["reports"].push_back(j);
            errored = true;
        }
        const auto& last = doc["reports"].back();
        log << cfg.which << " N=" << cfg.N << " eps=" << format_real(eps);
        if (last.contains("cardinality")) log << " cardinality=" << last["cardinality"].get<std::uint64_t>();
        log << (ok ? " verified" : " NOT verified");
        if (last.contains("error")) log << " (" << last["error"].get<std::string>() << ")";
        else if (!ok && last.contains("witness")) log << " witness: " << last["witness"].get<std::string>();
        log << "\n";
        all_ok = all_ok && ok;
    }
    doc["verified"] = all_ok;
    write_json(prepare_out(cfg) / "construction.json", doc);
    if (errored) return kExitFailure;
    return all_ok ? kExitOk : kExitVerificationFailed;
}

namespace {

template <class S>
std::vector<point_of<S>> diagnostic_sample(const S& sys, const Resolution& res) {
    if constexpr (requires { sys.first(); }) {
        auto a = diagnostic_sample(sys.first(), res);
        auto b = diagnostic_sample(sys.second(), res);
        if (!a.empty() && b.size() > kMaxProductSample / a.size())
            throw UsageError("product sample too large; lower grid or levels");
        return S::product_points(a, b);
    } else {
        return sys.sample(res);
    }
}

json recurrence_json(const auto& sys, const ExperimentConfig& cfg, double eps, std::ostream& log) {
    const Resolution res{static_cast<std::size_t>(cfg.grid), static_cast<std::uint32_t>(cfg.levels), cfg.seed};
    const auto sample = diagnostic_sample(sys, res);
    using P = typename std::decay_t<decltype(sample)>::value_type;
    const std::uint64_t m = cfg.m ? cfg.m : static_cast<std::uint64_t>(std::ceil(1.0 / eps - 1e-12));
    const auto rep = uniform_recurrence_check(sys, std::span<const P>(sample), eps, m);
    json j;
    j["eps"] = eps;
    j["m_bound"] = m;
    j["points"] = sample.size();
    j["all_within"] = rep.all_within;
    std::size_t failures = 0;
    std::uint64_t longest = 0;
    json times = json::array();
    for (const auto& t : rep.return_times) {
        if (t) {
            longest = std::max(longest, *t);
            times.push_back(*t);
        } else {
            ++failures;
            times.push_back(nullptr);
        }
    }
    j["failures"] = failures;
    j["max_return_time"] = longest;
    if (rep.first_failure) {
        j["first_failure"] = *rep.first_failure;
        // No eps-return within m: the backward orbit of the witness is
        // separated at window m + 1.
        const auto orbit = backward_orbit_set(sys, sample[*rep.first_failure], static_cast<std::size_t>(m));
        const auto chk = verify_separated(sys, std::span<const P>(orbit), static_cast<std::size_t>(m) + 1, eps);
        json bo;
        bo["size"] = orbit.size();
        bo["window"] = m + 1;
        bo["verified"] = chk.separated;
        j["backward_orbit"] = bo;
    }
    j["return_times"] = std::move(times);
    log << "recurrence eps=" << format_real(eps) << " m=" << m << ": all_within=" << (rep.all_within ? "true" : "false")
        << " (" << sample.size() << " points, " << failures << " without return)\n";
    return j;
}

TowerPoint parse_tower_point(const std::string& text) {
    const auto at = text.find('@');
    if (at == std::string::npos) throw UsageError("tower point must look like angle@level, got '" + text + "'");
    const double angle = parse_real("point", text.substr(0, at));
    const std::string lvl = text.substr(at + 1);
    if (lvl == "base") return {angle, Level::base()};
    const auto index = parse_uint("point", lvl);
    if (index > 0xffffffffu) throw UsageError("level out of range");
    return {angle, Level{static_cast<std::uint32_t>(index)}};
}

SymbolicPoint parse_shift_point(const Subshift& shift, const std::string& text) {
    if (shift.kind() != Subshift::Kind::full) {
        std::int64_t k = 0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
        if (ec != std::errc{} || p != text.data() + text.size())
            throw UsageError("orbit subshift point is an integer shift, got '" + text + "'");
        return {shift.base_point().rule, k};
    }
    std::vector<Symbol> word;
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw UsageError("full-shift point is a word of digits, got '" + text + "'");
        word.push_back(static_cast<Symbol>(ch - '0'));
    }
    try {
        return shift.periodic_point(word);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

}  // namespace

int run_diagnose(const ExperimentConfig& cfg, std::ostream& log) {
    validate(cfg);
    const SystemHandle sys = parse_system(cfg.system);
    const auto dir = prepare_out(cfg);
    json doc = envelope(cfg, "diagnose");
    doc["system"] = describe(sys);
    doc["check"] = cfg.check;

    if (cfg.check == "recurrence") {
        doc["reports"] = json::array();
        for (double eps : cfg.eps)
            doc["reports"].push_back(std::visit([&](const auto& s) { return recurrence_json(s, cfg, eps, log); }, sys));
        write_json(dir / "recurrence.json", doc);
        return kExitOk;
    }

    if (cfg.check == "distality") {
        double gap = 0.0, initial = 0.0;
        if (std::holds_alternative<CircleTower>(sys)) {
            const auto& t = std::get<CircleTower>(sys);
            const auto x = parse_tower_point(cfg.x), y = parse_tower_point(cfg.y);
            if (x == y) throw UsageError("distality needs two distinct points");
            gap = distality_gap(t, x, y, cfg.window);
            initial = t.dist(x, y);
            doc["height_gap"] = std::fabs(t.height(x.level) - t.height(y.level));
        } else if (std::holds_alternative<Subshift>(sys)) {
            const auto& s = std::get<Subshift>(sys);
            const auto x = parse_shift_point(s, cfg.x), y = parse_shift_point(s, cfg.y);
            initial = s.dist(x, y);
            if (initial == 0.0) throw UsageError("distality needs two points at positive distance");
            gap = distality_gap(s, x, y, cfg.window);
        } else {
            throw UsageError("distality supports single towers and subshifts");
        }
        doc["x"] = cfg.x;
        doc["y"] = cfg.y;
        doc["window"] = cfg.window;
        doc["initial_distance"] = initial;
        doc["gap_upper_bound"] = gap;
        doc["note"] = "minimum over |n| <= window; an upper bound on the infimum over all n";
        write_json(dir / "distality.json", doc);
        log << "distality gap over |n| <= " << cfg.window << ": " << format_real(gap) << "\n";
        return kExitOk;
    }

    // complexity
    if (!std::holds_alternative<Subshift>(sys) || std::get<Subshift>(sys).kind() == Subshift::Kind::full)
        throw UsageError("complexity needs an orbit subshift (sturmian:alpha or periodic:pattern)");
    const auto& shift = std::get<Subshift>(sys);
    const std::size_t n_max = static_cast<std::size_t>(cfg.n_max);
    const std::size_t range = 11 * n_max;
    const auto word = shift.language_word(range);
    const auto profile = complexity_profile(word, n_max);
    const auto verdict = morse_hedlund(profile);
    std::string csv = text_header(cfg, "diagnose") + "n,complexity,range\n";
    for (std::size_t i = 0; i < profile.size(); ++i)
        csv += std::to_string(i + 1) + "," + std::to_string(profile[i]) + "," + std::to_string(range) + "\n";
    write_file(dir / "complexity.csv", csv);
    doc["range"] = range;
    doc["profile"] = profile;
    doc["eventually_periodic"] = verdict.eventually_periodic;
    doc["above_diagonal"] = verdict.above_diagonal;
    if (verdict.plateau_at) doc["plateau_at"] = *verdict.plateau_at;
    write_json(dir / "complexity.json", doc);
    log << "complexity n=1.." << n_max << " over range " << range << ": "
        << (verdict.eventually_periodic ? "eventually periodic" : "p(n) >= n+1 throughout") << "\n";
    return kExitOk;
}

}  // namespace polyent
