#include "codyn/error.hpp"
#include "codyn/experiment.hpp"
#include "codyn/output.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace codyn {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"substrate", {"objective", "ridge_n"}},
        {"evolution",
         {"lambda", "mu", "tournament_size", "mutation_prob", "mutation_sigma", "generations", "init_p1_lo",
          "init_p1_hi", "init_p2_lo", "init_p2_hi", "sampling"}},
        {"interaction", {"mode", "task_p1", "task_p2"}},
        {"landscape", {"grid_lo", "grid_hi", "grid_points", "dist_norm", "bhatt_mode", "epsilon"}},
        {"experiment", {"runs", "master_seed", "workers", "snapshots"}},
    };
    return keys;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> text(const std::string& section, const std::string& key) const
    {
        if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(section + "." + key, '.'))) {
            return *v;
        }
        return std::nullopt;
    }

    void number(const std::string& section, const std::string& key, double& target) const
    {
        if (auto v = text(section, key)) {
            target = parse<double>(section, key, *v);
        }
    }

    template <typename Int>
    void integer(const std::string& section, const std::string& key, Int& target) const
    {
        if (auto v = text(section, key)) {
            target = parse<Int>(section, key, *v);
        }
    }

private:
    template <typename T>
    static T parse(const std::string& section, const std::string& key, const std::string& raw)
    {
        T value{};
        const char* first = raw.data();
        const char* last = raw.data() + raw.size();
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            throw ConfigError("[" + section + "] " + key + ": cannot parse '" + raw + "'");
        }
        return value;
    }

    const pt::ptree& tree_;
};

bool parse_bool(const std::string& raw)
{
    if (raw == "true" || raw == "1" || raw == "yes") {
        return true;
    }
    if (raw == "false" || raw == "0" || raw == "no") {
        return false;
    }
    throw ConfigError("expected a boolean, got '" + raw + "'");
}

} // namespace

ExperimentConfig parse_config(std::string_view text)
{
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }

    for (const auto& [section, body] : tree) {
        const auto it = known_keys().find(section);
        if (it == known_keys().end() || body.empty()) {
            throw ConfigError("unknown config section or top-level key '" + section + "'");
        }
        for (const auto& [key, value] : body) {
            if (!it->second.contains(key)) {
                throw ConfigError("unknown key '" + key + "' in [" + section + "]");
            }
        }
    }

    const Reader r(tree);
    double ridge_n = ObjectiveKind::kDefaultRidgeN;
    r.number("substrate", "ridge_n", ridge_n);
    const ObjectiveKind kind = [&] {
        try {
            return ObjectiveKind::parse(r.text("substrate", "objective").value_or("smooth"), ridge_n);
        } catch (const ContractError& e) {
            throw ConfigError(e.what());
        }
    }();
    ExperimentConfig config = ExperimentConfig::defaults(kind);

    auto& evo = config.evo;
    r.integer("evolution", "lambda", evo.lambda);
    r.integer("evolution", "mu", evo.mu);
    r.integer("evolution", "tournament_size", evo.tournament_size);
    r.number("evolution", "mutation_prob", evo.mutation_prob);
    r.number("evolution", "mutation_sigma", evo.mutation_sigma);
    r.integer("evolution", "generations", evo.generations);
    r.number("evolution", "init_p1_lo", evo.init_p1.lo);
    r.number("evolution", "init_p1_hi", evo.init_p1.hi);
    r.number("evolution", "init_p2_lo", evo.init_p2.lo);
    r.number("evolution", "init_p2_hi", evo.init_p2.hi);
    if (auto s = r.text("evolution", "sampling")) {
        if (*s == "without_replacement") {
            evo.sampling = SamplingMode::WithoutReplacement;
        } else if (*s == "with_replacement") {
            evo.sampling = SamplingMode::WithReplacement;
        } else {
            throw ConfigError("[evolution] sampling must be without_replacement|with_replacement");
        }
    }

    if (auto mode = r.text("interaction", "mode")) {
        if (*mode == "competitive") {
            config.mode = InteractionMode::competitive();
        } else if (*mode == "cooperative") {
            config.mode = InteractionMode::cooperation();
        } else {
            throw ConfigError("[interaction] mode must be competitive|cooperative");
        }
    }
    if (auto t = r.text("interaction", "task_p1")) {
        config.mode.task_p1 = parse_task(*t);
    }
    if (auto t = r.text("interaction", "task_p2")) {
        config.mode.task_p2 = parse_task(*t);
    }
    if (auto mode = r.text("interaction", "mode")) {
        if ((*mode == "cooperative") != config.mode.cooperative()) {
            throw ConfigError("[interaction] task_p1/task_p2 contradict mode = " + *mode);
        }
    }

    r.number("landscape", "grid_lo", config.grid.lo);
    r.number("landscape", "grid_hi", config.grid.hi);
    r.integer("landscape", "grid_points", config.grid.points);
    r.number("landscape", "epsilon", config.measures.epsilon);
    if (auto s = r.text("landscape", "dist_norm")) {
        if (*s == "range_sqrt_j") {
            config.measures.dist_norm = DistNorm::RangeSqrtJ;
        } else if (*s == "range") {
            config.measures.dist_norm = DistNorm::Range;
        } else {
            throw ConfigError("[landscape] dist_norm must be range_sqrt_j|range");
        }
    }
    if (auto s = r.text("landscape", "bhatt_mode")) {
        if (*s == "hellinger") {
            config.measures.bhatt_mode = BhattMode::Hellinger;
        } else if (*s == "verbatim") {
            config.measures.bhatt_mode = BhattMode::Verbatim;
        } else {
            throw ConfigError("[landscape] bhatt_mode must be hellinger|verbatim");
        }
    }

    r.integer("experiment", "runs", config.runs);
    r.integer("experiment", "master_seed", config.master_seed);
    r.integer("experiment", "workers", config.workers);
    if (auto s = r.text("experiment", "snapshots")) {
        config.snapshots = parse_bool(*s);
    }

    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig& config)
{
    const auto& evo = config.evo;
    const auto& kind = config.substrate.kind;
    std::ostringstream out;
    out << "[substrate]\n"
        << "objective = " << kind.name() << '\n';
    if (kind.family() == ObjectiveKind::Family::Ridge) {
        out << "ridge_n = " << format_number(kind.ridge_n()) << '\n';
    }
    out << "\n[evolution]\n"
        << "lambda = " << evo.lambda << '\n'
        << "mu = " << evo.mu << '\n'
        << "tournament_size = " << evo.tournament_size << '\n'
        << "mutation_prob = " << format_number(evo.mutation_prob) << '\n'
        << "mutation_sigma = " << format_number(evo.mutation_sigma) << '\n'
        << "generations = " << evo.generations << '\n'
        << "init_p1_lo = " << format_number(evo.init_p1.lo) << '\n'
        << "init_p1_hi = " << format_number(evo.init_p1.hi) << '\n'
        << "init_p2_lo = " << format_number(evo.init_p2.lo) << '\n'
        << "init_p2_hi = " << format_number(evo.init_p2.hi) << '\n'
        << "sampling = "
        << (evo.sampling == SamplingMode::WithoutReplacement ? "without_replacement" : "with_replacement") << '\n'
        << "\n[interaction]\n"
        << "mode = " << (config.mode.cooperative() ? "cooperative" : "competitive") << '\n'
        << "task_p1 = " << to_string(config.mode.task_p1) << '\n'
        << "task_p2 = " << to_string(config.mode.task_p2) << '\n'
        << "\n[landscape]\n"
        << "grid_lo = " << format_number(config.grid.lo) << '\n'
        << "grid_hi = " << format_number(config.grid.hi) << '\n'
        << "grid_points = " << config.grid.points << '\n'
        << "dist_norm = " << (config.measures.dist_norm == DistNorm::RangeSqrtJ ? "range_sqrt_j" : "range") << '\n'
        << "bhatt_mode = " << (config.measures.bhatt_mode == BhattMode::Hellinger ? "hellinger" : "verbatim") << '\n'
        << "epsilon = " << format_number(config.measures.epsilon) << '\n'
        << "\n[experiment]\n"
        << "runs = " << config.runs << '\n'
        << "master_seed = " << config.master_seed << '\n'
        << "workers = " << config.workers << '\n'
        << "snapshots = " << (config.snapshots ? "true" : "false") << '\n';
    return out.str();
}

} // namespace codyn
