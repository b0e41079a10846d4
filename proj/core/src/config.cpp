#include "kicktop/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace kicktop {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty() || !std::isfinite(value)) {
        throw ConfigError("config: '" + key + "' expects a real number, got '" + text + "'");
    }
    return value;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + text + "'");
    }
    return value;
}

std::size_t parse_positive(const std::string& key, const std::string& text) {
    const auto value = parse_unsigned(key, text);
    if (value == 0) {
        throw ConfigError("config: '" + key + "' must be positive");
    }
    return static_cast<std::size_t>(value);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(xs[i]);
    }
    return out;
}

} // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::Evolve: return "evolve";
    case ExperimentKind::Portrait: return "portrait";
    case ExperimentKind::Husimi: return "husimi";
    case ExperimentKind::DeltaNeff: return "deltaneff";
    case ExperimentKind::RmtCompare: return "rmt-compare";
    case ExperimentKind::Stats: return "stats";
    }
    return "evolve";
}

ExperimentKind parse_experiment(const std::string& name) {
    for (auto kind : {ExperimentKind::Evolve, ExperimentKind::Portrait, ExperimentKind::Husimi,
                      ExperimentKind::DeltaNeff, ExperimentKind::RmtCompare, ExperimentKind::Stats}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("config: unknown experiment '" + name + "'");
}

std::string format_exact(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

double RunConfig::resolved_k1() const { return k1.value_or(6.0); }

double RunConfig::resolved_k2() const {
    if (k2) return *k2;
    if (experiment == ExperimentKind::RmtCompare) return 6.1;
    return resolved_k1();
}

std::vector<std::size_t> RunConfig::resolved_snapshots() const {
    if (!snapshots.empty()) return snapshots;
    return {0, steps};
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "experiment") {
        experiment = parse_experiment(value);
    } else if (key == "j") {
        const double j = parse_double(key, value);
        try {
            spin = SpinQuantum::from_j(j);
        } catch (const std::domain_error&) {
            throw ConfigError("config: j must be a positive multiple of 1/2, got '" + value + "'");
        }
        if (spin.two_j() < 1) throw ConfigError("config: j must be at least 1/2");
    } else if (key == "k") {
        k1 = parse_double(key, value);
        k2 = k1;
    } else if (key == "k1") {
        k1 = parse_double(key, value);
    } else if (key == "k2") {
        k2 = parse_double(key, value);
    } else if (key == "eps") {
        epsilon = parse_double(key, value);
    } else if (key == "eps_list") {
        eps_list.clear();
        for (const auto& item : split_list(value)) eps_list.push_back(parse_double(key, item));
        if (eps_list.empty()) throw ConfigError("config: eps_list is empty");
    } else if (key == "steps") {
        steps = parse_positive(key, value);
    } else if (key == "theta0") {
        theta0 = parse_double(key, value);
        if (theta0 < 0.0 || theta0 > 3.14159265358979323846) {
            throw ConfigError("config: theta0 must lie in [0, pi]");
        }
    } else if (key == "phi0") {
        phi0 = parse_double(key, value);
    } else if (key == "grid_theta") {
        grid_theta = parse_positive(key, value);
    } else if (key == "grid_phi") {
        grid_phi = parse_positive(key, value);
    } else if (key == "seed") {
        seed = parse_unsigned(key, value);
    } else if (key == "out") {
        if (value.empty()) throw ConfigError("config: out is empty");
        out = value;
    } else if (key == "stride") {
        stride = parse_positive(key, value);
    } else if (key == "snapshots") {
        snapshots.clear();
        for (const auto& item : split_list(value)) snapshots.push_back(parse_unsigned(key, item));
        std::sort(snapshots.begin(), snapshots.end());
        snapshots.erase(std::unique(snapshots.begin(), snapshots.end()), snapshots.end());
    } else if (key == "portrait_grid") {
        portrait_grid = parse_positive(key, value);
    } else if (key == "portrait_iter") {
        portrait_iter = parse_positive(key, value);
    } else if (key == "ic_grid") {
        ic_grid = parse_positive(key, value);
    } else if (key == "stats_mode") {
        if (value == "single") {
            stats_mode = StatsMode::SingleTop;
        } else if (value == "rdm") {
            stats_mode = StatsMode::RdmEigenvectors;
        } else {
            throw ConfigError("config: stats_mode must be 'single' or 'rdm'");
        }
    } else if (key == "pool_vectors") {
        pool_vectors = parse_positive(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    auto d = [](double x) { return format_exact(x); };
    auto u = [](std::size_t x) { return std::to_string(x); };
    const auto snaps = resolved_snapshots();
    return {
        {"experiment", to_string(experiment)},
        {"j", d(spin.j())},
        {"k1", d(resolved_k1())},
        {"k2", d(resolved_k2())},
        {"eps", d(epsilon)},
        {"eps_list", join(eps_list, d)},
        {"steps", u(steps)},
        {"theta0", d(theta0)},
        {"phi0", d(phi0)},
        {"grid_theta", u(grid_theta)},
        {"grid_phi", u(grid_phi)},
        {"seed", std::to_string(seed)},
        {"out", out.string()},
        {"stride", u(stride)},
        {"snapshots", join(snaps, u)},
        {"portrait_grid", u(portrait_grid)},
        {"portrait_iter", u(portrait_iter)},
        {"ic_grid", u(ic_grid)},
        {"stats_mode", stats_mode == StatsMode::SingleTop ? "single" : "rdm"},
        {"pool_vectors", u(pool_vectors)},
    };
}

std::string RunConfig::to_text() const {
    std::string text;
    for (const auto& [key, value] : entries()) {
        text += key + " = " + value + "\n";
    }
    return text;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    // Apply in file order so that "k" followed by "k2" behaves as written.
    while (std::getline(ss, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        base.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

} // namespace kicktop
