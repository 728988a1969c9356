#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::map<std::string, std::string> parse_key_values(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file `" + path + "`");
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     " is not `key = value`");
        kv[trim(text.substr(0, eq))] = trim(text.substr(eq + 1));
    }
    return kv;
}

class Reader {
public:
    explicit Reader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    std::string required(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw MissingKey(key);
        return it->second;
    }
    std::optional<std::string> optional(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        return it->second;
    }

    double required_double(const std::string& key) const {
        return to_double(key, required(key));
    }
    long long required_int(const std::string& key) const {
        return to_int(key, required(key));
    }
    double optional_double(const std::string& key, double fallback) const {
        auto v = optional(key);
        return v ? to_double(key, *v) : fallback;
    }
    long long optional_int(const std::string& key, long long fallback) const {
        auto v = optional(key);
        return v ? to_int(key, *v) : fallback;
    }
    bool optional_bool(const std::string& key, bool fallback) const {
        auto v = optional(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        throw BadValue(key, *v);
    }
    std::string optional_string(const std::string& key, std::string fallback) const {
        auto v = optional(key);
        return v ? *v : fallback;
    }

private:
    static double to_double(const std::string& key, const std::string& value) {
        try {
            std::size_t used = 0;
            const double d = std::stod(value, &used);
            if (used != value.size()) throw BadValue(key, value);
            return d;
        } catch (const BadValue&) {
            throw;
        } catch (...) {
            throw BadValue(key, value);
        }
    }
    static long long to_int(const std::string& key, const std::string& value) {
        try {
            std::size_t used = 0;
            const long long n = std::stoll(value, &used);
            if (used != value.size()) throw BadValue(key, value);
            return n;
        } catch (const BadValue&) {
            throw;
        } catch (...) {
            throw BadValue(key, value);
        }
    }

    std::map<std::string, std::string> kv_;
};

}  // namespace

RunConfig load_run_config(const std::string& path) {
    const Reader reader(parse_key_values(path));
    RunConfig c;
    c.sites = static_cast<int>(reader.required_int("sites"));
    c.h0 = {reader.required_double("h0_j_z"), reader.required_double("h0_mu_x"),
            reader.required_double("h0_mu_z")};
    c.h1 = {reader.required_double("h1_j_z"), reader.required_double("h1_mu_x"),
            reader.required_double("h1_mu_z")};
    c.beta = reader.required_double("beta");
    c.delta_beta = reader.required_double("delta_beta");
    c.n_initial = reader.required_int("n_initial");
    c.seed = static_cast<unsigned long long>(reader.required_int("seed"));
    c.t_max = reader.required_double("t_max");
    c.grid_dt = reader.required_double("grid_dt");
    c.trotter_dt = reader.required_double("trotter_dt");

    const std::string mode = reader.optional_string("mode", "exact");
    if (mode == "shots")
        c.shots_mode = true;
    else if (mode != "exact")
        throw BadValue("mode", mode);
    c.shots = reader.optional_int("shots", 512);
    c.shot_seed = static_cast<unsigned long long>(reader.optional_int("shot_seed", 1));
    c.noise.readout_flip = reader.optional_double("readout_flip", 0.0);
    c.noise.angle_bias_offset = reader.optional_double("angle_bias", 0.0);
    c.noise.angle_bias_slope = reader.optional_double("angle_bias_slope", 0.0);
    c.bootstrap_resamples =
        static_cast<int>(reader.optional_int("bootstrap_resamples", 1000));
    c.bootstrap_seed =
        static_cast<unsigned long long>(reader.optional_int("bootstrap_seed", 1));
    c.weight_ceiling = reader.optional_double("weight_ceiling", 1e7);
    c.rescale = reader.optional_bool("rescale", false);
    c.calibrate = reader.optional_bool("calibrate", false);
    c.per_psip = reader.optional_bool("per_psip", false);
    c.population_file = reader.optional_string("population_file", "population.txt");
    c.results_file = reader.optional_string("results_file", "results.csv");
    c.reference_file = reader.optional_string("reference_file", "reference.csv");
    return c;
}

erhoq_dmqmc_options dmqmc_options(const RunConfig& config) {
    erhoq_dmqmc_options o;
    o.beta = config.beta;
    o.delta_beta = config.delta_beta;
    o.n_initial = config.n_initial;
    o.seed = config.seed;
    o.weight_ceiling = config.weight_ceiling;
    return o;
}

erhoq_segment schedule_segment(const RunConfig& config) {
    return erhoq_segment{0.0, config.h1};
}

erhoq_evolve_options evolve_options(const RunConfig& config,
                                    const erhoq_segment* segment) {
    erhoq_evolve_options o{};
    o.segments = segment;
    o.n_segments = 1;
    o.t_max = config.t_max;
    o.grid_dt = config.grid_dt;
    o.trotter_dt = config.trotter_dt;
    o.noise = config.noise;
    o.shots = config.shots_mode ? config.shots : 0;
    o.shot_seed = config.shot_seed;
    o.bootstrap_resamples = config.bootstrap_resamples;
    o.bootstrap_seed = config.bootstrap_seed;
    o.rescale = config.rescale ? 1 : 0;
    o.calibrate = config.calibrate ? 1 : 0;
    o.per_psip = config.per_psip ? 1 : 0;
    o.h0 = config.h0;
    return o;
}
