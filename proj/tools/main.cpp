// erhoq command line driver: thermalize / evolve / exact / run.
// Links only the public C API.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "erhoq/erhoq.h"
#include "run_config.hpp"
#include "svg_plot.hpp"

namespace {

int exit_code_for(erhoq_status status) {
    switch (status) {
        case ERHOQ_OK: return 0;
        case ERHOQ_ERROR_POPULATION_EXPLOSION: return 2;
        case ERHOQ_ERROR_ZERO_TRACE: return 3;
        case ERHOQ_ERROR_PARSE: return 4;
        case ERHOQ_ERROR_DIMENSION_TOO_LARGE: return 5;
        default: return 1;
    }
}

struct Failure {
    int code;
    std::string message;
};

void check(erhoq_status status) {
    if (status != ERHOQ_OK)
        throw Failure{exit_code_for(status), std::string(erhoq_status_name(status)) +
                                                 ": " + erhoq_last_error()};
}

using PopulationPtr = std::unique_ptr<erhoq_population, decltype(&erhoq_population_free)>;
using SeriesPtr = std::unique_ptr<erhoq_series, decltype(&erhoq_series_free)>;

struct CommonFlags {
    std::string config_path;
    std::optional<long long> seed;
    std::optional<long long> shots;
    std::optional<double> noise_readout;
    std::optional<double> noise_angle_bias;
    bool rescale = false;
    bool calibrate = false;
    std::string svg_path;
    std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "run configuration file")
        ->required();
    cmd->add_option("--seed", flags.seed, "override the Monte Carlo seed");
    cmd->add_option("--shots", flags.shots,
                    "sample this many shots per program instead of exact expectations");
    cmd->add_option("--noise-readout", flags.noise_readout,
                    "per-qubit readout flip probability");
    cmd->add_option("--noise-angle-bias", flags.noise_angle_bias,
                    "constant offset added to every gate angle");
    cmd->add_flag("--rescale", flags.rescale, "rescale the series by its t=0 value");
    cmd->add_flag("--calibrate", flags.calibrate,
                  "attach the diagonal-Hamiltonian calibration systematic");
    cmd->add_option("--svg", flags.svg_path, "write an overlay plot to this path");
    cmd->add_option("--out", flags.out_path, "override the primary output path");
}

RunConfig load_config_with_overrides(const CommonFlags& flags) {
    RunConfig config = load_run_config(flags.config_path);
    if (flags.seed) config.seed = static_cast<unsigned long long>(*flags.seed);
    if (flags.shots) {
        config.shots_mode = true;
        config.shots = *flags.shots;
    }
    if (flags.noise_readout) config.noise.readout_flip = *flags.noise_readout;
    if (flags.noise_angle_bias) config.noise.angle_bias_offset = *flags.noise_angle_bias;
    if (flags.rescale) config.rescale = true;
    if (flags.calibrate) config.calibrate = true;
    return config;
}

PopulationPtr thermalize(const RunConfig& config) {
    const erhoq_dmqmc_options options = dmqmc_options(config);
    erhoq_population* raw = nullptr;
    check(erhoq_thermalize(config.sites, &config.h0, &options, &raw));
    return PopulationPtr(raw, &erhoq_population_free);
}

SeriesPtr evolve(const RunConfig& config, const erhoq_population* population) {
    const erhoq_segment segment = schedule_segment(config);
    const erhoq_evolve_options options = evolve_options(config, &segment);
    erhoq_series* raw = nullptr;
    check(erhoq_evolve(population, &options, &raw));
    return SeriesPtr(raw, &erhoq_series_free);
}

SeriesPtr exact_reference(const RunConfig& config) {
    const erhoq_segment segment = schedule_segment(config);
    const erhoq_evolve_options options = evolve_options(config, &segment);
    erhoq_series* raw = nullptr;
    check(erhoq_exact_series(config.sites, &config.h0, config.beta, &options, &raw));
    return SeriesPtr(raw, &erhoq_series_free);
}

std::vector<PlotPoint> plot_points(const erhoq_series* series) {
    std::vector<PlotPoint> pts;
    const int n = erhoq_series_points(series);
    for (int i = 0; i < n; ++i) {
        double t = 0, value = 0, stat = 0, sys = 0;
        erhoq_series_point(series, i, &t, &value, &stat, &sys);
        pts.push_back({t, value, std::sqrt(stat * stat + sys * sys)});
    }
    return pts;
}

void write_text_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Failure{1, "cannot open `" + tmp + "` for writing"};
        os << contents;
        if (!os.flush()) throw Failure{1, "failed writing `" + tmp + "`"};
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Failure{1, "failed to rename `" + tmp + "` to `" + path + "`"};
    }
}

void print_population_summary(const erhoq_population* population) {
    std::cout << "population: sites=" << erhoq_population_sites(population)
              << " beta=" << erhoq_population_beta(population)
              << " entries=" << erhoq_population_entries(population)
              << " total_weight=" << erhoq_population_total_weight(population)
              << " trace=" << erhoq_population_trace(population) << "\n";
}

int cmd_thermalize(const CommonFlags& flags) {
    const RunConfig config = load_config_with_overrides(flags);
    const std::string out =
        flags.out_path.empty() ? config.population_file : flags.out_path;
    PopulationPtr population = thermalize(config);
    check(erhoq_population_save(population.get(), out.c_str()));
    print_population_summary(population.get());
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_evolve(const CommonFlags& flags) {
    const RunConfig config = load_config_with_overrides(flags);
    const std::string out = flags.out_path.empty() ? config.results_file : flags.out_path;
    erhoq_population* raw = nullptr;
    check(erhoq_population_load(config.population_file.c_str(), &raw));
    PopulationPtr population(raw, &erhoq_population_free);
    SeriesPtr series = evolve(config, population.get());
    check(erhoq_series_save_csv(series.get(), out.c_str()));
    std::cout << "wrote " << out << "\n";
    if (!flags.svg_path.empty()) {
        write_text_file(flags.svg_path,
                        render_series_svg(plot_points(series.get()), {}, "m_x"));
        std::cout << "wrote " << flags.svg_path << "\n";
    }
    return 0;
}

int cmd_exact(const CommonFlags& flags) {
    const RunConfig config = load_config_with_overrides(flags);
    const std::string out =
        flags.out_path.empty() ? config.reference_file : flags.out_path;
    SeriesPtr series = exact_reference(config);
    check(erhoq_series_save_csv(series.get(), out.c_str()));
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_run(const CommonFlags& flags) {
    const RunConfig config = load_config_with_overrides(flags);
    const std::string results_out =
        flags.out_path.empty() ? config.results_file : flags.out_path;

    PopulationPtr population = thermalize(config);
    check(erhoq_population_save(population.get(), config.population_file.c_str()));
    print_population_summary(population.get());
    std::cout << "wrote " << config.population_file << "\n";

    SeriesPtr series = evolve(config, population.get());
    check(erhoq_series_save_csv(series.get(), results_out.c_str()));
    std::cout << "wrote " << results_out << "\n";

    SeriesPtr reference = exact_reference(config);
    check(erhoq_series_save_csv(reference.get(), config.reference_file.c_str()));
    std::cout << "wrote " << config.reference_file << "\n";

    if (!flags.svg_path.empty()) {
        write_text_file(flags.svg_path,
                        render_series_svg(plot_points(series.get()),
                                          plot_points(reference.get()), "m_x"));
        std::cout << "wrote " << flags.svg_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "erhoq: stochastic thermal-state sampling piped through a simulated "
        "gate-based backend, with an exact-diagonalization reference"};
    app.require_subcommand(1);

    CommonFlags thermalize_flags, evolve_flags, exact_flags, run_flags;
    auto* thermalize_cmd = app.add_subcommand(
        "thermalize", "sample the thermal psip population and write it to disk");
    add_common_flags(thermalize_cmd, thermalize_flags);
    auto* evolve_cmd = app.add_subcommand(
        "evolve", "time-evolve a stored population and write the m_x series CSV");
    add_common_flags(evolve_cmd, evolve_flags);
    auto* exact_cmd =
        app.add_subcommand("exact", "write the exact-diagonalization reference CSV");
    add_common_flags(exact_cmd, exact_flags);
    auto* run_cmd = app.add_subcommand(
        "run", "thermalize, evolve and produce the reference in one go");
    add_common_flags(run_cmd, run_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (thermalize_cmd->parsed()) return cmd_thermalize(thermalize_flags);
        if (evolve_cmd->parsed()) return cmd_evolve(evolve_flags);
        if (exact_cmd->parsed()) return cmd_exact(exact_flags);
        if (run_cmd->parsed()) return cmd_run(run_flags);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const MissingKey& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
