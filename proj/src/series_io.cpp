#include "series_io.hpp"

#include <ostream>
#include <sstream>

#include "text_format.hpp"

namespace erhoq {

void write_series_csv(const ObservableSeries& series, std::ostream& os) {
    const SeriesMetadata& m = series.meta;
    os << "# erhoq observable series\n";
    os << "# source=" << m.source << " sites=" << format_int(m.sites)
       << " beta=" << format_double(m.beta) << '\n';
    os << "# population: hash=0x" << to_hex(m.population_hash)
       << " seed=" << format_int(static_cast<std::int64_t>(m.population_seed))
       << " keys=" << format_int(static_cast<std::int64_t>(m.key_count))
       << " trace=" << format_int(m.trace)
       << " total_weight=" << format_int(m.total_weight) << '\n';
    os << "# backend: mode=" << (m.shots == 0 ? "exact" : "shots")
       << " shots=" << format_int(m.shots)
       << " shot_seed=" << format_int(static_cast<std::int64_t>(m.shot_seed))
       << " readout_flip=" << format_double(m.readout_flip)
       << " angle_bias_offset=" << format_double(m.angle_bias_offset)
       << " angle_bias_slope=" << format_double(m.angle_bias_slope) << '\n';
    os << "# evolution: grid_dt=" << format_double(m.grid_dt)
       << " trotter_dt=" << format_double(m.trotter_dt) << " segments=";
    for (std::size_t i = 0; i < m.segments.size(); ++i) {
        const auto& seg = m.segments[i];
        os << (i == 0 ? "" : ";") << "(t=" << format_double(seg.t_start)
           << ",j_z=" << format_double(seg.params.j_z)
           << ",mu_x=" << format_double(seg.params.mu_x)
           << ",mu_z=" << format_double(seg.params.mu_z) << ')';
    }
    os << '\n';
    os << "# analysis: bootstrap_resamples=" << format_int(m.bootstrap_resamples)
       << " bootstrap_seed=" << format_int(static_cast<std::int64_t>(m.bootstrap_seed))
       << " rescaled=" << (m.rescaled ? 1 : 0) << " calibration_quadrature="
       << (m.calibration_quadrature ? format_double(*m.calibration_quadrature)
                                    : std::string("none"))
       << '\n';
    os << "t,m_x,stat_err,sys_err\n";
    for (const SeriesPoint& p : series.points) {
        os << format_double(p.t) << ',' << format_double(p.value) << ','
           << format_double(p.stat_err) << ',' << format_double(p.sys_err) << '\n';
    }
}

std::string series_to_csv(const ObservableSeries& series) {
    std::ostringstream oss;
    write_series_csv(series, oss);
    return oss.str();
}

}  // namespace erhoq
