#pragma once

#include <iosfwd>
#include <string>

#include "estimator.hpp"

namespace erhoq {

// CSV with a fixed `t,m_x,stat_err,sys_err` schema and `#` metadata comments;
// deterministic byte-for-byte for fixed inputs.
void write_series_csv(const ObservableSeries& series, std::ostream& os);
std::string series_to_csv(const ObservableSeries& series);

}  // namespace erhoq
