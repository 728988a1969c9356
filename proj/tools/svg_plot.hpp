#pragma once

#include <string>
#include <vector>

// Static overlay plot: reference curve as a line, estimates as points with
// error bars.  No interactive elements, no external dependencies.
struct PlotPoint {
    double t = 0;
    double value = 0;
    double err = 0;
};

std::string render_series_svg(const std::vector<PlotPoint>& estimates,
                              const std::vector<PlotPoint>& reference,
                              const std::string& y_label);
