#pragma once

#include <string>
#include <vector>

#include "foundry/geometry.hpp"

namespace foundry {

/// Flatten SVG path data into polyline points per subpath.
/// Curves are subdivided adaptively to the given tolerance (px). Malformed
/// data throws Error(MalformedSvg).
std::vector<std::vector<Vec2>> flatten_path_data(const std::string& d, double tolerance = 0.1);

/// Tight bbox of flattened path data.
Rect path_data_bbox(const std::string& d, double tolerance = 0.1);

/// Deterministic shortest-round-trip number formatting used for all numeric
/// output (SVG attributes, path data). Values are rounded to 3 decimals
/// first so emitted geometry is stable and re-parses exactly.
std::string fmt_num(double v);

/// Round to 3 decimals (the precision used by fmt_num).
double round3(double v);

/// Uniform-scale + translate a path data string (absolute M/L/C/A/Z only,
/// the subset PathBuilder emits). Radii scale, flags pass through.
std::string transform_path_data(const std::string& d, double scale, double dx, double dy);

/// Incremental path-data builder in absolute coordinates.
class PathBuilder {
public:
    PathBuilder& move_to(double x, double y);
    PathBuilder& line_to(double x, double y);
    PathBuilder& cubic_to(double c1x, double c1y, double c2x, double c2y, double x, double y);
    PathBuilder& arc_to(double rx, double ry, double rot_deg, bool large, bool sweep,
                        double x, double y);
    PathBuilder& close();
    const std::string& str() const { return d_; }

private:
    std::string d_;
};

} // namespace foundry
