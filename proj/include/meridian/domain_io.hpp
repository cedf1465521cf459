#pragma once

#include <string>

#include "meridian/domain.hpp"

namespace meridian {

// Domain specification file. JSON with the fixed field names:
//   { "components": [ {"kind": "disc", "center": [x,y], "radius": r},
//                     {"kind": "circle_arc_slit", "center": [x,y], "radius": r,
//                      "theta0": t0, "theta1": t1},
//                     {"kind": "point", "z": [x,y]},
//                     {"kind": "polyline", "vertices": [[x,y], ...]},
//                     {"kind": "outer_disc_complement", "center": [x,y], "radius": r} ],
//     "basepoint": [re, im] }
// Optional top-level "sample_density" controls boundary sampling.
Domain load_domain(const std::string& path);
Domain parse_domain(const std::string& json_text);
void save_domain(const Domain& domain, const std::string& path);

} // namespace meridian
