#pragma once

#include "qghs/mollifier.hpp"

namespace qghs {

// Admissible-data preparation: characteristic-function truncation followed
// by mollification at width eps.
//  - omega: values with |omega| >= 1/eps or outside the ball of radius
//    1/eps around (z = 0, box centre) are set to zero, then the field is
//    mollified horizontally per layer and vertically through mirror
//    extension at both ends.
//  - theta: same with the horizontal disc of radius 1/eps, 2-D bump only.
// The masks zero values outright (no clamping). Both smoothing passes are
// convex averages, so no L^q norm grows.
struct PreparedData {
    LayeredSpectral3D omega;
    SpectralField2D theta;
};

PreparedData prepare_data(const LayeredPhys3D& omega_raw, const SpectralField2D& theta_raw,
                          double eps);

} // namespace qghs
