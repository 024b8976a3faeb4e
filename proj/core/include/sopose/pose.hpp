#pragma once

#include "sopose/quaternion.hpp"

namespace sopose {

/// Object pose in the camera frame: q rotates body coordinates into camera
/// coordinates, t is the object origin in camera coordinates (meters).
/// Camera frame: +z forward (optical axis), +x right, +y down.
struct PoseSample {
    Quaternion q;
    Vec3 t;
};

}  // namespace sopose
