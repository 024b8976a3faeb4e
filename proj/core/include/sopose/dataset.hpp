#pragma once

/// Dataset plumbing: pose label JSONL I/O, external benchmark ingestion,
/// and the synthetic in-frustum pose sampler.

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sopose/camera.hpp"
#include "sopose/pose.hpp"

namespace sopose {

struct LabeledSample {
    std::string sample_id;
    std::optional<std::string> image_path;
    PoseSample pose;
};

struct FrustumRange {
    double min_range_m = 10.0;
    double max_range_m = 40.0;
    double margin_px = 32.0;  // object origin stays this far inside the frame
};

/// Orientation uniform on SO(3); depth uniform in [min, max]; the projected
/// origin uniform in the margin-inset pixel rectangle. Depth is along +z,
/// so every sample has positive t.z.
PoseSample sample_pose(const CameraIntrinsics& k, const FrustumRange& fr, std::mt19937_64& rng);

/// JSONL, one object per line:
///   {"id": str, "image": str|null, "q_wxyz": [4 reals], "t_xyz_m": [3 reals]}
/// Floats are written with 17 significant digits; read(write(s)) == s.
void write_labels(std::span<const LabeledSample> samples, const std::string& path);

/// Throws std::runtime_error naming the line for malformed rows or
/// quaternions whose norm is off by more than 1e-6. An empty file is an
/// empty dataset.
std::vector<LabeledSample> read_labels(const std::string& path);

/// Field-name configuration for external JSON-array label files.
struct ImportMapping {
    std::string id_key = "id";
    std::string quat_key = "q";
    std::string quat_order = "wxyz";  // or "xyzw"
    std::string trans_key = "t";
    double trans_scale = 1.0;  // multiply stored values to get meters
};

/// Import a JSON array of records, canonicalizing quaternions and scaling
/// translations to meters. Throws naming the first offending record when a
/// key is missing or malformed.
std::vector<LabeledSample> import_external(const std::string& path, const ImportMapping& mapping);

}  // namespace sopose
