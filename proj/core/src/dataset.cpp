#include "sopose/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sopose/random.hpp"

namespace sopose {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void line_error(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

PoseSample sample_pose(const CameraIntrinsics& k, const FrustumRange& fr, std::mt19937_64& rng) {
    if (!(fr.min_range_m > 0.0) || !(fr.max_range_m > fr.min_range_m))
        throw std::invalid_argument("invalid range interval");
    if (!(fr.margin_px < std::min(k.width, k.height) / 2.0))
        throw std::invalid_argument("margin leaves no interior");

    PoseSample s;
    s.q = sample_uniform(rng);
    const double z = uniform_double(rng, fr.min_range_m, fr.max_range_m);
    const double u = uniform_double(rng, fr.margin_px, k.width - fr.margin_px);
    const double v = uniform_double(rng, fr.margin_px, k.height - fr.margin_px);
    s.t = backproject(k, u, v, z);
    return s;
}

void write_labels(std::span<const LabeledSample> samples, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const LabeledSample& s : samples) {
        const json id = s.sample_id;  // reuse json string escaping
        const json image = s.image_path ? json(*s.image_path) : json(nullptr);
        out << "{\"id\": " << id.dump() << ", \"image\": " << image.dump() << ", \"q_wxyz\": ["
            << fmt17(s.pose.q.w) << ", " << fmt17(s.pose.q.x) << ", " << fmt17(s.pose.q.y) << ", "
            << fmt17(s.pose.q.z) << "], \"t_xyz_m\": [" << fmt17(s.pose.t.x) << ", "
            << fmt17(s.pose.t.y) << ", " << fmt17(s.pose.t.z) << "]}\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<LabeledSample> read_labels(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);

    std::vector<LabeledSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) line_error(path, line_no, "malformed JSON object");
        if (!j.contains("id") || !j["id"].is_string())
            line_error(path, line_no, "missing string field 'id'");
        if (!j.contains("q_wxyz") || !j["q_wxyz"].is_array() || j["q_wxyz"].size() != 4)
            line_error(path, line_no, "'q_wxyz' must be an array of 4 numbers");
        if (!j.contains("t_xyz_m") || !j["t_xyz_m"].is_array() || j["t_xyz_m"].size() != 3)
            line_error(path, line_no, "'t_xyz_m' must be an array of 3 numbers");

        LabeledSample s;
        s.sample_id = j["id"].get<std::string>();
        if (j.contains("image") && !j["image"].is_null())
            s.image_path = j["image"].get<std::string>();
        for (const auto& v : j["q_wxyz"])
            if (!v.is_number()) line_error(path, line_no, "'q_wxyz' must be an array of 4 numbers");
        for (const auto& v : j["t_xyz_m"])
            if (!v.is_number()) line_error(path, line_no, "'t_xyz_m' must be an array of 3 numbers");
        s.pose.q = {j["q_wxyz"][0].get<double>(), j["q_wxyz"][1].get<double>(),
                    j["q_wxyz"][2].get<double>(), j["q_wxyz"][3].get<double>()};
        s.pose.t = {j["t_xyz_m"][0].get<double>(), j["t_xyz_m"][1].get<double>(),
                    j["t_xyz_m"][2].get<double>()};
        if (std::abs(s.pose.q.norm() - 1.0) > 1e-6)
            line_error(path, line_no, "quaternion is not unit norm");
        samples.push_back(std::move(s));
    }
    return samples;
}

std::vector<LabeledSample> import_external(const std::string& path, const ImportMapping& mapping) {
    if (mapping.quat_order != "wxyz" && mapping.quat_order != "xyzw")
        throw std::invalid_argument("quat_order must be 'wxyz' or 'xyzw'");

    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    json root = json::parse(in, nullptr, false);
    if (root.is_discarded() || !root.is_array())
        throw std::runtime_error(path + ": expected a JSON array of records");

    std::vector<LabeledSample> samples;
    for (std::size_t idx = 0; idx < root.size(); ++idx) {
        const json& rec = root[idx];
        const auto fail = [&](const std::string& what) {
            throw std::runtime_error(path + ": record " + std::to_string(idx) + ": " + what);
        };
        if (!rec.is_object()) fail("not an object");
        if (!rec.contains(mapping.id_key)) fail("missing key '" + mapping.id_key + "'");
        if (!rec.contains(mapping.quat_key)) fail("missing key '" + mapping.quat_key + "'");
        if (!rec.contains(mapping.trans_key)) fail("missing key '" + mapping.trans_key + "'");

        LabeledSample s;
        const json& idv = rec[mapping.id_key];
        s.sample_id = idv.is_string() ? idv.get<std::string>() : idv.dump();

        const json& qv = rec[mapping.quat_key];
        if (!qv.is_array() || qv.size() != 4) fail("quaternion must be an array of 4 numbers");
        std::array<double, 4> qc{};
        for (std::size_t i = 0; i < 4; ++i) {
            if (!qv[i].is_number()) fail("quaternion must be an array of 4 numbers");
            qc[i] = qv[i].get<double>();
        }
        Quaternion q = mapping.quat_order == "wxyz" ? Quaternion{qc[0], qc[1], qc[2], qc[3]}
                                                    : Quaternion{qc[3], qc[0], qc[1], qc[2]};
        s.pose.q = canonicalize(q);

        const json& tv = rec[mapping.trans_key];
        if (!tv.is_array() || tv.size() != 3) fail("translation must be an array of 3 numbers");
        for (const auto& v : tv)
            if (!v.is_number()) fail("translation must be an array of 3 numbers");
        s.pose.t = {tv[0].get<double>() * mapping.trans_scale,
                    tv[1].get<double>() * mapping.trans_scale,
                    tv[2].get<double>() * mapping.trans_scale};
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace sopose
