#include "mapslice/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "mapslice/paving.hpp"

namespace mapslice {

void write_stats(const SweepStats& stats, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write stats file: " + path.string());
    out << "# mapslice-stats v1\n";
    out << "n,time_s,boxes_in_intersection,total_boxes,intersect_total\n";
    const std::int64_t total = total_boxes(stats.n);
    char buf[64];
    for (const PairStatsRow& row : stats.pairs) {
        std::snprintf(buf, sizeof buf, "%.6g", row.seconds);
        out << stats.n << "," << buf << "," << row.activations << "," << total << ",";
        std::snprintf(buf, sizeof buf, "%.4g", double(row.activations) / double(total));
        out << buf << "\n";
    }
    if (stats.partial) out << "# partial output: sweep aborted\n";
    if (!out) throw IoError("failed writing stats file: " + path.string());
}

void write_plane_stats(const SweepStats& stats, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write plane stats file: " + path.string());
    out << "# mapslice-plane-stats v1\n";
    out << "plane,z,active_maps,activations,cuboid_tests,micro_samples,cache_hits,time_s\n";
    char buf[64];
    for (const PlaneStatsRow& row : stats.planes) {
        std::snprintf(buf, sizeof buf, "%.17g", row.z);
        out << row.plane << "," << buf << "," << row.active_maps << "," << row.activations << ","
            << row.cuboid_tests << "," << row.micro_samples << "," << row.cache_hits << ",";
        std::snprintf(buf, sizeof buf, "%.6g", row.seconds);
        out << buf << "\n";
    }
    if (stats.partial) out << "# partial output: sweep aborted\n";
    if (!out) throw IoError("failed writing plane stats file: " + path.string());
}

struct ActivationLogWriter::Impl {
    bool include_segments = false;
    nlohmann::json planes = nlohmann::json::array();
    nlohmann::json* current_plane = nullptr;
    nlohmann::json* current_map = nullptr;
    int current_map_id = 0;
};

ActivationLogWriter::ActivationLogWriter(bool include_segments) : impl_(new Impl) {
    impl_->include_segments = include_segments;
}

ActivationLogWriter::~ActivationLogWriter() { delete impl_; }

void ActivationLogWriter::begin_plane(int plane_index, double z) {
    nlohmann::json plane;
    plane["index"] = plane_index;
    plane["z"] = z;
    plane["maps"] = nlohmann::json::array();
    impl_->planes.push_back(std::move(plane));
    impl_->current_plane = &impl_->planes.back();
    impl_->current_map = nullptr;
}

void ActivationLogWriter::accept(int plane_index, const SliceActivation& act) {
    (void)plane_index;
    auto& maps = (*impl_->current_plane)["maps"];
    if (!impl_->current_map || impl_->current_map_id != act.map_id) {
        nlohmann::json m;
        m["id"] = act.map_id;
        m["boxes"] = nlohmann::json::array();
        maps.push_back(std::move(m));
        impl_->current_map = &maps.back();
        impl_->current_map_id = act.map_id;
    }
    nlohmann::json rec;
    rec["box"] = act.box.to_string();
    nlohmann::json poly = nlohmann::json::array();
    for (const Vec2& p : act.polygon) poly.push_back(nlohmann::json{p.x, p.y});
    rec["polygon"] = std::move(poly);
    if (impl_->include_segments) {
        nlohmann::json segs = nlohmann::json::array();
        for (const Segment2& s : act.micro_segments)
            segs.push_back(nlohmann::json{s.a.x, s.a.y, s.b.x, s.b.y});
        rec["segments"] = std::move(segs);
    }
    (*impl_->current_map)["boxes"].push_back(std::move(rec));
}

std::string ActivationLogWriter::to_json() const {
    nlohmann::json doc;
    doc["version"] = 1;
    doc["planes"] = impl_->planes;
    return doc.dump(1);
}

void ActivationLogWriter::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write activation log: " + path.string());
    out << to_json() << "\n";
    if (!out) throw IoError("failed writing activation log: " + path.string());
}

}  // namespace mapslice
