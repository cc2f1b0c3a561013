#pragma once

#include <filesystem>
#include <string>

#include "mapslice/sweep.hpp"

namespace mapslice {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One CSV row per traversed map-plane pair:
//   n, time(s), boxes-in-intersection, total-boxes, intersect/total
// The ratio carries 4 significant digits; only the time column varies
// between identical runs.
void write_stats(const SweepStats& stats, const std::filesystem::path& path);

// Per-plane CSV: plane index, z, active maps, activations, cuboid tests,
// microstructure samples, cache hits, wall time.
void write_plane_stats(const SweepStats& stats, const std::filesystem::path& path);

// Activation-log sink: records grouped by plane then map, each activation as
// its box id ("i,j,k") plus the intersection polygon. Serialized as JSON on
// finish(); byte-identical for identical inputs.
class ActivationLogWriter : public ActivationSink {
public:
    explicit ActivationLogWriter(bool include_segments = false);
    ~ActivationLogWriter() override;

    void begin_plane(int plane_index, double z) override;
    void accept(int plane_index, const SliceActivation& activation) override;

    std::string to_json() const;
    void write(const std::filesystem::path& path) const;

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace mapslice
