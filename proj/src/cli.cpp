#include "mapslice/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mapslice/mesh_io.hpp"
#include "mapslice/oracle.hpp"
#include "mapslice/report.hpp"
#include "mapslice/svg.hpp"
#include "mapslice/sweep.hpp"
#include "mapslice/verify.hpp"

namespace mapslice {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitIo = 2;

LoopMode loop_mode_from_string(const std::string& name) {
    if (name == "sound") return LoopMode::sound;
    if (name == "paper-det") return LoopMode::paper_det;
    if (name == "always-scan") return LoopMode::always_scan;
    throw CLI::ValidationError("--loop-mode", "must be sound, paper-det or always-scan");
}

std::vector<double> read_plane_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open plane file: " + path.string());
    std::vector<double> z;
    double v;
    while (in >> v) z.push_back(v);
    if (!in.eof()) throw MeshError("plane file has non-numeric content: " + path.string());
    return z;
}

// Sink combining the activation log and per-plane SVG output.
class OutputSink : public ActivationSink {
public:
    OutputSink(ActivationLogWriter* log, std::filesystem::path svg_dir, SvgOptions svg_options)
        : log_(log), svg_dir_(std::move(svg_dir)), svg_options_(svg_options) {}

    void begin_plane(int plane_index, double z) override {
        if (log_) log_->begin_plane(plane_index, z);
        plane_acts_.clear();
    }

    void accept(int plane_index, const SliceActivation& act) override {
        if (log_) log_->accept(plane_index, act);
        if (!svg_dir_.empty()) plane_acts_.push_back(act);
    }

    void end_plane(int plane_index) override {
        if (svg_dir_.empty()) return;
        char name[32];
        std::snprintf(name, sizeof name, "slice_%04d.svg", plane_index);
        write_svg(svg_dir_ / name, plane_acts_, svg_options_);
        plane_acts_.clear();
    }

private:
    ActivationLogWriter* log_;
    std::filesystem::path svg_dir_;
    SvgOptions svg_options_;
    std::vector<SliceActivation> plane_acts_;
};

struct SliceArgs {
    std::string mesh;
    int nu = 3;
    double z_start = 0.0;
    double z_step = 1.0;
    int count = 1;
    std::string planes_file;
    std::string loop_mode = "sound";
    std::string cell_template = "edge-frame";
    double slab = 0.0;
    std::string svg_dir;
    std::string svg_color = "order";
    std::string log_path;
    std::string stats_path;
    std::string plane_stats_path;
    bool cache_active = false;
    int jobs = 1;
};

int run_slice(const SliceArgs& a) {
    std::vector<PreparedMap> maps;
    PlaneStack planes = PlaneStack::uniform(0.0, 1.0, 1);
    SweepOptions opt;
    try {
        std::vector<std::string> warnings;
        maps = load_mesh(a.mesh, &warnings);
        for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
        planes = a.planes_file.empty() ? PlaneStack::uniform(a.z_start, a.z_step, a.count)
                                       : PlaneStack::from_values(read_plane_file(a.planes_file));
        opt.loop_mode = loop_mode_from_string(a.loop_mode);
        opt.cell.id = cell_template_from_string(a.cell_template);
        opt.slab_halfwidth = a.slab;
        opt.cache_active = a.cache_active;
        opt.jobs = a.jobs;
        if (a.slab < 0.0) throw MeshError("--slab must be >= 0");
        if (a.jobs < 1) throw MeshError("--jobs must be >= 1");
        if (a.nu < 0 || a.nu > 12) throw MeshError("--nu must be in 0..12");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        const Paving paving = Paving::with_subdivision(a.nu);
        if (!a.svg_dir.empty()) std::filesystem::create_directories(a.svg_dir);
        ActivationLogWriter log;
        SvgOptions svg_options;
        svg_options.color = a.svg_color == "map" ? SvgColorMode::map_id : SvgColorMode::traversal_order;
        OutputSink sink(a.log_path.empty() ? nullptr : &log, a.svg_dir, svg_options);
        const SweepStats stats = sweep(maps, planes, paving, sink, opt);
        if (!a.log_path.empty()) log.write(a.log_path);
        if (!a.stats_path.empty()) write_stats(stats, a.stats_path);
        if (!a.plane_stats_path.empty()) write_plane_stats(stats, a.plane_stats_path);
        if (stats.partial) {
            std::cerr << "error: sweep aborted, outputs are partial: " << stats.error << "\n";
            return kExitIo;
        }
        std::printf("sliced %d plane(s) x %zu map(s) at n=%d: %llu activations, %.3fs\n",
                    planes.count(), maps.size(), paving.n,
                    (unsigned long long)stats.total_activations(), stats.total_seconds());
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace

std::vector<TrivariateMap> demo_mesh_maps() {
    std::vector<TrivariateMap> maps;
    for (int id = 0; id < 6; ++id) {
        const TrivariateMap base = perturbed_map(id, 1000 + id * 17, 0.12);
        auto coeffs = base.coeffs();
        const Vec3 offset{0.18 * (id % 2), 0.12 * (id % 3), 0.45 * id};
        for (Vec3& c : coeffs) c += offset;
        maps.emplace_back(id, coeffs);
    }
    return maps;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"mapslice: activates and slices deformation-mapped lattice microstructure"};
    app.require_subcommand(0, 1);

    SliceArgs sa;
    app.add_option("--mesh", sa.mesh, "mesh file (JSON)");
    app.add_option("--nu", sa.nu, "subdivision exponent; resolution n = 2^nu")->capture_default_str();
    app.add_option("--z-start", sa.z_start, "first plane height");
    app.add_option("--z-step", sa.z_step, "plane spacing (uniform stack)");
    app.add_option("--count", sa.count, "number of planes")->capture_default_str();
    app.add_option("--planes", sa.planes_file, "file of ascending plane heights, one per line");
    app.add_option("--loop-mode", sa.loop_mode, "face-loop screening: sound|paper-det|always-scan")
        ->capture_default_str();
    app.add_option("--template", sa.cell_template, "cell template: edge-frame|octet|diagonal-cross")
        ->capture_default_str();
    app.add_option("--slab", sa.slab, "microstructure slab half-width")->capture_default_str();
    app.add_option("--svg-dir", sa.svg_dir, "write one SVG per plane into this directory");
    app.add_option("--svg-color", sa.svg_color, "SVG fill: order|map")->capture_default_str();
    app.add_option("--log", sa.log_path, "write the activation log (JSON)");
    app.add_option("--stats", sa.stats_path, "write per-pair stats (CSV)");
    app.add_option("--plane-stats", sa.plane_stats_path, "write per-plane stats (CSV)");
    app.add_flag("--cache-active", sa.cache_active, "keep mapped cell geometry across planes");
    app.add_option("--jobs", sa.jobs, "worker bound for per-map traversals")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "re-check oracle-backed properties");
    verify_cmd->group("");  // hidden
    VerifyConfig vc;
    verify_cmd->add_option("--trials", vc.trials, "randomized maps per property")->capture_default_str();
    verify_cmd->add_option("--seed", vc.seed, "RNG seed")->capture_default_str();
    verify_cmd->add_option("--magnitude", vc.magnitude, "coefficient perturbation bound")
        ->capture_default_str();
    verify_cmd->add_option("--nu", vc.nus, "subdivision exponents to test")->capture_default_str();

    auto* demo_cmd = app.add_subcommand("demo-mesh", "write the bundled demonstration mesh");
    demo_cmd->group("");  // hidden
    std::string demo_path = "demo_mesh.json";
    demo_cmd->add_option("path", demo_path, "output file")->capture_default_str();

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    if (verify_cmd->parsed()) {
        bool all = true;
        for (const PropertyResult& r : run_verification(vc)) {
            std::printf("[%s] %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
            all = all && r.pass;
        }
        return all ? kExitOk : kExitInput;
    }
    if (demo_cmd->parsed()) {
        try {
            save_mesh(demo_path, demo_mesh_maps());
            std::printf("wrote %s\n", demo_path.c_str());
            return kExitOk;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitIo;
        }
    }
    if (sa.mesh.empty()) {
        std::cerr << "error: --mesh is required\n\n" << app.help();
        return kExitInput;
    }
    return run_slice(sa);
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("mapslice");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(int(argv.size()), argv.data());
}

}  // namespace mapslice
