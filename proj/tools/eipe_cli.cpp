// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C API: single-region encoding, exact-vs-
// Gaussian sweep grids, underflow scans, and the Monte-Carlo reference.  All
// commands emit deterministic CSV (UTF-8, \n, leading # comment lines with a
// format tag and a config echo); outputs are byte-identical for a fixed
// configuration regardless of --jobs.

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "eipe/eipe.h"

namespace {

constexpr const char* kCsvTag = "eipe-csv/1";

// Exit codes: 0 ok, 2 command or file parse error, 3 domain error, 4 I/O.
struct Fail {
    int code;
    std::string msg;
};

void check(eipe_status st, const std::string& what) {
    if (st != EIPE_OK) throw Fail{3, what + ": " + eipe_status_name(st)};
}

// Shortest round-trip decimal form (re-parsing recovers the identical value).
std::string fmt(double v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string fmt(float v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

struct Region {
    eipe_frustum* f = nullptr;
    Region() = default;
    explicit Region(eipe_frustum* p) : f(p) {}
    Region(Region&& o) noexcept : f(o.f) { o.f = nullptr; }
    Region& operator=(Region&& o) noexcept {
        if (this != &o) {
            eipe_frustum_free(f);
            f = o.f;
            o.f = nullptr;
        }
        return *this;
    }
    Region(const Region&) = delete;
    Region& operator=(const Region&) = delete;
    ~Region() { eipe_frustum_free(f); }
};

Region region_from_vertices(const double v[24], const std::string& what) {
    eipe_frustum* f = nullptr;
    check(eipe_frustum_from_vertices(v, &f), what);
    return Region(f);
}

std::vector<double> parse_numbers(const std::string& line, const std::string& where) {
    std::vector<double> out;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t' || *p == ',' || *p == '\r')) ++p;
        if (p >= end) break;
        double v = 0;
        auto r = std::from_chars(p, end, v);
        if (r.ec != std::errc{})
            throw Fail{2, where + ": malformed number near \"" +
                              std::string(p, std::min<std::size_t>(12, static_cast<std::size_t>(end - p))) +
                              "\""};
        out.push_back(v);
        p = r.ptr;
    }
    return out;
}

// Reads whitespace/comma separated records of exactly `count` numbers per
// line; blank lines and # comments are skipped.
std::vector<std::vector<double>> read_records(const std::string& path, std::size_t count) {
    std::ifstream in(path);
    if (!in) throw Fail{4, "cannot open " + path};
    std::vector<std::vector<double>> recs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = path + ":" + std::to_string(lineno);
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::vector<double> nums = parse_numbers(line, where);
        if (nums.empty()) continue;
        if (nums.size() != count)
            throw Fail{2, where + ": expected " + std::to_string(count) + " numbers, got " +
                              std::to_string(nums.size())};
        recs.push_back(std::move(nums));
    }
    return recs;
}

// A camera pose record: rotation (9, row-major), origin (3), pixel side.
struct Pose {
    std::array<double, 9> R{1, 0, 0, 0, 1, 0, 0, 0, 1};
    std::array<double, 3> o{0, 0, 0};
    double omega = 0.01;
};

Pose pose_from_record(const std::vector<double>& r) {
    Pose p;
    std::copy_n(r.begin(), 9, p.R.begin());
    std::copy_n(r.begin() + 9, 3, p.o.begin());
    p.omega = r[12];
    return p;
}

Pose load_pose(const std::string& path) {
    auto recs = read_records(path, 13);
    if (recs.empty()) throw Fail{2, path + ": no pose record"};
    return pose_from_record(recs.front());
}

void parallel_for(int jobs, std::size_t n, const std::function<void(std::size_t)>& body) {
    jobs = std::clamp(jobs, 1, 64);
    if (jobs == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs && static_cast<std::size_t>(t) < n; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::fwrite(data.data(), 1, data.size(), stdout);
        if (std::fflush(stdout) != 0) throw Fail{4, "writing to standard output failed"};
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Fail{4, "cannot open " + path + " for writing"};
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw Fail{4, "writing " + path + " failed"};
}

void emit_preamble(std::string& out, const std::string& cmd, const std::string& cfg) {
    out += "# ";
    out += kCsvTag;
    out += ' ';
    out += cmd;
    out += '\n';
    out += "# library=";
    out += eipe_version();
    out += '\n';
    out += "# config: ";
    out += cfg;
    out += '\n';
}

int sin_index(int l, int axis) { return 3 * l + axis; }
int cos_index(int l, int axis, int octaves) { return 3 * (octaves + l) + axis; }

constexpr char kAxisNames[4] = "xyz";

// ---- encode ------------------------------------------------------------

struct EncodeOpts {
    double cube = 0;
    std::string pose_file, verts_file;
    double t0 = 0, t1 = 0;
    std::string encoder = "eipe";
    int octaves = 4;
    bool contract = false, narrow = false;
    std::string guard = "on";
    std::string output;
    int jobs = 1;
    bool has_cube = false, has_pose = false, has_verts = false, has_t0 = false, has_t1 = false;
};

void run_encode(const EncodeOpts& eo) {
    if (eo.has_pose && (!eo.has_t0 || !eo.has_t1))
        throw Fail{2, "--pose-file requires --t0 and --t1"};

    const int L = eo.octaves;
    std::vector<double> buf(static_cast<std::size_t>(6 * L), 0.0);

    Pose pose;
    std::string source;
    if (eo.has_pose) {
        pose = load_pose(eo.pose_file);
        source = "pose=" + eo.pose_file + " t0=" + fmt(eo.t0) + " t1=" + fmt(eo.t1);
    } else if (eo.has_cube) {
        source = "cube=" + fmt(eo.cube);
    } else {
        source = "vertices=" + eo.verts_file;
    }

    if (eo.encoder == "ipe") {
        if (!eo.has_pose) throw Fail{3, "encoder ipe needs a --pose-file region"};
        const double d[3] = {pose.R[2], pose.R[5], pose.R[8]};
        double mu[3], sig[9];
        check(eipe_cone_gaussian(d, pose.o.data(), pose.omega, eo.t0, eo.t1, mu, sig),
              "cone moments");
        if (eo.contract) {
            double mu2[3], sig2[9];
            check(eipe_contract_gaussian(mu, sig, mu2, sig2), "gaussian contraction");
            std::copy_n(mu2, 3, mu);
            std::copy_n(sig2, 9, sig);
        }
        check(eipe_encode_gaussian(mu, sig, L, buf.data()), "gaussian encoding");
    } else if (eo.encoder == "square_pyramid") {
        if (!eo.has_pose) throw Fail{3, "encoder square_pyramid needs a --pose-file region"};
        if (eo.contract)
            throw Fail{3, "the square-pyramid closed form does not support --contract"};
        check(eipe_encode_square_pyramid(pose.R.data(), pose.o.data(), pose.omega, eo.t0, eo.t1,
                                         L, buf.data(), nullptr),
              "square-pyramid encoding");
    } else {
        Region reg;
        if (eo.has_cube) {
            if (!std::isfinite(eo.cube) || !(eo.cube > 0))
                throw Fail{3, "--cube needs a positive finite half-side"};
            const double a = eo.cube;
            const double v[24] = {a, a, -a, a, -a, -a, -a, -a, -a, -a, a, -a,
                                  a, a, a,  a, -a, a,  -a, -a, a,  -a, a, a};
            reg = region_from_vertices(v, "cube region");
        } else if (eo.has_pose) {
            const double dir[3] = {0, 0, 1};
            eipe_frustum* f = nullptr;
            check(eipe_frustum_from_pose(pose.R.data(), pose.o.data(), pose.omega, dir, eo.t0,
                                         eo.t1, &f),
                  "pose region");
            reg = Region(f);
        } else {
            auto recs = read_records(eo.verts_file, 24);
            if (recs.empty()) throw Fail{2, eo.verts_file + ": no vertex record"};
            reg = region_from_vertices(recs.front().data(), "vertex region");
        }
        if (eo.contract) {
            eipe_frustum* c = nullptr;
            check(eipe_frustum_contract(reg.f, &c), "contraction");
            reg = Region(c);
        }
        if (eo.encoder == "pe") {
            double mid[3];
            check(eipe_frustum_centroid(reg.f, mid), "centroid");
            check(eipe_encode_point(mid, L, buf.data()), "point encoding");
        } else {
            check(eipe_encode_exact(reg.f, L, eo.guard == "on", buf.data(), nullptr),
                  "exact encoding");
        }
    }

    std::vector<float> nbuf;
    if (eo.narrow) {
        nbuf.resize(buf.size());
        eipe_narrow_f32(buf.data(), buf.size(), nbuf.data());
    }

    std::string out;
    emit_preamble(out, "encode",
                  "encoder=" + eo.encoder + " L=" + std::to_string(L) + " guard=" + eo.guard +
                      " contract=" + std::to_string(eo.contract ? 1 : 0) +
                      " narrow=" + std::to_string(eo.narrow ? 1 : 0) + " " + source);
    out += "l,axis,component,value\n";
    for (int l = 0; l < L; ++l)
        for (int axis = 0; axis < 3; ++axis) {
            int si = sin_index(l, axis), ci = cos_index(l, axis, L);
            std::string prefix = std::to_string(l) + "," + kAxisNames[axis] + ",";
            out += prefix + "sin," + (eo.narrow ? fmt(nbuf[si]) : fmt(buf[si])) + "\n";
            out += prefix + "cos," + (eo.narrow ? fmt(nbuf[ci]) : fmt(buf[ci])) + "\n";
        }
    write_output(eo.output, out);
}

// ---- sweep -------------------------------------------------------------

struct SweepOpts {
    std::string mode;
    double fixed = 0;
    double gmin = 0, gmax = 0;
    int count = 0;
    std::string spacing;
    std::vector<int> l_list = {1, 2, 3, 4, 5};
    std::string pose_file;
    double omega = 0.01;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string output;
    bool has_fixed = false, has_min = false, has_max = false, has_count = false,
         has_spacing = false;
};

struct SweepRow {
    double mu, delta;
    int l, axis;
    double eipe_sin, eipe_cos, ipe_sin, ipe_cos;
    int underflow;
};

void run_sweep(SweepOpts so) {
    // Mode defaults: sweep the held-out parameter over its documented range.
    if (so.mode == "mu_sweep") {
        if (!so.has_fixed) so.fixed = 0.02;  // frustum length delta_i
        if (!so.has_min) so.gmin = 0.5;
        if (!so.has_max) so.gmax = 6.0;
        if (!so.has_count) so.count = 111;
        if (!so.has_spacing) so.spacing = "linear";
    } else if (so.mode == "delta_sweep") {
        if (!so.has_fixed) so.fixed = 3.0;  // midpoint distance mu_t
        if (!so.has_min) so.gmin = 0.01;
        if (!so.has_max) so.gmax = 4.0;
        if (!so.has_count) so.count = 81;
        if (!so.has_spacing) so.spacing = "log";
    } else {  // small_frustum
        if (!so.has_fixed) so.fixed = 5e-4;
        if (!so.has_min) so.gmin = 0.005;
        if (!so.has_max) so.gmax = 0.5;
        if (!so.has_count) so.count = 100;
        if (!so.has_spacing) so.spacing = "linear";
    }

    if (so.count < 2) throw Fail{3, "sweep grid needs at least 2 points"};
    if (!std::isfinite(so.gmin) || !std::isfinite(so.gmax) || !(so.gmin < so.gmax))
        throw Fail{3, "sweep grid needs finite min < max"};
    if (so.spacing == "log" && !(so.gmin > 0)) throw Fail{3, "log spacing needs min > 0"};
    if (!std::isfinite(so.fixed) || !(so.fixed > 0))
        throw Fail{3, "the fixed sweep parameter must be positive"};
    if (!(so.omega > 0) || !std::isfinite(so.omega)) throw Fail{3, "--omega must be positive"};
    if (so.l_list.empty()) throw Fail{3, "--L-list must not be empty"};
    std::sort(so.l_list.begin(), so.l_list.end());
    so.l_list.erase(std::unique(so.l_list.begin(), so.l_list.end()), so.l_list.end());
    if (so.l_list.front() < 0 || so.l_list.back() > 61)
        throw Fail{3, "--L-list entries must lie in [0, 61]"};
    const int octaves = so.l_list.back() + 1;

    Pose pose;
    if (!so.pose_file.empty()) pose = load_pose(so.pose_file);
    pose.omega = so.omega;

    std::vector<double> grid(static_cast<std::size_t>(so.count));
    for (int i = 0; i < so.count; ++i) {
        double f = static_cast<double>(i) / (so.count - 1);
        grid[static_cast<std::size_t>(i)] =
            so.spacing == "log" ? std::exp(std::log(so.gmin) + f * (std::log(so.gmax) - std::log(so.gmin)))
                                : so.gmin + f * (so.gmax - so.gmin);
    }

    const bool sweep_delta = so.mode == "delta_sweep";
    std::vector<std::vector<SweepRow>> slots(grid.size());
    parallel_for(so.jobs, grid.size(), [&](std::size_t i) {
        const double mu = sweep_delta ? so.fixed : grid[i];
        const double delta = sweep_delta ? grid[i] : so.fixed;
        const double t0 = mu - delta / 2.0, t1 = mu + delta / 2.0;
        if (!(t0 > 0))
            throw Fail{3, "sweep point mu_t=" + fmt(mu) + " delta_i=" + fmt(delta) +
                              " leaves t_near non-positive"};

        const double dir[3] = {0, 0, 1};
        eipe_frustum* fp = nullptr;
        check(eipe_frustum_from_pose(pose.R.data(), pose.o.data(), pose.omega, dir, t0, t1, &fp),
              "sweep region");
        Region reg(fp);

        std::vector<double> ebuf(static_cast<std::size_t>(6 * octaves));
        eipe_guard_stats stats{};
        check(eipe_encode_exact(reg.f, octaves, 1, ebuf.data(), &stats), "exact encoding");

        const double d[3] = {pose.R[2], pose.R[5], pose.R[8]};
        double gmu[3], gsig[9];
        check(eipe_cone_gaussian(d, pose.o.data(), pose.omega, t0, t1, gmu, gsig), "cone moments");
        std::vector<double> ibuf(static_cast<std::size_t>(6 * octaves));
        check(eipe_encode_gaussian(gmu, gsig, octaves, ibuf.data()), "gaussian encoding");

        auto& rows = slots[i];
        rows.reserve(so.l_list.size() * 3);
        for (int l : so.l_list)
            for (int axis = 0; axis < 3; ++axis) {
                int si = sin_index(l, axis), ci = cos_index(l, axis, octaves);
                rows.push_back({mu, delta, l, axis, ebuf[static_cast<std::size_t>(si)],
                                ebuf[static_cast<std::size_t>(ci)], ibuf[static_cast<std::size_t>(si)],
                                ibuf[static_cast<std::size_t>(ci)],
                                stats.snapped[axis] > 0 ? 1 : 0});
            }
    });

    std::string llist;
    for (std::size_t i = 0; i < so.l_list.size(); ++i)
        llist += (i ? ";" : "") + std::to_string(so.l_list[i]);
    std::string out;
    emit_preamble(out, "sweep",
                  "mode=" + so.mode + " fixed=" + fmt(so.fixed) + " min=" + fmt(so.gmin) +
                      " max=" + fmt(so.gmax) + " count=" + std::to_string(so.count) +
                      " spacing=" + so.spacing + " L_list=" + llist + " omega=" + fmt(so.omega) +
                      " pose=" + (so.pose_file.empty() ? std::string("identity") : so.pose_file) +
                      " seed=" + std::to_string(so.seed));
    out +=
        "mu_t,delta_i,l,axis,eipe_sin,eipe_cos,ipe_sin,ipe_cos,abs_err_sin,abs_err_cos,"
        "underflow_flag\n";
    for (const auto& rows : slots)
        for (const SweepRow& r : rows) {
            out += fmt(r.mu) + "," + fmt(r.delta) + "," + std::to_string(r.l) + "," +
                   kAxisNames[r.axis] + "," + fmt(r.eipe_sin) + "," + fmt(r.eipe_cos) + "," +
                   fmt(r.ipe_sin) + "," + fmt(r.ipe_cos) + "," +
                   fmt(std::fabs(r.eipe_sin - r.ipe_sin)) + "," +
                   fmt(std::fabs(r.eipe_cos - r.ipe_cos)) + "," + std::to_string(r.underflow) +
                   "\n";
        }
    write_output(so.output, out);
}

// ---- underflow-scan ----------------------------------------------------

struct ScanOpts {
    int synthetic = 0;
    std::string kind = "degenerate";
    std::string verts_file;
    std::string guard = "on";
    bool contract = false;
    int octaves = 6;
    std::uint64_t seed = 123;
    int jobs = 1;
    std::string output;
};

struct Violation {
    int l, axis;
    char component;  // 's' or 'c'
    double value;
};

void run_scan(const ScanOpts& sc) {
    const int L = sc.octaves;
    const bool guard_on = sc.guard == "on";

    std::vector<std::vector<double>> file_recs;
    std::size_t n = 0;
    if (!sc.verts_file.empty()) {
        file_recs = read_records(sc.verts_file, 24);
        n = file_recs.size();
    } else {
        if (sc.synthetic < 0) throw Fail{3, "--synthetic must be non-negative"};
        n = static_cast<std::size_t>(sc.synthetic);
    }

    std::vector<std::vector<Violation>> viols(n);
    std::vector<std::uint64_t> acts(n, 0);
    parallel_for(sc.jobs, n, [&](std::size_t i) {
        std::string what = "region " + std::to_string(i);
        double v[24];
        if (!sc.verts_file.empty()) {
            std::copy_n(file_recs[i].begin(), 24, v);
        } else if (sc.kind == "random") {
            check(eipe_random_frustum(sc.seed, i, v), what);
        } else {
            check(eipe_degenerate_frustum(sc.seed, i, v), what);
        }
        Region reg = region_from_vertices(v, what);
        if (sc.contract) {
            eipe_frustum* c = nullptr;
            check(eipe_frustum_contract(reg.f, &c), what + " contraction");
            reg = Region(c);
        }
        std::vector<double> buf(static_cast<std::size_t>(6 * L));
        eipe_guard_stats stats{};
        check(eipe_encode_exact(reg.f, L, guard_on ? 1 : 0, buf.data(), &stats), what);
        acts[i] = static_cast<std::uint64_t>(stats.snapped[0]) + stats.snapped[1] + stats.snapped[2];
        for (int l = 0; l < L; ++l)
            for (int axis = 0; axis < 3; ++axis) {
                double s = buf[static_cast<std::size_t>(sin_index(l, axis))];
                double c = buf[static_cast<std::size_t>(cos_index(l, axis, L))];
                if (!std::isfinite(s) || std::fabs(s) > 1.0) viols[i].push_back({l, axis, 's', s});
                if (!std::isfinite(c) || std::fabs(c) > 1.0) viols[i].push_back({l, axis, 'c', c});
            }
    });

    std::uint64_t total_viols = 0, total_acts = 0;
    for (const auto& vv : viols) total_viols += vv.size();
    for (std::uint64_t a : acts) total_acts += a;

    std::string source = sc.verts_file.empty()
                             ? "synthetic=" + std::to_string(sc.synthetic) + " kind=" + sc.kind +
                                   " seed=" + std::to_string(sc.seed)
                             : "vertices=" + sc.verts_file;
    std::string out;
    emit_preamble(out, "underflow-scan",
                  source + " guard=" + sc.guard + " contract=" +
                      std::to_string(sc.contract ? 1 : 0) + " L=" + std::to_string(L));
    out += "region,l,axis,component,value\n";
    for (std::size_t i = 0; i < n; ++i)
        for (const Violation& vi : viols[i]) {
            out += std::to_string(i) + "," + std::to_string(vi.l) + "," + kAxisNames[vi.axis] +
                   "," + (vi.component == 's' ? "sin" : "cos") + "," + fmt(vi.value) + "\n";
        }
    out += "# regions=" + std::to_string(n) + "\n";
    out += "# violations=" + std::to_string(total_viols) + "\n";
    out += "# guard_activations=" + std::to_string(total_acts) + "\n";
    write_output(sc.output, out);

    if (guard_on && total_viols > 0)
        throw Fail{3, "guard-enabled encoding produced " + std::to_string(total_viols) +
                          " out-of-range components"};
}

// ---- oracle ------------------------------------------------------------

struct OracleOpts {
    double cube = 0;
    std::string pose_file, verts_file;
    double t0 = 0, t1 = 0;
    std::int64_t synthetic = 0;
    std::string kind = "random";
    std::uint64_t corpus_seed = 123;
    int octaves = 4;
    std::uint64_t n = 1000000;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string output;
    bool has_cube = false, has_pose = false, has_verts = false, has_synth = false, has_t0 = false,
         has_t1 = false;
};

void run_oracle(const OracleOpts& oo) {
    if (oo.has_pose && (!oo.has_t0 || !oo.has_t1))
        throw Fail{2, "--pose-file requires --t0 and --t1"};

    Region reg;
    std::string source;
    if (oo.has_cube) {
        if (!std::isfinite(oo.cube) || !(oo.cube > 0))
            throw Fail{3, "--cube needs a positive finite half-side"};
        const double a = oo.cube;
        const double v[24] = {a, a, -a, a, -a, -a, -a, -a, -a, -a, a, -a,
                              a, a, a,  a, -a, a,  -a, -a, a,  -a, a, a};
        reg = region_from_vertices(v, "cube region");
        source = "cube=" + fmt(a);
    } else if (oo.has_pose) {
        Pose pose = load_pose(oo.pose_file);
        const double dir[3] = {0, 0, 1};
        eipe_frustum* f = nullptr;
        check(eipe_frustum_from_pose(pose.R.data(), pose.o.data(), pose.omega, dir, oo.t0, oo.t1,
                                     &f),
              "pose region");
        reg = Region(f);
        source = "pose=" + oo.pose_file + " t0=" + fmt(oo.t0) + " t1=" + fmt(oo.t1);
    } else if (oo.has_verts) {
        auto recs = read_records(oo.verts_file, 24);
        if (recs.empty()) throw Fail{2, oo.verts_file + ": no vertex record"};
        reg = region_from_vertices(recs.front().data(), "vertex region");
        source = "vertices=" + oo.verts_file;
    } else {
        if (oo.synthetic < 0) throw Fail{3, "--synthetic must be non-negative"};
        double v[24];
        auto idx = static_cast<std::uint64_t>(oo.synthetic);
        check(oo.kind == "degenerate" ? eipe_degenerate_frustum(oo.corpus_seed, idx, v)
                                      : eipe_random_frustum(oo.corpus_seed, idx, v),
              "synthetic region");
        reg = region_from_vertices(v, "synthetic region");
        source = "synthetic=" + std::to_string(oo.synthetic) + " kind=" + oo.kind +
                 " corpus_seed=" + std::to_string(oo.corpus_seed);
    }

    const int L = oo.octaves;
    std::vector<double> mean(static_cast<std::size_t>(6 * L)), se(static_cast<std::size_t>(6 * L));
    check(eipe_mc_encoding(reg.f, L, oo.n, oo.seed, oo.jobs, mean.data(), se.data()),
          "monte-carlo encoding");

    std::string out;
    emit_preamble(out, "oracle",
                  source + " L=" + std::to_string(L) + " n=" + std::to_string(oo.n) +
                      " seed=" + std::to_string(oo.seed));
    out += "l,axis,component,mean,std_error\n";
    for (int l = 0; l < L; ++l)
        for (int axis = 0; axis < 3; ++axis) {
            int si = sin_index(l, axis), ci = cos_index(l, axis, L);
            std::string prefix = std::to_string(l) + "," + kAxisNames[axis] + ",";
            out += prefix + "sin," + fmt(mean[static_cast<std::size_t>(si)]) + "," +
                   fmt(se[static_cast<std::size_t>(si)]) + "\n";
            out += prefix + "cos," + fmt(mean[static_cast<std::size_t>(ci)]) + "," +
                   fmt(se[static_cast<std::size_t>(ci)]) + "\n";
        }
    write_output(oo.output, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integrated positional encoding toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    EncodeOpts eo;
    CLI::App* enc = app.add_subcommand("encode", "Encode a single region to CSV")->configurable();
    {
        auto* src = enc->add_option_group("region", "Region source (exactly one)");
        auto* o_cube = src->add_option("--cube", eo.cube, "Axis-aligned cube [-a, a]^3, half-side a");
        auto* o_pose =
            src->add_option("--pose-file", eo.pose_file, "Pose record file (13 numbers per line)");
        auto* o_verts = src->add_option("--vertices-file", eo.verts_file,
                                        "Region vertex file (24 numbers per line)");
        src->require_option(1);
        auto* o_t0 = enc->add_option("--t0", eo.t0, "Near distance along the ray")->needs(o_pose);
        auto* o_t1 = enc->add_option("--t1", eo.t1, "Far distance along the ray")->needs(o_pose);
        enc->add_option("--encoder", eo.encoder, "pe | ipe | eipe | square_pyramid")
            ->check(CLI::IsMember({"pe", "ipe", "eipe", "square_pyramid"}));
        enc->add_option("--L", eo.octaves, "Number of octaves")->check(CLI::Range(1, 62));
        enc->add_flag("--contract", eo.contract, "Apply the scene contraction first");
        enc->add_flag("--narrow", eo.narrow, "Emit float32-narrowed values");
        enc->add_option("--guard", eo.guard, "Degeneracy guard (exact encoder only)")
            ->check(CLI::IsMember({"on", "off"}));
        enc->add_option("--output", eo.output, "Output file (default: standard output)");
        enc->add_option("--jobs", eo.jobs, "Accepted for interface parity; encode is single-region")
            ->check(CLI::Range(1, 64));
        enc->final_callback([&eo, o_cube, o_pose, o_verts, o_t0, o_t1] {
            eo.has_cube = o_cube->count() > 0;
            eo.has_pose = o_pose->count() > 0;
            eo.has_verts = o_verts->count() > 0;
            eo.has_t0 = o_t0->count() > 0;
            eo.has_t1 = o_t1->count() > 0;
        });
    }

    SweepOpts so;
    CLI::App* swp = app.add_subcommand("sweep", "Exact-vs-Gaussian error sweep to CSV")->configurable();
    {
        swp->add_option("--mode", so.mode, "mu_sweep | delta_sweep | small_frustum")
            ->required()
            ->check(CLI::IsMember({"mu_sweep", "delta_sweep", "small_frustum"}));
        auto* o_fixed = swp->add_option(
            "--fixed", so.fixed,
            "Held-fixed parameter: frustum length for mu sweeps, midpoint distance for delta "
            "sweeps (mode default otherwise)");
        auto* o_min = swp->add_option("--min", so.gmin, "Sweep grid minimum (mode default)");
        auto* o_max = swp->add_option("--max", so.gmax, "Sweep grid maximum (mode default)");
        auto* o_count = swp->add_option("--count", so.count, "Sweep grid size (mode default)");
        auto* o_spacing = swp->add_option("--spacing", so.spacing, "linear | log (mode default)")
                              ->check(CLI::IsMember({"linear", "log"}));
        swp->add_option("--L-list", so.l_list, "Octaves to emit (default 1..5)")->delimiter(',');
        swp->add_option("--pose-file", so.pose_file,
                        "Pose record file (default: identity pose at the origin)");
        swp->add_option("--omega", so.omega, "Pixel side at unit distance");
        swp->add_option("--seed", so.seed, "Echoed into the config comment");
        swp->add_option("--jobs", so.jobs, "Worker threads over grid points")
            ->check(CLI::Range(1, 64));
        swp->add_option("--output", so.output, "Output file (default: standard output)");
        swp->final_callback([&so, o_fixed, o_min, o_max, o_count, o_spacing] {
            so.has_fixed = o_fixed->count() > 0;
            so.has_min = o_min->count() > 0;
            so.has_max = o_max->count() > 0;
            so.has_count = o_count->count() > 0;
            so.has_spacing = o_spacing->count() > 0;
        });
    }

    ScanOpts sc;
    CLI::App* scn = app.add_subcommand("underflow-scan",
                                       "Report encoding components outside [-1, 1]")->configurable();
    {
        auto* src = scn->add_option_group("regions", "Region set source (at most one)");
        src->add_option("--synthetic", sc.synthetic, "Number of generated regions");
        src->add_option("--vertices-file", sc.verts_file,
                        "Region vertex file (24 numbers per line)");
        src->require_option(0, 1);
        scn->add_option("--kind", sc.kind, "Generated corpus: degenerate | random")
            ->check(CLI::IsMember({"degenerate", "random"}));
        scn->add_option("--seed", sc.seed, "Corpus seed");
        scn->add_option("--guard", sc.guard, "Degeneracy guard")
            ->check(CLI::IsMember({"on", "off"}));
        scn->add_flag("--contract", sc.contract, "Apply the scene contraction to each region");
        scn->add_option("--L", sc.octaves, "Number of octaves")->check(CLI::Range(1, 62));
        scn->add_option("--jobs", sc.jobs, "Worker threads over regions")->check(CLI::Range(1, 64));
        scn->add_option("--output", sc.output, "Output file (default: standard output)");
    }

    OracleOpts oo;
    CLI::App* orc = app.add_subcommand("oracle", "Monte-Carlo reference encoding to CSV")->configurable();
    {
        auto* src = orc->add_option_group("region", "Region source (exactly one)");
        auto* o_cube = src->add_option("--cube", oo.cube, "Axis-aligned cube [-a, a]^3, half-side a");
        auto* o_pose =
            src->add_option("--pose-file", oo.pose_file, "Pose record file (13 numbers per line)");
        auto* o_verts = src->add_option("--vertices-file", oo.verts_file,
                                        "Region vertex file (24 numbers per line)");
        auto* o_synth = src->add_option("--synthetic", oo.synthetic, "Generated corpus index");
        src->require_option(1);
        auto* o_t0 = orc->add_option("--t0", oo.t0, "Near distance along the ray")->needs(o_pose);
        auto* o_t1 = orc->add_option("--t1", oo.t1, "Far distance along the ray")->needs(o_pose);
        orc->add_option("--kind", oo.kind, "Generated corpus: degenerate | random")
            ->check(CLI::IsMember({"degenerate", "random"}));
        orc->add_option("--corpus-seed", oo.corpus_seed, "Corpus seed");
        orc->add_option("--L", oo.octaves, "Number of octaves")->check(CLI::Range(1, 62));
        orc->add_option("--n", oo.n, "Sample count");
        orc->add_option("--seed", oo.seed, "Sampling seed");
        orc->add_option("--jobs", oo.jobs, "Worker threads over sample blocks")
            ->check(CLI::Range(1, 64));
        orc->add_option("--output", oo.output, "Output file (default: standard output)");
        orc->final_callback([&oo, o_cube, o_pose, o_verts, o_synth, o_t0, o_t1] {
            oo.has_cube = o_cube->count() > 0;
            oo.has_pose = o_pose->count() > 0;
            oo.has_verts = o_verts->count() > 0;
            oo.has_synth = o_synth->count() > 0;
            oo.has_t0 = o_t0->count() > 0;
            oo.has_t1 = o_t1->count() > 0;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (enc->parsed()) run_encode(eo);
        else if (swp->parsed()) run_sweep(so);
        else if (scn->parsed()) run_scan(sc);
        else run_oracle(oo);
    } catch (const Fail& f) {
        std::fprintf(stderr, "eipe: %s\n", f.msg.c_str());
        return f.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "eipe: %s\n", e.what());
        return 3;
    }
    return 0;
}
