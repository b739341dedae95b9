#include "uhyp/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "uhyp/errors.hpp"
#include "uhyp/oracle.hpp"
#include "uhyp/spectral.hpp"

namespace uhyp {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> tokens(const std::string& value) {
    std::string v = value;
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream ss(v);
    std::vector<std::string> out;
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

double to_double(const std::string& tok, int line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw ConfigError("expected a number, got '" + tok + "'", line);
    }
    return v;
}

long long to_integer(const std::string& tok, int line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ConfigError("expected an integer, got '" + tok + "'", line);
    }
    return v;
}

std::vector<double> doubles(const std::string& value, int line) {
    std::vector<double> out;
    for (const auto& t : tokens(value)) out.push_back(to_double(t, line));
    if (out.empty()) throw ConfigError("missing value", line);
    return out;
}

std::vector<int> integers(const std::string& value, int line) {
    std::vector<int> out;
    for (const auto& t : tokens(value)) out.push_back(static_cast<int>(to_integer(t, line)));
    if (out.empty()) throw ConfigError("missing value", line);
    return out;
}

double one_double(const std::string& value, int line) {
    const auto v = doubles(value, line);
    if (v.size() != 1) throw ConfigError("expected a single number", line);
    return v.front();
}

int one_int(const std::string& value, int line) {
    const auto v = integers(value, line);
    if (v.size() != 1) throw ConfigError("expected a single integer", line);
    return v.front();
}

bool boolean(const std::string& value, int line) {
    if (value == "true" || value == "yes" || value == "on" || value == "1") return true;
    if (value == "false" || value == "no" || value == "off" || value == "0") return false;
    throw ConfigError("expected true or false, got '" + value + "'", line);
}

Complex complex_value(const std::string& value, int line) {
    const auto v = doubles(value, line);
    if (v.size() > 2) throw ConfigError("amplitude takes 're' or 're im'", line);
    return {v[0], v.size() == 2 ? v[1] : 0.0};
}

struct PacketDraft {
    int line = 0;
    GaussianPacket packet;
    std::map<std::string, int> key_lines;
};

struct ModeDraft {
    int line = 0;
    ModeData mode;
    int index_line = 0;
};

// Broadcasts a scalar to every axis, or checks a per-axis list.
std::vector<double> per_axis(std::vector<double> v, int axes, int line, const std::string& key) {
    if (v.size() == 1) return std::vector<double>(axes, v.front());
    if (static_cast<int>(v.size()) != axes) {
        throw ConfigError(key + " needs 1 or " + std::to_string(axes) + " values", line);
    }
    return v;
}

}  // namespace

Field RunConfig::initial_field() const {
    if (!mode) return sample(data, grid);
    const FrequencyGrid fg(grid);
    oracle::PlaneWave pw;
    pw.lambda = fg.frequency(0, fg.zero_index(0) + mode->index[0]);
    for (int a = 1; a <= grid.d; ++a) pw.xi.push_back(fg.frequency(a, fg.zero_index(a) + mode->index[a]));
    for (int a = 1 + grid.d; a < grid.axes(); ++a) {
        pw.eta.push_back(fg.frequency(a, fg.zero_index(a) + mode->index[a]));
    }
    Field f = oracle::plane_wave_field(pw, grid, 0.0);
    for (Complex& z : f.values) z *= mode->amplitude;
    return f;
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    cfg.source = std::string(text);
    cfg.verify.cross_times = {0.0, 1.0};

    std::string section;
    std::map<std::string, int> seen_sections;
    std::map<std::string, int> grid_lines;
    std::vector<double> extent_raw;
    std::vector<int> points_raw;
    std::vector<PacketDraft> packets;
    std::optional<ModeDraft> mode;

    using Setter = std::function<void(const std::string&, int)>;
    std::map<std::string, std::map<std::string, Setter>> keys;
    keys["grid"] = {
        {"d", [&](const std::string& v, int l) { cfg.grid.d = one_int(v, l); }},
        {"n", [&](const std::string& v, int l) { cfg.grid.n = one_int(v, l); }},
        {"extent", [&](const std::string& v, int l) { extent_raw = doubles(v, l); }},
        {"points", [&](const std::string& v, int l) { points_raw = integers(v, l); }},
    };
    keys["packet"] = {
        {"amplitude", [&](const std::string& v, int l) { packets.back().packet.amplitude = complex_value(v, l); }},
        {"center", [&](const std::string& v, int l) { packets.back().packet.center = doubles(v, l); }},
        {"width", [&](const std::string& v, int l) { packets.back().packet.width = doubles(v, l); }},
        {"carrier", [&](const std::string& v, int l) { packets.back().packet.carrier = doubles(v, l); }},
    };
    keys["mode"] = {
        {"index",
         [&](const std::string& v, int l) {
             mode->mode.index = integers(v, l);
             mode->index_line = l;
         }},
        {"amplitude", [&](const std::string& v, int l) { mode->mode.amplitude = complex_value(v, l); }},
    };
    keys["run"] = {
        {"times", [&](const std::string& v, int l) { cfg.times = doubles(v, l); }},
    };
    keys["policy"] = {
        {"zero_plane",
         [&](const std::string& v, int l) {
             if (v == "zero-out") {
                 cfg.policy.rule = ZeroPlaneRule::zero_out;
             } else if (v == "reject") {
                 cfg.policy.rule = ZeroPlaneRule::reject;
             } else {
                 throw ConfigError("zero_plane must be zero-out or reject", l);
             }
         }},
        {"threshold", [&](const std::string& v, int l) { cfg.policy.threshold = one_double(v, l); }},
    };
    keys["output"] = {
        {"directory", [&](const std::string& v, int) { cfg.output.directory = v; }},
        {"format",
         [&](const std::string& v, int l) {
             if (v == "bin") {
                 cfg.output.binary = true;
                 cfg.output.csv = false;
             } else if (v == "csv") {
                 cfg.output.binary = false;
                 cfg.output.csv = true;
             } else if (v == "both") {
                 cfg.output.binary = cfg.output.csv = true;
             } else {
                 throw ConfigError("format must be bin, csv or both", l);
             }
         }},
        {"diagnostics", [&](const std::string& v, int l) { cfg.output.diagnostics = boolean(v, l); }},
    };
    VerifySettings& vs = cfg.verify;
    keys["verify"] = {
        {"sphere_radial_panels", [&](const std::string& v, int l) { vs.spherical.radial_panels = one_int(v, l); }},
        {"sphere_radial_order", [&](const std::string& v, int l) { vs.spherical.radial_order = one_int(v, l); }},
        {"sphere_nodes", [&](const std::string& v, int l) { vs.spherical.sphere_nodes = one_int(v, l); }},
        {"lambda_panels", [&](const std::string& v, int l) { vs.parametrized.lambda_panels = one_int(v, l); }},
        {"transverse_panels",
         [&](const std::string& v, int l) { vs.parametrized.transverse_panels = one_int(v, l); }},
        {"parametrized_order", [&](const std::string& v, int l) { vs.parametrized.order = one_int(v, l); }},
        {"direction_nodes", [&](const std::string& v, int l) { vs.parametrized.direction_nodes = one_int(v, l); }},
        {"identity_tolerance", [&](const std::string& v, int l) { vs.identity_tolerance = one_double(v, l); }},
        {"identity_refine", [&](const std::string& v, int l) { vs.identity_refine = boolean(v, l); }},
        {"mismatched_resolution", [&](const std::string& v, int l) { vs.mismatched_resolution = boolean(v, l); }},
        {"cross_points", [&](const std::string& v, int l) { vs.cross_points = one_int(v, l); }},
        {"cross_times", [&](const std::string& v, int l) { vs.cross_times = doubles(v, l); }},
        {"cross_tolerance_initial",
         [&](const std::string& v, int l) { vs.cross_tolerance_initial = one_double(v, l); }},
        {"cross_tolerance", [&](const std::string& v, int l) { vs.cross_tolerance = one_double(v, l); }},
        {"seed",
         [&](const std::string& v, int l) {
             const long long s = to_integer(trim(v), l);
             if (s < 0) throw ConfigError("seed must be non-negative", l);
             vs.seed = static_cast<std::uint64_t>(s);
         }},
        {"conservation_tolerance",
         [&](const std::string& v, int l) { vs.conservation_tolerance = one_double(v, l); }},
        {"residual_tolerance", [&](const std::string& v, int l) { vs.residual_tolerance = one_double(v, l); }},
        {"order_target", [&](const std::string& v, int l) { vs.order_target = one_double(v, l); }},
        {"order_tolerance", [&](const std::string& v, int l) { vs.order_tolerance = one_double(v, l); }},
    };

    std::map<std::string, std::map<std::string, int>> assigned;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!keys.count(section)) throw ConfigError("unknown section [" + section + "]", line_no);
            if (section == "packet") {
                packets.push_back({line_no, {}, {}});
            } else {
                if (seen_sections.count(section)) {
                    throw ConfigError("section [" + section + "] appears twice", line_no);
                }
                if (section == "mode") mode = ModeDraft{line_no, {}, 0};
            }
            seen_sections[section] = line_no;
            if (section != "packet") assigned[section].clear();
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
        if (section.empty()) throw ConfigError("key outside of any section", line_no);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const auto& table = keys[section];
        const auto it = table.find(key);
        if (it == table.end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]", line_no);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no);
        auto& done = section == "packet" ? packets.back().key_lines : assigned[section];
        if (done.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
        done[key] = line_no;
        if (section == "grid") grid_lines[key] = line_no;
        it->second(value, line_no);
    }

    // [grid]
    if (!seen_sections.count("grid")) throw ConfigError("missing [grid] section", 0);
    const int grid_line = seen_sections["grid"];
    if (points_raw.empty()) throw ConfigError("[grid] is missing 'points'", grid_line);
    if (extent_raw.empty()) throw ConfigError("[grid] is missing 'extent'", grid_line);
    if (cfg.grid.d < 1 || cfg.grid.n < 1) {
        throw ConfigError("d and n must be at least 1", grid_lines.count("d") ? grid_lines["d"] : grid_line);
    }
    const int axes = cfg.grid.axes();
    cfg.grid.extent = per_axis(extent_raw, axes, grid_lines["extent"], "extent");
    {
        std::vector<double> pts(points_raw.begin(), points_raw.end());
        pts = per_axis(pts, axes, grid_lines["points"], "points");
        cfg.grid.points.assign(pts.begin(), pts.end());
    }
    try {
        cfg.grid.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what(), grid_line);
    }

    // data
    if (mode && !packets.empty()) throw ConfigError("[mode] and [packet] cannot be combined", mode->line);
    cfg.data.d = cfg.grid.d;
    cfg.data.n = cfg.grid.n;
    for (auto& p : packets) {
        GaussianPacket& g = p.packet;
        if (g.carrier.empty()) throw ConfigError("[packet] is missing 'carrier'", p.line);
        const auto fill = [&](std::vector<double>& v, const std::string& key, double fallback) {
            if (v.empty()) {
                v.assign(axes, fallback);
            } else {
                v = per_axis(v, axes, p.key_lines[key], key);
            }
        };
        fill(g.center, "center", 0.0);
        fill(g.width, "width", 1.0);
        fill(g.carrier, "carrier", 0.0);
        cfg.data.terms.push_back(g);
    }
    try {
        cfg.data.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what(), packets.empty() ? 0 : packets.front().line);
    }
    if (mode) {
        ModeData& m = mode->mode;
        const int l = mode->index_line ? mode->index_line : mode->line;
        if (static_cast<int>(m.index.size()) != axes) {
            throw ConfigError("[mode] index needs one offset per axis", l);
        }
        for (int a = 0; a < axes; ++a) {
            const int half = cfg.grid.points[a] / 2;
            if (m.index[a] < -half || m.index[a] >= half) {
                throw ConfigError("[mode] index out of range on axis " + std::to_string(a), l);
            }
        }
        if (m.index[0] == 0) throw ConfigError("[mode] lies on the lambda = 0 plane", l);
        cfg.mode = m;
    }

    // [run], [policy], [verify]
    const int run_line = seen_sections.count("run") ? seen_sections["run"] : 0;
    for (std::size_t k = 1; k < cfg.times.size(); ++k) {
        if (!(cfg.times[k] > cfg.times[k - 1])) throw ConfigError("times must be strictly increasing", run_line);
    }
    try {
        cfg.policy.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what(), seen_sections.count("policy") ? seen_sections["policy"] : 0);
    }
    const int verify_line = seen_sections.count("verify") ? seen_sections["verify"] : 0;
    if (vs.cross_points < 0) throw ConfigError("cross_points must be non-negative", verify_line);
    if (vs.spherical.radial_panels < 1 || vs.spherical.radial_order < 1 || vs.spherical.sphere_nodes < 2 ||
        vs.parametrized.lambda_panels < 1 || vs.parametrized.transverse_panels < 1 ||
        vs.parametrized.order < 1 || vs.parametrized.direction_nodes < 2) {
        throw ConfigError("quadrature resolutions must be positive", verify_line);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + path.string(), 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace uhyp
