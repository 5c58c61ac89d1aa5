#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "svg.hpp"

namespace envelopes::cli {

using nlohmann::json;

namespace {

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

const std::vector<std::string> kCommands{"envelope", "numrange", "line", "horocycle", "oracle-compare", "parse-check"};
const std::vector<std::string> kPresets{"tprime", "line", "horocycle"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

void check_keys(const json& obj, const char* section, const std::vector<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(std::string("config section '") + section + "' must be an object");
    for (const auto& [key, value] : obj.items())
        if (!contains(allowed, key)) throw ConfigError(std::string("unknown key '") + key + "' in " + section);
}

Matrix2 matrix_from_values(const std::vector<double>& v) {
    if (v.size() != 8) throw ConfigError("matrix needs 8 numbers: re/im of a11, a12, a21, a22");
    return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}};
}

std::pair<std::string, double> parse_binding(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("constant binding must look like name=value: " + s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s.substr(eq + 1), &used);
    } catch (const std::exception&) {
        throw ConfigError("constant binding has no numeric value: " + s);
    }
    if (used != s.size() - eq - 1) throw ConfigError("constant binding has trailing text: " + s);
    return {s.substr(0, eq), v};
}

// --- number formatting ------------------------------------------------------

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << text;
    if (!f) throw IoError("write failed for " + path);
}

// --- families -----------------------------------------------------------------

CircleFamily build_family(const RunConfig& cfg) {
    if (cfg.custom) {
        const CustomFamily& c = *cfg.custom;
        return make_family(c.x_c, c.y_c, c.r, c.s1, c.s2, c.constants);
    }
    if (cfg.preset == "tprime") return tprime_family(cfg.m);
    if (cfg.preset == "line") return line_family(cfg.r);
    if (cfg.preset == "horocycle") return horocycle_family(cfg.r, cfg.k);
    throw ConfigError("no family given: use a preset or a custom family");
}

BBox family_extent(const CircleFamily& f, double pad) {
    BBox b{INFINITY, -INFINITY, INFINITY, -INFINITY};
    for (int i = 0; i <= 400; ++i) {
        const double t = i == 400 ? f.s2() : f.s1() + (f.s2() - f.s1()) * i / 400.0;
        const Circle c = f.circle(t);
        b.x_min = std::min(b.x_min, c.center.x - c.radius);
        b.x_max = std::max(b.x_max, c.center.x + c.radius);
        b.y_min = std::min(b.y_min, c.center.y - c.radius);
        b.y_max = std::max(b.y_max, c.center.y + c.radius);
    }
    const double m = pad * std::max({b.width(), b.height(), 1e-6});
    return {b.x_min - m, b.x_max + m, b.y_min - m, b.y_max + m};
}

BBox default_oracle_box(const RunConfig& cfg, const CircleFamily& f) {
    if (cfg.bbox) return *cfg.bbox;
    if (!cfg.custom) {
        if (cfg.preset == "line") return {-1.3, 1.3, -1.3, 1.3};
        if (cfg.preset == "horocycle") return {-0.6, 1.1, -0.85, 0.85};
        if (cfg.preset == "tprime") return {-0.3, 1.3, -0.3 - 0.5 * cfg.m, 0.3 + 0.5 * cfg.m};
    }
    return family_extent(f, 0.1);
}

void draw_family(SvgCanvas& svg, const CircleFamily& f, int count) {
    for (int i = 0; i < count; ++i) {
        const double t = f.s1() + (f.s2() - f.s1()) * (i + 0.5) / count;
        svg.circle(f.circle(t), "#9bb", 0.6);
    }
}

std::vector<Point2> circle_points(const Circle& c, int n) {
    std::vector<Point2> pts;
    for (int i = 0; i <= n; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / n;
        pts.push_back({c.center.x + c.radius * std::cos(phi), c.center.y + c.radius * std::sin(phi)});
    }
    return pts;
}

// --- commands -----------------------------------------------------------------

int cmd_envelope(const RunConfig& cfg, std::ostream& out) {
    const CircleFamily f = build_family(cfg);
    std::string csv = "t,x1,y1,x2,y2\n";
    std::vector<Point2> branch1, branch2;
    for (int i = 0; i < cfg.rows; ++i) {
        const double t = f.s1() + (f.s2() - f.s1()) * (i + 0.5) / cfg.rows;
        const DiscriminantSolution sol = discriminant_envelope(f, t);
        csv += g17(t);
        if (sol.kind == EnvelopeKind::Pair || sol.kind == EnvelopeKind::Single) {
            csv += "," + g17(sol.points[0].x) + "," + g17(sol.points[0].y);
            branch1.push_back(sol.points[0]);
        } else {
            csv += ",,";
        }
        if (sol.kind == EnvelopeKind::Pair) {
            csv += "," + g17(sol.points[1].x) + "," + g17(sol.points[1].y);
            branch2.push_back(sol.points[1]);
        } else {
            csv += ",,";
        }
        csv += '\n';
    }
    write_text(cfg.out, csv, out);
    if (!cfg.svg.empty()) {
        SvgCanvas svg(family_extent(f, 0.05));
        draw_family(svg, f, 40);
        svg.polyline(branch1, "#c22");
        svg.polyline(branch2, "#22c");
        svg.save(cfg.svg);
    }
    return kExitOk;
}

int cmd_numrange(const RunConfig& cfg, std::ostream& out) {
    const Matrix2 a = cfg.matrix ? *cfg.matrix : tprime_matrix(cfg.m);
    const SchurForm schur = schur_parameters(a);
    const NumericalRangeShape shape = ert_shape(a);
    const int samples = cfg.rows * 100;
    const std::vector<Point2> cloud = sample_numerical_range(a, samples, cfg.seed);
    double worst = -INFINITY;
    for (const Point2& p : cloud) worst = std::max(worst, shape_value(shape, {p.x, p.y}));

    std::string csv = "metric,value\n";
    auto row = [&csv](const std::string& k, const std::string& v) { csv += k + "," + v + "\n"; };
    row("eigenvalue_a_re", g17(schur.a.real()));
    row("eigenvalue_a_im", g17(schur.a.imag()));
    row("eigenvalue_b_re", g17(schur.b.real()));
    row("eigenvalue_b_im", g17(schur.b.imag()));
    row("p", g17(schur.p));
    row("m", schur.m ? g17(*schur.m) : "");
    if (const auto* pt = std::get_if<shape::Point>(&shape)) {
        row("shape", "point");
        row("center_x", g17(pt->z.real()));
        row("center_y", g17(pt->z.imag()));
    } else if (const auto* seg = std::get_if<shape::Segment>(&shape)) {
        row("shape", "segment");
        row("from_x", g17(seg->from.real()));
        row("from_y", g17(seg->from.imag()));
        row("to_x", g17(seg->to.real()));
        row("to_y", g17(seg->to.imag()));
    } else {
        const auto& e = std::get<shape::Ellipse>(shape);
        row("shape", "ellipse");
        row("center_x", g17(e.center().real()));
        row("center_y", g17(e.center().imag()));
        row("semi_major", g17(e.semi_major()));
        row("semi_minor", g17(e.semi_minor()));
        row("angle", g17(e.angle()));
    }
    row("samples", std::to_string(samples));
    row("seed", std::to_string(cfg.seed));
    row("max_shape_value", g17(worst));
    write_text(cfg.out, csv, out);

    if (!cfg.svg.empty()) {
        const std::vector<Point2> outline = shape_boundary(shape, 720);
        BBox box{INFINITY, -INFINITY, INFINITY, -INFINITY};
        for (const Point2& p : outline) {
            box.x_min = std::min(box.x_min, p.x);
            box.x_max = std::max(box.x_max, p.x);
            box.y_min = std::min(box.y_min, p.y);
            box.y_max = std::max(box.y_max, p.y);
        }
        const double pad = 0.1 * std::max({box.width(), box.height(), 1e-3});
        SvgCanvas svg({box.x_min - pad, box.x_max + pad, box.y_min - pad, box.y_max + pad});
        std::vector<Point2> shown;
        for (std::size_t i = 0; i < cloud.size() && shown.size() < 4000; i += std::max<std::size_t>(1, cloud.size() / 4000))
            shown.push_back(cloud[i]);
        svg.dots(shown, "#48a", 0.8);
        std::vector<Point2> closed = outline;
        if (std::holds_alternative<shape::Ellipse>(shape)) closed.push_back(outline.front());
        svg.polyline(closed, "#c22");
        svg.save(cfg.svg);
    }
    return kExitOk;
}

std::string circle_rows(const std::vector<std::pair<std::string, Circle>>& circles) {
    std::string csv = "name,cx,cy,radius\n";
    for (const auto& [name, c] : circles)
        csv += name + "," + g17(c.center.x) + "," + g17(c.center.y) + "," + g17(c.radius) + "\n";
    return csv;
}

int cmd_line(const RunConfig& cfg, std::ostream& out) {
    const LineBoundarySpec spec = line_boundary(cfg.r);
    write_text(cfg.out, circle_rows({{"D1", spec.d1}, {"D2", spec.d2}}), out);
    if (!cfg.svg.empty()) {
        const CircleFamily f = line_family(cfg.r);
        SvgCanvas svg({-1.3, 1.3, -1.3, 1.3});
        draw_family(svg, f, 40);
        const std::vector<Point2> pts = line_boundary_samples(cfg.r, 800);
        std::vector<Point2> upper, lower;
        for (std::size_t i = 0; i < pts.size(); i += 2) {
            upper.push_back(pts[i]);
            lower.push_back(pts[i + 1]);
        }
        svg.polyline(upper, "#c22");
        svg.polyline(lower, "#22c");
        svg.save(cfg.svg);
    }
    return kExitOk;
}

int cmd_horocycle(const RunConfig& cfg, std::ostream& out) {
    const HorocycleBoundarySpec spec = horocycle_boundary(cfg.r, cfg.k);
    write_text(cfg.out, circle_rows({{"D1", spec.d1}, {"D2", spec.d2}}), out);
    if (!cfg.svg.empty()) {
        const CircleFamily f = horocycle_family(cfg.r, cfg.k);
        SvgCanvas svg(family_extent(f, 0.05));
        draw_family(svg, f, 48);
        svg.polyline(circle_points(spec.d1, 720), "#c22");
        svg.polyline(circle_points(spec.d2, 720), "#22c");
        svg.save(cfg.svg);
    }
    return kExitOk;
}

std::vector<Point2> reference_boundary(const RunConfig& cfg, const CircleFamily& f) {
    constexpr int kPoints = 4000;
    if (!cfg.custom) {
        if (cfg.preset == "line") return line_boundary_samples(cfg.r, kPoints);
        if (cfg.preset == "horocycle") return horocycle_boundary_samples(cfg.r, cfg.k, kPoints);
        if (cfg.preset == "tprime") {
            const EllipseSpec e = tprime_ellipse(cfg.m);
            std::vector<Point2> pts;
            for (int i = 0; i < kPoints; ++i) {
                const double phi = 2.0 * std::numbers::pi * i / kPoints;
                pts.push_back({e.center.x + e.semi_major * std::cos(phi), e.center.y + e.semi_minor * std::sin(phi)});
            }
            return pts;
        }
    }
    // Candidates from the boundary theorem: envelope points plus the two end circles.
    // Cosine spacing on each support interval: branches meet with dp/dt ~ 1/sqrt(t - t0) at the ends.
    std::vector<Point2> candidates;
    for (const Interval& iv : envelope_support(f)) {
        for (int i = 0; i <= kPoints; ++i) {
            const double u = 0.5 * (1.0 - std::cos(std::numbers::pi * i / kPoints));
            const double t = std::clamp(iv.lo + (iv.hi - iv.lo) * u, f.s1(), f.s2());
            for (const Point2& p : discriminant_envelope(f, t).points) candidates.push_back(p);
        }
    }
    for (const double t : {f.s1(), f.s2()}) {
        const std::vector<Point2> ring = circle_points(f.circle(t), kPoints / 2);
        candidates.insert(candidates.end(), ring.begin(), ring.end() - 1);
    }
    std::vector<Point2> kept = boundary_filter(f, candidates, 1e-9);
    if (kept.empty()) throw ConsistencyError("no boundary candidates survived the filter");
    return kept;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
    const CircleFamily f = build_family(cfg);
    const BBox box = default_oracle_box(cfg, f);
    const OracleGrid g = rasterize_union(f, box, cfg.n, cfg.t_samples);
    const std::vector<Point2> cells = extract_boundary(g);
    const std::vector<Point2> reference = reference_boundary(cfg, f);
    const double forward = directed_hausdorff(cells, reference);
    const double backward = directed_hausdorff(reference, cells);
    const double h = std::max(forward, backward);

    std::string csv = "metric,value\n";
    auto row = [&csv](const std::string& k, const std::string& v) { csv += k + "," + v + "\n"; };
    row("hausdorff", g17(h));
    row("cells_to_reference", g17(forward));
    row("reference_to_cells", g17(backward));
    row("cell_size", g17(g.cell_size));
    row("n", std::to_string(g.n));
    row("t_samples", std::to_string(cfg.t_samples));
    row("occupied_cells", std::to_string(g.occupied_count()));
    row("boundary_cells", std::to_string(cells.size()));
    row("reference_points", std::to_string(reference.size()));
    row("within_two_cells", h <= 2.0 * g.cell_size ? "1" : "0");
    write_text(cfg.out, csv, out);

    if (!cfg.svg.empty()) {
        SvgCanvas svg(box);
        std::vector<Point2> shown;
        const std::size_t stride = std::max<std::size_t>(1, cells.size() / 20000);
        for (std::size_t i = 0; i < cells.size(); i += stride) shown.push_back(cells[i]);
        svg.dots(shown, "#888", 0.7);
        svg.dots(reference, "#c22", 0.9);
        svg.save(cfg.svg);
    }
    return kExitOk;
}

int cmd_parse_check(const RunConfig& cfg, std::ostream& out) {
    if (cfg.expression.empty()) throw ConfigError("parse-check needs an expression (--expr)");
    const Expr e = parse(cfg.expression);
    const Expr d = differentiate(e);
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (const char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::string csv = "field,value\n";
    csv += "expression," + quote(cfg.expression) + "\n";
    csv += "tree," + quote(to_tree_string(e)) + "\n";
    csv += "printed," + quote(to_string(e)) + "\n";
    csv += "derivative," + quote(to_string(d)) + "\n";
    csv += "derivative_tree," + quote(to_tree_string(d)) + "\n";
    std::string names;
    for (const std::string& n : e.constant_names()) names += (names.empty() ? "" : " ") + n;
    csv += "constants," + quote(names) + "\n";
    write_text(cfg.out, csv, out);
    return kExitOk;
}

void report(std::ostream& err, const std::string& kind, const std::string& message, json extra = json::object()) {
    json line = {{"error", kind}, {"message", message}};
    for (auto& [k, v] : extra.items()) line[k] = v;
    err << line.dump() << '\n';
}

}  // namespace

// --- config -------------------------------------------------------------------

RunConfig config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(doc, "config", {"command", "family", "output", "resolution", "seed"});
    RunConfig cfg;
    try {
        if (doc.contains("command")) cfg.command = doc.at("command").get<std::string>();
        if (doc.contains("family")) {
            const json& fam = doc.at("family");
            check_keys(fam, "family",
                       {"preset", "m", "r", "k", "x", "y", "radius", "interval", "constants", "matrix", "expression"});
            if (fam.contains("preset")) cfg.preset = fam.at("preset").get<std::string>();
            if (fam.contains("m")) cfg.m = fam.at("m").get<double>();
            if (fam.contains("r")) cfg.r = fam.at("r").get<double>();
            if (fam.contains("k")) cfg.k = fam.at("k").get<double>();
            if (fam.contains("x") || fam.contains("y") || fam.contains("radius")) {
                CustomFamily c;
                c.x_c = fam.value("x", "0");
                c.y_c = fam.value("y", "0");
                c.r = fam.at("radius").get<std::string>();
                const auto iv = fam.at("interval").get<std::vector<double>>();
                if (iv.size() != 2) throw ConfigError("family interval needs two numbers");
                c.s1 = iv[0];
                c.s2 = iv[1];
                if (fam.contains("constants"))
                    for (const auto& [name, v] : fam.at("constants").items()) c.constants[name] = v.get<double>();
                cfg.custom = c;
            }
            if (fam.contains("matrix")) {
                std::vector<double> flat;
                for (const json& entry : fam.at("matrix")) {
                    if (entry.is_array())
                        for (const json& v : entry) flat.push_back(v.get<double>());
                    else
                        flat.push_back(entry.get<double>());
                }
                cfg.matrix = matrix_from_values(flat);
            }
            if (fam.contains("expression")) cfg.expression = fam.at("expression").get<std::string>();
        }
        if (doc.contains("output")) {
            const json& o = doc.at("output");
            check_keys(o, "output", {"csv", "svg"});
            cfg.out = o.value("csv", "");
            cfg.svg = o.value("svg", "");
        }
        if (doc.contains("resolution")) {
            const json& r = doc.at("resolution");
            check_keys(r, "resolution", {"n", "t_samples", "rows", "bbox"});
            cfg.n = r.value("n", cfg.n);
            cfg.t_samples = r.value("t_samples", cfg.t_samples);
            cfg.rows = r.value("rows", cfg.rows);
            if (r.contains("bbox")) {
                const auto b = r.at("bbox").get<std::vector<double>>();
                if (b.size() != 4) throw ConfigError("bbox needs [x_min, x_max, y_min, y_max]");
                cfg.bbox = BBox{b[0], b[1], b[2], b[3]};
            }
        }
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config has a wrongly typed value: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return config_from_json(text.str());
}

void validate(const RunConfig& cfg) {
    if (!contains(kCommands, cfg.command)) throw ConfigError("unknown command '" + cfg.command + "'");
    if (!cfg.preset.empty() && !contains(kPresets, cfg.preset))
        throw ConfigError("unknown preset '" + cfg.preset + "'");
    if (cfg.n < kMinGrid || cfg.n > kMaxGrid) throw ConfigError("n must lie in [16, 4096]");
    if (cfg.t_samples < kMinTSamples || cfg.t_samples > kMaxTSamples)
        throw ConfigError("t_samples must lie in [100, 1000000]");
    if (cfg.rows < 1 || cfg.rows > kMaxTSamples) throw ConfigError("rows must lie in [1, 1000000]");
    if (cfg.bbox && !(cfg.bbox->width() > 0.0 && cfg.bbox->height() > 0.0))
        throw ConfigError("bbox must have positive width and height");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        validate(cfg);
        if (cfg.command == "envelope") return cmd_envelope(cfg, out);
        if (cfg.command == "numrange") return cmd_numrange(cfg, out);
        if (cfg.command == "line") return cmd_line(cfg, out);
        if (cfg.command == "horocycle") return cmd_horocycle(cfg, out);
        if (cfg.command == "oracle-compare") return cmd_oracle(cfg, out);
        return cmd_parse_check(cfg, out);
    } catch (const ParseError& e) {
        json expected = e.expected();
        report(err, "parse", e.what(), {{"offset", e.offset()}, {"expected", expected}});
        return kExitExpression;
    } catch (const UnboundConstant& e) {
        report(err, "unbound-constant", e.what(), {{"name", e.name()}});
        return kExitExpression;
    } catch (const ConfigError& e) {
        report(err, "config", e.what());
        return kExitUsage;
    } catch (const IoError& e) {
        report(err, "io", e.what());
        return kExitIo;
    } catch (const InvalidArgument& e) {
        report(err, "invalid-argument", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        report(err, "numerical", e.what());
        return kExitNumerical;
    }
}

// --- command line ---------------------------------------------------------------

namespace {

struct Flags {
    std::string config;
    std::string preset, out, svg, expr, x, y, radius;
    double m = 0, r = 0, k = 0;
    int n = 0, t_samples = 0, rows = 0;
    std::uint64_t seed = 0;
    std::vector<double> bbox, interval, matrix;
    std::vector<std::string> constants;
};

struct Registered {
    CLI::App* app;
    std::vector<std::pair<std::string, CLI::Option*>> opts;

    bool given(const std::string& name) const {
        for (const auto& [n, o] : opts)
            if (n == name) return o->count() > 0;
        return false;
    }
};

void apply(const Registered& reg, const Flags& fl, RunConfig& cfg) {
    if (reg.given("preset")) {
        cfg.preset = fl.preset;
        cfg.custom.reset();
    }
    if (reg.given("m")) cfg.m = fl.m;
    if (reg.given("r")) cfg.r = fl.r;
    if (reg.given("k")) cfg.k = fl.k;
    if (reg.given("out")) cfg.out = fl.out;
    if (reg.given("svg")) cfg.svg = fl.svg;
    if (reg.given("n")) cfg.n = fl.n;
    if (reg.given("t-samples")) cfg.t_samples = fl.t_samples;
    if (reg.given("rows")) cfg.rows = fl.rows;
    if (reg.given("seed")) cfg.seed = fl.seed;
    if (reg.given("bbox")) cfg.bbox = BBox{fl.bbox[0], fl.bbox[1], fl.bbox[2], fl.bbox[3]};
    if (reg.given("matrix")) cfg.matrix = matrix_from_values(fl.matrix);
    if (reg.given("expr")) cfg.expression = fl.expr;
    if (reg.given("x") || reg.given("y") || reg.given("radius") || reg.given("interval") || reg.given("const")) {
        CustomFamily c = cfg.custom.value_or(CustomFamily{"0", "0", "", 0.0, 1.0, {}});
        if (reg.given("x")) c.x_c = fl.x;
        if (reg.given("y")) c.y_c = fl.y;
        if (reg.given("radius")) c.r = fl.radius;
        if (reg.given("interval")) {
            c.s1 = fl.interval[0];
            c.s2 = fl.interval[1];
        }
        for (const std::string& b : fl.constants) {
            const auto [name, value] = parse_binding(b);
            c.constants.insert_or_assign(name, value);
        }
        if (c.r.empty()) throw ConfigError("custom family needs --radius");
        cfg.custom = c;
        cfg.preset.clear();
    }
}

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Envelopes of circle families, numerical ranges and pseudohyperbolic disk unions"};
    app.require_subcommand(0, 1);
    Flags fl;
    std::vector<Registered> subs;
    app.add_option("--config", fl.config, "JSON run configuration");

    auto family_opts = [&fl](Registered& reg, bool presets) {
        CLI::App* a = reg.app;
        if (presets)
            reg.opts.emplace_back("preset", a->add_option("--preset", fl.preset, "Builtin family")
                                                ->check(CLI::IsMember(kPresets)));
        reg.opts.emplace_back("x", a->add_option("--x", fl.x, "Custom family x_c(t)"));
        reg.opts.emplace_back("y", a->add_option("--y", fl.y, "Custom family y_c(t)"));
        reg.opts.emplace_back("radius", a->add_option("--radius", fl.radius, "Custom family r(t)"));
        reg.opts.emplace_back("interval", a->add_option("--interval", fl.interval, "Parameter interval s1 s2")
                                              ->expected(2));
        reg.opts.emplace_back("const", a->add_option("--const", fl.constants, "Named constant, name=value"));
    };
    auto param = [&fl](Registered& reg, const std::string& name, const std::string& help) {
        double* target = name == "m" ? &fl.m : name == "r" ? &fl.r : &fl.k;
        reg.opts.emplace_back(name, reg.app->add_option("--" + name, *target, help));
    };
    auto common = [&fl](Registered& reg) {
        reg.opts.emplace_back("config", reg.app->add_option("--config", fl.config, "JSON run configuration"));
        reg.opts.emplace_back("out", reg.app->add_option("--out", fl.out, "CSV output path (stdout if omitted)"));
        reg.opts.emplace_back("svg", reg.app->add_option("--svg", fl.svg, "SVG output path"));
    };

    auto add = [&](const std::string& name, const std::string& help) -> Registered& {
        subs.push_back({app.add_subcommand(name, help), {}});
        common(subs.back());
        return subs.back();
    };
    subs.reserve(kCommands.size());

    Registered& env = add("envelope", "Discriminant envelope rows t,x1,y1,x2,y2");
    family_opts(env, true);
    param(env, "m", "tprime parameter m");
    param(env, "r", "Pseudohyperbolic radius");
    param(env, "k", "Horocycle parameter k");
    env.opts.emplace_back("rows", env.app->add_option("--rows", fl.rows, "Number of interior parameter rows"));

    Registered& nr = add("numrange", "Elliptical range data for a 2x2 matrix");
    param(nr, "m", "Use [[0, m], [0, 1]] when no matrix is given");
    nr.opts.emplace_back("matrix", nr.app->add_option("--matrix", fl.matrix, "re im of a11 a12 a21 a22")->expected(8));
    nr.opts.emplace_back("rows", nr.app->add_option("--rows", fl.rows, "Sample count / 100"));
    nr.opts.emplace_back("seed", nr.app->add_option("--seed", fl.seed, "Sampling seed"));

    Registered& line = add("line", "Boundary circles for centers on [-1, 1]");
    param(line, "r", "Pseudohyperbolic radius");

    Registered& horo = add("horocycle", "Boundary circles for centers on a horocycle");
    param(horo, "r", "Pseudohyperbolic radius");
    param(horo, "k", "Horocycle parameter k");

    Registered& orc = add("oracle-compare", "Rasterized union against the closed-form boundary");
    family_opts(orc, true);
    param(orc, "m", "tprime parameter m");
    param(orc, "r", "Pseudohyperbolic radius");
    param(orc, "k", "Horocycle parameter k");
    orc.opts.emplace_back("n", orc.app->add_option("--n", fl.n, "Grid cells per side"));
    orc.opts.emplace_back("t-samples", orc.app->add_option("--t-samples", fl.t_samples, "Parameter samples"));
    orc.opts.emplace_back("bbox", orc.app->add_option("--bbox", fl.bbox, "x_min x_max y_min y_max")->expected(4));

    Registered& pc = add("parse-check", "Parse and differentiate one expression");
    pc.opts.emplace_back("expr", pc.app->add_option("--expr", fl.expr, "Expression in t"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report(err, "usage", e.what());
        return kExitUsage;
    }

    const Registered* chosen = nullptr;
    for (const Registered& reg : subs)
        if (reg.app->parsed()) chosen = &reg;
    if (!chosen && fl.config.empty()) {
        out << app.help();
        return kExitUsage;
    }

    RunConfig cfg;
    try {
        if (!fl.config.empty()) cfg = load_config(fl.config);
        if (chosen) {
            cfg.command = chosen->app->get_name();
            apply(*chosen, fl, cfg);
        }
        if (cfg.command == "envelope" || cfg.command == "oracle-compare")
            if (cfg.preset.empty() && !cfg.custom) cfg.preset = "tprime";
    } catch (const ConfigError& e) {
        report(err, "config", e.what());
        return kExitUsage;
    } catch (const IoError& e) {
        report(err, "io", e.what());
        return kExitIo;
    }
    return run(cfg, out, err);
}

}  // namespace envelopes::cli
