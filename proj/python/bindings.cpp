#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "envelopes/envelopes.hpp"

namespace py = pybind11;
using namespace envelopes;

namespace {

using XY = std::pair<double, double>;

XY xy(Point2 p) { return {p.x, p.y}; }
Point2 pt(const XY& p) { return {p.first, p.second}; }

std::vector<XY> xy_list(const std::vector<Point2>& pts) {
    std::vector<XY> out;
    out.reserve(pts.size());
    for (const Point2& p : pts) out.push_back(xy(p));
    return out;
}

std::vector<Point2> pt_list(const std::vector<XY>& pts) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const XY& p : pts) out.push_back(pt(p));
    return out;
}

py::tuple circle_tuple(const Circle& c) { return py::make_tuple(c.center.x, c.center.y, c.radius); }

Matrix2 matrix(const std::vector<std::vector<Complex>>& rows) {
    if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
        throw InvalidArgument("expected a 2x2 nested list");
    return {rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
}

const char* kind_name(EnvelopeKind k) {
    switch (k) {
        case EnvelopeKind::Empty: return "empty";
        case EnvelopeKind::Single: return "single";
        case EnvelopeKind::Pair: return "pair";
        case EnvelopeKind::WholeCircle: return "whole_circle";
    }
    return "?";
}

py::dict shape_dict(const NumericalRangeShape& s) {
    py::dict d;
    if (const auto* p = std::get_if<shape::Point>(&s)) {
        d["kind"] = "point";
        d["z"] = p->z;
    } else if (const auto* g = std::get_if<shape::Segment>(&s)) {
        d["kind"] = "segment";
        d["from"] = g->from;
        d["to"] = g->to;
    } else {
        const auto& e = std::get<shape::Ellipse>(s);
        d["kind"] = "ellipse";
        d["foci"] = py::make_tuple(e.f1, e.f2);
        d["minor_axis"] = e.minor_axis;
        d["center"] = e.center();
        d["semi_major"] = e.semi_major();
        d["semi_minor"] = e.semi_minor();
        d["angle"] = e.angle();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_envelopes, m) {
    m.doc() = "Envelopes of circle families, numerical ranges and pseudohyperbolic disk unions";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<UnboundConstant>(m, "UnboundConstant", error.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
    py::register_exception<ConsistencyError>(m, "ConsistencyError", error.ptr());

    // expressions
    py::class_<Expr>(m, "Expr")
        .def("__str__", [](const Expr& e) { return to_string(e); })
        .def("__repr__", [](const Expr& e) { return "Expr(" + to_tree_string(e) + ")"; })
        .def("tree", [](const Expr& e) { return to_tree_string(e); })
        .def("constant_names", &Expr::constant_names)
        .def("depends_on_t", &Expr::depends_on_t);
    m.def("parse", [](const std::string& s) { return parse(s); });
    m.def("evaluate", [](const Expr& e, double t, const std::map<std::string, double>& c) {
        return eval(e, t, Constants(c.begin(), c.end()));
    }, py::arg("expr"), py::arg("t"), py::arg("constants") = std::map<std::string, double>{});
    m.def("differentiate", &differentiate);

    // geometry
    m.def("intersect_circles", [](const XY& c1, double r1, const XY& c2, double r2) -> py::object {
        const IntersectionResult res = intersect_circles({pt(c1), r1}, {pt(c2), r2});
        if (std::holds_alternative<intersection::Disjoint>(res)) return py::make_tuple("disjoint");
        if (std::holds_alternative<intersection::Coincident>(res)) return py::make_tuple("coincident");
        if (const auto* t = std::get_if<intersection::Tangent>(&res))
            return py::make_tuple(t->kind == intersection::Tangency::Internal ? "internal" : "external", xy(t->point));
        const auto& two = std::get<intersection::TwoPoints>(res);
        return py::make_tuple("two_points", xy(two.first), xy(two.second));
    }, py::arg("center1"), py::arg("radius1"), py::arg("center2"), py::arg("radius2"));

    // families
    py::class_<CircleFamily>(m, "CircleFamily")
        .def(py::init([](const std::string& x, const std::string& y, const std::string& r, double s1, double s2,
                         const std::map<std::string, double>& c) {
                 return make_family(x, y, r, s1, s2, Constants(c.begin(), c.end()));
             }),
             py::arg("x_c"), py::arg("y_c"), py::arg("r"), py::arg("s1"), py::arg("s2"),
             py::arg("constants") = std::map<std::string, double>{})
        .def_property_readonly("s1", &CircleFamily::s1)
        .def_property_readonly("s2", &CircleFamily::s2)
        .def_property_readonly("x_c", &CircleFamily::x_c)
        .def_property_readonly("y_c", &CircleFamily::y_c)
        .def_property_readonly("r", &CircleFamily::r)
        .def("circle", [](const CircleFamily& f, double t) { return circle_tuple(f.circle(t)); })
        .def("derivative_gap", [](const CircleFamily& f, double t) { return f.state(t).derivative_gap(); })
        .def("residual", [](const CircleFamily& f, const XY& p, double t) { return f.residual(pt(p), t); });

    m.def("limiting_envelope", [](const CircleFamily& f, double t) {
        const EnvelopePair e = limiting_envelope(f, t);
        return py::make_tuple(xy(e.p1), xy(e.p2));
    });
    m.def("discriminant_envelope", [](const CircleFamily& f, double t) {
        const DiscriminantSolution s = discriminant_envelope(f, t);
        return py::make_tuple(kind_name(s.kind), xy_list(s.points));
    });
    m.def("envelope_support", [](const CircleFamily& f) {
        std::vector<XY> out;
        for (const Interval& iv : envelope_support(f)) out.push_back({iv.lo, iv.hi});
        return out;
    });
    m.def("check_hypotheses", [](const CircleFamily& f) {
        const HypothesisReport r = check_hypotheses(f);
        py::dict d;
        d["radius_positive_interior"] = r.radius_positive_interior;
        d["min_derivative_gap"] = r.min_derivative_gap;
        d["argmin_t"] = r.argmin_t;
        d["satisfied"] = r.satisfied();
        return d;
    });
    m.def("numeric_limit_check", [](const CircleFamily& f, double t, const std::vector<double>& hs) {
        const LimitCheckRecord rec = numeric_limit_check(f, t, hs);
        py::list samples;
        for (const LimitSample& s : rec.samples) samples.append(py::make_tuple(s.h, s.deviation));
        return samples;
    });
    m.def("boundary_filter", [](const CircleFamily& f, const std::vector<XY>& pts, double tol) {
        return xy_list(boundary_filter(f, pt_list(pts), tol));
    }, py::arg("family"), py::arg("points"), py::arg("tol") = 1e-9);

    // numerical range
    m.def("eigenvalues", [](const std::vector<std::vector<Complex>>& a) { return eigenvalues2(matrix(a)); });
    m.def("schur_parameters", [](const std::vector<std::vector<Complex>>& a) {
        const SchurForm s = schur_parameters(matrix(a));
        py::dict d;
        d["a"] = s.a;
        d["b"] = s.b;
        d["p"] = s.p;
        d["m"] = s.m ? py::cast(*s.m) : py::none();
        return d;
    });
    m.def("ert_shape", [](const std::vector<std::vector<Complex>>& a) { return shape_dict(ert_shape(matrix(a))); });
    m.def("sample_numerical_range", [](const std::vector<std::vector<Complex>>& a, int n, std::uint64_t seed) {
        return xy_list(sample_numerical_range(matrix(a), n, seed));
    });
    m.def("numerical_range_value", [](const std::vector<std::vector<Complex>>& a, Complex z) {
        return shape_value(ert_shape(matrix(a)), z);
    });
    m.def("tprime_family", &tprime_family);
    m.def("coverage_failures", [](double mm, int grid, double tol) { return coverage_check(mm, grid, tol).failures; },
          py::arg("m"), py::arg("grid_n"), py::arg("tol") = 1e-8);

    // pseudohyperbolic
    m.def("pseudo_distance", &pseudo_distance);
    m.def("pseudo_disk", [](Complex beta, double rho) { return circle_tuple(to_euclidean({beta, rho})); });
    m.def("line_family", &line_family);
    m.def("line_boundary", [](double r) {
        const LineBoundarySpec s = line_boundary(r);
        return py::make_tuple(circle_tuple(s.d1), circle_tuple(s.d2));
    });
    m.def("horocycle_family", &horocycle_family);
    m.def("horocycle_constants", [](double r, double k) {
        const HorocycleConstants h = horocycle_constants(r, k);
        py::dict d;
        d["c1"] = h.c1;
        d["R1"] = h.R1;
        d["c2"] = h.c2;
        d["R2"] = h.R2;
        d["a"] = h.a;
        d["b"] = h.b;
        d["c"] = h.c;
        return d;
    });

    // oracle
    m.def("rasterize_boundary", [](const CircleFamily& f, std::tuple<double, double, double, double> box, int n,
                                   int t_samples) {
        const auto [x0, x1, y0, y1] = box;
        const OracleGrid g = rasterize_union(f, {x0, x1, y0, y1}, n, t_samples);
        return py::make_tuple(xy_list(extract_boundary(g)), g.cell_size, g.occupied_count());
    }, py::arg("family"), py::arg("bbox"), py::arg("n"), py::arg("t_samples") = 2000);
    m.def("hausdorff", [](const std::vector<XY>& a, const std::vector<XY>& b) {
        return hausdorff(pt_list(a), pt_list(b));
    });
}
