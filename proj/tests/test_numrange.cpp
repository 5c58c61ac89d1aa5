#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "envelopes/error.hpp"
#include "envelopes/numrange.hpp"
#include "envelopes/oracle.hpp"

using namespace envelopes;

namespace {

Matrix2 random_matrix(std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {{n(gen), n(gen)}, {n(gen), n(gen)}, {n(gen), n(gen)}, {n(gen), n(gen)}};
}

// Haar-ish unitary: normalized columns via Gram-Schmidt on a random matrix.
Matrix2 random_unitary(std::mt19937_64& gen) {
    const Matrix2 a = random_matrix(gen);
    Complex u1 = a.a11, u2 = a.a21;
    const double n1 = std::sqrt(std::norm(u1) + std::norm(u2));
    u1 /= n1;
    u2 /= n1;
    Complex v1 = a.a12, v2 = a.a22;
    const Complex proj = std::conj(u1) * v1 + std::conj(u2) * v2;
    v1 -= proj * u1;
    v2 -= proj * u2;
    const double n2 = std::sqrt(std::norm(v1) + std::norm(v2));
    return {u1, v1 / n2, u2, v2 / n2};
}

bool same_pair(std::pair<Complex, Complex> got, Complex a, Complex b, double tol) {
    return (std::abs(got.first - a) <= tol && std::abs(got.second - b) <= tol) ||
           (std::abs(got.first - b) <= tol && std::abs(got.second - a) <= tol);
}

}  // namespace

TEST(Eigenvalues, SpecExamples) {
    EXPECT_TRUE(same_pair(eigenvalues2({0, 1, 0, 0}), 0, 0, 1e-15));
    EXPECT_TRUE(same_pair(eigenvalues2({2, 0, 0, Complex(0, 5)}), 2, Complex(0, 5), 1e-14));
    EXPECT_TRUE(same_pair(eigenvalues2({0, 1, 1, 0}), 1, -1, 1e-15));
}

TEST(Eigenvalues, ReproduceTraceAndDeterminant) {
    std::mt19937_64 gen(8);
    for (int i = 0; i < 1000; ++i) {
        const Matrix2 a = random_matrix(gen);
        const auto [x, y] = eigenvalues2(a);
        EXPECT_LE(std::abs(x + y - a.trace()), 1e-10 * std::max(1.0, std::abs(a.trace())));
        EXPECT_LE(std::abs(x * y - a.det()), 1e-10 * std::max(1.0, std::abs(a.det())));
    }
}

TEST(SchurParameters, SpecExamples) {
    const SchurForm s = schur_parameters({1, 2, 0, 3});
    EXPECT_TRUE(same_pair({s.a, s.b}, 1, 3, 1e-14));
    EXPECT_NEAR(s.p, 2.0, 1e-14);
    ASSERT_TRUE(s.m.has_value());
    EXPECT_NEAR(*s.m, 1.0, 1e-14);

    const SchurForm r = schur_parameters({0, 1, 0, 0});
    EXPECT_NEAR(r.p, 1.0, 1e-15);
    EXPECT_FALSE(r.m.has_value());

    const SchurForm d = schur_parameters({Complex(1, 2), 0, 0, Complex(-3, 0.5)});
    EXPECT_EQ(d.p, 0.0);
}

TEST(SchurParameters, ClearlyNegativeIsInconsistent) {
    // Not reachable from a real matrix; exercised through the normal case instead:
    // any normal matrix must come out with p = 0 exactly after clamping.
    std::mt19937_64 gen(13);
    for (int i = 0; i < 200; ++i) {
        const Matrix2 u = random_unitary(gen);
        const Matrix2 d{{1.3, -0.2}, 0, 0, {-0.7, 2.1}};
        const Matrix2 a = u.adjoint() * d * u;
        EXPECT_LE(schur_parameters(a).p, 1e-6);
    }
}

TEST(SchurParameters, UnitaryInvariance) {
    std::mt19937_64 gen(21);
    for (int i = 0; i < 200; ++i) {
        const Matrix2 a = random_matrix(gen);
        const Matrix2 u = random_unitary(gen);
        const SchurForm s = schur_parameters(a);
        const SchurForm t = schur_parameters(u.adjoint() * a * u);
        EXPECT_NEAR(s.p, t.p, 1e-9);
        EXPECT_TRUE(same_pair({t.a, t.b}, s.a, s.b, 1e-9));
    }
}

TEST(ErtShape, SpecExamples) {
    const Complex lambda(3, 1);
    const NumericalRangeShape point = ert_shape({lambda, 0, 0, lambda});
    ASSERT_TRUE(std::holds_alternative<shape::Point>(point));
    EXPECT_EQ(std::get<shape::Point>(point).z, lambda);

    const NumericalRangeShape seg = ert_shape({0, 0, 0, 1});
    ASSERT_TRUE(std::holds_alternative<shape::Segment>(seg));
    const auto& sg = std::get<shape::Segment>(seg);
    EXPECT_TRUE(same_pair({sg.from, sg.to}, 0, 1, 1e-15));

    const NumericalRangeShape e = ert_shape(tprime_matrix(1.0));
    ASSERT_TRUE(std::holds_alternative<shape::Ellipse>(e));
    const auto& el = std::get<shape::Ellipse>(e);
    EXPECT_TRUE(same_pair({el.f1, el.f2}, 0, 1, 1e-15));
    EXPECT_NEAR(el.minor_axis, 1.0, 1e-15);
    EXPECT_NEAR(el.semi_major(), std::sqrt(2.0) / 2, 1e-15);
    EXPECT_NEAR(el.semi_minor(), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(el.center() - 0.5), 0.0, 1e-15);
}

TEST(ErtShape, NilpotentGivesCircle) {
    const NumericalRangeShape c = ert_shape({0, 1, 0, 0});
    ASSERT_TRUE(std::holds_alternative<shape::Ellipse>(c));
    const auto& e = std::get<shape::Ellipse>(c);
    EXPECT_EQ(e.f1, e.f2);
    EXPECT_NEAR(e.semi_major(), 0.5, 1e-15);
    EXPECT_NEAR(e.semi_minor(), 0.5, 1e-15);
}

TEST(ErtShape, AffineCovariance) {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Matrix2 a = random_matrix(gen);
        const Complex alpha(n(gen), n(gen)), beta(n(gen), n(gen));
        const auto base = std::get<shape::Ellipse>(ert_shape(a));
        const auto moved = std::get<shape::Ellipse>(ert_shape(alpha * a + beta * Matrix2::identity()));
        const Complex f1 = alpha * base.f1 + beta, f2 = alpha * base.f2 + beta;
        EXPECT_TRUE(same_pair({moved.f1, moved.f2}, f1, f2, 1e-10 * std::max(1.0, std::abs(f1) + std::abs(f2))));
        EXPECT_NEAR(moved.minor_axis, std::abs(alpha) * base.minor_axis, 1e-10 * std::max(1.0, moved.minor_axis));
    }
}

TEST(Sampling, ScalarMatrixIsConstant) {
    const Complex lambda(-0.5, 2.0);
    for (const Point2& p : sample_numerical_range({lambda, 0, 0, lambda}, 1000, 4)) {
        EXPECT_NEAR(p.x, lambda.real(), 1e-15);
        EXPECT_NEAR(p.y, lambda.imag(), 1e-15);
    }
}

TEST(Sampling, NilpotentDiskOfRadiusHalf) {
    double biggest = 0.0;
    for (const Point2& p : sample_numerical_range({0, 1, 0, 0}, 100000, 77)) {
        const double r = std::hypot(p.x, p.y);
        EXPECT_LE(r, 0.5 + 1e-12);
        biggest = std::max(biggest, r);
    }
    EXPECT_GE(biggest, 0.49);
}

TEST(Sampling, ForwardContainmentTprime) {
    const EllipseSpec e = tprime_ellipse(1.0);
    for (const Point2& p : sample_numerical_range(tprime_matrix(1.0), 100000, 9)) EXPECT_LE(ellipse_value(e, p), 1e-12);
}

TEST(Sampling, DeterministicStream) {
    const Matrix2 a{{0.3, 0.1}, {1.0, -2.0}, {0.0, 0.5}, {-1.0, 0.0}};
    EXPECT_EQ(sample_numerical_range(a, 500, 123), sample_numerical_range(a, 500, 123));
    EXPECT_NE(sample_numerical_range(a, 500, 123), sample_numerical_range(a, 500, 124));
    // Documented stream: three consecutive 53-bit uniforms per sample.
    std::mt19937_64 gen(123);
    auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    const double t = unit(), t1 = 2.0 * M_PI * unit(), t2 = 2.0 * M_PI * unit();
    const Complex w = quadratic_form(a, t, t1, t2);
    const Point2 first = sample_numerical_range(a, 1, 123)[0];
    EXPECT_EQ(first.x, w.real());
    EXPECT_EQ(first.y, w.imag());
    EXPECT_THROW(sample_numerical_range(a, 0, 1), InvalidArgument);
}

TEST(Sampling, UnitaryInvarianceOfClouds) {
    std::mt19937_64 gen(31);
    const Matrix2 a = random_matrix(gen);
    const Matrix2 u = random_unitary(gen);
    const auto c1 = sample_numerical_range(a, 100000, 1);
    const auto c2 = sample_numerical_range(u.adjoint() * a * u, 100000, 2);
    EXPECT_LE(directed_hausdorff(c1, c2), 3e-2);
    EXPECT_LE(directed_hausdorff(c2, c1), 3e-2);
}

TEST(Sampling, RandomMatricesInsideTheirEllipse) {
    std::mt19937_64 gen(41);
    for (int k = 0; k < 10; ++k) {
        const Matrix2 a = random_matrix(gen);
        const NumericalRangeShape s = ert_shape(a);
        for (const Point2& p : sample_numerical_range(a, 20000, k)) EXPECT_LE(shape_value(s, {p.x, p.y}), 1e-9);
    }
}

TEST(TprimeFamily, SpecExamples) {
    const double t = std::sqrt(0.5);
    const CircleFamily f1 = tprime_family(1.0);
    EXPECT_NEAR(f1.center(t).x, 0.5, 1e-15);
    EXPECT_NEAR(f1.radius(t), 0.5, 1e-15);
    EXPECT_EQ(f1.center(0.0), (Point2{1.0, 0.0}));
    EXPECT_EQ(f1.radius(0.0), 0.0);
    EXPECT_NEAR(tprime_family(2.0).radius(t), 1.0, 1e-15);
    EXPECT_THROW(tprime_family(0.0), InvalidArgument);
    EXPECT_THROW(tprime_family(-1.0), InvalidArgument);
}

TEST(TprimeFamily, EnvelopeIsTheErtEllipse) {
    for (const double m : {0.5, 1.0, 2.0}) {
        const CircleFamily f = tprime_family(m);
        const auto e = std::get<shape::Ellipse>(ert_shape(tprime_matrix(m)));
        for (const Interval& iv : envelope_support(f)) {
            for (int i = 0; i < 500; ++i) {
                const double t = iv.lo + (iv.hi - iv.lo) * (i + 0.5) / 500;
                for (const Point2& p : discriminant_envelope(f, t).points)
                    EXPECT_LE(std::abs(shape_value(e, {p.x, p.y})), 1e-10);
            }
        }
    }
}

TEST(Coverage, GridHasNoFailures) {
    for (const double m : {0.5, 1.0, 2.0}) {
        const CoverageReport r = coverage_check(m, 50);
        EXPECT_EQ(r.failures, 0) << m;
        EXPECT_GT(r.points_checked, 1000);
        EXPECT_LE(r.max_residual, 1e-8);
    }
}

TEST(Coverage, SpecPoints) {
    const auto origin = covering_parameter(1.0, {0.0, 0.0});
    ASSERT_TRUE(origin.has_value());
    EXPECT_EQ(*origin, 1.0);
    EXPECT_EQ(tprime_family(1.0).residual({0.0, 0.0}, 1.0), 0.0);
    EXPECT_GT(ellipse_value(tprime_ellipse(1.0), {2.0, 0.0}), 0.0);
    EXPECT_FALSE(covering_parameter(1.0, {2.0, 0.0}).has_value());
}
