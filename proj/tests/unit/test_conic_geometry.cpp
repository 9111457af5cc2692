#include <doctest.h>

#include <cmath>
#include <random>

#include "weblab/conic_geometry.hpp"

using namespace weblab;

namespace {

const ConfocalFamily fam21{2, 1};
const double sqrt5 = std::sqrt(5.0);

// |sin| of the angle between two slopes
double slope_gap(Slope a, Slope b)
{
    const Vec2 u = a.direction(), v = b.direction();
    return std::abs(u.x() * v.y() - u.y() * v.x());
}

bool same_pair(const LineSlopePair& a, Slope s, Slope t, double tol)
{
    return (slope_gap(a.m1, s) < tol && slope_gap(a.m2, t) < tol) ||
           (slope_gap(a.m1, t) < tol && slope_gap(a.m2, s) < tol);
}

}  // namespace

TEST_CASE("family and member validation")
{
    CHECK(fam21.c() == doctest::Approx(1.0));
    CHECK_THROWS(ConfocalFamily(1, 2));
    CHECK_THROWS(ConfocalFamily(1, 0));
    CHECK_THROWS(ConicMember(fam21, 1.0));
    CHECK_THROWS(ConicMember(fam21, 2.5));
    CHECK(ConicMember(fam21, 0).is_ellipse());
    CHECK_FALSE(ConicMember(fam21, 1.5).is_ellipse());
}

TEST_CASE("elliptic coordinates at reference points")
{
    auto e = elliptic_coords({0, 1}, fam21);
    CHECK(e.lambda1 == doctest::Approx(0).epsilon(1e-14));
    CHECK(e.lambda2 == doctest::Approx(2));

    e = elliptic_coords({1, 0}, fam21);
    CHECK(e.lambda1 == doctest::Approx(1));
    CHECK(e.lambda2 == doctest::Approx(1));
    CHECK(e.degenerate);

    e = elliptic_coords({1, 1}, fam21);
    CHECK(e.lambda1 == doctest::Approx((1 - sqrt5) / 2).epsilon(1e-14));
    CHECK(e.lambda2 == doctest::Approx((1 + sqrt5) / 2).epsilon(1e-14));
    // both roots put (1,1) on their conic
    for (double l : {e.lambda1, e.lambda2})
        CHECK(1 / (2 - l) + 1 / (1 - l) == doctest::Approx(1).epsilon(1e-13));
}

TEST_CASE("elliptic coordinates solve the conic equation at random points")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 200; ++i) {
        const Point p{u(rng), u(rng)};
        const auto e = elliptic_coords(p, fam21);
        CHECK(e.lambda1 <= 1.0);
        CHECK(e.lambda2 >= 1.0);
        CHECK(e.lambda2 <= 2.0);
        if (e.degenerate)
            continue;
        for (double l : {e.lambda1, e.lambda2}) {
            const double lhs = p.x * p.x / (2 - l) + p.y * p.y / (1 - l);
            CHECK(lhs == doctest::Approx(1).epsilon(1e-9));
        }
    }
}

TEST_CASE("confocal slope")
{
    CHECK(confocal_slope({1, 1}, fam21) == doctest::Approx((sqrt5 - 1) / 2).epsilon(1e-14));
    CHECK(std::abs(confocal_slope({1e-9, 1}, fam21)) < 1e-8);
    CHECK_THROWS_AS(confocal_slope({1, 0}, fam21), SingularPoint);

    // the ellipse has slope -T, the hyperbola 1/T; they are orthogonal and
    // the ellipse direction is orthogonal to grad lambda1
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.2, 2.5);
    for (int i = 0; i < 100; ++i) {
        const Point p{u(rng), u(rng)};
        const double T = confocal_slope(p, fam21);
        CHECK((-T) * (1 / T) == doctest::Approx(-1));
        const Vec2 g1 = elliptic_gradient(p, fam21, 1);
        CHECK(std::abs(g1.dot(Vec2(1, -T))) < 1e-10 * g1.norm() * std::hypot(1, T));
        const Vec2 g2 = elliptic_gradient(p, fam21, 2);
        CHECK(std::abs(g2.dot(Vec2(T, 1))) < 1e-10 * g2.norm() * std::hypot(1, T));
    }
}

TEST_CASE("slope jet matches finite differences")
{
    const Point p{1.2, 0.7};
    const auto j = confocal_jet(p, fam21);
    const double h = 1e-5;
    const double tx = (confocal_slope({p.x + h, p.y}, fam21) - confocal_slope({p.x - h, p.y}, fam21)) / (2 * h);
    const double ty = (confocal_slope({p.x, p.y + h}, fam21) - confocal_slope({p.x, p.y - h}, fam21)) / (2 * h);
    CHECK(j.Tx == doctest::Approx(tx).epsilon(1e-8));
    CHECK(j.Ty == doctest::Approx(ty).epsilon(1e-8));
}

TEST_CASE("bipolar coordinates")
{
    auto b = bipolar_coords({0, 1}, 1.0);
    CHECK(b.sigma == doctest::Approx(M_PI / 2));
    CHECK(std::abs(b.tau) < 1e-15);
    CHECK(std::abs(bipolar_coords({0, 3.7}, 1.0).tau) < 1e-15);

    b = bipolar_coords({1, 1}, 1.0);
    // angle between (2,1) and (0,1)
    CHECK(b.sigma == doctest::Approx(std::acos(1 / sqrt5)).epsilon(1e-14));
    CHECK(b.tau == doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-14));

    // the circle through (+-1, 0) and (1,1) has center (0, 1/2); sigma is constant on it
    const double r = std::hypot(1.0, 0.5);
    for (double t : {0.3, 1.0, 2.0, 2.6}) {
        const Point q{r * std::cos(t), 0.5 + r * std::sin(t)};
        CHECK(bipolar_coords(q, 1.0).sigma == doctest::Approx(b.sigma).epsilon(1e-13));
    }
    CHECK_THROWS_AS(bipolar_coords({1, 0}, 1.0), SingularPoint);
}

TEST_CASE("bipolar slope")
{
    CHECK(bipolar_slope({1, 1}, fam21) == doctest::Approx(2).epsilon(1e-13));
    // the pencil circle centered at (0, 1/2) has slope -x/(y - 1/2) = -2 at (1,1);
    // the form S dx + dy vanishes along it
    CHECK(std::abs(bipolar_slope({1e-9, 1}, fam21)) < 1e-8);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.2, 2.5);
    int tested = 0;
    for (int i = 0; i < 200; ++i) {
        const Point p{u(rng), u(rng)};
        if (!admissible(p, fam21))
            continue;
        const double T = confocal_slope(p, fam21);
        const double S = bipolar_slope(p, fam21);
        CHECK(std::abs(S * (1 - T * T) - 2 * T) < 1e-10 * (1 + std::abs(S)));
        ++tested;
    }
    CHECK(tested > 100);
}

TEST_CASE("tangent slopes from external points")
{
    const ConicMember Q(fam21, 0);
    auto pair = tangent_slopes({2, 0}, Q);
    CHECK(same_pair(pair, Slope::finite(1 / std::sqrt(2.0)), Slope::finite(-1 / std::sqrt(2.0)), 1e-14));

    pair = tangent_slopes({0, 2}, Q);
    CHECK(same_pair(pair, Slope::finite(std::sqrt(1.5)), Slope::finite(-std::sqrt(1.5)), 1e-14));

    // every returned line satisfies c0^2 = A m^2 + B
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-3, 3);
    int tested = 0;
    for (int i = 0; i < 300; ++i) {
        const Point p{u(rng), u(rng)};
        if (Q.level(p) <= 1e-3)
            continue;
        const auto pr = tangent_slopes(p, Q);
        for (Slope m : {pr.m1, pr.m2}) {
            if (m.is_vertical()) {
                CHECK(p.x * p.x == doctest::Approx(Q.A()));
                continue;
            }
            const double c0 = p.y - m.value() * p.x;
            const double rhs = Q.A() * m.value() * m.value() + Q.B();
            CHECK(std::abs(c0 * c0 - rhs) < 1e-12 * (c0 * c0 + rhs));
        }
        CHECK(slope_gap(pr.m1, pr.m2) > 0);
        ++tested;
    }
    CHECK(tested > 100);

    CHECK_THROWS_AS(tangent_slopes({0.5, 0.2}, Q), std::domain_error);
}

TEST_CASE("tangent slopes on the conic collapse to its tangent")
{
    const ConicMember Q(fam21, 0);
    const Point p{1, 1 / std::sqrt(2.0)};
    const auto pr = tangent_slopes(p, Q);
    CHECK(pr.m1 == pr.m2);
    // implicit derivative of x^2/2 + y^2 = 1
    CHECK(pr.m1.value() == doctest::Approx(-p.x / (2 * p.y)));
}

TEST_CASE("tangency points")
{
    const ConicMember Q(fam21, 0);
    const double r = 1 / std::sqrt(2.0);
    Point t = tangency_point({2, 0}, Slope::finite(r), Q);
    CHECK(t.x == doctest::Approx(1));
    CHECK(t.y == doctest::Approx(-r));
    t = tangency_point({2, 0}, Slope::finite(-r), Q);
    CHECK(t.x == doctest::Approx(1));
    CHECK(t.y == doctest::Approx(r));

    const Point on{1, r};
    t = tangency_point(on, Slope::finite(-on.x / (2 * on.y)), Q);
    CHECK(t.x == doctest::Approx(on.x));
    CHECK(t.y == doctest::Approx(on.y));

    // the point lies on Q and on the line through p
    const Point p{1.7, 1.3};
    const auto pr = tangent_slopes(p, Q);
    for (Slope m : {pr.m1, pr.m2}) {
        const Point q = tangency_point(p, m, Q);
        CHECK(std::abs(Q.level(q)) < 1e-12);
        CHECK(std::abs((q.y - p.y) - m.value() * (q.x - p.x)) < 1e-12);
    }
    CHECK_THROWS(tangency_point({1, 1}, Slope::finite(1), Q));
    CHECK_THROWS(tangency_point({2, 0}, Slope::finite(3), Q));
}

TEST_CASE("bisectors")
{
    auto b = bisector_slopes({Slope::finite(1), Slope::finite(-1)});
    CHECK(same_pair(b, Slope::finite(0), Slope::vertical(), 1e-15));

    const ConicMember Q(fam21, 0);
    b = bisector_slopes(tangent_slopes({2, 0}, Q));
    CHECK(same_pair(b, Slope::finite(0), Slope::vertical(), 1e-15));

    CHECK_THROWS(bisector_slopes({Slope::finite(2), Slope::finite(2)}));

    // outside Q the bisectors are the directions of the confocal net
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.2, 2.8);
    int tested = 0;
    while (tested < 100) {
        const Point p{u(rng), u(rng)};
        if (Q.level(p) < 0.2)
            continue;
        const double T = confocal_slope(p, fam21);
        const auto bis = bisector_slopes(tangent_slopes(p, Q));
        CHECK(same_pair(bis, Slope::finite(-T), Slope::finite(1 / T), 1e-10));
        ++tested;
    }
}

TEST_CASE("moebius map of the bipolar net")
{
    using C = std::complex<double>;
    for (C z : {C(0.3, 0.4), C(-2, 1), C(5, -0.1)})
        CHECK(std::abs(moebius_bipolar(z, 1.0) - z) < 1e-14);
    for (C k : {C(2, 0), C(0.5, 1), C(-3, 0.2)}) {
        CHECK(std::abs(moebius_bipolar(C(-1, 0), k) - C(-1, 0)) < 1e-14);
        // z = 1 is the pole of zeta; its image is the fixed focus itself
    }
    CHECK(std::abs(moebius_bipolar(C(0, 0), 2.0) - C(1.0 / 3, 0)) < 1e-15);
    CHECK_THROWS(moebius_bipolar(C(0, 0), 0.0));
    // k zeta = 1 at zeta = 1/2, i.e. z = -3
    CHECK_THROWS(moebius_bipolar(C(-3, 0), 2.0));

    // real positive k keeps tau level sets: |zeta| scales by k, so tau shifts by ln k
    const C z(0.7, 0.9);
    const C w = moebius_bipolar(z, 3.0);
    const double tz = bipolar_coords({z.real(), z.imag()}, 1.0).tau;
    const double tw = bipolar_coords({w.real(), w.imag()}, 1.0).tau;
    CHECK(std::abs(std::abs(tw - tz) - std::log(3.0)) < 1e-12);
}

TEST_CASE("tangent parameter P")
{
    CHECK(slope_P(Slope::finite(-0.37), 0.37) == doctest::Approx(0).epsilon(1e-15));
    CHECK(slope_P(Slope::finite(1.25), 0) == doctest::Approx(1.25));
    CHECK_THROWS(slope_P(Slope::finite(2), 0.5));

    // both tangents from p: W^2 recovers the slope, the two P values are opposite
    const ConicMember Q(fam21, 0);
    for (Point p : {Point{1.7, 1.3}, Point{0.6, 1.4}, Point{2.2, 0.4}}) {
        const double T = confocal_slope(p, fam21);
        const auto pr = tangent_slopes(p, Q);
        const double P1 = slope_P(pr.m1, T), P2 = slope_P(pr.m2, T);
        CHECK(w2_slope(P1, T) == doctest::Approx(pr.m1.value()).epsilon(1e-12));
        CHECK(w2_slope(P2, T) == doctest::Approx(pr.m2.value()).epsilon(1e-12));
        CHECK(w1_slope(-P1, T) == doctest::Approx(pr.m1.value()).epsilon(1e-12));
        CHECK(P1 == doctest::Approx(-P2).epsilon(1e-12));
    }
}

TEST_CASE("tangent families and parallelizing integrals")
{
    const ConicMember Q(fam21, 0);
    for (Point p : {Point{1.8, 1.2}, Point{0.9, 1.4}, Point{2.1, 0.7}}) {
        for (int fam = 0; fam < 2; ++fam) {
            const Slope m = tangent_of_family(p, Q, fam);
            const Vec2 d = m.direction();
            const auto s0 = parallel_integrals(p, Q);
            const double ang = tangency_angle(p, Q, fam);
            const Vec2 g = tangency_angle_gradient(p, Q, fam);
            CHECK(std::abs(g.dot(d)) < 1e-9 * g.norm());
            for (double t : {-0.05, 0.04}) {
                const Point q = Point::of(p.vec() + t * d);
                const auto s = parallel_integrals(q, Q);
                // family 0 keeps s1 + s2, family 1 keeps s1 - s2
                if (fam == 0)
                    CHECK(s.s1 + s.s2 == doctest::Approx(s0.s1 + s0.s2).epsilon(1e-10));
                else
                    CHECK(s.s1 - s.s2 == doctest::Approx(s0.s1 - s0.s2).epsilon(1e-10));
                CHECK(tangency_angle(q, Q, fam) == doctest::Approx(ang).epsilon(1e-12));
                CHECK(slope_gap(tangent_of_family(q, Q, fam), m) < 1e-10);
            }
        }
    }
    CHECK_THROWS(parallel_integrals({0.5, 0.3}, Q));
    CHECK_THROWS(parallel_integrals({2, 2}, ConicMember(fam21, 1.5)));
}

TEST_CASE("parallel integral rates match finite differences")
{
    const ConicMember Q(fam21, 0);
    const Point p{1.6, 1.1};
    const auto [r1, r2] = parallel_integral_rates(p, Q);
    // move along the hyperbola (lambda2 fixed) to vary lambda1 only
    const double T = confocal_slope(p, fam21);
    const Vec2 along = Vec2(T, 1).normalized() * 1e-5;
    const Point a = Point::of(p.vec() + along), b = Point::of(p.vec() - along);
    const double dl1 = elliptic_coords(a, fam21).lambda1 - elliptic_coords(b, fam21).lambda1;
    const double ds1 = parallel_integrals(a, Q).s1 - parallel_integrals(b, Q).s1;
    CHECK(ds1 / dl1 == doctest::Approx(r1).epsilon(1e-6));
    CHECK(std::isfinite(r2));
}

TEST_CASE("admissibility excludes the singular strips")
{
    CHECK(admissible({1, 1}, fam21));
    CHECK_FALSE(admissible({1, 0.01}, fam21));
    CHECK_FALSE(admissible({0.01, 1}, fam21));
    CHECK_FALSE(admissible({1.02, 0.02}, fam21));
}

TEST_CASE("extended slopes")
{
    CHECK(Slope::vertical().is_vertical());
    CHECK_THROWS(Slope::vertical().value());
    CHECK(Slope::from_direction(Vec2(0, -2)).is_vertical());
    CHECK(Slope::from_direction(Vec2(-2, -1)).value() == doctest::Approx(0.5));
    CHECK(Slope::finite(-3).direction().x() > 0);
    CHECK_THROWS(Slope::from_direction(Vec2(0, 0)));
}
