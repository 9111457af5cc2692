#include "weblab/conic_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace weblab {

namespace {

void require_finite(Point p)
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("non-finite point");
}

}  // namespace

ConfocalFamily::ConfocalFamily(double a2_, double b2_) : a2(a2_), b2(b2_)
{
    if (!(std::isfinite(a2) && std::isfinite(b2)) || !(a2 > b2 && b2 > 0))
        throw std::invalid_argument("confocal family needs a2 > b2 > 0");
}

double ConfocalFamily::c() const { return std::sqrt(a2 - b2); }

ConicMember::ConicMember(ConfocalFamily fam, double lam) : family(fam), lambda(lam)
{
    if (!std::isfinite(lam) || lam == fam.b2 || lam >= fam.a2)
        throw std::invalid_argument("conic parameter must satisfy lambda < b2 or b2 < lambda < a2");
}

double ConicMember::level(Point p) const { return p.x * p.x / A() + p.y * p.y / B() - 1; }

//---------------------------------------------------------------------------//

Slope Slope::finite(double m)
{
    if (!std::isfinite(m))
        throw std::invalid_argument("finite slope expected");
    Slope s;
    s.m_ = m;
    return s;
}

Slope Slope::vertical()
{
    Slope s;
    s.vertical_ = true;
    return s;
}

double Slope::value() const
{
    if (vertical_)
        throw std::domain_error("vertical slope has no finite value");
    return m_;
}

Vec2 Slope::direction() const
{
    if (vertical_)
        return {0, 1};
    return Vec2(1, m_).normalized();
}

Slope Slope::from_direction(const Vec2& d)
{
    if (d.x() == 0) {
        if (d.y() == 0)
            throw std::invalid_argument("zero direction");
        return vertical();
    }
    return finite(d.y() / d.x());
}

//---------------------------------------------------------------------------//

EllipticCoords elliptic_coords(Point p, const ConfocalFamily& fam)
{
    require_finite(p);
    const double x2 = p.x * p.x, y2 = p.y * p.y;
    const double s = fam.a2 + fam.b2 - x2 - y2;
    const double c0 = fam.a2 * fam.b2 - x2 * fam.b2 - y2 * fam.a2;
    double d = s * s - 4 * c0;
    const double scale = s * s + 4 * std::abs(c0);
    if (d < 0) {
        if (d < -1e-12 * scale)
            throw std::runtime_error("complex elliptic coordinates (internal error)");
        d = 0;
    }
    const double sq = std::sqrt(d);
    EllipticCoords out;
    if (s >= 0) {
        out.lambda2 = 0.5 * (s + sq);
        out.lambda1 = out.lambda2 != 0 ? c0 / out.lambda2 : 0.0;
    } else {
        out.lambda1 = 0.5 * (s - sq);
        out.lambda2 = c0 / out.lambda1;
    }
    out.degenerate = p.x == 0 || p.y == 0 || d == 0;
    return out;
}

Vec2 elliptic_gradient(Point p, const ConfocalFamily& fam, int which)
{
    const auto ec = elliptic_coords(p, fam);
    const double l = which == 1 ? ec.lambda1 : ec.lambda2;
    const double o = which == 1 ? ec.lambda2 : ec.lambda1;
    if (l == o)
        throw SingularPoint("elliptic coordinates collide at a focus");
    return Vec2(2 * p.x * (fam.b2 - l), 2 * p.y * (fam.a2 - l)) / (l - o);
}

double confocal_slope(Point p, const ConfocalFamily& fam)
{
    const auto ec = elliptic_coords(p, fam);
    if (p.y == 0 || ec.lambda1 == fam.b2)
        throw SingularPoint("confocal slope undefined on the major axis");
    return p.x * (fam.b2 - ec.lambda1) / (p.y * (fam.a2 - ec.lambda1));
}

SlopeJet slope_system(double x, double y, double T)
{
    const double D = x * y * (T * T + 1);
    if (D == 0)
        throw SingularPoint("slope system singular on the axes");
    return {T, T * (y + 2 * x * T - y * T * T) / D, T * (x - 2 * y * T - x * T * T) / D};
}

SlopeJet confocal_jet(Point p, const ConfocalFamily& fam)
{
    return slope_system(p.x, p.y, confocal_slope(p, fam));
}

//---------------------------------------------------------------------------//

namespace {

void require_off_foci(Point p, double c)
{
    require_finite(p);
    if (p.y == 0 && std::abs(p.x) == c)
        throw SingularPoint("bipolar coordinates undefined at a focus");
}

// derivative of the complex bipolar potential -2c/(z^2-c^2)
std::complex<double> bipolar_fprime(Point p, double c)
{
    const std::complex<double> z(p.x, p.y);
    return -2.0 * c / (z * z - c * c);
}

}  // namespace

BipolarCoords bipolar_coords(Point p, double c)
{
    require_off_foci(p, c);
    const double x = p.x, y = p.y;
    BipolarCoords out;
    out.sigma = std::atan2(2 * c * y, x * x + y * y - c * c);
    out.tau = 0.5 * std::log(((x + c) * (x + c) + y * y) / ((x - c) * (x - c) + y * y));
    return out;
}

BipolarCoords bipolar_coords(Point p, const ConfocalFamily& fam) { return bipolar_coords(p, fam.c()); }

Vec2 bipolar_sigma_gradient(Point p, double c)
{
    require_off_foci(p, c);
    const auto f = bipolar_fprime(p, c);
    return {-f.imag(), -f.real()};
}

Vec2 bipolar_tau_gradient(Point p, double c)
{
    require_off_foci(p, c);
    const auto f = bipolar_fprime(p, c);
    return {f.real(), -f.imag()};
}

double bipolar_slope(Point p, const ConfocalFamily& fam)
{
    const Vec2 g = bipolar_sigma_gradient(p, fam.c());
    if (std::abs(g.y()) <= 1e-14 * g.norm())
        throw SingularPoint("elliptic pencil leaf is vertical (T^2 = 1)");
    return g.x() / g.y();
}

//---------------------------------------------------------------------------//

LineSlopePair tangent_slopes(Point p, const ConicMember& Q)
{
    require_finite(p);
    const double A = Q.A(), B = Q.B();
    const double x0 = p.x, y0 = p.y;
    const double qa = x0 * x0 - A;
    const double h = x0 * y0;  // the linear coefficient is -2h
    const double qc = y0 * y0 - B;
    double disc = A * y0 * y0 + B * x0 * x0 - A * B;
    const double scale = std::abs(A * y0 * y0) + std::abs(B * x0 * x0) + std::abs(A * B);
    if (disc < -1e-14 * scale)
        throw std::domain_error("point inside the conic: no real tangents");
    if (disc <= 1e-14 * scale)
        disc = 0;

    if (disc == 0) {
        // p on Q: both roots equal the tangent at p
        if (qa == 0)
            return {Slope::vertical(), Slope::vertical()};
        const Slope m = Slope::finite(h / qa);
        return {m, m};
    }
    const double sq = std::sqrt(disc);
    if (qa == 0) {
        // one root escaped to infinity
        return {Slope::vertical(), Slope::finite(qc / (2 * h))};
    }
    const double q = h + (h >= 0 ? sq : -sq);
    return {Slope::finite(q / qa), Slope::finite(qc / q)};
}

Point tangency_point(Point p, Slope m, const ConicMember& Q)
{
    require_finite(p);
    const double A = Q.A(), B = Q.B();
    Point t;
    if (m.is_vertical()) {
        if (p.x == 0)
            throw std::domain_error("vertical line through the center is not tangent");
        t = {A / p.x, 0};
    } else {
        const double c0 = p.y - m.value() * p.x;
        if (c0 == 0)
            throw std::domain_error("line through the center is not tangent");
        t = {-A * m.value() / c0, B / c0};
    }
    if (std::abs(Q.level(t)) > 1e-8)
        throw std::invalid_argument("slope is not a tangent slope of the conic");
    return t;
}

LineSlopePair bisector_slopes(const LineSlopePair& pair)
{
    const Vec2 d1 = pair.m1.direction(), d2 = pair.m2.direction();
    if (pair.m1 == pair.m2 || (d1 - d2).norm() == 0)
        throw std::invalid_argument("bisectors of coincident lines");
    return {Slope::from_direction(d1 + d2), Slope::from_direction(d1 - d2)};
}

std::complex<double> moebius_bipolar(std::complex<double> z, std::complex<double> k)
{
    if (k == 0.0)
        throw std::invalid_argument("moebius parameter k must be nonzero");
    if (z == 1.0)
        return 1.0;
    const auto zeta = (z + 1.0) / (z - 1.0);
    const auto kz = k * zeta;
    if (kz == 1.0)
        throw std::domain_error("moebius map has a pole here");
    return (kz + 1.0) / (kz - 1.0);
}

double slope_P(Slope m, double T)
{
    if (m.is_vertical()) {
        if (T == 0)
            throw std::domain_error("P infinite: vertical tangent with T = 0");
        return -1 / T;
    }
    const double den = 1 - m.value() * T;
    if (den == 0)
        throw std::domain_error("P infinite: 1 - mT = 0");
    return (T + m.value()) / den;
}

double w2_slope(double P, double T) { return (P - T) / (1 + P * T); }
double w1_slope(double P, double T) { return (P + T) / (P * T - 1); }

bool admissible(Point p, const ConfocalFamily& fam, double delta)
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        return false;
    if (std::abs(p.x) < delta || std::abs(p.y) < delta)
        return false;
    const double c = fam.c();
    if (std::hypot(p.x - c, p.y) < delta || std::hypot(p.x + c, p.y) < delta)
        return false;
    const double T = confocal_slope(p, fam);
    return std::abs(T * T - 1) >= delta;
}

//---------------------------------------------------------------------------//

namespace {

void require_ellipse(const ConicMember& Q)
{
    if (!Q.is_ellipse())
        throw std::invalid_argument("parallel integrals need an ellipse of the family");
}

}  // namespace

ParallelIntegrals parallel_integrals(Point p, const ConicMember& Q)
{
    require_ellipse(Q);
    const auto& fam = Q.family;
    const auto ec = elliptic_coords(p, fam);
    if (ec.lambda1 >= Q.lambda)
        throw std::domain_error("parallel integrals need a point outside the ellipse");
    const double A0 = Q.A(), B0 = Q.B();
    const double k = std::sqrt((fam.a2 - fam.b2) / A0);
    const double phi1 = std::atan(std::sqrt(Q.lambda - ec.lambda1) / std::sqrt(B0));
    const double w = std::sqrt(std::clamp((ec.lambda2 - fam.b2) / (fam.a2 - fam.b2), 0.0, 1.0));
    const double phi2 = std::numbers::pi / 2 - std::asin(w);
    return {2 * std::ellint_1(k, phi1) / std::sqrt(A0), 2 * std::ellint_1(k, phi2) / std::sqrt(A0)};
}

std::pair<double, double> parallel_integral_rates(Point p, const ConicMember& Q)
{
    require_ellipse(Q);
    const auto& fam = Q.family;
    const auto ec = elliptic_coords(p, fam);
    const double A0 = Q.A(), B0 = Q.B();
    const double k2 = (fam.a2 - fam.b2) / A0;
    const double v = std::sqrt(Q.lambda - ec.lambda1);
    const double w = std::sqrt((ec.lambda2 - fam.b2) / (fam.a2 - fam.b2));
    if (v == 0 || w == 0 || w >= 1)
        throw SingularPoint("parallel integrals singular on the conic or the axes");
    const double phi1 = std::atan(v / std::sqrt(B0));
    const double phi2 = std::numbers::pi / 2 - std::asin(w);
    auto dF = [k2](double phi) {
        const double s = std::sin(phi);
        return 1 / std::sqrt(1 - k2 * s * s);
    };
    const double dphi1 = -1 / ((1 + v * v / B0) * std::sqrt(B0) * 2 * v);
    const double dphi2 = -1 / (std::sqrt(1 - w * w) * 2 * w * (fam.a2 - fam.b2));
    return {2 * dF(phi1) * dphi1 / std::sqrt(A0), 2 * dF(phi2) * dphi2 / std::sqrt(A0)};
}

namespace {

struct Tangent {
    Slope m;
    Point q;
};

Tangent family_tangent(Point p, const ConicMember& Q, int family)
{
    if (family != 0 && family != 1)
        throw std::invalid_argument("tangent family index must be 0 or 1");
    const auto pair = tangent_slopes(p, Q);
    if (pair.m1 == pair.m2)
        throw SingularPoint("point on the conic: tangent families coincide");
    const Point q1 = tangency_point(p, pair.m1, Q);
    const Point q2 = tangency_point(p, pair.m2, Q);
    const double cr = (-p.x) * (q1.y - p.y) - (-p.y) * (q1.x - p.x);
    const bool first_is_left = cr > 0;
    if ((family == 0) == first_is_left)
        return {pair.m1, q1};
    return {pair.m2, q2};
}

}  // namespace

Slope tangent_of_family(Point p, const ConicMember& Q, int family) { return family_tangent(p, Q, family).m; }

double tangency_angle(Point p, const ConicMember& Q, int family)
{
    const Point q = family_tangent(p, Q, family).q;
    if (Q.is_ellipse())
        return std::atan2(q.y / std::sqrt(Q.B()), q.x / std::sqrt(Q.A()));
    return std::asinh(q.y / std::sqrt(-Q.B()));
}

Vec2 tangency_angle_gradient(Point p, const ConicMember& Q, int family)
{
    const Point q = family_tangent(p, Q, family).q;
    const double t = tangency_angle(p, Q, family);
    const double ra = std::sqrt(Q.A());
    double ft;
    Vec2 fp;
    if (Q.is_ellipse()) {
        // tangent line: x cos t / sqrt(A) + y sin t / sqrt(B) = 1
        const double rb = std::sqrt(Q.B());
        fp = {std::cos(t) / ra, std::sin(t) / rb};
        ft = -p.x * std::sin(t) / ra + p.y * std::cos(t) / rb;
    } else {
        // tangent line: s x cosh t / sqrt(A) - y sinh t / sqrt(-B) = 1, s = sign of q.x
        const double rb = std::sqrt(-Q.B());
        const double s = q.x >= 0 ? 1.0 : -1.0;
        fp = {s * std::cosh(t) / ra, -std::sinh(t) / rb};
        ft = s * p.x * std::sinh(t) / ra - p.y * std::cosh(t) / rb;
    }
    if (ft == 0)
        throw SingularPoint("tangency parameter stationary");
    return -fp / ft;
}

}  // namespace weblab
