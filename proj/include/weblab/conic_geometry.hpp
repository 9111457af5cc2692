#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Core>

namespace weblab {

using Vec2 = Eigen::Vector2d;

// Raised when a point hits the singular set of a formula.
struct SingularPoint : std::domain_error {
    using std::domain_error::domain_error;
};

struct Point {
    double x = 0;
    double y = 0;

    Vec2 vec() const { return {x, y}; }
    static Point of(const Vec2& v) { return {v.x(), v.y()}; }
    friend bool operator==(const Point&, const Point&) = default;
};

struct ConfocalFamily {
    double a2 = 2;
    double b2 = 1;

    ConfocalFamily() = default;
    ConfocalFamily(double a2_, double b2_);

    double c() const;  // focal distance
};

struct ConicMember {
    ConfocalFamily family;
    double lambda = 0;

    ConicMember() = default;
    ConicMember(ConfocalFamily fam, double lam);

    bool is_ellipse() const { return lambda < family.b2; }
    double A() const { return family.a2 - lambda; }
    double B() const { return family.b2 - lambda; }
    // x^2/A + y^2/B - 1
    double level(Point p) const;
};

// Extended-real slope. A vertical line is a separate value, never a big float.
class Slope {
  public:
    Slope() = default;
    static Slope finite(double m);
    static Slope vertical();

    bool is_vertical() const { return vertical_; }
    double value() const;  // throws for vertical
    Vec2 direction() const;  // unit vector, x-component >= 0
    static Slope from_direction(const Vec2& d);

    friend bool operator==(const Slope&, const Slope&) = default;

  private:
    double m_ = 0;
    bool vertical_ = false;
};

struct LineSlopePair {
    Slope m1;
    Slope m2;
};

struct EllipticCoords {
    double lambda1 = 0;
    double lambda2 = 0;
    bool degenerate = false;  // point on an axis or at a focus
};

EllipticCoords elliptic_coords(Point p, const ConfocalFamily& fam);

// gradient of lambda1 (which == 1) or lambda2 (which == 2)
Vec2 elliptic_gradient(Point p, const ConfocalFamily& fam, int which);

// Slope coefficient T of the ellipse form T dx + dy.
double confocal_slope(Point p, const ConfocalFamily& fam);

// T with its first derivatives from the closed first-order system.
struct SlopeJet {
    double T = 0;
    double Tx = 0;
    double Ty = 0;
};
SlopeJet slope_system(double x, double y, double T);
SlopeJet confocal_jet(Point p, const ConfocalFamily& fam);

struct BipolarCoords {
    double sigma = 0;
    double tau = 0;
};

BipolarCoords bipolar_coords(Point p, double c);
BipolarCoords bipolar_coords(Point p, const ConfocalFamily& fam);
Vec2 bipolar_sigma_gradient(Point p, double c);
Vec2 bipolar_tau_gradient(Point p, double c);

// sigma_x / sigma_y, the coefficient S of the elliptic pencil form S dx + dy.
double bipolar_slope(Point p, const ConfocalFamily& fam);

LineSlopePair tangent_slopes(Point p, const ConicMember& Q);
Point tangency_point(Point p, Slope m, const ConicMember& Q);
LineSlopePair bisector_slopes(const LineSlopePair& pair);

std::complex<double> moebius_bipolar(std::complex<double> z, std::complex<double> k);

double slope_P(Slope m, double T);
// Slopes of the two line families written in terms of P and T.
double w2_slope(double P, double T);  // (P - T) / (1 + P T)
double w1_slope(double P, double T);  // (P + T) / (P T - 1)

// Sample-domain exclusion: axis strips, |T^2 - 1| strip, focal disks.
bool admissible(Point p, const ConfocalFamily& fam, double delta = 0.05);

// Arc-length type integrals s1(lambda1), s2(lambda2) which turn the two
// tangent families of an ellipse Q into parallel line families s1 +- s2.
struct ParallelIntegrals {
    double s1 = 0;
    double s2 = 0;
};
ParallelIntegrals parallel_integrals(Point p, const ConicMember& Q);
// ds1/dlambda1 and ds2/dlambda2
std::pair<double, double> parallel_integral_rates(Point p, const ConicMember& Q);

// Tangent from p to Q whose tangency point lies on the left of the ray
// from p towards the center (family 0) or on the right (family 1).
Slope tangent_of_family(Point p, const ConicMember& Q, int family);
// Eccentric angle of the tangency point, constant along each tangent line.
double tangency_angle(Point p, const ConicMember& Q, int family);
Vec2 tangency_angle_gradient(Point p, const ConicMember& Q, int family);

}  // namespace weblab
