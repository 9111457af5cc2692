#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "weblab/conic_geometry.hpp"

namespace weblab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class SystemKind { cartesian, bipolar, remark2, tangent };

std::string to_string(SystemKind k);

// Three solutions (K^j, L^j, J^j), j = 1..3, stacked: K holds K^1..K^3 etc.
struct FrameState {
    Vec3 K = Vec3::UnitX();
    Vec3 L = Vec3::UnitY();
    Vec3 J = Vec3::UnitZ();
    Point base;

    // columns K, L, J
    Mat3 matrix() const;
    // rows K, L, J: column j is the j-th solution
    Mat3 solutions() const { return matrix().transpose(); }
    static FrameState from_solutions(const Mat3& W, Point base);
    double condition() const;
};

FrameState identity_frame(Point base);

struct TransportOptions {
    double tolerance = 1e-12;
    long max_steps = 100000;
    double max_condition = 1e8;
};

// d/dx and d/dy of a solution column (K, L, J) are A_x (K, L, J) and A_y (K, L, J).
Mat3 frame_generator(SystemKind kind, const ConfocalFamily& fam, Point p, int axis);

FrameState transport(SystemKind kind, const ConfocalFamily& fam, const std::vector<Point>& path,
                     const FrameState& init, const TransportOptions& opts = {});

double loop_defect(SystemKind kind, const ConfocalFamily& fam, const std::vector<Point>& loop,
                   const FrameState& init, const TransportOptions& opts = {});

// Coefficients c with arc point = c . (K, L, J) for each foliation, in the
// web order of the kind (cartesian: x, y, ellipses, hyperbolas; bipolar:
// ellipses, hyperbolas, sigma, tau). These are the moving-frame coordinates.
std::array<Vec3, 4> frame_arc_coefficients(SystemKind kind, const ConfocalFamily& fam, Point p);

// Fixed solution-space coordinates of the four arc points at the frame's base.
std::array<Vec3, 4> frame_arc_points(SystemKind kind, const ConfocalFamily& fam, const FrameState& state);

// Moving-frame coordinates of a fixed vector v = X K + Y L + Z J.
Vec3 frame_coordinates(const FrameState& state, const Vec3& v);

// Fixed coordinates of the derivative (axis 0: x, 1: y) of arc point i.
Vec3 frame_arc_derivative(SystemKind kind, const ConfocalFamily& fam, const FrameState& state, int arc, int axis);

// Displayed lines of the rank curve in moving-frame coordinates.
// cartesian: {L1, L2} for the x and y arcs.
// bipolar: one line per arc in web order.
std::vector<Vec3> displayed_lines(SystemKind kind, const ConfocalFamily& fam, Point p);

// Symmetric matrix of the displayed conic c carrying the ellipse and
// hyperbola arcs of the cartesian web (moving-frame coordinates).
Mat3 displayed_conic(const ConfocalFamily& fam, Point p);

struct LineCheck {
    std::string arc;
    double point_residual = 0;
    double derivative_residual = 0;
};

// Evaluates the displayed lines on the transported arc points and their
// derivatives, after mapping them back to moving-frame coordinates.
std::vector<LineCheck> check_displayed_lines(SystemKind kind, const ConfocalFamily& fam, const FrameState& state);

//---------------------------------------------------------------------------//
// Jet systems for the slope field itself.

enum class JetKind {
    remark2,   // state T, Tx, Ty; two-line splitting constraints
    tangent,   // state T, Tx, Ty, Txy, P; second derivatives from the tangent web
    s_system,  // state T, Tx, Ty, Txy, S; two conformally flat nets
};

std::string to_string(JetKind k);
int jet_size(JetKind k);

// derivative of the jet state along x (axis 0) or y (axis 1)
Eigen::VectorXd jet_rhs(JetKind kind, const Eigen::VectorXd& s, int axis);

Eigen::VectorXd transport_jet(JetKind kind, const std::vector<Point>& path, const Eigen::VectorXd& init,
                              const TransportOptions& opts = {});

// Jet of the confocal field at p (second derivatives by central differences).
// For the tangent kind, P belongs to tangent family 0 of the member lambda0.
Eigen::VectorXd confocal_jet_state(JetKind kind, const ConfocalFamily& fam, Point p, double lambda0 = 0);

double jet_loop_defect(JetKind kind, const std::vector<Point>& loop, const Eigen::VectorXd& init,
                       const TransportOptions& opts = {});

// Closed polylines used by the tests and the report.
std::vector<Point> square_loop(Point corner, double side, int per_side = 1);
std::vector<Point> circle_loop(Point center, double radius, int n = 64);

// Second derivatives of T from differentiating the first-order system
// (central differences of the analytic first derivatives).
struct SlopeHessian {
    double Txx = 0;
    double Txy = 0;
    double Tyy = 0;
};
SlopeHessian confocal_hessian(const ConfocalFamily& fam, Point p, double h = 1e-4);

}  // namespace weblab
