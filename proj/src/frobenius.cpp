#include "weblab/frobenius.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

namespace weblab {

namespace odeint = boost::numeric::odeint;

std::string to_string(SystemKind k)
{
    switch (k) {
    case SystemKind::cartesian:
        return "cartesian";
    case SystemKind::bipolar:
        return "bipolar";
    case SystemKind::remark2:
        return "remark2";
    case SystemKind::tangent:
        return "tangent";
    }
    return "?";
}

std::string to_string(JetKind k)
{
    switch (k) {
    case JetKind::remark2:
        return "remark2";
    case JetKind::tangent:
        return "tangent";
    case JetKind::s_system:
        return "s_system";
    }
    return "?";
}

Mat3 FrameState::matrix() const
{
    Mat3 m;
    m.col(0) = K;
    m.col(1) = L;
    m.col(2) = J;
    return m;
}

FrameState FrameState::from_solutions(const Mat3& W, Point base)
{
    FrameState s;
    s.K = W.row(0).transpose();
    s.L = W.row(1).transpose();
    s.J = W.row(2).transpose();
    s.base = base;
    return s;
}

double FrameState::condition() const
{
    Eigen::JacobiSVD<Mat3> svd(matrix());
    const auto& s = svd.singularValues();
    return s(2) > 0 ? s(0) / s(2) : std::numeric_limits<double>::infinity();
}

FrameState identity_frame(Point base)
{
    FrameState s;
    s.base = base;
    return s;
}

namespace {

void require_regular(Point p)
{
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x == 0 || p.y == 0)
        throw SingularPoint("frame system singular on the axes");
}

Mat3 cartesian_generator(double x, double y, double T, int axis)
{
    const double T2 = T * T, T3 = T2 * T, T4 = T2 * T2, T5 = T4 * T, T6 = T3 * T3, T7 = T6 * T, T8 = T4 * T4,
                 T9 = T8 * T;
    const double x2 = x * x, y2 = y * y, xy = x * y;
    const double D = xy * (T2 + 1);
    const double a = x * T2 + 2 * y * T - x;
    const double b = y * T2 - 2 * x * T - y;
    const double F = 2 * xy * (T2 + 1) * (T2 + 1);
    const double E = 4 * x2 * y2 * std::pow(T2 + 1, 4);
    Mat3 A;
    if (axis == 0) {
        const double P1 = x * T5 + 7 * y * T4 - 14 * x * T3 - 10 * y * T2 + x * T - y;
        const double P2 = x2 * T9 + 9 * xy * T8 + 14 * (y2 - x2) * T7 - 20 * xy * T6 + (10 * y2 - 16 * x2) * T5 -
                          66 * xy * T4 + (30 * x2 - 38 * y2) * T3 + 28 * xy * T2 - (x2 + 2 * y2) * T + xy;
        const double P3 = xy * T9 + (7 * y2 - 2 * x2) * T8 - 16 * xy * T7 + (10 * x2 + 2 * y2) * T6 - 38 * xy * T5 +
                          (42 * x2 - 36 * y2) * T4 + 40 * xy * T3 - 2 * (x2 + y2) * T2 - 3 * xy * T - 3 * y2;
        A << -T * a / (2 * D), T * b / (2 * D), T,  //
            a / (2 * D), b / (2 * D), -1,           //
            -P2 / E, P3 / E, P1 / F;
    } else {
        const double Q1 = y * T5 - 7 * x * T4 - 14 * y * T3 + 10 * x * T2 + y * T + x;
        const double Q2 = xy * T9 + (2 * y2 - 7 * x2) * T8 - 16 * xy * T7 - (2 * x2 + 10 * y2) * T6 - 38 * xy * T5 +
                          (36 * x2 - 42 * y2) * T4 + 40 * xy * T3 + 2 * (x2 + y2) * T2 - 3 * xy * T + 3 * x2;
        // 66xyT^4: an extra xy factor here breaks compatibility
        const double Q3 = y2 * T9 - 9 * xy * T8 + 14 * (x2 - y2) * T7 + 20 * xy * T6 + (10 * x2 - 16 * y2) * T5 +
                          66 * xy * T4 + (30 * y2 - 38 * x2) * T3 - 28 * xy * T2 - (2 * x2 + y2) * T - xy;
        A << a / (2 * D), b / (2 * D), 1,          //
            -T * a / (2 * D), T * b / (2 * D), T,  //
            Q2 / E, -Q3 / E, -Q1 / F;
    }
    return A;
}

Mat3 bipolar_generator(double x, double y, double T, int axis)
{
    const double T2 = T * T, T3 = T2 * T, T4 = T2 * T2, T5 = T4 * T, T6 = T3 * T3, T7 = T6 * T;
    const double x2 = x * x, y2 = y * y, xy = x * y;
    const double G = 2 * xy * (T2 + 1) * (T2 + 1);
    const double H = 4 * x2 * y2 * std::pow(T2 + 1, 3);
    const double k1 = x * T4 + 2 * y * T3 + 4 * x * T2 + 6 * y * T - x;
    const double k2 = y * T4 - 2 * x * T3 - 4 * y * T2 + 2 * x * T - y;
    const double k3 = x * T4 + 2 * y * T3 - 4 * x * T2 - 2 * y * T - x;
    const double l4 = y * T4 - 2 * x * T3 + 4 * y * T2 - 6 * x * T - y;
    Mat3 A;
    if (axis == 0) {
        const double j1 = x * T5 + 7 * y * T4 - 18 * x * T3 - 18 * y * T2 + 5 * x * T - y;
        const double j2 = x2 * T7 + 9 * xy * T6 + (14 * y2 - 15 * x2) * T5 - 37 * xy * T4 + (11 * x2 - 16 * y2) * T3 +
                          19 * xy * T2 + (2 * y2 - 5 * x2) * T + xy;
        const double j3 = xy * T7 + (7 * y2 - 2 * x2) * T6 - 25 * xy * T5 + (24 * x2 - 17 * y2) * T4 + 35 * xy * T3 +
                          (5 * y2 - 6 * x2) * T2 - 3 * xy * T - 3 * y2;
        A << -T * k1 / G, T * k2 / G, T,  //
            k3 / G, k2 / G, -1,           //
            -j2 / H, j3 / H, j1 / G;
    } else {
        const double j4 = y * T5 - 7 * x * T4 - 18 * y * T3 + 18 * x * T2 + 5 * y * T + x;
        const double j5 = xy * T7 + (2 * y2 - 7 * x2) * T6 - 25 * xy * T5 + (17 * x2 - 24 * y2) * T4 + 35 * xy * T3 +
                          (6 * y2 - 5 * x2) * T2 - 3 * xy * T + 3 * x2;
        const double j6 = y2 * T7 - 9 * xy * T6 + (14 * x2 - 15 * y2) * T5 + 37 * xy * T4 + (11 * y2 - 16 * x2) * T3 -
                          19 * xy * T2 + (2 * x2 - 5 * y2) * T - xy;
        A << k3 / G, k2 / G, 1,               //
            -T * k3 / G, T * l4 / G, T,       //
            j5 / H, -j6 / H, -j4 / G;
    }
    return A;
}

using DynState = std::vector<double>;

// Integrate ds/dt = d . F(p, s) along each segment of the polyline.
template <class Rhs>
void integrate_path(const std::vector<Point>& path, DynState& s, const TransportOptions& opts, Rhs&& rhs)
{
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<DynState>>(opts.tolerance, opts.tolerance);
    long steps = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Point a = path[i], b = path[i + 1];
        const Vec2 d = b.vec() - a.vec();
        if (d.norm() == 0)
            continue;
        auto sys = [&](const DynState& st, DynState& ds, double t) {
            const Point p = Point::of(a.vec() + t * d);
            rhs(p, d, st, ds);
        };
        auto obs = [&](const DynState& st, double) {
            for (double v : st)
                if (!std::isfinite(v))
                    throw SingularPoint("transport diverged");
            if (++steps > opts.max_steps)
                throw std::runtime_error("transport exceeded the step budget");
        };
        odeint::integrate_adaptive(stepper, sys, s, 0.0, 1.0, 0.05, obs);
    }
}

}  // namespace

Mat3 frame_generator(SystemKind kind, const ConfocalFamily& fam, Point p, int axis)
{
    require_regular(p);
    const double T = confocal_slope(p, fam);
    switch (kind) {
    case SystemKind::cartesian:
        return cartesian_generator(p.x, p.y, T, axis);
    case SystemKind::bipolar:
        return bipolar_generator(p.x, p.y, T, axis);
    default:
        throw std::invalid_argument("frame transport is defined for the cartesian and bipolar systems");
    }
}

FrameState transport(SystemKind kind, const ConfocalFamily& fam, const std::vector<Point>& path,
                     const FrameState& init, const TransportOptions& opts)
{
    if (kind != SystemKind::cartesian && kind != SystemKind::bipolar)
        throw std::invalid_argument("frame transport is defined for the cartesian and bipolar systems");
    if (path.empty())
        return init;
    if (init.condition() > opts.max_condition)
        throw std::invalid_argument("initial frame is degenerate");

    Mat3 W = init.solutions();
    DynState s(W.data(), W.data() + 9);
    integrate_path(path, s, opts, [&](Point p, const Vec2& d, const DynState& st, DynState& ds) {
        require_regular(p);
        const Mat3 A = d.x() * frame_generator(kind, fam, p, 0) + d.y() * frame_generator(kind, fam, p, 1);
        const Eigen::Map<const Mat3> Wm(st.data());
        ds.resize(9);
        Eigen::Map<Mat3> dW(ds.data());
        dW = A * Wm;
    });
    W = Eigen::Map<Mat3>(s.data());
    auto out = FrameState::from_solutions(W, path.back());
    if (out.condition() > opts.max_condition)
        throw SingularPoint("frame degenerated during transport");
    return out;
}

double loop_defect(SystemKind kind, const ConfocalFamily& fam, const std::vector<Point>& loop,
                   const FrameState& init, const TransportOptions& opts)
{
    if (loop.size() < 2)
        return 0;
    if (!(loop.front() == loop.back()))
        throw std::invalid_argument("loop must be closed");
    const auto end = transport(kind, fam, loop, init, opts);
    return (end.matrix() - init.matrix()).norm() / init.matrix().norm();
}

std::array<Vec3, 4> frame_arc_coefficients(SystemKind kind, const ConfocalFamily& fam, Point p)
{
    const double T = confocal_slope(p, fam);
    switch (kind) {
    case SystemKind::cartesian:
        return {Vec3(T, -1, 0), Vec3(1, T, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
    case SystemKind::bipolar:
        return {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, -T, 0), Vec3(T, 1, 0)};
    default:
        throw std::invalid_argument("arc points are defined for the cartesian and bipolar systems");
    }
}

namespace {

std::array<Vec3, 4> arc_coefficient_derivatives(SystemKind kind, const ConfocalFamily& fam, Point p, int axis)
{
    const auto jet = confocal_jet(p, fam);
    const double dT = axis == 0 ? jet.Tx : jet.Ty;
    if (kind == SystemKind::cartesian)
        return {Vec3(dT, 0, 0), Vec3(0, dT, 0), Vec3::Zero(), Vec3::Zero()};
    return {Vec3::Zero(), Vec3::Zero(), Vec3(0, -dT, 0), Vec3(dT, 0, 0)};
}

}  // namespace

std::array<Vec3, 4> frame_arc_points(SystemKind kind, const ConfocalFamily& fam, const FrameState& state)
{
    const auto c = frame_arc_coefficients(kind, fam, state.base);
    const Mat3 W = state.solutions();
    std::array<Vec3, 4> out;
    for (int i = 0; i < 4; ++i)
        out[i] = W.transpose() * c[i];
    return out;
}

Vec3 frame_coordinates(const FrameState& state, const Vec3& v)
{
    return state.solutions().transpose().partialPivLu().solve(v);
}

Vec3 frame_arc_derivative(SystemKind kind, const ConfocalFamily& fam, const FrameState& state, int arc, int axis)
{
    const auto c = frame_arc_coefficients(kind, fam, state.base);
    const auto dc = arc_coefficient_derivatives(kind, fam, state.base, axis);
    const Mat3 A = frame_generator(kind, fam, state.base, axis);
    return state.solutions().transpose() * (A.transpose() * c[arc] + dc[arc]);
}

std::vector<Vec3> displayed_lines(SystemKind kind, const ConfocalFamily& fam, Point p)
{
    require_regular(p);
    const double x = p.x, y = p.y, T = confocal_slope(p, fam);
    const double T2 = T * T, T3 = T2 * T, T4 = T2 * T2, T5 = T4 * T;
    const double Q = 2 * x * y * (T2 + 1) * (T2 + 1);
    if (kind == SystemKind::cartesian) {
        const double n1 = y * T5 - 3 * x * T4 - 6 * y * T3 + 6 * x * T2 + y * T + x;
        const double n2 = x * T5 + 3 * y * T4 - 6 * x * T3 - 6 * y * T2 + x * T - y;
        return {Vec3(1, T, -n1 / Q), Vec3(-T, 1, -n2 / Q)};
    }
    if (kind == SystemKind::bipolar) {
        const double k2 = y * T4 - 2 * x * T3 - 4 * y * T2 + 2 * x * T - y;
        const double k3 = x * T4 + 2 * y * T3 - 4 * x * T2 - 2 * y * T - x;
        return {Vec3(0, 1, -k2 / Q), Vec3(1, 0, k3 / Q), Vec3(T, 1, (x * T + y) / (2 * x * y)),
                Vec3(1, -T, (y * T - x) / (2 * x * y))};
    }
    throw std::invalid_argument("displayed lines exist for the cartesian and bipolar systems");
}

Mat3 displayed_conic(const ConfocalFamily& fam, Point p)
{
    require_regular(p);
    const double x = p.x, y = p.y, T = confocal_slope(p, fam);
    const double T2 = T * T, T4 = T2 * T2, T6 = T4 * T2, T8 = T4 * T4;
    const double D = x * y * (T2 + 1);
    const double cXZ = -(y * T2 - 2 * x * T - y) / (2 * D);
    const double cYZ = (x * T2 + 2 * y * T - x) / (2 * D);
    const double cZZ = -(x * y * (T8 - 4 * T6 - 26 * T4 + 12 * T2 + 1) +
                         2 * (y * y - x * x) * T * (T6 + T4 - 9 * T2 - 1)) /
                       (4 * x * x * y * y * std::pow(T2 + 1, 4));
    Mat3 C;
    C << 0, 0.5, cXZ / 2,  //
        0.5, 0, cYZ / 2,   //
        cXZ / 2, cYZ / 2, cZZ;
    return C;
}

std::vector<LineCheck> check_displayed_lines(SystemKind kind, const ConfocalFamily& fam, const FrameState& state)
{
    const auto lines = displayed_lines(kind, fam, state.base);
    const auto pts = frame_arc_points(kind, fam, state);
    auto rel = [](const Vec3& l, const Vec3& X) { return std::abs(l.dot(X)) / (l.norm() * X.norm()); };
    std::vector<LineCheck> out;
    if (kind == SystemKind::cartesian) {
        const char* names[2] = {"x", "y"};
        for (int i = 0; i < 2; ++i) {
            const Vec3 X = frame_coordinates(state, pts[i]);
            const Vec3 dX = frame_coordinates(state, frame_arc_derivative(kind, fam, state, i, i));
            out.push_back({names[i], rel(lines[i], X), rel(lines[i], dX)});
        }
        // ellipse and hyperbola arcs on the conic, with first-order contact
        const Mat3 C = displayed_conic(fam, state.base);
        const char* cn[2] = {"ellipses", "hyperbolas"};
        for (int i = 2; i < 4; ++i) {
            const Vec3 X = frame_coordinates(state, pts[i]);
            double contact = 0;
            for (int axis = 0; axis < 2; ++axis) {
                const Vec3 dX = frame_coordinates(state, frame_arc_derivative(kind, fam, state, i, axis));
                contact = std::max(contact, std::abs(X.dot(C * dX)) / (C.norm() * X.norm() * dX.norm()));
            }
            out.push_back({std::string("conic:") + cn[i - 2], std::abs(X.dot(C * X)) / (C.norm() * X.squaredNorm()),
                           contact});
        }
        return out;
    }
    const char* names[4] = {"ellipses", "hyperbolas", "sigma", "tau"};
    for (int i = 0; i < 4; ++i) {
        const Vec3 X = frame_coordinates(state, pts[i]);
        double d = 0;
        for (int axis = 0; axis < 2; ++axis)
            d = std::max(d, rel(lines[i], frame_coordinates(state, frame_arc_derivative(kind, fam, state, i, axis))));
        out.push_back({names[i], rel(lines[i], X), d});
    }
    return out;
}

//---------------------------------------------------------------------------//

int jet_size(JetKind k) { return k == JetKind::remark2 ? 3 : 5; }

Eigen::VectorXd jet_rhs(JetKind kind, const Eigen::VectorXd& s, int axis)
{
    const double T = s(0), p = s(1), q = s(2);
    const double T2 = T * T, T3 = T2 * T, T4 = T2 * T2, T5 = T4 * T, T6 = T3 * T3;
    Eigen::VectorXd d(jet_size(kind));
    if (kind == JetKind::remark2) {
        const double c3 = std::pow(T2 + 1, 3);
        const double Txy = 8 * T2 * (q * q - p * p) / c3 + (T6 + 11 * T4 - 5 * T2 + 1) * p * q / (T * c3);
        const double Txx =
            (2 * T * (T4 + 3) * p * p + 2 * (3 * T4 - 2 * T2 + 3) * p * q + 4 * T * (T2 - 1) * q * q) / c3;
        const double Tyy =
            (4 * T * (T2 - 1) * p * p - 2 * (3 * T4 - 2 * T2 + 3) * p * q + 2 * T * (T4 + 3) * q * q) / c3;
        if (axis == 0)
            d << p, Txx, Txy;
        else
            d << q, Txy, Tyy;
        return d;
    }
    const double r = s(3);
    if (kind == JetKind::tangent) {
        const double P = s(4), P2 = P * P;
        const double m4 = T4 - 1;
        const double Txx = 2 * T / (1 - T2) * r + 2 * T * (T2 - 3) / m4 * p * p + 4 * T / m4 * q * q +
                           4 * (2 * T2 - 1) / m4 * p * q;
        const double Tyy = 2 * T / (T2 - 1) * r + 4 * T / m4 * p * p + 2 * T * (T2 - 3) / m4 * q * q -
                           4 * (2 * T2 - 1) / m4 * p * q;
        // third derivatives obtained by differentiating Txx along y and Tyy along x
        const double den = (T2 - 1) * (T2 + 1) * (T2 + 1);
        const double Txxy = (4 * T5 * p * r - 2 * T4 * p * p * q + 2 * T4 * q * r + 4 * T3 * p * q * q +
                             12 * T3 * p * r - 40 * T2 * p * p * q + 4 * T2 * q * q * q - 4 * T2 * q * r +
                             24 * T * p * p * p - 20 * T * p * q * q + 8 * T * p * r + 10 * p * p * q +
                             4 * q * q * q - 6 * q * r) /
                            den;
        const double Txyy = (4 * T5 * q * r - 2 * T4 * p * q * q - 2 * T4 * p * r - 4 * T3 * p * p * q +
                             12 * T3 * q * r + 4 * T2 * p * p * p - 40 * T2 * p * q * q + 4 * T2 * p * r +
                             20 * T * p * p * q - 24 * T * q * q * q + 8 * T * q * r + 4 * p * p * p +
                             10 * p * q * q + 6 * p * r) /
                            den;
        const double f = (P2 + 1) / (P * (T2 + 1) * (T2 + 1));
        const double Px = f * (T * (P2 + 1) * p + (P2 - T2) * q);
        const double Py = f * ((1 - P2 * T2) * p - T * (P2 + 1) * q);
        if (axis == 0)
            d << p, Txx, r, Txxy, Px;
        else
            d << q, r, Tyy, Txyy, Py;
        return d;
    }
    const double S = s(4);
    const double h = T * (p * p + q * q) / (T2 + 1);
    const double Txx = S + h, Tyy = -S + h;
    const double w = T * (T2 + 1);
    const double Sx = r * (4 * T * p + (T2 - 3) * q) / w + p * q * ((T2 + 3) * q - 4 * T * p) / (T * w) +
                      S * p * (3 * T2 + 1) / w;
    const double Sy = r * (4 * T * q - (T2 - 3) * p) / w - p * q * ((T2 + 3) * p + 4 * T * q) / (T * w) +
                      S * q * (3 * T2 + 1) / w;
    const double rx = (S * T3 * q + S * T * q + T3 * p * r + T2 * q * q * q + 4 * T2 * q * r - 4 * T * p * q * q +
                       3 * T * p * r - 3 * p * p * q) /
                      (T4 + T2);
    const double ry = (-S * T3 * p - S * T * p + T3 * q * r + T2 * p * p * p - 4 * T2 * p * r + 4 * T * p * p * q +
                       3 * T * q * r - 3 * p * q * q) /
                      (T4 + T2);
    if (axis == 0)
        d << p, Txx, r, rx, Sx;
    else
        d << q, r, Tyy, ry, Sy;
    return d;
}

Eigen::VectorXd transport_jet(JetKind kind, const std::vector<Point>& path, const Eigen::VectorXd& init,
                              const TransportOptions& opts)
{
    if (init.size() != jet_size(kind))
        throw std::invalid_argument("jet state has the wrong size");
    if (path.empty())
        return init;
    DynState s(init.data(), init.data() + init.size());
    integrate_path(path, s, opts, [&](Point, const Vec2& d, const DynState& st, DynState& ds) {
        const Eigen::Map<const Eigen::VectorXd> v(st.data(), static_cast<long>(st.size()));
        const Eigen::VectorXd out = d.x() * jet_rhs(kind, v, 0) + d.y() * jet_rhs(kind, v, 1);
        ds.assign(out.data(), out.data() + out.size());
    });
    return Eigen::Map<Eigen::VectorXd>(s.data(), static_cast<long>(s.size()));
}

SlopeHessian confocal_hessian(const ConfocalFamily& fam, Point p, double h)
{
    const auto jx1 = confocal_jet({p.x + h, p.y}, fam), jx0 = confocal_jet({p.x - h, p.y}, fam);
    const auto jy1 = confocal_jet({p.x, p.y + h}, fam), jy0 = confocal_jet({p.x, p.y - h}, fam);
    SlopeHessian H;
    H.Txx = (jx1.Tx - jx0.Tx) / (2 * h);
    H.Tyy = (jy1.Ty - jy0.Ty) / (2 * h);
    H.Txy = 0.5 * ((jy1.Tx - jy0.Tx) + (jx1.Ty - jx0.Ty)) / (2 * h);
    return H;
}

Eigen::VectorXd confocal_jet_state(JetKind kind, const ConfocalFamily& fam, Point p, double lambda0)
{
    const auto j = confocal_jet(p, fam);
    Eigen::VectorXd s(jet_size(kind));
    if (kind == JetKind::remark2) {
        s << j.T, j.Tx, j.Ty;
        return s;
    }
    const auto H = confocal_hessian(fam, p);
    if (kind == JetKind::tangent) {
        const ConicMember Q(fam, lambda0);
        s << j.T, j.Tx, j.Ty, H.Txy, slope_P(tangent_of_family(p, Q, 0), j.T);
        return s;
    }
    const double S = H.Txx - j.T * (j.Tx * j.Tx + j.Ty * j.Ty) / (j.T * j.T + 1);
    s << j.T, j.Tx, j.Ty, H.Txy, S;
    return s;
}

double jet_loop_defect(JetKind kind, const std::vector<Point>& loop, const Eigen::VectorXd& init,
                       const TransportOptions& opts)
{
    if (loop.size() < 2)
        return 0;
    if (!(loop.front() == loop.back()))
        throw std::invalid_argument("loop must be closed");
    const auto end = transport_jet(kind, loop, init, opts);
    return (end - init).norm() / init.norm();
}

std::vector<Point> square_loop(Point corner, double side, int per_side)
{
    std::vector<Point> out;
    const Point c[4] = {corner, {corner.x + side, corner.y}, {corner.x + side, corner.y + side},
                        {corner.x, corner.y + side}};
    for (int k = 0; k < 4; ++k) {
        const Point a = c[k], b = c[(k + 1) % 4];
        for (int i = 0; i < per_side; ++i) {
            const double t = double(i) / per_side;
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    out.push_back(corner);
    return out;
}

std::vector<Point> circle_loop(Point center, double radius, int n)
{
    std::vector<Point> out;
    for (int i = 0; i < n; ++i) {
        const double t = 2 * std::numbers::pi * i / n;
        out.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    }
    out.push_back(out.front());
    return out;
}

}  // namespace weblab
