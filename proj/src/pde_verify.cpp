#include "weblab/pde_verify.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace weblab {

const std::vector<IdentityId>& all_identities()
{
    static const std::vector<IdentityId> ids = {
        IdentityId::T_system,       IdentityId::laplace_T,       IdentityId::P_system,
        IdentityId::curvature_B,    IdentityId::S_compat,        IdentityId::Txx_Tyy_tangent,
        IdentityId::R_form_closed,  IdentityId::remark2_split,   IdentityId::bipolar_S,
    };
    return ids;
}

std::string to_string(IdentityId id)
{
    switch (id) {
    case IdentityId::T_system: return "T_system";
    case IdentityId::laplace_T: return "laplace_T";
    case IdentityId::P_system: return "P_system";
    case IdentityId::curvature_B: return "curvature_B";
    case IdentityId::S_compat: return "S_compat";
    case IdentityId::Txx_Tyy_tangent: return "Txx_Tyy_tangent";
    case IdentityId::R_form_closed: return "R_form_closed";
    case IdentityId::remark2_split: return "remark2_split";
    case IdentityId::bipolar_S: return "bipolar_S";
    }
    throw std::invalid_argument("unknown identity");
}

IdentityId parse_identity(const std::string& s)
{
    for (auto id : all_identities())
        if (to_string(id) == s)
            return id;
    throw std::invalid_argument("unknown identity '" + s + "'");
}

SlopeField confocal_field(const ConfocalFamily& fam)
{
    return {"confocal", [fam](Point p) { return confocal_slope(p, fam); },
            [fam](Point p) { return confocal_jet(p, fam); }};
}

SlopeField linear_test_field()
{
    return {"x_plus_y", [](Point p) { return p.x + p.y; },
            [](Point p) { return SlopeJet{p.x + p.y, 1.0, 1.0}; }};
}

namespace {

// |sum of terms| / max |term|
double rel(std::initializer_list<double> terms)
{
    double sum = 0, big = 0;
    for (double t : terms) {
        if (!std::isfinite(t))
            throw SingularPoint("non-finite term in identity");
        sum += t;
        big = std::max(big, std::abs(t));
    }
    return big > 0 ? std::abs(sum) / big : 0.0;
}

// a pair of equations sharing one scale: the largest term of either
double rel2(std::initializer_list<double> a, std::initializer_list<double> b)
{
    double sa = 0, sb = 0, big = 0;
    for (double t : a) {
        sa += t;
        big = std::max(big, std::abs(t));
    }
    for (double t : b) {
        sb += t;
        big = std::max(big, std::abs(t));
    }
    if (!std::isfinite(sa) || !std::isfinite(sb) || !std::isfinite(big))
        throw SingularPoint("non-finite term in identity");
    return big > 0 ? std::max(std::abs(sa), std::abs(sb)) / big : 0.0;
}

Point shift(Point p, int axis, double h)
{
    return axis == 0 ? Point{p.x + h, p.y} : Point{p.x, p.y + h};
}

template <class F>
double diff(const F& f, Point p, int axis, double h)
{
    return (f(shift(p, axis, h)) - f(shift(p, axis, -h))) / (2 * h);
}

struct Ctx {
    const ConfocalFamily& fam;
    SlopeField field;
    double lambda0;
    double k;  // perturbation factor on right-hand sides
    double h;

    SlopeJet jet(Point p) const { return field.jet(p); }
    double T(Point p) const { return field.T(p); }

    double Txx(Point p) const { return diff([&](Point q) { return jet(q).Tx; }, p, 0, h); }
    double Tyy(Point p) const { return diff([&](Point q) { return jet(q).Ty; }, p, 1, h); }
    double Txy(Point p) const
    {
        return 0.5 * (diff([&](Point q) { return jet(q).Tx; }, p, 1, h) +
                      diff([&](Point q) { return jet(q).Ty; }, p, 0, h));
    }
    double P(Point p) const
    {
        const ConicMember Q(fam, lambda0);
        return slope_P(tangent_of_family(p, Q, 0), T(p));
    }
    double S(Point p) const
    {
        const auto j = jet(p);
        return Txx(p) - j.T * (j.Tx * j.Tx + j.Ty * j.Ty) / (j.T * j.T + 1);
    }
};

double t_system(const Ctx& c, Point p)
{
    const double T = c.T(p);
    const auto rhs = slope_system(p.x, p.y, T);
    const double tx = diff([&](Point q) { return c.T(q); }, p, 0, c.h);
    const double ty = diff([&](Point q) { return c.T(q); }, p, 1, c.h);
    return rel2({tx, -c.k * rhs.Tx}, {ty, -c.k * rhs.Ty});
}

double laplace(const Ctx& c, Point p)
{
    const auto j = c.jet(p);
    const double rhs = 2 * j.T * (j.Tx * j.Tx + j.Ty * j.Ty) / (1 + j.T * j.T);
    return rel({c.Txx(p), c.Tyy(p), -c.k * rhs});
}

double p_system(const Ctx& c, Point p)
{
    const auto j = c.jet(p);
    const double T = j.T, T2 = T * T, P = c.P(p), P2 = P * P;
    const double f = (P2 + 1) / (P * (T2 + 1) * (T2 + 1));
    const double px = diff([&](Point q) { return c.P(q); }, p, 0, c.h);
    const double py = diff([&](Point q) { return c.P(q); }, p, 1, c.h);
    return rel2({px, -c.k * f * T * (P2 + 1) * j.Tx, -c.k * f * (P2 - T2) * j.Ty},
                {py, -c.k * f * (1 - P2 * T2) * j.Tx, c.k * f * T * (P2 + 1) * j.Ty});
}

double curvature(const Ctx& c, Point p)
{
    const auto j = c.jet(p);
    const double T = j.T, T2 = T * T, P = c.P(p), P2 = P * P;
    const double a = (T2 * P2 + 2 * P2 + 1) / (2 * T * (P2 + 1));
    const double b = (2 * T2 * P2 + P2 + T2) / (2 * T * (P2 + 1));
    const double den = T * (T2 + 1) * (P2 + 1);
    const double r1 = T * (T2 * P2 + 4 * P2 + 3) * j.Tx * j.Tx / den;
    const double r2 = -2 * (2 * T2 - 1) * (P2 + 1) * j.Tx * j.Ty / den;
    const double r3 = T * (2 * T2 * P2 - P2 + T2 - 2) * j.Ty * j.Ty / den;
    return rel({a * c.Txx(p), b * c.Tyy(p), -c.Txy(p), -c.k * r1, -c.k * r2, -c.k * r3});
}

double s_compat(const Ctx& c, Point p)
{
    const auto j = c.jet(p);
    const double T = j.T, T2 = T * T, px = j.Tx, py = j.Ty;
    const double r = c.Txy(p), S = c.S(p);
    const double w = T * (T2 + 1);
    // S_x = (T_x)_xx - h_x and S_y = (T_y)_xx - h_y with h = T(T_x^2 + T_y^2)/(T^2 + 1):
    // compact second differences instead of nesting two first differences
    auto hfun = [&](Point q) {
        const auto k = c.jet(q);
        return k.T * (k.Tx * k.Tx + k.Ty * k.Ty) / (k.T * k.T + 1);
    };
    const auto jp = c.jet(shift(p, 0, c.h)), jm = c.jet(shift(p, 0, -c.h));
    const double h2 = c.h * c.h;
    const double sx = (jp.Tx - 2 * px + jm.Tx) / h2 - diff(hfun, p, 0, c.h);
    const double sy = (jp.Ty - 2 * py + jm.Ty) / h2 - diff(hfun, p, 1, c.h);
    return rel2({sx, -c.k * r * (4 * T * px + (T2 - 3) * py) / w,
                 -c.k * px * py * ((T2 + 3) * py - 4 * T * px) / (T * w), -c.k * S * px * (3 * T2 + 1) / w},
                {sy, -c.k * r * (4 * T * py - (T2 - 3) * px) / w,
                 c.k * px * py * ((T2 + 3) * px + 4 * T * py) / (T * w), -c.k * S * py * (3 * T2 + 1) / w});
}

double txx_tyy(const Ctx& c, Point p)
{
    const auto j = c.jet(p);
    const double T = j.T, T2 = T * T, m4 = T2 * T2 - 1;
    const double r = c.Txy(p), px = j.Tx, py = j.Ty;
    return rel2({c.Txx(p), -c.k * 2 * T / (1 - T2) * r, -c.k * 2 * T * (T2 - 3) / m4 * px * px,
                 -c.k * 4 * T / m4 * py * py, -c.k * 4 * (2 * T2 - 1) / m4 * px * py},
                {c.Tyy(p), -c.k * 2 * T / (T2 - 1) * r, -c.k * 4 * T / m4 * px * px,
                 -c.k * 2 * T * (T2 - 3) / m4 * py * py, c.k * 4 * (2 * T2 - 1) / m4 * px * py});
}

double r_form(const Ctx& c, Point p)
{
    // d(a dx + b dy) = (b_x - a_y) dx^dy; the exact part -1/2 dln(1+T^2) drops out.
    // Scaled by the largest first derivative of the coefficients: b_x and a_y
    // alone can both be small.
    auto a = [&](Point q) {
        const auto j = c.jet(q);
        return c.k * j.Ty / (1 + j.T * j.T);
    };
    auto b = [&](Point q) {
        const auto j = c.jet(q);
        return -j.Tx / (1 + j.T * j.T);
    };
    const double bx = diff(b, p, 0, c.h), ay = diff(a, p, 1, c.h);
    const double scale =
        std::max({std::abs(bx), std::abs(ay), std::abs(diff(a, p, 0, c.h)), std::abs(diff(b, p, 1, c.h))});
    if (!std::isfinite(scale))
        throw SingularPoint("non-finite term in identity");
    return scale > 0 ? std::abs(bx - ay) / scale : 0.0;
}

double remark2(const Ctx& c, Point p)
{
    const auto j = c.jet(p);
    const double T = j.T, T2 = T * T, T4 = T2 * T2, px = j.Tx, py = j.Ty;
    const double r = c.Txy(p);
    const double h2 = T * (px * px + py * py) / (T2 + 1);
    const double es = rel({c.Txx(p), -h2, -c.k * T * (px * px - py * py) / (T2 + 1),
                           c.k * (T4 - 4 * T2 - 1) * px * py / (2 * T2 * (T2 + 1)),
                           -c.k * (T2 - 1) * r / (2 * T)});
    const double c3 = std::pow(T2 + 1, 3);
    const double et = rel({r, -c.k * 8 * T2 * (py * py - px * px) / c3,
                           -c.k * (T4 * T2 + 11 * T4 - 5 * T2 + 1) * px * py / (T * c3)});
    return std::max(es, et);
}

double bipolar(const Ctx& c, Point p)
{
    // d(S (1 - T^2)) = 2 dT; the product stays smooth where S itself grows
    auto g = [&](Point q) {
        const double T = c.T(q);
        return bipolar_slope(q, c.fam) * (1 - T * T);
    };
    const auto j = c.jet(p);
    return rel2({diff(g, p, 0, c.h), -c.k * 2 * j.Tx}, {diff(g, p, 1, c.h), -c.k * 2 * j.Ty});
}

bool uses_P(IdentityId id)
{
    return id == IdentityId::P_system || id == IdentityId::curvature_B;
}

}  // namespace

bool identity_admissible(IdentityId id, const ConfocalFamily& fam, Point p, const ResidualOptions& opts, double delta)
{
    if (!admissible(p, fam, delta))
        return false;
    if (opts.field.T) {
        const double T = opts.field.T(p);
        if (!std::isfinite(T) || std::abs(T) < delta || std::abs(T * T - 1) < delta)
            return false;
    }
    if (uses_P(id)) {
        const ConicMember Q(fam, opts.lambda0);
        if (Q.level(p) * (Q.A() * Q.B() > 0 ? 1 : -1) < opts.clearance * opts.clearance - 1)
            return false;
        const double T = opts.field.T ? opts.field.T(p) : confocal_slope(p, fam);
        const double P = slope_P(tangent_of_family(p, Q, 0), T);
        if (!std::isfinite(P) || std::abs(P) < delta)
            return false;
    }
    if (id == IdentityId::bipolar_S) {
        const Vec2 g = bipolar_sigma_gradient(p, fam.c());
        if (std::abs(g.y()) < delta * g.norm())
            return false;
    }
    return true;
}

double residual(IdentityId id, const ConfocalFamily& fam, Point p, double h, const ResidualOptions& opts)
{
    if (!(h >= 1e-5 && h <= 1e-1))
        throw std::invalid_argument("finite-difference step must lie in [1e-5, 1e-1]");
    if (!identity_admissible(id, fam, p, opts, 0.0) || std::abs(p.x) <= h || std::abs(p.y) <= h)
        throw SingularPoint("singular denominator at the evaluation point");
    Ctx c{fam, opts.field.T ? opts.field : confocal_field(fam), opts.lambda0, opts.perturb, h};
    switch (id) {
    case IdentityId::T_system: return t_system(c, p);
    case IdentityId::laplace_T: return laplace(c, p);
    case IdentityId::P_system: return p_system(c, p);
    case IdentityId::curvature_B: return curvature(c, p);
    case IdentityId::S_compat: return s_compat(c, p);
    case IdentityId::Txx_Tyy_tangent: return txx_tyy(c, p);
    case IdentityId::R_form_closed: return r_form(c, p);
    case IdentityId::remark2_split: return remark2(c, p);
    case IdentityId::bipolar_S: return bipolar(c, p);
    }
    throw std::invalid_argument("unknown identity");
}

const std::vector<double>& default_steps()
{
    static const std::vector<double> h = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    return h;
}

ResidualReport order_check(IdentityId id, const ConfocalFamily& fam, Point p, const ResidualOptions& opts,
                           const std::vector<double>& h_values)
{
    if (h_values.size() < 2)
        throw std::invalid_argument("order check needs at least two steps");
    ResidualReport rep;
    rep.identity = id;
    rep.point = p;
    rep.h_values = h_values;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double h : h_values) {
        const double r = residual(id, fam, p, h, opts);
        rep.residuals.push_back(r);
        const double lx = std::log(h), ly = std::log(std::max(r, 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(h_values.size());
    rep.order_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

std::vector<Point> verification_points(IdentityId id, const ConfocalFamily& fam, const Box& box, std::size_t n,
                                       unsigned long long seed, const ResidualOptions& opts)
{
    Domain d;
    const double qx = box.width() / 4, qy = box.height() / 4;
    d.box = {box.xmin + qx, box.xmax - qx, box.ymin + qy, box.ymax - qy};
    d.excluded = [&](Point p) { return !identity_admissible(id, fam, p, opts); };
    return sample_points(d, n, seed);
}

}  // namespace weblab
