#include "weblab/rank_quartic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace weblab {

ProjectivePoint ProjectivePoint::from(const Vec3& v)
{
    const double n = v.norm();
    if (!(n > 0) || !std::isfinite(n))
        throw std::invalid_argument("projective point must be finite and nonzero");
    Vec3 u = v / n;
    for (int i = 0; i < 3; ++i) {
        if (u[i] != 0) {
            if (u[i] < 0)
                u = -u;
            break;
        }
    }
    return {u[0], u[1], u[2]};
}

std::string to_string(ComponentKind k)
{
    return k == ComponentKind::line ? "line" : "conic";
}

std::string to_string(QuarticPattern p)
{
    switch (p) {
    case QuarticPattern::conic_and_two_lines: return "conic_and_two_lines";
    case QuarticPattern::four_general_lines: return "four_general_lines";
    case QuarticPattern::four_concurrent_lines: return "four_concurrent_lines";
    case QuarticPattern::unclassified: break;
    }
    return "unclassified";
}

namespace {

Eigen::VectorXd lift(const Vec3& p, ComponentKind kind)
{
    if (kind == ComponentKind::line)
        return p;
    Eigen::VectorXd m(6);
    m << p[0] * p[0], p[0] * p[1], p[1] * p[1], p[0] * p[2], p[1] * p[2], p[2] * p[2];
    return m;
}

}  // namespace

Mat3 conic_matrix(const Eigen::VectorXd& c)
{
    if (c.size() != 6)
        throw std::invalid_argument("conic needs 6 coefficients");
    Mat3 M;
    M << c[0], c[1] / 2, c[3] / 2,
         c[1] / 2, c[2], c[4] / 2,
         c[3] / 2, c[4] / 2, c[5];
    return M;
}

double FittedComponent::evaluate(const Vec3& p) const
{
    const Vec3 u = p.normalized();
    return coefficients.dot(lift(u, kind));
}

FittedComponent fit_component(const std::vector<ProjectivePoint>& pts, ComponentKind kind)
{
    const int m = kind == ComponentKind::line ? 3 : 6;
    if (static_cast<int>(pts.size()) < m)
        throw std::invalid_argument("too few points for a " + to_string(kind) + " fit");
    Eigen::MatrixXd A(pts.size(), m);
    for (std::size_t k = 0; k < pts.size(); ++k)
        A.row(k) = lift(pts[k].vec().normalized(), kind).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    FittedComponent out;
    out.kind = kind;
    out.coefficients = svd.matrixV().col(m - 1);
    out.residual = (A * out.coefficients).cwiseAbs().maxCoeff();
    if (kind == ComponentKind::conic) {
        out.determinant = conic_matrix(out.coefficients).determinant();
        out.smooth = std::abs(out.determinant) > 1e-8;
    }
    return out;
}

double concurrency_metric(const std::vector<Vec3>& lines)
{
    Eigen::MatrixXd A(lines.size(), 3);
    for (std::size_t i = 0; i < lines.size(); ++i)
        A.row(i) = lines[i].normalized().transpose();
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
    return s[s.size() - 1] / s[0];
}

namespace {

double bracket(const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

double cross_ratio_h(const Eigen::Vector2d& d1, const Eigen::Vector2d& d2, const Eigen::Vector2d& d3,
                     const Eigen::Vector2d& d4)
{
    const Eigen::Vector2d* d[4] = {&d1, &d2, &d3, &d4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(bracket(*d[i], *d[j])) <= 1e-14 * d[i]->norm() * d[j]->norm())
                throw std::domain_error("cross ratio of coincident elements");
    const double den = bracket(d1, d4) * bracket(d2, d3);
    return bracket(d1, d3) * bracket(d2, d4) / den;
}

Eigen::Vector2d homog(Slope m)
{
    return m.is_vertical() ? Eigen::Vector2d(0, 1) : Eigen::Vector2d(1, m.value());
}

}  // namespace

double cross_ratio(Slope m1, Slope m2, Slope m3, Slope m4)
{
    return cross_ratio_h(homog(m1), homog(m2), homog(m3), homog(m4));
}

Slope harmonic_conjugate(Slope m1, Slope m2, Slope m3)
{
    const auto d1 = homog(m1), d2 = homog(m2), d3 = homog(m3);
    const Eigen::Vector2d d4 = bracket(d1, d3) * d2 + bracket(d2, d3) * d1;
    if (d4.norm() == 0)
        throw std::domain_error("harmonic conjugate undefined for coincident slopes");
    return Slope::from_direction(Vec2(d4.x(), d4.y()));
}

double pencil_cross_ratio(const std::vector<Vec3>& lines)
{
    if (lines.size() != 4)
        throw std::invalid_argument("cross ratio needs four lines");
    Eigen::MatrixXd A(4, 3);
    for (int i = 0; i < 4; ++i)
        A.row(i) = lines[i].normalized().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    // the lines live in the plane orthogonal to the common point
    const Vec3 e1 = svd.matrixV().col(0), e2 = svd.matrixV().col(1);
    std::array<Eigen::Vector2d, 4> d;
    for (int i = 0; i < 4; ++i)
        d[i] = {A.row(i).dot(e1), A.row(i).dot(e2)};
    return cross_ratio_h(d[0], d[1], d[2], d[3]);
}

bool QuarticReport::all_pass() const
{
    if (pattern == QuarticPattern::unclassified)
        return false;
    return std::all_of(incidences.begin(), incidences.end(), [](const auto& c) { return c.pass; });
}

namespace {

IncidenceCheck check(std::string name, double value, double threshold, bool below)
{
    IncidenceCheck c{std::move(name), value, threshold, below, false};
    c.pass = below ? value < threshold : value > threshold;
    return c;
}

}  // namespace

QuarticReport classify(const std::vector<std::vector<ProjectivePoint>>& arcs, const ClassifyOptions& opts)
{
    if (arcs.size() != 4)
        throw std::invalid_argument("classify expects four arcs");
    for (const auto& a : arcs)
        if (a.size() < 12)
            throw std::invalid_argument("each arc needs at least 12 points");
    QuarticReport rep;
    std::vector<std::size_t> lines, conics;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        FittedComponent c = fit_component(arcs[i], ComponentKind::line);
        if (c.residual > opts.line_tol) {
            c = fit_component(arcs[i], ComponentKind::conic);
            if (c.residual > opts.conic_tol || !c.smooth)
                throw std::domain_error("arc " + std::to_string(i) + " fits neither a line nor a smooth conic");
            conics.push_back(i);
        } else {
            lines.push_back(i);
        }
        rep.components.push_back(c);
    }

    if (arcs.size() == 4 && lines.size() == 2 && conics.size() == 2) {
        std::vector<ProjectivePoint> all = arcs[conics[0]];
        all.insert(all.end(), arcs[conics[1]].begin(), arcs[conics[1]].end());
        const FittedComponent cc = fit_component(all, ComponentKind::conic);
        rep.incidences.push_back(check("common_conic_residual", cc.residual, opts.conic_tol, true));
        rep.incidences.push_back(check("common_conic_determinant", std::abs(cc.determinant), opts.smooth_tol, false));
        const Vec3 meet = rep.components[lines[0]].coefficients.head<3>().cross(
            Vec3(rep.components[lines[1]].coefficients.head<3>()));
        const double on = meet.norm() > 0 ? std::abs(cc.evaluate(meet)) : 1.0;
        rep.incidences.push_back(check("line_meet_on_conic", on, opts.incidence_tol, true));
        rep.common_conic = cc;
        rep.pattern = QuarticPattern::conic_and_two_lines;
    } else if (arcs.size() == 4 && lines.size() == 4) {
        std::vector<Vec3> L;
        for (const auto& c : rep.components)
            L.push_back(c.coefficients.head<3>());
        const double conc = concurrency_metric(L);
        if (conc < opts.concurrency_tol) {
            rep.incidences.push_back(check("concurrency", conc, opts.concurrency_tol, true));
            rep.cross_ratio = pencil_cross_ratio(L);
            rep.incidences.push_back(check("harmonic", std::abs(rep.cross_ratio + 1), opts.cross_ratio_tol, true));
            rep.pattern = QuarticPattern::four_concurrent_lines;
        } else {
            double worst_triple = 1;
            for (const auto& t : index_subsets(4, 3))
                worst_triple = std::min(worst_triple, concurrency_metric({L[t[0]], L[t[1]], L[t[2]]}));
            double worst_pair = 1;
            for (const auto& t : index_subsets(4, 2))
                worst_pair = std::min(worst_pair, L[t[0]].normalized().cross(L[t[1]].normalized()).norm());
            rep.incidences.push_back(check("no_three_concurrent", worst_triple, opts.general_position, false));
            rep.incidences.push_back(check("distinct_lines", worst_pair, opts.general_position, false));
            rep.pattern = QuarticPattern::four_general_lines;
        }
    }
    return rep;
}

namespace {

std::vector<Point> diagonal(const Box& b, int n, bool anti)
{
    const double mx = 0.05 * b.width(), my = 0.05 * b.height();
    std::vector<Point> out;
    for (int k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.5 : double(k) / (n - 1);
        const double x = b.xmin + mx + t * (b.width() - 2 * mx);
        const double y = anti ? b.ymax - my - t * (b.height() - 2 * my) : b.ymin + my + t * (b.height() - 2 * my);
        out.push_back({x, y});
    }
    return out;
}

}  // namespace

ArcSet frame_arc_set(SystemKind kind, const ConfocalFamily& fam, const Web& w, int per_diagonal,
                     const TransportOptions& opts)
{
    if (kind != SystemKind::cartesian && kind != SystemKind::bipolar)
        throw std::invalid_argument("frame arcs need the cartesian or bipolar system");
    if (w.size() != 4)
        throw std::invalid_argument("frame arcs need a 4-web");
    if (per_diagonal < 6)
        throw std::invalid_argument("too few arc samples");
    std::vector<Point> pts = diagonal(w.domain.box, per_diagonal, false);
    const auto anti = diagonal(w.domain.box, per_diagonal, true);
    pts.insert(pts.end(), anti.begin(), anti.end());

    ArcSet out(4);
    FrameState st = identity_frame(pts.front());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k > 0)
            st = transport(kind, fam, {pts[k - 1], pts[k]}, st, opts);
        const auto arcs = frame_arc_points(kind, fam, st);
        for (std::size_t i = 0; i < 4; ++i)
            out[i].push_back({i, w.foliations[i].first_integral(pts[k]), ProjectivePoint::from(arcs[i])});
    }
    return out;
}

ArcSet numeric_arc_set(const AbelianBasisNumeric& b, const Web& w, const std::vector<Point>& samples)
{
    const auto pts = lie_arcs(b, w, samples);
    ArcSet out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t k = 0; k < samples.size(); ++k)
            out[i].push_back({i, w.foliations[i].first_integral(samples[k]), ProjectivePoint::from(pts[i][k])});
    return out;
}

std::vector<std::vector<ProjectivePoint>> arc_points(const ArcSet& arcs)
{
    std::vector<std::vector<ProjectivePoint>> out;
    for (const auto& a : arcs) {
        out.emplace_back();
        for (const auto& s : a)
            out.back().push_back(s.point);
    }
    return out;
}

}  // namespace weblab
