#include "weblab/web_core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

namespace weblab {

namespace odeint = boost::numeric::odeint;

Web::Web(std::vector<Foliation> f, Domain d) : foliations(std::move(f)), domain(std::move(d))
{
    if (foliations.size() < 2 || foliations.size() > 6)
        throw std::invalid_argument("a web has between 2 and 6 foliations");
}

double Web::max_direction_overlap(Point p) const
{
    double worst = 0;
    for (std::size_t i = 0; i < foliations.size(); ++i)
        for (std::size_t j = i + 1; j < foliations.size(); ++j)
            worst = std::max(worst, std::abs(foliations[i].direction(p).dot(foliations[j].direction(p))));
    return worst;
}

namespace {

using State = std::array<double, 2>;

struct LeafField {
    const Foliation& f;
    const Foliation& t;

    void operator()(const State& s, State& ds, double /*u*/) const
    {
        const Point p{s[0], s[1]};
        const Vec2 v = f.direction(p);
        const Vec2 g = t.gradient(p);
        const double den = g.dot(v);
        if (std::abs(den) <= 1e-12 * g.norm())
            throw SingularPoint("leaf is tangent to the transversal foliation");
        ds[0] = v.x() / den;
        ds[1] = v.y() / den;
    }
};

Point newton_polish(const Foliation& f, double uf, const Foliation& t, double target, Point q)
{
    Point best = q;
    double best_err = std::hypot(f.first_integral(q) - uf, t.first_integral(q) - target);
    for (int it = 0; it < 6 && best_err > 0; ++it) {
        Eigen::Matrix2d J;
        J.row(0) = f.gradient(best).transpose();
        J.row(1) = t.gradient(best).transpose();
        const Vec2 r(f.first_integral(best) - uf, t.first_integral(best) - target);
        const Vec2 step = J.partialPivLu().solve(r);
        const Point cand = Point::of(best.vec() - step);
        if (!std::isfinite(cand.x) || !std::isfinite(cand.y))
            break;
        const double err = std::hypot(f.first_integral(cand) - uf, t.first_integral(cand) - target);
        if (!(err < best_err))
            break;
        best = cand;
        best_err = err;
    }
    return best;
}

}  // namespace

Point flow(const Foliation& f, Point p, const Foliation& transversal, double target, const FlowOptions& opts)
{
    const double u0 = transversal.first_integral(p);
    if (target == u0)
        return p;
    if (!std::isfinite(target))
        throw std::invalid_argument("non-finite flow target");

    const double uf = f.first_integral(p);
    State s{p.x, p.y};
    long steps = 0;
    auto observer = [&](const State& st, double) {
        const Point q{st[0], st[1]};
        if (!std::isfinite(q.x) || !std::isfinite(q.y))
            throw SingularPoint("leaf integration diverged");
        if (opts.inside && !opts.inside(q))
            throw std::domain_error("leaf exits the domain");
        if (++steps > opts.max_steps)
            throw std::runtime_error("leaf integration exceeded the step budget");
    };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opts.tolerance, opts.tolerance);
    const double dt0 = (target - u0) / 16;
    odeint::integrate_adaptive(stepper, LeafField{f, transversal}, s, u0, target, dt0, observer);

    Point q{s[0], s[1]};
    if (opts.polish)
        q = newton_polish(f, uf, transversal, target, q);
    return q;
}

double hexagon_gap(const Web& w, Point center, double eps, const FlowOptions& opts)
{
    if (w.size() != 3)
        throw std::invalid_argument("hexagon figure needs a 3-web");
    const auto& F = w.foliations;
    FlowOptions o = opts;
    if (!o.inside)
        o.inside = [&w](Point q) {
            if (!w.domain.box.contains(q))
                return false;
            for (const auto& f : w.foliations)
                if (f.singular && f.singular(q))
                    return false;
            return true;
        };
    if (!w.domain.admissible(center))
        throw std::domain_error("hexagon center not admissible");

    const double c1 = F[0].first_integral(center);
    const double c2 = F[1].first_integral(center);
    const double c3 = F[2].first_integral(center);
    // start on the F1 leaf through the center, about |eps| away from it
    const double g2 = F[1].gradient(center).norm();
    const Point a = flow(F[0], center, F[1], c2 + eps * g2, o);

    // legs: F2 -> l3, F1 -> l2, F3 -> l1, F2 -> l3, F1 -> l2, F3 -> l1
    Point q = a;
    q = flow(F[1], q, F[2], c3, o);
    q = flow(F[0], q, F[1], c2, o);
    q = flow(F[2], q, F[0], c1, o);
    q = flow(F[1], q, F[2], c3, o);
    q = flow(F[0], q, F[1], c2, o);
    q = flow(F[2], q, F[0], c1, o);
    return (q.vec() - a.vec()).norm();
}

HexagonDefect hexagon_defect(const Web& w, Point center, double eps, const FlowOptions& opts)
{
    HexagonDefect out;
    out.epsilon = eps;
    out.defect = hexagon_gap(w, center, eps, opts);
    const double half = hexagon_gap(w, center, eps / 2, opts);
    const double resolution = 1e-12;
    if (out.defect > resolution && half > resolution)
        out.order_estimate = std::log2(out.defect / half);
    else
        out.order_estimate = std::numeric_limits<double>::quiet_NaN();
    return out;
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k)
{
    if (k > n)
        throw std::invalid_argument("subset size exceeds web size");
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i)
        cur[i] = i;
    while (true) {
        out.push_back(cur);
        if (k == 0)
            break;
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::vector<Web> subwebs(const Web& w, std::size_t k)
{
    std::vector<Web> out;
    for (const auto& idx : index_subsets(w.size(), k)) {
        Web sub;
        sub.domain = w.domain;
        for (auto i : idx)
            sub.foliations.push_back(w.foliations[i]);
        out.push_back(std::move(sub));
    }
    return out;
}

std::vector<Point> sample_points(const Domain& d, std::size_t n, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(d.box.xmin, d.box.xmax), uy(d.box.ymin, d.box.ymax);
    std::vector<Point> out;
    out.reserve(n);
    std::size_t tries = 0;
    while (out.size() < n) {
        if (++tries > 1000 * (n + 10))
            throw std::domain_error("sampling domain is empty or nearly so");
        const Point p{ux(rng), uy(rng)};
        if (d.admissible(p))
            out.push_back(p);
    }
    return out;
}

}  // namespace weblab
