#include "weblab/foliations.hpp"

#include <cmath>
#include <stdexcept>

namespace weblab {

Slope slope_from_gradient(const Vec2& g) { return Slope::from_direction(Vec2(-g.y(), g.x())); }

namespace {

Foliation from_integral(std::string name, std::function<double(Point)> u, std::function<Vec2(Point)> grad,
                        std::function<bool(Point)> singular)
{
    Foliation f;
    f.name = std::move(name);
    f.first_integral = std::move(u);
    f.gradient = std::move(grad);
    f.slope = [g = f.gradient](Point p) { return slope_from_gradient(g(p)); };
    f.singular = std::move(singular);
    return f;
}

bool on_axes(Point p) { return p.x == 0 || p.y == 0; }

}  // namespace

Foliation cartesian_x()
{
    auto f = from_integral(
        "x", [](Point p) { return p.x; }, [](Point) { return Vec2(1, 0); }, [](Point) { return false; });
    f.slope = [](Point) { return Slope::vertical(); };
    return f;
}

Foliation cartesian_y()
{
    auto f = from_integral(
        "y", [](Point p) { return p.y; }, [](Point) { return Vec2(0, 1); }, [](Point) { return false; });
    f.slope = [](Point) { return Slope::finite(0); };
    return f;
}

Foliation confocal_ellipses(const ConfocalFamily& fam)
{
    return from_integral(
        "ellipses", [fam](Point p) { return elliptic_coords(p, fam).lambda1; },
        [fam](Point p) { return elliptic_gradient(p, fam, 1); }, on_axes);
}

Foliation confocal_hyperbolas(const ConfocalFamily& fam)
{
    return from_integral(
        "hyperbolas", [fam](Point p) { return elliptic_coords(p, fam).lambda2; },
        [fam](Point p) { return elliptic_gradient(p, fam, 2); }, on_axes);
}

Foliation bipolar_sigma(const ConfocalFamily& fam)
{
    const double c = fam.c();
    return from_integral(
        "sigma", [c](Point p) { return bipolar_coords(p, c).sigma; },
        [c](Point p) { return bipolar_sigma_gradient(p, c); },
        [c](Point p) { return p.y == 0 && std::abs(p.x) == c; });
}

Foliation bipolar_tau(const ConfocalFamily& fam)
{
    const double c = fam.c();
    return from_integral(
        "tau", [c](Point p) { return bipolar_coords(p, c).tau; },
        [c](Point p) { return bipolar_tau_gradient(p, c); },
        [c](Point p) { return p.y == 0 && std::abs(p.x) == c; });
}

Foliation tangent_lines(const ConicMember& Q, int family)
{
    auto f = from_integral(
        family == 0 ? "tangent_a" : "tangent_b", [Q, family](Point p) { return tangency_angle(p, Q, family); },
        [Q, family](Point p) { return tangency_angle_gradient(p, Q, family); },
        [Q](Point p) { return Q.level(p) * Q.A() * Q.B() <= 0; });
    f.slope = [Q, family](Point p) { return tangent_of_family(p, Q, family); };
    return f;
}

Foliation parallel_ellipses(const ConicMember& Q)
{
    const auto fam = Q.family;
    return from_integral(
        "par_ellipses", [Q](Point p) { return parallel_integrals(p, Q).s1; },
        [Q, fam](Point p) { return parallel_integral_rates(p, Q).first * elliptic_gradient(p, fam, 1); }, on_axes);
}

Foliation parallel_hyperbolas(const ConicMember& Q)
{
    const auto fam = Q.family;
    return from_integral(
        "par_hyperbolas", [Q](Point p) { return parallel_integrals(p, Q).s2; },
        [Q, fam](Point p) { return parallel_integral_rates(p, Q).second * elliptic_gradient(p, fam, 2); }, on_axes);
}

Foliation parallel_tangents(const ConicMember& Q, int family)
{
    const double sgn = family == 0 ? 1.0 : -1.0;
    const auto fam = Q.family;
    auto f = from_integral(
        family == 0 ? "par_tangent_a" : "par_tangent_b",
        [Q, sgn](Point p) {
            const auto s = parallel_integrals(p, Q);
            return s.s1 + sgn * s.s2;
        },
        [Q, fam, sgn](Point p) {
            const auto r = parallel_integral_rates(p, Q);
            return Vec2(r.first * elliptic_gradient(p, fam, 1) + sgn * r.second * elliptic_gradient(p, fam, 2));
        },
        [Q](Point p) { return Q.level(p) <= 0 || on_axes(p); });
    f.slope = [Q, family](Point p) { return tangent_of_family(p, Q, family); };
    return f;
}

Foliation parallel_lines(Slope m)
{
    if (m.is_vertical()) {
        auto f = cartesian_x();
        f.name = "slope:inf";
        return f;
    }
    const double k = m.value();
    auto f = from_integral(
        "slope:" + std::to_string(k), [k](Point p) { return p.y - k * p.x; }, [k](Point) { return Vec2(-k, 1); },
        [](Point) { return false; });
    f.slope = [m](Point) { return m; };
    return f;
}

Foliation riccati_example()
{
    auto f = from_integral(
        "riccati", [](Point p) { return (p.y + p.x / 2 + 0.25) * std::exp(-2 * p.x); },
        [](Point p) { return Vec2(std::exp(-2 * p.x) * (-2 * p.y - p.x), std::exp(-2 * p.x)); },
        [](Point) { return false; });
    f.slope = [](Point p) { return Slope::finite(p.x + 2 * p.y); };
    return f;
}

Foliation reparametrize(const Foliation& f, std::function<double(double)> phi, std::function<double(double)> dphi,
                        const std::string& suffix)
{
    Foliation g = f;
    g.name = f.name + suffix;
    g.first_integral = [u = f.first_integral, phi](Point p) { return phi(u(p)); };
    g.gradient = [u = f.first_integral, grad = f.gradient, dphi](Point p) { return Vec2(dphi(u(p)) * grad(p)); };
    return g;
}

Foliation natural_transform(const Foliation& f, const ConfocalFamily& fam)
{
    const double a2 = fam.a2, b2 = fam.b2;
    if (f.name == "x" || f.name == "y" || f.name == "tau")
        return reparametrize(
            f, [](double u) { return std::log(std::abs(u)); }, [](double u) { return 1 / u; }, "");
    if (f.name == "ellipses")
        return reparametrize(
            f, [b2](double u) { return std::log(b2 - u); }, [b2](double u) { return -1 / (b2 - u); }, "");
    if (f.name == "hyperbolas")
        return reparametrize(
            f, [a2, b2](double u) { return std::log((u - b2) / (a2 - u)); },
            [a2, b2](double u) { return 1 / (u - b2) + 1 / (a2 - u); }, "");
    if (f.name == "sigma")
        return reparametrize(
            f, [](double u) { return std::log(std::tan(u / 2)); }, [](double u) { return 1 / std::sin(u); }, "");
    return f;
}

//---------------------------------------------------------------------------//

WebKind parse_web_kind(const std::string& s)
{
    if (s == "cartesian")
        return WebKind::cartesian;
    if (s == "bipolar")
        return WebKind::bipolar;
    if (s == "tangent")
        return WebKind::tangent;
    if (s == "sixweb")
        return WebKind::sixweb;
    if (s == "custom")
        return WebKind::custom;
    throw std::invalid_argument("unknown web kind '" + s + "'");
}

std::string to_string(WebKind k)
{
    switch (k) {
    case WebKind::cartesian:
        return "cartesian";
    case WebKind::bipolar:
        return "bipolar";
    case WebKind::tangent:
        return "tangent";
    case WebKind::sixweb:
        return "sixweb";
    case WebKind::custom:
        return "custom";
    }
    return "?";
}

std::vector<std::string> foliation_names(const WebSpec& spec)
{
    switch (spec.kind) {
    case WebKind::cartesian:
        return {"x", "y", "ellipses", "hyperbolas"};
    case WebKind::bipolar:
        return {"ellipses", "hyperbolas", "sigma", "tau"};
    case WebKind::tangent:
        if (spec.parallel_tangent)
            return {"par_ellipses", "par_hyperbolas", "par_tangent_a", "par_tangent_b"};
        return {"ellipses", "hyperbolas", "tangent_a", "tangent_b"};
    case WebKind::sixweb:
        return {"x", "y", "ellipses", "hyperbolas", "sigma", "tau"};
    case WebKind::custom:
        return spec.custom;
    }
    return {};
}

Foliation foliation_by_name(const std::string& name, const WebSpec& spec)
{
    const auto& fam = spec.family;
    auto conic = [&] { return ConicMember(fam, spec.lambda0); };
    Foliation f;
    if (name == "x")
        f = cartesian_x();
    else if (name == "y")
        f = cartesian_y();
    else if (name == "ellipses")
        f = confocal_ellipses(fam);
    else if (name == "hyperbolas")
        f = confocal_hyperbolas(fam);
    else if (name == "sigma")
        f = bipolar_sigma(fam);
    else if (name == "tau")
        f = bipolar_tau(fam);
    else if (name == "tangent_a" || name == "tangent_b")
        f = tangent_lines(conic(), name == "tangent_a" ? 0 : 1);
    else if (name == "par_ellipses")
        f = parallel_ellipses(conic());
    else if (name == "par_hyperbolas")
        f = parallel_hyperbolas(conic());
    else if (name == "par_tangent_a" || name == "par_tangent_b")
        f = parallel_tangents(conic(), name == "par_tangent_a" ? 0 : 1);
    else if (name == "riccati")
        f = riccati_example();
    else if (name.rfind("slope:", 0) == 0) {
        const auto v = name.substr(6);
        f = v == "inf" ? parallel_lines(Slope::vertical()) : parallel_lines(Slope::finite(std::stod(v)));
    } else
        throw std::invalid_argument("unknown foliation '" + name + "'");

    if (spec.integrals != IntegralChoice::raw)
        f = natural_transform(f, fam);
    if (spec.integrals == IntegralChoice::cubic)
        f = reparametrize(
            f, [](double u) { return u * u * u + u; }, [](double u) { return 3 * u * u + 1; }, "");
    return f;
}

Domain make_domain(const WebSpec& spec)
{
    Domain d;
    d.box = spec.box;
    const auto fam = spec.family;
    const double delta = spec.margin;
    const bool needs_conic = spec.kind == WebKind::tangent ||
                             (spec.kind == WebKind::custom && [&] {
                                 for (const auto& n : spec.custom)
                                     if (n.find("tangent") != std::string::npos || n.rfind("par_", 0) == 0)
                                         return true;
                                 return false;
                             }());
    const bool confocal = spec.kind != WebKind::custom || [&] {
        for (const auto& n : spec.custom)
            if (n.rfind("slope:", 0) != 0 && n != "riccati")
                return true;
        return false;
    }();
    if (needs_conic) {
        const ConicMember Q(fam, spec.lambda0);
        const double cl2 = spec.clearance * spec.clearance;
        d.excluded = [fam, delta, Q, cl2](Point p) {
            if (!admissible(p, fam, delta))
                return true;
            const double lev = p.x * p.x / Q.A() + p.y * p.y / Q.B();
            // ellipse: stay outside the scaled ellipse; hyperbola: stay between the branches
            return Q.is_ellipse() ? lev < cl2 : lev > 1 / cl2;
        };
    } else if (confocal) {
        d.excluded = [fam, delta](Point p) { return !admissible(p, fam, delta); };
    }
    return d;
}

Web make_web(const WebSpec& spec)
{
    std::vector<Foliation> fs;
    for (const auto& n : foliation_names(spec))
        fs.push_back(foliation_by_name(n, spec));
    return Web(std::move(fs), make_domain(spec));
}

}  // namespace weblab
