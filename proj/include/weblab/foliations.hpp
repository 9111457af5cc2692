#pragma once

#include <string>
#include <vector>

#include "weblab/web_core.hpp"

namespace weblab {

Slope slope_from_gradient(const Vec2& g);

Foliation cartesian_x();
Foliation cartesian_y();
Foliation confocal_ellipses(const ConfocalFamily& fam);
Foliation confocal_hyperbolas(const ConfocalFamily& fam);
Foliation bipolar_sigma(const ConfocalFamily& fam);
Foliation bipolar_tau(const ConfocalFamily& fam);
// tangents to Q of one family, first integral = tangency parameter
Foliation tangent_lines(const ConicMember& Q, int family);
// same leaves as confocal_ellipses / hyperbolas but with the parallelizing integrals
Foliation parallel_ellipses(const ConicMember& Q);
Foliation parallel_hyperbolas(const ConicMember& Q);
// tangent family with first integral s1 + s2 (family 0) or s1 - s2 (family 1)
Foliation parallel_tangents(const ConicMember& Q, int family);
// lines of fixed slope
Foliation parallel_lines(Slope m);
// leaves of y' = x + 2y
Foliation riccati_example();

// u -> phi(u), gradient scaled by phi'(u)
Foliation reparametrize(const Foliation& f, std::function<double(double)> phi,
                        std::function<double(double)> dphi, const std::string& suffix);

// Replace the first integral by one in which the known relations are
// simple (logarithms of the positive factors, a logit for lambda2 ...).
Foliation natural_transform(const Foliation& f, const ConfocalFamily& fam);

enum class WebKind { cartesian, bipolar, tangent, sixweb, custom };

WebKind parse_web_kind(const std::string& s);
std::string to_string(WebKind k);

enum class IntegralChoice {
    raw,      // integrals as defined by the geometry
    natural,  // natural_transform applied
    cubic,    // natural, then u -> u^3 + u
};

struct WebSpec {
    WebKind kind = WebKind::cartesian;
    ConfocalFamily family;
    Box box;
    double margin = 0.05;
    double lambda0 = 0;           // tangent web conic parameter
    double clearance = 1.3;       // tangent web: keep x^2/A + y^2/B >= clearance^2
    bool parallel_tangent = false;  // tangent web: use the parallelizing integrals
    IntegralChoice integrals = IntegralChoice::natural;
    std::vector<std::string> custom;  // foliation names for the custom kind
};

Foliation foliation_by_name(const std::string& name, const WebSpec& spec);
Domain make_domain(const WebSpec& spec);
Web make_web(const WebSpec& spec);
std::vector<std::string> foliation_names(const WebSpec& spec);

}  // namespace weblab
