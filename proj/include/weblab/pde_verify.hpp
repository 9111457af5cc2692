#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weblab/conic_geometry.hpp"
#include "weblab/web_core.hpp"

namespace weblab {

enum class IdentityId {
    T_system,         // first-order system for the confocal slope
    laplace_T,        // isothermal condition on T
    P_system,         // P_x, P_y of the tangent-line parameter
    curvature_B,      // vanishing Blaschke curvature of line family + net foliation
    S_compat,         // S_x, S_y with S = T_xx - T(T_x^2 + T_y^2)/(T^2 + 1)
    Txx_Tyy_tangent,  // second derivatives forced by the tangent web
    R_form_closed,    // closedness of the integrating-factor form
    remark2_split,    // splitting value of S and the T_xy constraint
    bipolar_S,        // S = 2T/(1 - T^2) for the bipolar pencil form
};

const std::vector<IdentityId>& all_identities();
std::string to_string(IdentityId id);
IdentityId parse_identity(const std::string& s);

// A slope field T with analytic first derivatives.
struct SlopeField {
    std::string name;
    std::function<double(Point)> T;
    std::function<SlopeJet(Point)> jet;
};

SlopeField confocal_field(const ConfocalFamily& fam);
// T = x + y, which is not the slope of any confocal net
SlopeField linear_test_field();

struct ResidualOptions {
    double lambda0 = 0;    // conic whose tangents define P
    double clearance = 1.3;  // P identities: stay where x^2/A + y^2/B >= clearance^2
    double perturb = 1.0;  // right-hand sides are scaled by this (negative controls)
    SlopeField field;      // empty: the confocal field of the family
};

// Relative residual of the identity at p, derivatives by central differences of step h.
double residual(IdentityId id, const ConfocalFamily& fam, Point p, double h, const ResidualOptions& opts = {});

// Whether p avoids the denominators of the identity (x, y, T^2 - 1, P, sigma_y).
bool identity_admissible(IdentityId id, const ConfocalFamily& fam, Point p, const ResidualOptions& opts = {},
                         double delta = 0.05);

struct ResidualReport {
    IdentityId identity = IdentityId::T_system;
    Point point;
    std::vector<double> h_values;
    std::vector<double> residuals;
    double order_estimate = 0;  // least-squares slope of log residual against log h
};

const std::vector<double>& default_steps();

ResidualReport order_check(IdentityId id, const ConfocalFamily& fam, Point p, const ResidualOptions& opts = {},
                           const std::vector<double>& h_values = default_steps());

// n seeded points admissible for the identity, drawn from the central half of
// the box; finite-difference constants grow towards the focal axis.
std::vector<Point> verification_points(IdentityId id, const ConfocalFamily& fam, const Box& box, std::size_t n,
                                       unsigned long long seed, const ResidualOptions& opts = {});

}  // namespace weblab
