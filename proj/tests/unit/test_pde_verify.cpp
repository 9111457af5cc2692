#include <doctest.h>

#include <cmath>

#include "weblab/pde_verify.hpp"

using namespace weblab;

namespace {

const ConfocalFamily fam21{2, 1};

}  // namespace

TEST_CASE("identity names round trip")
{
    CHECK(all_identities().size() == 9);
    for (auto id : all_identities())
        CHECK(parse_identity(to_string(id)) == id);
    CHECK_THROWS(parse_identity("T_sistem"));
}

TEST_CASE("slope system at (1,1)")
{
    CHECK(residual(IdentityId::T_system, fam21, {1, 1}, 1e-3) < 1e-6);
}

TEST_CASE("step sizes outside the supported range are rejected")
{
    CHECK_THROWS(residual(IdentityId::T_system, fam21, {1, 1}, 0.5));
    CHECK_THROWS(residual(IdentityId::T_system, fam21, {1, 1}, 1e-7));
    CHECK_THROWS(residual(IdentityId::T_system, fam21, {1, 1}, 0));
}

TEST_CASE("second-order convergence of the slope system")
{
    const auto r = order_check(IdentityId::T_system, fam21, {1.2, 0.7});
    CHECK(r.order_estimate == doctest::Approx(2.0).epsilon(0.05));
    CHECK(r.h_values == default_steps());
    REQUIRE(r.residuals.size() == r.h_values.size());
    for (double v : r.residuals)
        CHECK(v >= 0);
}

TEST_CASE("laplace equation for the confocal slope")
{
    const Box box;
    const auto pts = verification_points(IdentityId::laplace_T, fam21, box, 20, 3);
    CHECK(pts.size() == 20);
    for (Point p : pts)
        CHECK(residual(IdentityId::laplace_T, fam21, p, 1.25e-3) < 1e-5);
}

TEST_CASE("integrating-factor form is closed at (1,1)")
{
    const auto r = order_check(IdentityId::R_form_closed, fam21, {1, 1});
    CHECK(r.residuals.back() < 1e-6);
    CHECK(r.order_estimate == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("blaschke curvature of the tangent web vanishes")
{
    ResidualOptions o;
    o.lambda0 = 0;
    const auto pts = verification_points(IdentityId::curvature_B, fam21, Box{}, 10, 5, o);
    for (Point p : pts)
        CHECK(residual(IdentityId::curvature_B, fam21, p, 1.25e-3, o) < 1e-5);
}

TEST_CASE("every identity converges at second order on the confocal field")
{
    const Box box;
    for (auto id : all_identities()) {
        CAPTURE(to_string(id));
        const auto pts = verification_points(id, fam21, box, 10, 17);
        REQUIRE(pts.size() == 10);
        for (Point p : pts) {
            CHECK(identity_admissible(id, fam21, p));
            const auto r = order_check(id, fam21, p);
            CHECK(r.order_estimate >= 1.9);
            CHECK(r.residuals.back() < 1e-5);
        }
    }
}

TEST_CASE("a perturbed right-hand side plateaus")
{
    ResidualOptions o;
    o.perturb = 1.01;
    for (auto id : all_identities()) {
        CAPTURE(to_string(id));
        const auto pts = verification_points(id, fam21, Box{}, 3, 8, o);
        for (Point p : pts) {
            const auto r = order_check(id, fam21, p, o);
            CHECK(std::abs(r.order_estimate) < 0.5);
            CHECK(r.residuals.back() > 1e-5);
        }
    }
}

TEST_CASE("a slope field from no confocal net fails the slope system")
{
    ResidualOptions o;
    o.field = linear_test_field();
    const auto r = order_check(IdentityId::T_system, fam21, {1.2, 0.7}, o);
    CHECK(std::abs(r.order_estimate) < 0.5);
    CHECK(r.residuals.back() > 1e-3);
    // the linear field is harmonic, so laplace_T alone cannot tell
    CHECK(residual(IdentityId::laplace_T, fam21, {1.2, 0.7}, 1e-3, o) >= 0);
}

TEST_CASE("admissibility of the P identities needs clearance from the conic")
{
    ResidualOptions o;
    CHECK_FALSE(identity_admissible(IdentityId::P_system, fam21, {1.0, 0.6}, o));
    CHECK(identity_admissible(IdentityId::P_system, fam21, {1.8, 1.3}, o));
    CHECK_FALSE(identity_admissible(IdentityId::T_system, fam21, {1.0, 0.01}, o));
    CHECK(identity_admissible(IdentityId::T_system, fam21, {1.0, 0.6}, o));
}

TEST_CASE("verification points are seeded and central")
{
    const Box box;
    const auto a = verification_points(IdentityId::S_compat, fam21, box, 12, 4);
    const auto b = verification_points(IdentityId::S_compat, fam21, box, 12, 4);
    CHECK(a == b);
    for (Point p : a) {
        CHECK(p.x >= box.xmin + 0.25 * box.width());
        CHECK(p.x <= box.xmax - 0.25 * box.width());
        CHECK(p.y >= box.ymin + 0.25 * box.height());
        CHECK(p.y <= box.ymax - 0.25 * box.height());
    }
}
