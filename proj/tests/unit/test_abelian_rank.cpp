#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "weblab/abelian_rank.hpp"
#include "weblab/foliations.hpp"

using namespace weblab;

namespace {

const ConfocalFamily fam21{2, 1};

Web kind_web(WebKind k)
{
    WebSpec spec;
    spec.kind = k;
    return make_web(spec);
}

Web pick(const Web& w, std::vector<std::size_t> idx)
{
    std::vector<Foliation> f;
    for (auto i : idx)
        f.push_back(w.foliations[i]);
    return Web(f, w.domain);
}

Web pencil_web(std::vector<Slope> slopes, Box box)
{
    std::vector<Foliation> f;
    for (Slope m : slopes)
        f.push_back(parallel_lines(m));
    return Web(f, Domain{box, {}});
}

Foliation cubed(const Foliation& f)
{
    return reparametrize(
        f, [](double u) { return u * u * u + u; }, [](double u) { return 3 * u * u + 1; }, "^3");
}

double projective_gap(const Eigen::Vector3d& a, const Eigen::Vector3d& b)
{
    return 1 - std::abs(a.normalized().dot(b.normalized()));
}

}  // namespace

TEST_CASE("bol bound")
{
    CHECK(bol_bound(2) == 0);
    CHECK(bol_bound(3) == 1);
    CHECK(bol_bound(4) == 3);
    CHECK(bol_bound(5) == 6);
    CHECK(bol_bound(6) == 10);
}

TEST_CASE("two foliations carry no relation")
{
    const Web w = pick(kind_web(WebKind::cartesian), {0, 2});
    const auto r = rank_estimate(w, {});
    CHECK(r.detected_rank == 0);
    CHECK(r.bol_bound == 0);
}

TEST_CASE("singular values are sorted and nonnegative")
{
    const auto r = rank_estimate(kind_web(WebKind::cartesian), {});
    for (const auto* sv : {&r.singular_values, &r.singular_values_lo}) {
        CHECK(std::is_sorted(sv->rbegin(), sv->rend()));
        CHECK(sv->back() >= 0);
    }
    CHECK(r.degrees_tested == std::vector<int>{8, 16});
}

TEST_CASE("confocal plus cartesian has maximal rank")
{
    const auto r = rank_estimate(kind_web(WebKind::cartesian), {});
    CHECK(r.detected_rank == 3);
    CHECK(r.gap_ratio >= 1e3);
    CHECK(r.next_ratio < 1e3);
}

TEST_CASE("hexagonal subwebs of the bipolar web have rank one")
{
    const Web w = kind_web(WebKind::bipolar);
    for (const auto& sub : subwebs(w, 3)) {
        const auto r = rank_estimate(sub, {});
        CHECK(r.detected_rank == 1);
        const auto b = extract_basis(sub, {});
        CHECK(b.relations() == 1);
    }
    CHECK(rank_estimate(w, {}).detected_rank == 3);
}

TEST_CASE("a non-hexagonal 3-web has no relation")
{
    const Web w(std::vector<Foliation>{cartesian_x(), cartesian_y(), riccati_example()}, Domain{Box{}, {}});
    CHECK(rank_estimate(w, {}).detected_rank == 0);
    CHECK_THROWS(extract_basis(w, {}));
}

TEST_CASE("rank never exceeds the bol bound")
{
    for (auto k : {WebKind::cartesian, WebKind::bipolar, WebKind::tangent, WebKind::sixweb}) {
        const auto r = rank_estimate(kind_web(k), {});
        CAPTURE(to_string(k));
        CHECK(r.detected_rank <= r.bol_bound);
    }
}

TEST_CASE("the six-web is not of maximal rank")
{
    const auto r = rank_estimate(kind_web(WebKind::sixweb), {});
    CHECK(r.bol_bound == 10);
    CHECK(r.detected_rank < 10);
}

TEST_CASE("parallel pencils have constant densities")
{
    const Web w = pencil_web({Slope::finite(0), Slope::vertical(), Slope::finite(1)}, Box{-0.5, 0.5, -0.5, 0.5});
    const auto b = extract_basis(w, {});
    REQUIRE(b.relations() == 1);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto [lo, hi] = b.ranges[i];
        const double g0 = b.density(0, i, lo), g1 = b.density(0, i, 0.5 * (lo + hi)), g2 = b.density(0, i, hi);
        CHECK(std::abs(g0) > 1e-3);
        CHECK(g1 == doctest::Approx(g0).epsilon(1e-8));
        CHECK(g2 == doctest::Approx(g0).epsilon(1e-8));
    }
    CHECK(relation_residual(b, w, 0, sample_points(w.domain, 50, 9)) < 1e-10);
}

TEST_CASE("rank is unchanged by the reparametrization u -> u^3 + u")
{
    // kept to a small box: the cubic puts complex branch points at +-0.385i,
    // which ruins polynomial approximation on wider ranges
    const Box box{-0.1, 0.1, -0.1, 0.1};
    for (std::vector<Slope> slopes : {std::vector<Slope>{Slope::finite(0), Slope::vertical(), Slope::finite(1)},
                                      std::vector<Slope>{Slope::finite(0), Slope::vertical(), Slope::finite(1),
                                                         Slope::finite(-1)}}) {
        const Web plain = pencil_web(slopes, box);
        std::vector<Foliation> f;
        for (const auto& x : plain.foliations)
            f.push_back(cubed(x));
        const Web cubic(f, plain.domain);
        const auto r0 = rank_estimate(plain, {});
        const auto r1 = rank_estimate(cubic, {});
        CAPTURE(slopes.size());
        CHECK(r0.detected_rank == bol_bound(slopes.size()));
        CHECK(r1.detected_rank == r0.detected_rank);
    }
}

TEST_CASE("factorization relations lie in the extracted basis")
{
    const Web w = kind_web(WebKind::cartesian);
    const auto b = extract_basis(w, {});
    REQUIRE(b.relations() == 3);
    const auto pts = sample_points(w.domain, 100, 77);
    for (const auto& rel : {factorization_relation_x(fam21), factorization_relation_y(fam21), sum_relation(fam21)}) {
        CAPTURE(rel.name);
        CHECK(projection_residual(b, w, rel, pts) < 1e-6);
    }
    for (std::size_t r = 0; r < 3; ++r)
        CHECK(relation_residual(b, w, r, pts) < 1e-6);
    CHECK(b.held_out_residuals.size() == 3);
}

TEST_CASE("vieta identities behind the factorization relations")
{
    for (Point p : {Point{1, 1}, Point{0.7, 1.3}, Point{1.9, 0.6}}) {
        const auto e = elliptic_coords(p, fam21);
        const double a2 = fam21.a2, b2 = fam21.b2;
        CHECK(std::abs(p.x * p.x * (a2 - b2) - (a2 - e.lambda1) * (a2 - e.lambda2)) < 1e-12);
        CHECK(std::abs(p.y * p.y * (a2 - b2) + (b2 - e.lambda1) * (b2 - e.lambda2)) < 1e-12);
        CHECK(std::abs(p.x * p.x + p.y * p.y + e.lambda1 + e.lambda2 - a2 - b2) < 1e-12);
    }
}

TEST_CASE("a foreign relation is not in the basis")
{
    // x^2 dx alone is not part of any relation of the bipolar web
    const Web w = kind_web(WebKind::bipolar);
    const auto b = extract_basis(w, {});
    KnownRelation fake{"fake", {}};
    for (std::size_t i = 0; i < w.size(); ++i)
        fake.forms.push_back([g = w.foliations[i].gradient, i](Point p) -> Vec2 {
            return i == 0 ? Vec2(p.x * p.x * g(p)) : Vec2(0.0 * g(p));
        });
    CHECK(projection_residual(b, w, fake, sample_points(w.domain, 80, 4)) > 1e-2);
}

TEST_CASE("lie arcs depend only on the leaf")
{
    const Web w = kind_web(WebKind::cartesian);
    const auto b = extract_basis(w, {});
    // two points on the ellipse through (1,1) and two on the vertical line x = 1.2
    const auto ell = w.foliations[2];
    const auto hyp = w.foliations[3];
    const Point a{1, 1};
    const Point a2 = flow(ell, a, hyp, hyp.first_integral({1.2, 0.85}));
    const auto arcs = lie_arcs(b, w, {a, a2, {1.2, 0.7}, {1.2, 1.3}});
    REQUIRE(arcs.size() == 4);
    CHECK(projective_gap(arcs[2][0], arcs[2][1]) < 1e-5);
    CHECK(projective_gap(arcs[0][2], arcs[0][3]) < 1e-5);
    // different leaves, different points
    CHECK(projective_gap(arcs[0][0], arcs[0][2]) > 1e-6);
}

TEST_CASE("lie arcs need three relations")
{
    const Web w = pick(kind_web(WebKind::bipolar), {0, 2, 3});
    const auto b = extract_basis(w, {});
    CHECK_THROWS(lie_arcs(b, w, {{1, 1}}));
}
