#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weblab/conic_geometry.hpp"

namespace weblab {

struct Foliation {
    std::string name;
    std::function<Slope(Point)> slope;
    std::function<double(Point)> first_integral;
    std::function<Vec2(Point)> gradient;
    std::function<bool(Point)> singular;

    // unit leaf direction at p
    Vec2 direction(Point p) const { return slope(p).direction(); }
};

struct Box {
    double xmin = 0.5;
    double xmax = 2.0;
    double ymin = 0.5;
    double ymax = 1.5;

    bool contains(Point p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

struct Domain {
    Box box;
    std::function<bool(Point)> excluded;  // may be empty

    bool admissible(Point p) const { return box.contains(p) && !(excluded && excluded(p)); }
};

struct Web {
    std::vector<Foliation> foliations;
    Domain domain;

    Web() = default;
    Web(std::vector<Foliation> f, Domain d);

    std::size_t size() const { return foliations.size(); }
    // largest |cos| between leaf directions at p; 1 means two leaves coincide
    double max_direction_overlap(Point p) const;
};

struct FlowOptions {
    double tolerance = 1e-10;
    long max_steps = 100000;
    // finish with a Newton solve on the two first integrals
    bool polish = true;
    // region the leaf must stay in; empty means unrestricted
    std::function<bool(Point)> inside;
};

// Follow the leaf of f through p until the first integral of `transversal`
// reaches `target`.
Point flow(const Foliation& f, Point p, const Foliation& transversal, double target,
           const FlowOptions& opts = {});

struct HexagonDefect {
    double epsilon = 0;
    double defect = 0;
    double order_estimate = 0;  // NaN when both defects are below resolution
};

// Closure figure around `center` with signed step eps along foliation 0.
double hexagon_gap(const Web& w, Point center, double eps, const FlowOptions& opts = {});
// Gap at eps and eps/2 plus the fitted order.
HexagonDefect hexagon_defect(const Web& w, Point center, double eps, const FlowOptions& opts = {});

std::vector<std::vector<std::size_t>> index_subsets(std::size_t n, std::size_t k);
std::vector<Web> subwebs(const Web& w, std::size_t k);

// Deterministic admissible sample points in the web's domain.
std::vector<Point> sample_points(const Domain& d, std::size_t n, unsigned long long seed);

}  // namespace weblab
