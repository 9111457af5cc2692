#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "weblab/abelian_rank.hpp"
#include "weblab/frobenius.hpp"
#include "weblab/web_core.hpp"

namespace weblab {

struct ProjectivePoint {
    double X = 0;
    double Y = 0;
    double Z = 1;

    // unit norm, first nonzero coordinate positive
    static ProjectivePoint from(const Vec3& v);
    Vec3 vec() const { return {X, Y, Z}; }
};

enum class ComponentKind { line, conic };
std::string to_string(ComponentKind k);

struct FittedComponent {
    ComponentKind kind = ComponentKind::line;
    Eigen::VectorXd coefficients;  // line: (a, b, c); conic: X^2, XY, Y^2, XZ, YZ, Z^2
    double residual = 0;           // max algebraic distance over the unit-normalized points
    double determinant = 0;        // conic only: det of the symmetric matrix
    bool smooth = true;            // conic only

    double evaluate(const Vec3& p) const;  // algebraic value at the unit-normalized point
};

FittedComponent fit_component(const std::vector<ProjectivePoint>& pts, ComponentKind kind);
Mat3 conic_matrix(const Eigen::VectorXd& c);

enum class QuarticPattern { conic_and_two_lines, four_general_lines, four_concurrent_lines, unclassified };
std::string to_string(QuarticPattern p);

struct IncidenceCheck {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool below = true;  // pass when value < threshold (else value > threshold)
    bool pass = false;
};

struct ClassifyOptions {
    double line_tol = 1e-6;
    double conic_tol = 1e-8;
    double incidence_tol = 1e-5;
    double concurrency_tol = 1e-6;
    double general_position = 1e-3;
    double cross_ratio_tol = 1e-4;
    double smooth_tol = 1e-8;
};

struct QuarticReport {
    std::vector<FittedComponent> components;  // one per arc
    std::optional<FittedComponent> common_conic;
    std::vector<IncidenceCheck> incidences;
    QuarticPattern pattern = QuarticPattern::unclassified;
    double cross_ratio = 0;  // four concurrent lines only

    bool all_pass() const;
};

QuarticReport classify(const std::vector<std::vector<ProjectivePoint>>& arcs, const ClassifyOptions& opts = {});

double cross_ratio(Slope m1, Slope m2, Slope m3, Slope m4);
// m4 with cross_ratio(m1, m2, m3, m4) = -1
Slope harmonic_conjugate(Slope m1, Slope m2, Slope m3);

// smallest / largest singular value of the stacked line coefficients
double concurrency_metric(const std::vector<Vec3>& lines);
// cross ratio of four concurrent lines, via coordinates in the pencil
double pencil_cross_ratio(const std::vector<Vec3>& lines);

struct ArcSample {
    std::size_t foliation = 0;
    double integral = 0;
    ProjectivePoint point;
};
using ArcSet = std::vector<std::vector<ArcSample>>;

// Arc points from transported frames, sampled along both diagonals of the box.
ArcSet frame_arc_set(SystemKind kind, const ConfocalFamily& fam, const Web& w, int per_diagonal = 16,
                     const TransportOptions& opts = {});
// Arc points from a numerically extracted 3-relation basis.
ArcSet numeric_arc_set(const AbelianBasisNumeric& b, const Web& w, const std::vector<Point>& samples);

std::vector<std::vector<ProjectivePoint>> arc_points(const ArcSet& arcs);

}  // namespace weblab
