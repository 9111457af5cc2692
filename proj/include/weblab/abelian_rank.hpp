#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "weblab/web_core.hpp"

namespace weblab {

struct CollocationConfig {
    int degree = 8;  // the spectrum is also computed at 2 * degree
    int samples = 1200;
    double gap_threshold = 1e3;
    // singular values below this count as relations at both degrees
    double floor = 1e-10;
    unsigned long long seed = 1;
    int held_out = 200;
};

struct RankReport {
    std::vector<double> singular_values;     // at 2 * degree, descending
    std::vector<double> singular_values_lo;  // at degree, descending
    std::vector<double> ratios;              // trailing lo/hi ratios, smallest singular value first
    int detected_rank = 0;
    double gap_ratio = 0;   // weakest ratio among the detected relations (0 if none)
    double next_ratio = 0;  // ratio at the first index not counted
    std::vector<int> degrees_tested;
    int bol_bound = 0;
};

int bol_bound(std::size_t d);

RankReport rank_estimate(const Web& w, const CollocationConfig& cfg);

struct AbelianBasisNumeric {
    int degree = 0;
    std::vector<std::pair<double, double>> ranges;  // first-integral range per foliation
    // coefficients[r][i]: Chebyshev coefficients of the density of foliation i in relation r
    std::vector<std::vector<Eigen::VectorXd>> coefficients;
    std::vector<double> singular_values;
    std::vector<double> held_out_residuals;

    std::size_t relations() const { return coefficients.size(); }
    double density(std::size_t relation, std::size_t foliation, double u) const;
};

// Trailing singular vectors at 2 * degree; rank < 0 means use rank_estimate.
AbelianBasisNumeric extract_basis(const Web& w, const CollocationConfig& cfg, int rank = -1);

// Residual of sum_i g_i(u_i) grad u_i over points, relative to the largest term.
double relation_residual(const AbelianBasisNumeric& b, const Web& w, std::size_t relation,
                         const std::vector<Point>& pts);

// points[i][k] = [g_i^1 : g_i^2 : g_i^3] at samples[k]
std::vector<std::vector<Eigen::Vector3d>> lie_arcs(const AbelianBasisNumeric& b, const Web& w,
                                                  const std::vector<Point>& samples);

// A relation given by one 1-form per foliation, each a multiple of du_i.
struct KnownRelation {
    std::string name;
    std::vector<std::function<Vec2(Point)>> forms;
};

KnownRelation factorization_relation_x(const ConfocalFamily& fam);  // x^2 (a2-b2) = (a2-l1)(a2-l2)
KnownRelation factorization_relation_y(const ConfocalFamily& fam);  // y^2 (a2-b2) = -(b2-l1)(b2-l2)
KnownRelation sum_relation(const ConfocalFamily& fam);              // x^2 + y^2 + l1 + l2 = a2 + b2

// Least-squares projection of the known densities onto the span of the
// extracted relations; returns the relative residual.
double projection_residual(const AbelianBasisNumeric& b, const Web& w, const KnownRelation& rel,
                           const std::vector<Point>& pts);

}  // namespace weblab
