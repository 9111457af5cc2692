#include "weblab/abelian_rank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace weblab {

int bol_bound(std::size_t d) { return d < 3 ? 0 : int((d - 1) * (d - 2) / 2); }

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double rescale(double u, std::pair<double, double> r) { return (2 * u - r.first - r.second) / (r.second - r.first); }

// Chebyshev values T_0..T_deg at t
void chebyshev_row(double t, int deg, double* out)
{
    out[0] = 1;
    if (deg >= 1)
        out[1] = t;
    for (int k = 2; k <= deg; ++k)
        out[k] = 2 * t * out[k - 1] - out[k - 2];
}

struct Block {
    MatrixXd Q;  // orthonormal columns spanning the block
    MatrixXd R;
};

struct Assembly {
    std::vector<std::pair<double, double>> ranges;
    std::vector<Block> blocks;
    MatrixXd A;
};

// rows [V(t) * d_x u ; V(t) * d_y u] for one foliation
MatrixXd foliation_block(const Foliation& f, const std::vector<Point>& pts, int deg, std::pair<double, double> range)
{
    const long n = long(pts.size());
    MatrixXd B(2 * n, deg + 1);
    std::vector<double> row(deg + 1);
    for (long k = 0; k < n; ++k) {
        const double u = f.first_integral(pts[k]);
        const Vec2 g = f.gradient(pts[k]);
        chebyshev_row(rescale(u, range), deg, row.data());
        for (int j = 0; j <= deg; ++j) {
            B(k, j) = row[j] * g.x();
            B(n + k, j) = row[j] * g.y();
        }
    }
    return B;
}

std::vector<std::pair<double, double>> integral_ranges(const Web& w, const std::vector<Point>& pts)
{
    std::vector<std::pair<double, double>> out;
    for (const auto& f : w.foliations) {
        double lo = f.first_integral(pts.front()), hi = lo;
        for (const auto& p : pts) {
            const double u = f.first_integral(p);
            if (!std::isfinite(u))
                throw std::domain_error("first integral not finite at a sample point of " + f.name);
            lo = std::min(lo, u);
            hi = std::max(hi, u);
        }
        if (!(hi - lo > 1e-12 * std::max(1.0, std::abs(hi))))
            throw std::domain_error("first integral of " + f.name + " is nearly constant on the samples");
        out.emplace_back(lo, hi);
    }
    return out;
}

Assembly assemble(const Web& w, const std::vector<Point>& pts, int deg)
{
    Assembly a;
    a.ranges = integral_ranges(w, pts);
    const long rows = 2 * long(pts.size());
    const long n = deg + 1;
    a.A.resize(rows, n * long(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) {
        const MatrixXd B = foliation_block(w.foliations[i], pts, deg, a.ranges[i]);
        Eigen::HouseholderQR<MatrixXd> qr(B);
        Block blk;
        blk.Q = qr.householderQ() * MatrixXd::Identity(rows, n);
        blk.R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
        const double rmin = blk.R.diagonal().cwiseAbs().minCoeff();
        const double rmax = blk.R.diagonal().cwiseAbs().maxCoeff();
        if (!(rmin > 1e-13 * rmax))
            throw std::domain_error("ill-conditioned first-integral block for " + w.foliations[i].name);
        a.A.middleCols(long(i) * n, n) = blk.Q;
        a.blocks.push_back(std::move(blk));
    }
    return a;
}

void check_config(const Web& w, const CollocationConfig& cfg)
{
    if (cfg.degree < 1)
        throw std::invalid_argument("collocation degree must be at least 1");
    const long need = 4L * (2 * cfg.degree + 1) * long(w.size());
    if (cfg.samples < need)
        throw std::invalid_argument("collocation needs samples >= 4 (degree+1) d at the doubled degree (" +
                                    std::to_string(need) + ")");
    if (!(cfg.gap_threshold > 1))
        throw std::invalid_argument("gap threshold must exceed 1");
}

std::vector<double> spectrum(const MatrixXd& A)
{
    Eigen::BDCSVD<MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

}  // namespace

RankReport rank_estimate(const Web& w, const CollocationConfig& cfg)
{
    check_config(w, cfg);
    const auto pts = sample_points(w.domain, std::size_t(cfg.samples), cfg.seed);
    RankReport rep;
    rep.degrees_tested = {cfg.degree, 2 * cfg.degree};
    rep.bol_bound = bol_bound(w.size());
    rep.singular_values_lo = spectrum(assemble(w, pts, cfg.degree).A);
    rep.singular_values = spectrum(assemble(w, pts, 2 * cfg.degree).A);

    const auto& lo = rep.singular_values_lo;
    const auto& hi = rep.singular_values;
    const std::size_t n = std::min(lo.size(), hi.size());
    const std::size_t shown = std::min<std::size_t>(n, std::size_t(rep.bol_bound) + 3);
    for (std::size_t j = 0; j < shown; ++j)
        rep.ratios.push_back(lo[lo.size() - 1 - j] / std::max(hi[hi.size() - 1 - j], 1e-300));

    int count = 0;
    double weakest = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = lo[lo.size() - 1 - j], b = hi[hi.size() - 1 - j];
        const bool relation = b <= cfg.floor || b * cfg.gap_threshold <= a;
        if (!relation) {
            rep.next_ratio = a / b;
            break;
        }
        const double ratio = b <= cfg.floor ? std::numeric_limits<double>::infinity() : a / b;
        weakest = count == 0 ? ratio : std::min(weakest, ratio);
        ++count;
    }
    if (count > rep.bol_bound)
        throw std::runtime_error("detected " + std::to_string(count) + " relations, above the bound " +
                                 std::to_string(rep.bol_bound) + ": sampling is degenerate");
    rep.detected_rank = count;
    rep.gap_ratio = count ? weakest : 0;
    return rep;
}

double AbelianBasisNumeric::density(std::size_t relation, std::size_t foliation, double u) const
{
    const auto& c = coefficients.at(relation).at(foliation);
    std::vector<double> row(std::size_t(degree) + 1);
    chebyshev_row(rescale(u, ranges.at(foliation)), degree, row.data());
    double s = 0;
    for (int k = 0; k <= degree; ++k)
        s += c(k) * row[std::size_t(k)];
    return s;
}

AbelianBasisNumeric extract_basis(const Web& w, const CollocationConfig& cfg, int rank)
{
    if (rank < 0)
        rank = rank_estimate(w, cfg).detected_rank;
    if (rank == 0)
        throw std::runtime_error("no Abelian relation detected");
    check_config(w, cfg);
    const int deg = 2 * cfg.degree;
    const auto pts = sample_points(w.domain, std::size_t(cfg.samples), cfg.seed);
    const auto a = assemble(w, pts, deg);
    Eigen::BDCSVD<MatrixXd> svd(a.A, Eigen::ComputeThinV);
    const auto& V = svd.matrixV();
    const long cols = V.cols();
    const long n = deg + 1;

    AbelianBasisNumeric b;
    b.degree = deg;
    b.ranges = a.ranges;
    for (int r = 0; r < rank; ++r) {
        const long col = cols - 1 - r;
        b.singular_values.push_back(svd.singularValues()(col));
        std::vector<VectorXd> per;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const VectorXd v = V.col(col).segment(long(i) * n, n);
            per.push_back(a.blocks[i].R.triangularView<Eigen::Upper>().solve(v));
        }
        b.coefficients.push_back(std::move(per));
    }
    const auto held = sample_points(w.domain, std::size_t(cfg.held_out), cfg.seed + 7919);
    for (std::size_t r = 0; r < b.relations(); ++r)
        b.held_out_residuals.push_back(relation_residual(b, w, r, held));
    return b;
}

double relation_residual(const AbelianBasisNumeric& b, const Web& w, std::size_t relation,
                         const std::vector<Point>& pts)
{
    const long n = long(pts.size());
    VectorXd total = VectorXd::Zero(2 * n);
    double biggest = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        VectorXd term(2 * n);
        for (long k = 0; k < n; ++k) {
            const auto& f = w.foliations[i];
            const Vec2 g = b.density(relation, i, f.first_integral(pts[k])) * f.gradient(pts[k]);
            term(k) = g.x();
            term(n + k) = g.y();
        }
        total += term;
        biggest = std::max(biggest, term.norm());
    }
    return biggest > 0 ? total.norm() / biggest : 0;
}

std::vector<std::vector<Eigen::Vector3d>> lie_arcs(const AbelianBasisNumeric& b, const Web& w,
                                                  const std::vector<Point>& samples)
{
    if (b.relations() != 3)
        throw std::invalid_argument("Lie arcs need exactly three relations");
    std::vector<std::vector<Eigen::Vector3d>> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        for (const auto& p : samples) {
            const double u = w.foliations[i].first_integral(p);
            out[i].emplace_back(b.density(0, i, u), b.density(1, i, u), b.density(2, i, u));
        }
    return out;
}

KnownRelation factorization_relation_x(const ConfocalFamily& fam)
{
    KnownRelation r;
    r.name = "x_factorization";
    r.forms = {
        [](Point p) { return Vec2(1 / p.x, 0); },
        [](Point) { return Vec2(0, 0); },
        [fam](Point p) {
            return Vec2(elliptic_gradient(p, fam, 1) / (2 * (fam.a2 - elliptic_coords(p, fam).lambda1)));
        },
        [fam](Point p) {
            return Vec2(elliptic_gradient(p, fam, 2) / (2 * (fam.a2 - elliptic_coords(p, fam).lambda2)));
        },
    };
    return r;
}

KnownRelation factorization_relation_y(const ConfocalFamily& fam)
{
    KnownRelation r;
    r.name = "y_factorization";
    r.forms = {
        [](Point) { return Vec2(0, 0); },
        [](Point p) { return Vec2(0, 1 / p.y); },
        [fam](Point p) {
            return Vec2(elliptic_gradient(p, fam, 1) / (2 * (fam.b2 - elliptic_coords(p, fam).lambda1)));
        },
        [fam](Point p) {
            return Vec2(elliptic_gradient(p, fam, 2) / (2 * (fam.b2 - elliptic_coords(p, fam).lambda2)));
        },
    };
    return r;
}

KnownRelation sum_relation(const ConfocalFamily& fam)
{
    KnownRelation r;
    r.name = "sum";
    r.forms = {
        [](Point p) { return Vec2(2 * p.x, 0); },
        [](Point p) { return Vec2(0, 2 * p.y); },
        [fam](Point p) { return elliptic_gradient(p, fam, 1); },
        [fam](Point p) { return elliptic_gradient(p, fam, 2); },
    };
    return r;
}

double projection_residual(const AbelianBasisNumeric& b, const Web& w, const KnownRelation& rel,
                           const std::vector<Point>& pts)
{
    if (rel.forms.size() != w.size())
        throw std::invalid_argument("known relation does not match the web size");
    const long rows = long(w.size() * pts.size());
    MatrixXd G(rows, long(b.relations()));
    VectorXd target(rows);
    long k = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& f = w.foliations[i];
        for (const auto& p : pts) {
            const Vec2 g = f.gradient(p);
            // density of the known form with respect to this foliation's integral
            const double weight = g.norm();
            target(k) = rel.forms[i](p).dot(g) / g.squaredNorm() * weight;
            const double u = f.first_integral(p);
            for (std::size_t r = 0; r < b.relations(); ++r)
                G(k, long(r)) = b.density(r, i, u) * weight;
            ++k;
        }
    }
    if (target.norm() == 0)
        throw std::invalid_argument("known relation is trivial");
    const VectorXd alpha = G.colPivHouseholderQr().solve(target);
    return (G * alpha - target).norm() / target.norm();
}

}  // namespace weblab
