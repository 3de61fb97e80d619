#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcorr/criteria.hpp"

namespace qcorr {

namespace {

struct Bloch2 {
    Eigen::Vector3d x;  // measured qubit
    Eigen::Vector3d y;  // other qubit
    Eigen::Matrix3d t;  // rows: measured
};

Bloch2 bloch_for(const DensityMatrix& rho, Side measured) {
    if (!rho.is_two_qubit()) throw Error(ErrorKind::DimensionMismatch, "two-qubit state required");
    const FanoBlochForm f = fano_bloch(rho);
    Bloch2 b;
    if (measured == Side::A) {
        b.x = f.a;
        b.y = f.b;
        b.t = f.t;
    } else {
        b.x = f.b;
        b.y = f.a;
        b.t = f.t.transpose();
    }
    return b;
}

double cond_entropy_bloch(const Bloch2& b, const Eigen::Vector3d& n) {
    double h = 0.0;
    for (double s : {1.0, -1.0}) {
        const double p = 0.5 * (1.0 + s * n.dot(b.x));
        if (p <= 1e-15) continue;
        const Eigen::Vector3d r = (b.y + s * b.t.transpose() * n) / (2.0 * p);
        h += p * binary_entropy(0.5 * (1.0 + std::min(1.0, r.norm())));
    }
    return h;
}

Eigen::Vector3d direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

struct Point {
    double theta;
    double phi;
    double f;
};

Point nelder_mead(const Bloch2& b, Point start, double step) {
    auto eval = [&](double th, double ph) { return cond_entropy_bloch(b, direction(th, ph)); };
    std::array<Point, 3> s = {start, Point{start.theta + step, start.phi, 0.0},
                              Point{start.theta, start.phi + step, 0.0}};
    for (std::size_t i = 1; i < 3; ++i) s[i].f = eval(s[i].theta, s[i].phi);
    auto by_f = [](const Point& p, const Point& q) { return p.f < q.f; };
    for (int iter = 0; iter < 400; ++iter) {
        std::sort(s.begin(), s.end(), by_f);
        if (s[2].f - s[0].f < 1e-15 && std::abs(s[2].theta - s[0].theta) + std::abs(s[2].phi - s[0].phi) < 1e-10)
            break;
        const double ct = 0.5 * (s[0].theta + s[1].theta);
        const double cp = 0.5 * (s[0].phi + s[1].phi);
        Point r{2 * ct - s[2].theta, 2 * cp - s[2].phi, 0.0};
        r.f = eval(r.theta, r.phi);
        if (r.f < s[0].f) {
            Point e{3 * ct - 2 * s[2].theta, 3 * cp - 2 * s[2].phi, 0.0};
            e.f = eval(e.theta, e.phi);
            s[2] = e.f < r.f ? e : r;
        } else if (r.f < s[1].f) {
            s[2] = r;
        } else {
            Point c{0.5 * (ct + s[2].theta), 0.5 * (cp + s[2].phi), 0.0};
            c.f = eval(c.theta, c.phi);
            if (c.f < s[2].f) {
                s[2] = c;
            } else {
                for (std::size_t i = 1; i < 3; ++i) {
                    s[i].theta = 0.5 * (s[0].theta + s[i].theta);
                    s[i].phi = 0.5 * (s[0].phi + s[i].phi);
                    s[i].f = eval(s[i].theta, s[i].phi);
                }
            }
        }
    }
    return *std::min_element(s.begin(), s.end(), by_f);
}

}  // namespace

double measured_conditional_entropy(const DensityMatrix& rho, Side measured, const RealVector& n) {
    if (n.size() != 3) throw Error(ErrorKind::DimensionMismatch, "direction must have three components");
    const double len = n.norm();
    if (!(len > 0.0)) throw Error(ErrorKind::OutOfRange, "direction must be nonzero");
    return cond_entropy_bloch(bloch_for(rho, measured), Eigen::Vector3d(n / len));
}

DiscordResult discord_numeric_detail(const DensityMatrix& rho, Side measured) {
    const Bloch2 b = bloch_for(rho, measured);
    constexpr int kGrid = 64;
    const double pi = std::numbers::pi;
    std::vector<Point> grid;
    grid.reserve(kGrid * kGrid);
    for (int i = 0; i < kGrid; ++i) {
        const double th = (i + 0.5) * pi / kGrid;
        for (int j = 0; j < kGrid; ++j) {
            const double ph = 2.0 * pi * j / kGrid;
            grid.push_back({th, ph, cond_entropy_bloch(b, direction(th, ph))});
        }
    }
    std::stable_sort(grid.begin(), grid.end(), [](const Point& p, const Point& q) { return p.f < q.f; });
    Point best = grid.front();
    for (std::size_t k = 0; k < 5; ++k) {
        const Point p = nelder_mead(b, grid[k], pi / kGrid);
        if (p.f < best.f) best = p;
    }
    for (double th : {0.0, pi}) {
        const double f = cond_entropy_bloch(b, direction(th, 0.0));
        if (f < best.f) best = {th, 0.0, f};
    }

    const EntropyReport e = entropy_report(rho);
    const double s_measured = measured == Side::A ? e.s_A : e.s_B;
    DiscordResult r;
    r.conditional = best.f;
    r.value = std::max(0.0, s_measured - e.s_joint + best.f);
    r.direction = direction(best.theta, best.phi);
    return r;
}

double discord_numeric(const DensityMatrix& rho, Side measured) {
    return discord_numeric_detail(rho, measured).value;
}

CriterionVerdict zero_discord_dakic(const DensityMatrix& rho, Side measured, double tol) {
    const Bloch2 b = bloch_for(rho, measured);
    const Eigen::Matrix3d k = b.x * b.x.transpose() + b.t * b.t.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(k, Eigen::EigenvaluesOnly);
    const double residual = std::max(0.0, k.trace() - es.eigenvalues()(2));
    std::ostringstream os;
    os.precision(9);
    os << "residual=" << residual;
    return make_verdict(tol - residual, 0.0, os.str());
}

CriterionVerdict zero_discord_blocks(const DensityMatrix& rho, Side measured) {
    ComplexMatrix m = rho.matrix();
    Dims d = rho.dims();
    if (measured == Side::A) {
        m = swap_subsystems(m, d);
        d = {d.b, d.a};
    }
    const int n = d.a;
    const int k = d.b;
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) blocks.push_back(m.block(i * k, j * k, k, k));

    double worst = 0.0;
    std::string where;
    for (std::size_t p = 0; p < blocks.size(); ++p) {
        const double nn = commutator(blocks[p], blocks[p].adjoint()).norm();
        if (nn > worst) {
            worst = nn;
            where = "normality of block " + std::to_string(p);
        }
        for (std::size_t q = p + 1; q < blocks.size(); ++q) {
            const double c = commutator(blocks[p], blocks[q]).norm();
            if (c > worst) {
                worst = c;
                where = "blocks " + std::to_string(p) + "," + std::to_string(q);
            }
        }
    }
    const double tol = 1e-8 * (1.0 + m.norm());
    return make_verdict(tol - worst, 0.0, where);
}

std::string_view to_string(Classicality c) noexcept {
    switch (c) {
        case Classicality::CC: return "CC";
        case Classicality::CQ: return "CQ";
        case Classicality::QC: return "QC";
        case Classicality::QuantumQuantum: return "QQ";
    }
    return "?";
}

Classicality classify_ccq(const DensityMatrix& rho) {
    const bool cq = zero_discord_blocks(rho, Side::A).holds;
    const bool qc = zero_discord_blocks(rho, Side::B).holds;
    if (cq && qc) return Classicality::CC;
    if (cq) return Classicality::CQ;
    if (qc) return Classicality::QC;
    return Classicality::QuantumQuantum;
}

}  // namespace qcorr
