#include "meridian/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace meridian {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
} // namespace

double disc_density(Complex center, double radius, Complex z) {
    const double d2 = std::norm(z - center);
    if (d2 >= radius * radius) throw PointNotInDomain("z outside disc");
    return 2.0 * radius / (radius * radius - d2);
}

double annulus_density(Complex center, double r, double R, Complex z) {
    const double rho = std::abs(z - center);
    if (rho <= r || rho >= R) throw PointNotInDomain("z outside annulus");
    const double L = std::log(R / r);
    return (kPi / L) / (rho * std::sin(kPi * std::log(rho / r) / L));
}

double punctured_disc_density(Complex puncture, double radius, Complex z) {
    const double rho = std::abs(z - puncture);
    if (rho <= 0.0 || rho >= radius) throw PointNotInDomain("z outside punctured disc");
    return 1.0 / (rho * std::log(radius / rho));
}

double closed_form_density(ClosedFormKind kind, const ClosedFormParams& p, Complex z) {
    switch (kind) {
        case ClosedFormKind::Disc: return disc_density(p.center, p.R, z);
        case ClosedFormKind::Annulus: return annulus_density(p.center, p.r, p.R, z);
    }
    throw Error("unreachable");
}

double MetricField::log_density_at(Complex z) const {
    const double fx = (z.real() - x0) / h, fy = (z.imag() - y0) / h;
    const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
    if (i < 0 || j < 0 || i + 1 >= nx || j + 1 >= ny)
        throw CurveTooCloseToBoundary("point off the solved grid");
    const double tx = fx - i, ty = fy - j;
    const double u00 = logdensity[idx(i, j)], u10 = logdensity[idx(i + 1, j)];
    const double u01 = logdensity[idx(i, j + 1)], u11 = logdensity[idx(i + 1, j + 1)];
    if (std::isnan(u00) || std::isnan(u10) || std::isnan(u01) || std::isnan(u11))
        throw CurveTooCloseToBoundary("unsolved grid cell");
    return (1 - tx) * (1 - ty) * u00 + tx * (1 - ty) * u10 + (1 - tx) * ty * u01 + tx * ty * u11;
}

double MetricField::density_at(Complex z) const { return std::exp(log_density_at(z)); }

bool MetricField::covered(Complex z) const {
    const double fx = (z.real() - x0) / h, fy = (z.imag() - y0) / h;
    const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
    if (i < 0 || j < 0 || i + 1 >= nx || j + 1 >= ny) return false;
    return !std::isnan(logdensity[idx(i, j)]) && !std::isnan(logdensity[idx(i + 1, j)]) &&
           !std::isnan(logdensity[idx(i, j + 1)]) && !std::isnan(logdensity[idx(i + 1, j + 1)]);
}

double MetricField::clearance_at(Complex z) const {
    const double fx = (z.real() - x0) / h, fy = (z.imag() - y0) / h;
    const int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
    if (i < 0 || j < 0 || i + 1 >= nx || j + 1 >= ny) return 0.0;
    const double tx = fx - i, ty = fy - j;
    return (1 - tx) * (1 - ty) * bdist[idx(i, j)] + tx * (1 - ty) * bdist[idx(i + 1, j)] +
           (1 - tx) * ty * bdist[idx(i, j + 1)] + tx * ty * bdist[idx(i + 1, j + 1)];
}

Complex MetricField::log_density_gradient(Complex z) const {
    const double d = 0.5 * h;
    const double ux = (log_density_at(z + Complex(d, 0)) - log_density_at(z - Complex(d, 0))) / (2 * d);
    const double uy = (log_density_at(z + Complex(0, d)) - log_density_at(z - Complex(0, d))) / (2 * d);
    return {ux, uy};
}

namespace {

struct Grid {
    double x0, y0, h;
    int nx, ny;
};

Grid make_grid(const Domain& domain, double h, double margin) {
    double x0, y0, x1, y1;
    domain.bounding_box(x0, y0, x1, y1);
    x0 -= margin + 2 * h;
    y0 -= margin + 2 * h;
    x1 += margin + 2 * h;
    y1 += margin + 2 * h;
    Grid g;
    g.h = h;
    g.x0 = x0;
    g.y0 = y0;
    g.nx = static_cast<int>(std::ceil((x1 - x0) / h)) + 1;
    g.ny = static_cast<int>(std::ceil((y1 - y0) / h)) + 1;
    return g;
}

void fill_geometry(MetricField& f, const Domain& domain, std::vector<int>* nearest = nullptr) {
    const int nx = f.nx, ny = f.ny;
    f.bdist.assign(static_cast<size_t>(nx) * ny, 0.0);
    f.state.assign(static_cast<size_t>(nx) * ny, 0);
    f.logdensity.assign(static_cast<size_t>(nx) * ny, kNaN);
    if (nearest) nearest->assign(static_cast<size_t>(nx) * ny, -1);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Complex z = f.node(i, j);
            double d = std::numeric_limits<double>::max();
            int arg = -1;
            for (size_t k = 0; k < domain.components.size(); ++k) {
                const double dk = domain.components[k].euclidean_dist(z);
                if (dk < d) {
                    d = dk;
                    arg = static_cast<int>(k);
                }
            }
            if (!domain.contains(z)) d = 0.0;
            f.bdist[f.idx(i, j)] = d;
            if (nearest) (*nearest)[f.idx(i, j)] = arg;
        }
    }
}

// Log-density boundary data on the offset contour. The leading behaviour is
// u = -log(delta); for circular boundaries the curvature correction is taken
// from the exact local model (disc interior / disc exterior / puncture),
// which removes the O(delta/r) error the bare log has at small radii.
double boundary_log_density(const Domain& domain, int comp_index, Complex z, double delta) {
    const Component& comp = domain.components[comp_index];
    if (const auto* disc = std::get_if<DiscSpec>(&comp.geometry)) {
        const double rho = std::abs(z - disc->center);
        if (rho > disc->radius)
            return -std::log(rho * std::log(rho / disc->radius));
    } else if (const auto* outer = std::get_if<OuterDiscComplementSpec>(&comp.geometry)) {
        const double rho = std::abs(z - outer->center);
        if (rho < outer->radius)
            return std::log(2.0 * outer->radius / (outer->radius * outer->radius - rho * rho));
    } else if (const auto* pt = std::get_if<PointSpec>(&comp.geometry)) {
        // punctured-disc model with the cap radius set by the nearest other
        // boundary piece
        double cap = std::numeric_limits<double>::max();
        for (size_t k = 0; k < domain.components.size(); ++k) {
            if (static_cast<int>(k) == comp_index) continue;
            cap = std::min(cap, domain.components[k].euclidean_dist(pt->z));
        }
        cap = std::min(cap, 1.0);
        if (delta < 0.6 * cap) return -std::log(delta * std::log(cap / delta));
    }
    return -std::log(delta);
}

void check_gaps(const Domain& domain, double h) {
    const int n = domain.connectivity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double gap = std::numeric_limits<double>::max();
            for (const auto& p : domain.components[i].sample.points) {
                if (p.is_infinity()) continue;
                gap = std::min(gap, domain.components[j].euclidean_dist(p.z));
            }
            if (gap < 8.0 * h)
                throw GridTooCoarse("fewer than 8 nodes across the gap between components " +
                                    std::to_string(i) + " and " + std::to_string(j));
        }
    }
}

} // namespace

MetricField solve_density(const Domain& domain, double h, const SolveOptions& opts) {
    if (h <= 0.0) throw Error("grid spacing must be positive");
    if (opts.check_gaps) check_gaps(domain, h);

    MetricField f;
    f.domain = domain;
    const Grid g = make_grid(domain, h, opts.margin);
    f.x0 = g.x0;
    f.y0 = g.y0;
    f.h = h;
    f.nx = g.nx;
    f.ny = g.ny;
    f.boundary_offset = opts.offset_factor * h;
    std::vector<int> nearest;
    fill_geometry(f, domain, &nearest);

    const int nx = f.nx, ny = f.ny;
    const double delta0 = f.boundary_offset;

    // Interior nodes: delta > delta_0. Dirichlet layer: nodes adjacent to an
    // interior node with 0 < delta <= delta_0, carrying u = -log(delta).
    std::vector<int> unknown_of(static_cast<size_t>(nx) * ny, -1);
    std::vector<int> nodes;
    for (int j = 1; j + 1 < ny; ++j)
        for (int i = 1; i + 1 < nx; ++i)
            if (f.bdist[f.idx(i, j)] > delta0) {
                unknown_of[f.idx(i, j)] = static_cast<int>(nodes.size());
                nodes.push_back(f.idx(i, j));
                f.state[f.idx(i, j)] = 1;
            }
    if (nodes.empty()) throw GridTooCoarse("no interior nodes at this resolution");

    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            const int id = f.idx(i, j);
            if (f.state[id] == 1) continue;
            const bool near_interior = f.state[f.idx(i - 1, j)] == 1 || f.state[f.idx(i + 1, j)] == 1 ||
                                       f.state[f.idx(i, j - 1)] == 1 || f.state[f.idx(i, j + 1)] == 1;
            if (!near_interior) continue;
            const double d = f.bdist[id];
            if (d <= 0.0)
                throw GridTooCoarse("Dirichlet layer node inside the complement; shrink h");
            f.state[id] = 2;
            f.logdensity[id] = boundary_log_density(domain, nearest[id], f.node(i, j), d);
        }
    }

    const int m = static_cast<int>(nodes.size());
    Eigen::VectorXd u(m);
    for (int k = 0; k < m; ++k)
        u[k] = boundary_log_density(domain, nearest[nodes[k]], f.node(nodes[k] % nx, nodes[k] / nx),
                                    f.bdist[nodes[k]]);

    // Assemble the 5-point Laplacian with Dirichlet data folded into rhs0:
    // (L u)_k + rhs0_k approximates Laplace(u) at node k.
    const double ih2 = 1.0 / (h * h);
    Eigen::SparseMatrix<double> L(m, m);
    Eigen::VectorXd rhs0 = Eigen::VectorXd::Zero(m);
    {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<size_t>(m) * 5);
        for (int k = 0; k < m; ++k) {
            const int id = nodes[k];
            const int i = id % nx, j = id / nx;
            trips.emplace_back(k, k, -4.0 * ih2);
            const int nb[4] = {f.idx(i - 1, j), f.idx(i + 1, j), f.idx(i, j - 1), f.idx(i, j + 1)};
            for (const int nid : nb) {
                if (unknown_of[nid] >= 0)
                    trips.emplace_back(k, unknown_of[nid], ih2);
                else if (f.state[nid] == 2)
                    rhs0[k] += ih2 * f.logdensity[nid];
                else
                    throw GridTooCoarse("interior node with an unsolved neighbour");
            }
        }
        L.setFromTriplets(trips.begin(), trips.end());
    }

    auto residual = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        Eigen::VectorXd r = L * v + rhs0;
        for (int k = 0; k < m; ++k) r[k] -= std::exp(2.0 * v[k]);
        return r;
    };

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
    bool analyzed = false;

    Eigen::VectorXd F = residual(u);
    double fnorm = F.lpNorm<Eigen::Infinity>();
    int iter = 0;
    for (; iter < opts.max_newton && fnorm > opts.tol; ++iter) {
        // Newton: J delta = -F with J = L - diag(2 e^{2u}). M = -J is SPD.
        Eigen::SparseMatrix<double> M = -L;
        for (int k = 0; k < m; ++k) M.coeffRef(k, k) += 2.0 * std::exp(2.0 * u[k]);
        if (!analyzed) {
            solver.analyzePattern(M);
            analyzed = true;
        }
        solver.factorize(M);
        if (solver.info() != Eigen::Success) throw NonConvergence("LDLT factorization failed");
        Eigen::VectorXd d = solver.solve(F);

        double alpha = 1.0;
        Eigen::VectorXd trial;
        double tnorm = fnorm;
        for (int bt = 0; bt < 12; ++bt) {
            trial = u + alpha * d;
            tnorm = residual(trial).lpNorm<Eigen::Infinity>();
            if (tnorm < fnorm) break;
            alpha *= 0.5;
        }
        if (tnorm >= fnorm) throw NonConvergence("damped Newton step failed to reduce residual");
        u = trial;
        F = residual(u);
        fnorm = F.lpNorm<Eigen::Infinity>();
    }
    if (fnorm > opts.tol)
        throw NonConvergence("residual " + std::to_string(fnorm) + " after " +
                             std::to_string(iter) + " iterations");

    for (int k = 0; k < m; ++k) f.logdensity[nodes[k]] = u[k];
    f.residual_norm = fnorm;
    f.newton_iterations = iter;
    return f;
}

MetricField closed_form_field(const Domain& domain, ClosedFormKind kind,
                              const ClosedFormParams& params, double h) {
    MetricField f;
    f.domain = domain;
    const Grid g = make_grid(domain, h, 0.0);
    f.x0 = g.x0;
    f.y0 = g.y0;
    f.h = h;
    f.nx = g.nx;
    f.ny = g.ny;
    f.boundary_offset = 0.0;
    fill_geometry(f, domain);
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            const int id = f.idx(i, j);
            if (f.bdist[id] <= 0.0) continue;
            try {
                f.logdensity[id] = std::log(closed_form_density(kind, params, f.node(i, j)));
                f.state[id] = 1;
            } catch (const PointNotInDomain&) {
            }
        }
    }
    f.residual_norm = 0.0;
    return f;
}

double hyp_length(const MetricField& field, const ClosedCurve& curve) {
    for (const auto& v : curve.vertices)
        if (field.clearance_at(v) < 2.0 * field.h)
            throw CurveTooCloseToBoundary("curve clearance below 2h");
    double len = 0.0;
    double prev = field.density_at(curve.vertices[0]);
    for (size_t i = 0; i + 1 < curve.vertices.size(); ++i) {
        const double next = field.density_at(curve.vertices[i + 1]);
        len += 0.5 * (prev + next) * std::abs(curve.vertices[i + 1] - curve.vertices[i]);
        prev = next;
    }
    return len;
}

double hyp_length_open(const MetricField& field, const std::vector<Complex>& path) {
    if (path.size() < 2) return 0.0;
    double len = 0.0;
    double prev = field.density_at(path[0]);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const double next = field.density_at(path[i + 1]);
        len += 0.5 * (prev + next) * std::abs(path[i + 1] - path[i]);
        prev = next;
    }
    return len;
}

namespace {

// Local smoothing of a grid path: each interior vertex is moved toward the
// minimizer of the two-segment trapezoid energy, keeping endpoints fixed
// (the last vertex may slide along the target curve via projection).
double relax_path(const MetricField& field, std::vector<Complex>& path,
                  const ClosedCurve* target, int sweeps) {
    auto seg_energy = [&](Complex a, Complex b) {
        return 0.5 * (field.density_at(a) + field.density_at(b)) * std::abs(b - a);
    };
    for (int s = 0; s < sweeps; ++s) {
        const double decay = std::pow(0.5, s / 8.0);
        // resample to keep vertices spread
        std::vector<Complex> rs;
        rs.push_back(path.front());
        double total = 0.0;
        for (size_t i = 0; i + 1 < path.size(); ++i) total += std::abs(path[i + 1] - path[i]);
        const size_t n = std::max<size_t>(path.size(), 16);
        double acc = 0.0;
        size_t seg = 0;
        for (size_t k = 1; k < n; ++k) {
            const double tgt = total * k / n;
            while (seg + 1 < path.size() - 1 && acc + std::abs(path[seg + 1] - path[seg]) < tgt) {
                acc += std::abs(path[seg + 1] - path[seg]);
                ++seg;
            }
            const double span = std::abs(path[seg + 1] - path[seg]);
            const double t = span > 0 ? (tgt - acc) / span : 0.0;
            rs.push_back(path[seg] + (path[seg + 1] - path[seg]) * std::min(1.0, t));
        }
        rs.push_back(path.back());
        path = rs;

        for (size_t i = 1; i + 1 < path.size(); ++i) {
            const Complex a = path[i - 1], b = path[i + 1];
            Complex best = path[i];
            double ebest = seg_energy(a, best) + seg_energy(best, b);
            const double step =
                decay * 0.35 * std::min(std::abs(best - a), std::abs(best - b)) + 1e-12;
            for (int dx = -1; dx <= 1; ++dx) {
                for (int dy = -1; dy <= 1; ++dy) {
                    if (!dx && !dy) continue;
                    const Complex cand = path[i] + Complex(dx * step, dy * step);
                    if (field.clearance_at(cand) < 1.5 * field.h) continue;
                    if (!field.covered(cand)) continue;
                    const double e = seg_energy(a, cand) + seg_energy(cand, b);
                    if (e < ebest) {
                        ebest = e;
                        best = cand;
                    }
                }
            }
            path[i] = best;
        }
        if (target) {
            // slide the endpoint along the target curve
            Complex p = path[path.size() - 2];
            double bd = std::numeric_limits<double>::max();
            Complex proj = path.back();
            for (size_t i = 0; i + 1 < target->vertices.size(); ++i) {
                const Complex a = target->vertices[i], b = target->vertices[i + 1];
                const Complex ab = b - a;
                double t = 0.0;
                if (std::norm(ab) > 0)
                    t = std::clamp(((p - a) / ab).real(), 0.0, 1.0);
                const Complex cand = a + ab * t;
                const double d = std::abs(p - cand);
                if (d < bd) {
                    bd = d;
                    proj = cand;
                }
            }
            path.back() = proj;
        }
    }
    double len = 0.0;
    double prev = field.density_at(path[0]);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        const double next = field.density_at(path[i + 1]);
        len += 0.5 * (prev + next) * std::abs(path[i + 1] - path[i]);
        prev = next;
    }
    return len;
}

} // namespace

double hyp_dist_point_to_set(const MetricField& field, Complex z, const ClosedCurve& target) {
    if (dist_to_curve(z, target) < 0.5 * field.h) return 0.0;

    const int nx = field.nx, ny = field.ny;
    const size_t total = static_cast<size_t>(nx) * ny;
    std::vector<double> dist(total, std::numeric_limits<double>::max());
    std::vector<int> prev(total, -1);
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;

    auto usable = [&](int id) {
        return !std::isnan(field.logdensity[id]) && field.bdist[id] > 1.5 * field.h;
    };

    // Seed every node within one cell of the target with its exact local cost.
    for (size_t i = 0; i + 1 < target.vertices.size(); ++i) {
        const Complex a = target.vertices[i], b = target.vertices[i + 1];
        const int steps = std::max(1, static_cast<int>(std::abs(b - a) / field.h));
        for (int s = 0; s <= steps; ++s) {
            const Complex p = a + (b - a) * (static_cast<double>(s) / steps);
            const int ci = static_cast<int>(std::round((p.real() - field.x0) / field.h));
            const int cj = static_cast<int>(std::round((p.imag() - field.y0) / field.h));
            for (int dj = -1; dj <= 1; ++dj) {
                for (int di = -1; di <= 1; ++di) {
                    const int i2 = ci + di, j2 = cj + dj;
                    if (!field.in_grid(i2, j2)) continue;
                    const int id = field.idx(i2, j2);
                    if (!usable(id)) continue;
                    const Complex q = field.node(i2, j2);
                    const double w =
                        0.5 * (std::exp(field.logdensity[id]) + field.density_at(p)) * std::abs(q - p);
                    if (w < dist[id]) {
                        dist[id] = w;
                        pq.emplace(w, id);
                    }
                }
            }
        }
    }
    if (pq.empty()) throw GridTooCoarse("target curve not covered by the grid");

    // 16-neighbour Dijkstra (axis, diagonal and knight moves).
    static const int moves[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},  {1, -1},
                                     {-1, 1}, {-1, -1}, {2, 1}, {2, -1}, {-2, 1}, {-2, -1},
                                     {1, 2},  {1, -2}, {-1, 2}, {-1, -2}};

    const int zi = static_cast<int>(std::round((z.real() - field.x0) / field.h));
    const int zj = static_cast<int>(std::round((z.imag() - field.y0) / field.h));
    if (!field.in_grid(zi, zj)) throw PointNotInDomain("source off the grid");
    const int ztarget = field.idx(zi, zj);

    while (!pq.empty()) {
        const auto [d, id] = pq.top();
        pq.pop();
        if (d > dist[id]) continue;
        if (id == ztarget) break;
        const int i = id % nx, j = id / nx;
        const double lam_i = std::exp(field.logdensity[id]);
        for (const auto& mv : moves) {
            const int i2 = i + mv[0], j2 = j + mv[1];
            if (!field.in_grid(i2, j2)) continue;
            const int id2 = field.idx(i2, j2);
            if (!usable(id2)) continue;
            const double lam_j = std::exp(field.logdensity[id2]);
            const double w = 0.5 * (lam_i + lam_j) * field.h * std::hypot(mv[0], mv[1]);
            if (dist[id] + w < dist[id2]) {
                dist[id2] = dist[id] + w;
                prev[id2] = id;
                pq.emplace(dist[id2], id2);
            }
        }
    }
    if (dist[ztarget] == std::numeric_limits<double>::max())
        throw GridTooCoarse("grid graph disconnected between point and target");

    // Extract the path from z back to the seed layer, then relax it.
    std::vector<Complex> path;
    path.push_back(z);
    for (int id = ztarget; id >= 0; id = prev[id])
        path.push_back(field.node(id % nx, id / nx));
    const double refined = relax_path(field, path, &target, 40);
    return refined;
}

double hyp_dist_point_to_point(const MetricField& field, Complex z, Complex w) {
    ClosedCurve tiny;
    tiny.vertices = {w, w + Complex(1e-9, 0), w + Complex(0, 1e-9), w};
    tiny.orientation = 1;
    return hyp_dist_point_to_set(field, z, tiny);
}

void dump_field_csv(const MetricField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot write " + path);
    out << "x,y,logdensity\n";
    char buf[96];
    for (int j = 0; j < field.ny; ++j) {
        for (int i = 0; i < field.nx; ++i) {
            const double u = field.logdensity[field.idx(i, j)];
            if (std::isnan(u)) continue;
            const Complex z = field.node(i, j);
            std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\n", z.real(), z.imag(), u);
            out << buf;
        }
    }
}

} // namespace meridian
