#include "meridian/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <Eigen/Dense>

namespace meridian {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<Complex> resample_component_boundary(const Component& comp, int count) {
    if (const auto* disc = std::get_if<DiscSpec>(&comp.geometry)) {
        std::vector<Complex> out;
        for (int k = 0; k < count; ++k)
            out.push_back(disc->center + std::polar(disc->radius, 2 * kPi * k / count));
        return out;
    }
    if (const auto* outer = std::get_if<OuterDiscComplementSpec>(&comp.geometry)) {
        std::vector<Complex> out;
        for (int k = 0; k < count; ++k)
            out.push_back(outer->center + std::polar(outer->radius, 2 * kPi * k / count));
        return out;
    }
    if (const auto* arc = std::get_if<CircleArcSlitSpec>(&comp.geometry)) {
        double span = arc->theta1 - arc->theta0;
        while (span <= 0) span += 2 * kPi;
        std::vector<Complex> out;
        for (int k = 0; k < count; ++k)
            out.push_back(arc->center +
                          std::polar(arc->radius, arc->theta0 + span * k / (count - 1)));
        return out;
    }
    // polyline/cloud: subsample the stored boundary sample
    std::vector<Complex> out;
    const auto& pts = comp.sample.points;
    for (int k = 0; k < count; ++k) {
        const size_t idx = static_cast<size_t>(static_cast<double>(k) * pts.size() / count);
        const auto& p = pts[std::min(idx, pts.size() - 1)];
        if (!p.is_infinity()) out.push_back(p.z);
    }
    return out;
}

double component_diameter(const Component& comp) {
    double best = 0.0;
    const auto& pts = comp.sample.points;
    const size_t stride = std::max<size_t>(1, pts.size() / 64);
    for (size_t i = 0; i < pts.size(); i += stride)
        for (size_t j = i + stride; j < pts.size(); j += stride)
            if (!pts[i].is_infinity() && !pts[j].is_infinity())
                best = std::max(best, std::abs(pts[i].z - pts[j].z));
    return best;
}

} // namespace

double LambdaVector::inf_distance(const LambdaVector& a, const LambdaVector& b) {
    if (a.n != b.n) throw LabelingInconsistent("lambda vectors of different connectivity");
    double worst = 0.0;
    for (size_t k = 0; k < a.lambdas.size(); ++k)
        worst = std::max(worst, std::abs(a.lambdas[k] - b.lambdas[k]));
    for (size_t k = 0; k < a.thetas.size(); ++k) {
        double d = std::abs(a.thetas[k] - b.thetas[k]);
        d = std::min(d, 2 * kPi - d);
        worst = std::max(worst, d);
    }
    return worst;
}

Domain standard_domain(const LambdaVector& lam, Complex basepoint, double sample_density) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(0, 0), 1.0}, sample_density));
    for (size_t j = 0; j + 1 < lam.lambdas.size(); ++j) {
        const double level = std::exp(lam.lambdas[j + 1]);
        const double t0 = lam.thetas[2 * j], t1 = lam.thetas[2 * j + 1];
        comps.push_back(make_component(CircleArcSlitSpec{Complex(0, 0), level, t0, t1},
                                       sample_density));
    }
    comps.push_back(
        make_component(OuterDiscComplementSpec{Complex(0, 0), std::exp(lam.lambda1())},
                       sample_density));
    return validate_domain(std::move(comps), basepoint);
}

Complex CanonicalMap::log_phi_analytic(Complex z) const {
    Complex g(c0, rotation);
    for (size_t p = 0; p < pole_centers.size(); ++p)
        g += pole_coeffs[p] * std::pow(pole_scales[p] / (z - pole_centers[p]), pole_orders[p]);
    for (size_t k = 0; k < outer_coeffs.size(); ++k)
        g += outer_coeffs[k] * std::pow((z - outer_center) / outer_scale, static_cast<int>(k + 1));
    return g + std::log(z - inner_charge);
}

Complex CanonicalMap::phi(Complex z) const {
    Complex g(c0, rotation);
    for (size_t p = 0; p < pole_centers.size(); ++p)
        g += pole_coeffs[p] * std::pow(pole_scales[p] / (z - pole_centers[p]), pole_orders[p]);
    for (size_t k = 0; k < outer_coeffs.size(); ++k)
        g += outer_coeffs[k] * std::pow((z - outer_center) / outer_scale, static_cast<int>(k + 1));
    return (z - inner_charge) * std::exp(g);
}

Complex CanonicalMap::phi_prime(Complex z) const {
    Complex gp(0, 0);
    for (size_t p = 0; p < pole_centers.size(); ++p) {
        const int k = pole_orders[p];
        const Complex w = pole_scales[p] / (z - pole_centers[p]);
        gp += pole_coeffs[p] * static_cast<double>(-k) * std::pow(w, k) / (z - pole_centers[p]);
    }
    for (size_t k = 0; k < outer_coeffs.size(); ++k) {
        const int kk = static_cast<int>(k + 1);
        gp += outer_coeffs[k] * static_cast<double>(kk) *
              std::pow((z - outer_center) / outer_scale, kk - 1) / outer_scale;
    }
    return phi(z) * (1.0 / (z - inner_charge) + gp);
}

CanonicalMap solve_canonical_map(const Domain& domain, const CanonicalLabeling& labeling,
                                 const CanonicalOptions& opts) {
    const int n = domain.connectivity();
    if (n < 2) throw NotMultiplyConnected("canonical map needs n >= 2");
    if (domain.degenerate()) throw DegenerateComponent("point component present");
    if (labeling.inner_index < 0 || labeling.inner_index >= n - 1)
        throw LabelingInconsistent("inner label must pick a bounded component");
    if (opts.samples_per_term < 8)
        throw IllConditioned("need at least 8 boundary samples per term");

    const int N = opts.truncation;
    CanonicalMap map;
    map.domain = domain;
    map.labeling = labeling;
    map.inner_charge = domain.components[labeling.inner_index].witness();

    // outer block about the unbounded component
    const Component& outer = domain.components[n - 1];
    if (const auto* od = std::get_if<OuterDiscComplementSpec>(&outer.geometry)) {
        map.outer_center = od->center;
        map.outer_scale = od->radius;
    } else {
        Complex c(0, 0);
        int cnt = 0;
        for (const auto& p : outer.sample.points)
            if (!p.is_infinity()) {
                c += p.z;
                ++cnt;
            }
        map.outer_center = c / static_cast<double>(std::max(1, cnt));
        double r = 0.0;
        for (const auto& p : outer.sample.points)
            if (!p.is_infinity()) r = std::max(r, std::abs(p.z - map.outer_center));
        map.outer_scale = r;
    }
    const int n_out = 2 * N;

    // per-hole pole bases; the pole centre must not lie in the domain
    for (int j = 0; j + 1 < n; ++j) {
        const Component& comp = domain.components[j];
        Complex centre;
        double scale;
        if (const auto* disc = std::get_if<DiscSpec>(&comp.geometry)) {
            centre = disc->center;
            scale = disc->radius;
        } else if (const auto* arc = std::get_if<CircleArcSlitSpec>(&comp.geometry)) {
            // a concentric slit sits on a level curve of log|phi|, which is
            // then regular off the supporting centre; poles there represent it
            centre = arc->center;
            scale = arc->radius;
            if (domain.contains(centre))
                throw IllConditioned(
                    "arc slit whose supporting centre lies in the domain is not representable "
                    "by this basis");
        } else {
            centre = comp.witness();
            scale = std::max(1e-6, 0.5 * component_diameter(comp));
            if (domain.contains(centre))
                throw IllConditioned("no representable interior point for component " +
                                     std::to_string(j));
        }
        for (int k = 1; k <= N; ++k) {
            map.pole_centers.push_back(centre);
            map.pole_scales.push_back(scale);
            map.pole_orders.push_back(k);
        }
    }

    // unknowns: [c0 | outer 2N | poles 2P | levels mu_i for i != inner]
    const int n_poles = static_cast<int>(map.pole_centers.size());
    const int n_levels = n - 1; // every component except the inner one
    const int cols = 1 + n_out + 2 * n_poles + n_levels;

    const int per_comp = std::max(opts.samples_per_term * std::max(N, 8), 160);
    std::vector<Complex> sample_z;
    std::vector<int> sample_comp;
    for (int i = 0; i < n; ++i) {
        for (const auto& z : resample_component_boundary(domain.components[i], per_comp)) {
            sample_z.push_back(z);
            sample_comp.push_back(i);
        }
    }
    const int rows = static_cast<int>(sample_z.size());
    if (rows < 2 * cols)
        throw IllConditioned("truncation too high for the boundary sample density");

    // level-unknown column of component i (skipping the inner one)
    auto level_col = [&](int i) {
        int c = 1 + n_out + 2 * n_poles;
        for (int k = 0; k < n; ++k) {
            if (k == labeling.inner_index) continue;
            if (k == i) return c;
            ++c;
        }
        return -1;
    };

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd b(rows);
    for (int r = 0; r < rows; ++r) {
        const Complex z = sample_z[r];
        b[r] = -std::log(std::abs(z - map.inner_charge));
        A(r, 0) = 1.0; // c0
        for (int k = 1; k <= N; ++k) {
            const Complex w = std::pow((z - map.outer_center) / map.outer_scale, k);
            A(r, 1 + 2 * (k - 1)) = w.real();
            A(r, 1 + 2 * (k - 1) + 1) = -w.imag(); // Re[(a+ib) w] = a Re w - b Im w
        }
        for (int p = 0; p < n_poles; ++p) {
            const Complex w =
                std::pow(map.pole_scales[p] / (z - map.pole_centers[p]), map.pole_orders[p]);
            A(r, 1 + n_out + 2 * p) = w.real();
            A(r, 1 + n_out + 2 * p + 1) = -w.imag();
        }
        if (sample_comp[r] != labeling.inner_index) A(r, level_col(sample_comp[r])) = -1.0;
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd x = svd.solve(b);
    if (!x.allFinite()) throw IllConditioned("least-squares solve produced non-finite values");

    map.c0 = x[0];
    map.outer_coeffs.resize(N);
    for (int k = 0; k < N; ++k) map.outer_coeffs[k] = Complex(x[1 + 2 * k], x[1 + 2 * k + 1]);
    map.pole_coeffs.resize(n_poles);
    for (int p = 0; p < n_poles; ++p)
        map.pole_coeffs[p] = Complex(x[1 + n_out + 2 * p], x[1 + n_out + 2 * p + 1]);

    map.component_levels.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        if (i != labeling.inner_index) map.component_levels[i] = x[level_col(i)];

    // boundary residual in log|phi|
    double worst = 0.0;
    for (int r = 0; r < rows; ++r) {
        const Complex z = sample_z[r];
        double h = std::log(std::abs(z - map.inner_charge)) + map.c0;
        for (int k = 1; k <= N; ++k)
            h += (map.outer_coeffs[k - 1] * std::pow((z - map.outer_center) / map.outer_scale, k))
                     .real();
        for (int p = 0; p < n_poles; ++p)
            h += (map.pole_coeffs[p] *
                  std::pow(map.pole_scales[p] / (z - map.pole_centers[p]), map.pole_orders[p]))
                     .real();
        worst = std::max(worst, std::abs(h - map.component_levels[sample_comp[r]]));
    }
    map.boundary_residual = worst;

    // rotation: phi'(u) > 0 (equivalent to phi#(u) > 0)
    map.rotation = 0.0;
    map.rotation = -std::arg(map.phi_prime(domain.basepoint));
    map.basepoint_image = map.phi(domain.basepoint);

    // Lambda
    map.lambda.n = n;
    map.lambda.lambdas.push_back(map.component_levels[n - 1]); // lambda^1 = outer level
    for (int i = 0; i + 1 < n; ++i) {
        if (i == labeling.inner_index) continue;
        map.lambda.lambdas.push_back(map.component_levels[i]);
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (i == labeling.inner_index) continue;
        // image arc angular extent: complement of the largest angular gap
        std::vector<double> angs;
        for (const auto& z : resample_component_boundary(domain.components[i], 256))
            angs.push_back(std::arg(map.phi(z)));
        std::sort(angs.begin(), angs.end());
        double big_gap = 2 * kPi - (angs.back() - angs.front());
        double gap_end = angs.front();
        for (size_t k = 0; k + 1 < angs.size(); ++k) {
            const double gap = angs[k + 1] - angs[k];
            if (gap > big_gap) {
                big_gap = gap;
                gap_end = angs[k + 1];
            }
        }
        const double start = gap_end; // arc begins where the largest gap ends
        const double span = 2 * kPi - big_gap;
        map.lambda.thetas.push_back(start);
        map.lambda.thetas.push_back(start + span);
    }

    // inverse-map seeds on a coarse interior lattice
    double x0, y0, x1, y1;
    domain.bounding_box(x0, y0, x1, y1);
    const double spacing =
        opts.seed_spacing > 0 ? opts.seed_spacing : std::max(x1 - x0, y1 - y0) / 48.0;
    for (double yy = y0; yy <= y1; yy += spacing) {
        for (double xx = x0; xx <= x1; xx += spacing) {
            const Complex z(xx, yy);
            if (!domain.contains(z)) continue;
            if (domain.euclidean_boundary_dist(z) < 0.5 * spacing) continue;
            map.seed_z.push_back(z);
            map.seed_w.push_back(map.phi(z));
        }
    }
    map.seed_z.push_back(domain.basepoint);
    map.seed_w.push_back(map.basepoint_image);
    return map;
}

Complex eval_forward(const CanonicalMap& map, Complex z) {
    if (!map.domain.contains(z)) throw PointNotInDomain("eval_forward outside the domain");
    return map.phi(z);
}

Complex eval_inverse(const CanonicalMap& map, Complex w) {
    const double r = std::abs(w);
    if (r < 1.0 - 1e-6 || r > std::exp(map.lambda.lambda1()) + 1e-6)
        throw WOutsideRange("w outside the slit annulus");
    size_t best = 0;
    double bd = std::numeric_limits<double>::max();
    for (size_t k = 0; k < map.seed_w.size(); ++k) {
        const double d = std::abs(map.seed_w[k] - w);
        if (d < bd) {
            bd = d;
            best = k;
        }
    }
    Complex z = map.seed_z[best];
    for (int it = 0; it < 60; ++it) {
        const Complex f = map.phi(z) - w;
        if (std::abs(f) < 1e-11) return z;
        const Complex dp = map.phi_prime(z);
        if (std::abs(dp) < 1e-300) break;
        Complex step = f / dp;
        int guard = 0;
        while (guard++ < 40 && !map.domain.contains(z - step)) step *= 0.5;
        if (guard >= 40) break;
        z -= step;
    }
    if (std::abs(map.phi(z) - w) < 1e-6) return z;
    throw NewtonDiverged("inverse iteration failed");
}

double modulus_annulus(const Domain& domain, const CanonicalOptions& opts) {
    if (domain.connectivity() != 2) throw NotMultiplyConnected("modulus needs n = 2");
    if (domain.degenerate()) throw DegenerateComponent("puncture has no annulus modulus");
    const auto* inner = std::get_if<DiscSpec>(&domain.components[0].geometry);
    const auto* outerc = std::get_if<OuterDiscComplementSpec>(&domain.components[1].geometry);
    if (inner && outerc && std::abs(inner->center - outerc->center) < 1e-12) {
        // concentric round annulus: lambda^1 = log(R/r) in closed form
        return std::log(outerc->radius / inner->radius);
    }
    const CanonicalMap map = solve_canonical_map(domain, CanonicalLabeling{0}, opts);
    return map.lambda.lambda1();
}

void dump_canonical_map(const CanonicalMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot write " + path);
    char buf[160];
    out << "canonical_map\n";
    out << "n " << map.lambda.n << "\n";
    out << "inner_component " << map.labeling.inner_index << "\n";
    std::snprintf(buf, sizeof(buf), "boundary_residual %.3e\n", map.boundary_residual);
    out << buf;
    out << "lambda";
    for (double l : map.lambda.lambdas) {
        std::snprintf(buf, sizeof(buf), " %.9f", l);
        out << buf;
    }
    out << "\ntheta";
    for (double t : map.lambda.thetas) {
        std::snprintf(buf, sizeof(buf), " %.9f", t);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "\nrotation %.9f\n", map.rotation);
    out << buf;
    std::snprintf(buf, sizeof(buf), "basepoint_image %.9f %.9f\n", map.basepoint_image.real(),
                  map.basepoint_image.imag());
    out << buf;
    out << "outer_coeffs " << map.outer_coeffs.size() << "\n";
    for (const auto& c : map.outer_coeffs) {
        std::snprintf(buf, sizeof(buf), "  %.12e %.12e\n", c.real(), c.imag());
        out << buf;
    }
    out << "pole_coeffs " << map.pole_coeffs.size() << "\n";
    for (size_t p = 0; p < map.pole_coeffs.size(); ++p) {
        std::snprintf(buf, sizeof(buf), "  %.9f %.9f %d %.12e %.12e\n", map.pole_centers[p].real(),
                      map.pole_centers[p].imag(), map.pole_orders[p], map.pole_coeffs[p].real(),
                      map.pole_coeffs[p].imag());
        out << buf;
    }
}

} // namespace meridian
