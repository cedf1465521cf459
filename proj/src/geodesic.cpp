#include "meridian/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "contour.hpp"

namespace meridian {

namespace {

// Gradient of the trapezoid energy with respect to each free vertex; v is
// the open vertex list of a closed loop (no duplicated endpoint).
void energy_gradient(const MetricField& field, const std::vector<Complex>& v,
                     std::vector<Complex>& grad, std::vector<double>& lambda) {
    const size_t n = v.size();
    lambda.resize(n);
    std::vector<Complex> glam(n);
    for (size_t i = 0; i < n; ++i) {
        lambda[i] = field.density_at(v[i]);
        glam[i] = field.log_density_gradient(v[i]) * lambda[i];
    }
    grad.assign(n, Complex(0, 0));
    for (size_t i = 0; i < n; ++i) {
        const size_t ip = (i + 1) % n, im = (i + n - 1) % n;
        const Complex em = v[i] - v[im], ep = v[ip] - v[i];
        const double lm = std::abs(em), lp = std::abs(ep);
        const Complex um = lm > 0 ? em / lm : Complex(0, 0);
        const Complex up = lp > 0 ? ep / lp : Complex(0, 0);
        grad[i] = 0.5 * glam[i] * (lm + lp) +
                  0.5 * (lambda[im] + lambda[i]) * um -
                  0.5 * (lambda[i] + lambda[ip]) * up;
    }
}

std::vector<Complex> open_vertices(const ClosedCurve& c) {
    std::vector<Complex> v(c.vertices.begin(), c.vertices.end() - 1);
    return v;
}

ClosedCurve close_vertices(std::vector<Complex> v, const ClosedCurve& like) {
    ClosedCurve c(std::move(v));
    c.orientation = like.orientation;
    c.signature = like.signature;
    return c;
}

// Resample a closed vertex loop uniformly in hyperbolic arclength.
std::vector<Complex> respace_hyperbolic(const MetricField& field, const std::vector<Complex>& v,
                                        size_t n) {
    const size_t m = v.size();
    std::vector<double> cum(m + 1, 0.0);
    for (size_t i = 0; i < m; ++i) {
        const Complex a = v[i], b = v[(i + 1) % m];
        cum[i + 1] = cum[i] + 0.5 * (field.density_at(a) + field.density_at(b)) * std::abs(b - a);
    }
    const double total = cum[m];
    std::vector<Complex> out;
    out.reserve(n);
    size_t seg = 0;
    for (size_t k = 0; k < n; ++k) {
        const double tgt = total * k / n;
        while (seg + 1 < m && cum[seg + 1] < tgt) ++seg;
        const double span = cum[seg + 1] - cum[seg];
        const double t = span > 0 ? (tgt - cum[seg]) / span : 0.0;
        out.push_back(v[seg] + (v[(seg + 1) % m] - v[seg]) * t);
    }
    return out;
}

bool loop_simple(const std::vector<Complex>& v) {
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        const Complex a = v[i], b = v[(i + 1) % n];
        for (size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_intersect(a, b, v[j], v[(j + 1) % n])) return false;
        }
    }
    return true;
}

} // namespace

double geodesic_residual(const MetricField& field, const ClosedCurve& curve) {
    std::vector<Complex> v = open_vertices(curve);
    std::vector<Complex> grad;
    std::vector<double> lambda;
    energy_gradient(field, v, grad, lambda);
    double worst = 0.0;
    for (size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(grad[i]) / lambda[i]);
    return worst;
}

ClosedCurve shorten_in_class(const MetricField& field, const ClosedCurve& start,
                             const ShortenOptions& opts) {
    const double h = field.h;
    const double floor_clear = opts.clearance_floor_cells * h;
    std::vector<Complex> v = open_vertices(start);
    const size_t n = v.size();
    if (n < 8) throw Error("curve too coarse to shorten");

    for (const auto& p : v)
        if (field.clearance_at(p) < floor_clear)
            throw ClearanceLost("initial curve clearance below floor");

    const std::vector<int> sig0 = winding_signature(start, field.domain);

    std::vector<Complex> grad;
    std::vector<double> lambda;
    auto loop_energy = [&](const std::vector<Complex>& w) {
        double e = 0.0;
        double prev = field.density_at(w[0]);
        for (size_t i = 0; i < w.size(); ++i) {
            const Complex b = w[(i + 1) % w.size()];
            const double next = field.density_at(b);
            e += 0.5 * (prev + next) * std::abs(b - w[i]);
            prev = next;
        }
        return e;
    };
    double energy = loop_energy(v);

    double tau = 0.1;
    int since_respace = 0;
    int stagnant = 0;
    std::vector<Complex> last_good = v;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        energy_gradient(field, v, grad, lambda);

        double res = 0.0;
        for (size_t i = 0; i < n; ++i) res = std::max(res, std::abs(grad[i]) / lambda[i]);
        if (res < opts.residual_tol) break;

        // Metric-preconditioned step with the spec'd caps: at most a quarter
        // of the boundary clearance and of the local vertex gap.
        std::vector<Complex> trial(n);
        bool clearance_ok = true;
        for (size_t i = 0; i < n; ++i) {
            Complex step = -tau * grad[i] / (lambda[i] * lambda[i]);
            const double clear = field.clearance_at(v[i]);
            const double gap = std::min(std::abs(v[i] - v[(i + n - 1) % n]),
                                        std::abs(v[(i + 1) % n] - v[i]));
            const double cap = 0.25 * std::min(clear, gap);
            const double slen = std::abs(step);
            if (slen > cap && slen > 0) step *= cap / slen;
            trial[i] = v[i] + step;
            if (field.clearance_at(trial[i]) < floor_clear) {
                clearance_ok = false;
                break;
            }
        }
        if (!clearance_ok) {
            tau *= 0.5;
            if (tau < 1e-8) throw ClearanceLost("shortening pushed the curve to the boundary");
            continue;
        }

        const double etrial = loop_energy(trial);
        if (etrial <= energy) {
            v = std::move(trial);
            energy = etrial;
            tau = std::min(tau * 1.15, 2.0);
            ++since_respace;
            stagnant = 0;
        } else {
            tau *= 0.5;
            if (++stagnant > 60) break; // converged to discrete stationarity
            continue;
        }

        if (since_respace >= opts.respace_every) {
            since_respace = 0;
            std::vector<Complex> rs = respace_hyperbolic(field, v, n);
            bool ok = true;
            for (const auto& p : rs)
                if (field.clearance_at(p) < floor_clear) {
                    ok = false;
                    break;
                }
            const double ers = ok ? loop_energy(rs) : energy + 1;
            // accepted only when it does not increase the discrete length
            if (ok && ers <= energy) {
                v = std::move(rs);
                energy = ers;
            }
        }

        if (iter % 50 == 0) {
            if (!loop_simple(v)) {
                v = last_good;
                energy = loop_energy(v);
                tau *= 0.25;
                if (tau < 1e-8)
                    throw SelfIntersectionDetected("descent kept producing self-intersections");
            } else {
                last_good = v;
            }
        }
    }

    if (!loop_simple(v)) {
        v = last_good;
        if (!loop_simple(v)) throw SelfIntersectionDetected();
    }

    ClosedCurve out = close_vertices(v, start);
    const std::vector<int> sig1 = winding_signature(out, field.domain);
    if (sig1 != sig0) throw Error("shortening changed the separation class");
    out.signature = sig1;
    return out;
}

std::vector<ClosedCurve> separating_initial_curves(const MetricField& field, const Separation& sep,
                                                   const MeridianOptions& opts) {
    const Domain& dom = field.domain;
    const int n = dom.connectivity();

    // Distance to the e-side and f-side component unions at every grid node.
    const size_t total = static_cast<size_t>(field.nx) * field.ny;
    std::vector<double> de(total), df(total);
    for (int j = 0; j < field.ny; ++j) {
        for (int i = 0; i < field.nx; ++i) {
            const Complex z = field.node(i, j);
            double be = std::numeric_limits<double>::max();
            double bf = std::numeric_limits<double>::max();
            for (int k = 0; k < n; ++k) {
                const double d = dom.components[k].euclidean_dist(z);
                const bool on_e = (k + 1 < n) && sep.e_contains(k + 1);
                (on_e ? be : bf) = std::min(on_e ? be : bf, d);
            }
            de[field.idx(i, j)] = be;
            df[field.idx(i, j)] = bf;
        }
    }
    std::vector<double> ratio(total);
    for (size_t k = 0; k < total; ++k) ratio[k] = de[k] / (de[k] + df[k] + 1e-300);

    auto realizes = [&](const ClosedCurve& c) -> std::optional<ClosedCurve> {
        // must be inside the solved region with clearance, simple, and of the
        // requested signature (up to orientation)
        for (const auto& p : c.vertices)
            if (field.clearance_at(p) < 3.0 * field.h) return std::nullopt;
        ClosedCurve r = c.resampled(opts.curve_vertices);
        for (const auto& p : r.vertices)
            if (!field.covered(p)) return std::nullopt;
        if (!r.is_simple()) return std::nullopt;
        std::vector<int> sig;
        try {
            sig = winding_signature(r, dom);
        } catch (const CurveTouchesComplement&) {
            return std::nullopt;
        }
        const bool neg = std::any_of(sig.begin(), sig.end(), [](int s) { return s < 0; });
        ClosedCurve oriented = neg ? r.reversed() : r;
        if (neg)
            for (auto& s : sig) s = -s;
        for (int k = 0; k + 1 < n; ++k) {
            const int want = sep.e_contains(k + 1) ? 1 : 0;
            if (sig[k] != want) return std::nullopt;
        }
        oriented.signature = sig;
        return oriented;
    };

    std::vector<ClosedCurve> found;
    auto try_level = [&](double s) {
        for (auto& loop : detail::extract_level_loops(ratio, field.nx, field.ny, field.x0,
                                                      field.y0, field.h, s)) {
            if (loop.euclidean_length() < 6.0 * field.h) continue;
            if (auto ok = realizes(loop)) found.push_back(std::move(*ok));
        }
    };

    const double levels[3] = {0.35, 0.5, 0.65};
    for (int k = 0; k < std::min(3, opts.level_candidates); ++k) try_level(levels[k]);
    if (found.size() < 3)
        for (double s = 0.10; s <= 0.901 && found.size() < 6; s += 0.05) try_level(s);

    // Randomized variant: jitter the first hit with smooth low-mode noise.
    if (!found.empty()) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_real_distribution<double> uni(0.0, 2.0 * 3.14159265358979323846);
        const ClosedCurve& base = found.front();
        const size_t m = base.edge_count();
        std::vector<Complex> v(base.vertices.begin(), base.vertices.end() - 1);
        const double ph1 = uni(rng), ph2 = uni(rng);
        for (size_t i = 0; i < m; ++i) {
            const double t = 2.0 * 3.14159265358979323846 * i / m;
            const double amp = 0.25 * field.clearance_at(v[i]);
            const Complex nrm = [&] {
                const Complex e = v[(i + 1) % m] - v[(i + m - 1) % m];
                const double len = std::abs(e);
                return len > 0 ? Complex(-e.imag(), e.real()) / len : Complex(0, 0);
            }();
            v[i] += nrm * amp * (0.6 * std::cos(2 * t + ph1) + 0.4 * std::cos(3 * t + ph2));
        }
        ClosedCurve jit(v);
        if (auto ok = realizes(jit)) found.push_back(std::move(*ok));
    }

    // Deduplicate near-identical candidates.
    std::vector<ClosedCurve> out;
    for (auto& c : found) {
        bool dup = false;
        for (const auto& kept : out)
            if (curve_hausdorff(c, kept) < 2.0 * field.h) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(c));
        if (out.size() >= 6) break;
    }
    return out;
}

Meridian find_meridian(const MetricField& field, const Separation& sep,
                       const MeridianOptions& opts) {
    const Domain& dom = field.domain;
    const int n = dom.connectivity();
    // Degenerate principal case: a side that is a single point component has
    // no meridian.
    if (!sep.nontrivial) throw PrincipalMeridianAbsent("separation side is a point component");
    if (__builtin_popcount(sep.e_mask) == 1) {
        const int idx = __builtin_ctz(sep.e_mask);
        if (dom.components[idx].is_point())
            throw PrincipalMeridianAbsent("E side is a single point component");
    }
    (void)n;

    std::vector<ClosedCurve> inits = separating_initial_curves(field, sep, opts);
    if (inits.empty()) throw NoSeparatingCurveFound("no level-set curve realizes the separation");

    struct Candidate {
        ClosedCurve curve;
        double length;
    };
    std::vector<Candidate> results;
    for (auto& init : inits) {
        try {
            ShortenOptions so = opts.shorten;
            ClosedCurve shortcurve = shorten_in_class(field, init, so);
            results.push_back({shortcurve, hyp_length(field, shortcurve)});
        } catch (const Error&) {
            // failed starts are fine as long as one succeeds
        }
    }
    if (results.empty()) throw NoSeparatingCurveFound("all shortening attempts failed");

    std::sort(results.begin(), results.end(),
              [](const Candidate& a, const Candidate& b) { return a.length < b.length; });

    // Distinct local minima: group by curve proximity; ties within the
    // tolerance are all reported, the canonical pick has the lexicographically
    // smallest centroid.
    std::vector<Candidate> minima;
    for (auto& c : results) {
        bool dup = false;
        for (const auto& kept : minima)
            if (curve_hausdorff(c.curve, kept.curve) < 4.0 * field.h) {
                dup = true;
                break;
            }
        if (!dup) minima.push_back(std::move(c));
    }

    size_t pick = 0;
    for (size_t k = 1; k < minima.size(); ++k) {
        if (minima[k].length <= minima[0].length * (1.0 + opts.tie_tolerance)) {
            const Complex a = minima[k].curve.centroid(), b = minima[pick].curve.centroid();
            if (std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag())) pick = k;
        }
    }

    Meridian m;
    m.curve = minima[pick].curve;
    m.separation = sep;
    m.length = minima[pick].length;
    m.residual = geodesic_residual(field, m.curve);
    for (size_t k = 0; k < minima.size(); ++k)
        if (k != pick) m.local_minima.push_back(minima[k].length);
    m.dist = hyp_dist_point_to_set(field, dom.basepoint, m.curve);
    return m;
}

int PrincipalSystem::absent_count() const {
    int c = 0;
    for (const auto& m : meridians)
        if (!m) ++c;
    return c;
}

PrincipalSystem principal_system(const MetricField& field, const MeridianOptions& opts) {
    const auto seps = enumerate_separations(field.domain);
    const int pn = principal_count(field.domain.connectivity());
    PrincipalSystem sys;
    for (int i = 0; i < pn; ++i) {
        try {
            sys.meridians.push_back(find_meridian(field, seps[i], opts));
        } catch (const PrincipalMeridianAbsent&) {
            sys.meridians.push_back(std::nullopt);
        }
    }
    return sys;
}

std::vector<Meridian> extended_system(const MetricField& field, const MeridianOptions& opts) {
    std::vector<Meridian> out;
    for (const auto& sep : enumerate_separations(field.domain)) {
        try {
            out.push_back(find_meridian(field, sep, opts));
        } catch (const PrincipalMeridianAbsent&) {
            // degenerate classes are skipped; Prop-1.1-style counting happens
            // at the caller
        }
    }
    return out;
}

std::vector<SystemRow> system_metrics(const MetricField& field,
                                      const std::vector<Meridian>& system) {
    std::vector<SystemRow> rows;
    int i = 1;
    for (const auto& m : system) {
        SystemRow r;
        r.index = i++;
        r.sep_mask = m.separation.e_mask;
        r.length = hyp_length(field, m.curve);
        r.dist = hyp_dist_point_to_set(field, field.domain.basepoint, m.curve);
        r.n_vertices = m.curve.edge_count();
        rows.push_back(r);
    }
    return rows;
}

} // namespace meridian
