#include "meridian/caratheodory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

namespace meridian {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<int> subseq_indices(int horizon, int stride, int offset) {
    std::vector<int> out;
    for (int m = offset; m <= horizon; m += stride) out.push_back(m);
    return out;
}

// Spatial hash over chart points for radius queries with a position-dependent
// radius (spherical blocking radius converted to the chart).
struct PointHash {
    double cell;
    std::map<std::pair<long, long>, std::vector<Complex>> buckets;

    explicit PointHash(double cell_size) : cell(cell_size) {}
    void insert(Complex p) {
        buckets[key(p)].push_back(p);
    }
    std::pair<long, long> key(Complex p) const {
        return {static_cast<long>(std::floor(p.real() / cell)),
                static_cast<long>(std::floor(p.imag() / cell))};
    }
    bool any_within(Complex p, double r) const {
        const int span = static_cast<int>(std::ceil(r / cell)) + 1;
        const auto [ki, kj] = key(p);
        for (long dj = -span; dj <= span; ++dj) {
            for (long di = -span; di <= span; ++di) {
                const auto it = buckets.find({ki + di, kj + dj});
                if (it == buckets.end()) continue;
                for (const auto& q : it->second)
                    if (std::abs(p - q) <= r) return true;
            }
        }
        return false;
    }
    Complex nearest(Complex p, double r) const {
        const int span = static_cast<int>(std::ceil(r / cell)) + 1;
        const auto [ki, kj] = key(p);
        Complex best = p;
        double bd = std::numeric_limits<double>::max();
        for (long dj = -span; dj <= span; ++dj) {
            for (long di = -span; di <= span; ++di) {
                const auto it = buckets.find({ki + di, kj + dj});
                if (it == buckets.end()) continue;
                for (const auto& q : it->second) {
                    const double d = std::abs(p - q);
                    if (d < bd) {
                        bd = d;
                        best = q;
                    }
                }
            }
        }
        return best;
    }
};

CompactSample complement_cloud(const Domain& d) { return d.complement_sample(); }

bool tail_is_cauchy(const DomainSequence& seq, const std::vector<int>& indices,
                    const KernelOptions& opts, std::string* witness) {
    if (indices.size() < 2) return true;
    const CompactSample last = complement_cloud(seq.at(indices.back()));
    const int tail = std::min<int>(opts.tail, static_cast<int>(indices.size()) - 1);
    double worst = 0.0;
    int worst_m = indices.back();
    for (int k = 1; k <= tail; ++k) {
        const int m = indices[indices.size() - 1 - k];
        const double d = hausdorff_dist(complement_cloud(seq.at(m)), last);
        if (d > worst) {
            worst = d;
            worst_m = m;
        }
    }
    if (witness) {
        std::ostringstream os;
        os << "max tail Hausdorff gap " << worst << " at m=" << worst_m;
        *witness = os.str();
    }
    return worst <= opts.cauchy_tol;
}

KernelResult kernel_impl(const DomainSequence& seq, const std::vector<int>& indices,
                         const KernelOptions& opts) {
    if (indices.empty()) throw NoHausdorffLimit("empty index set");
    std::string cauchy_witness;
    if (!tail_is_cauchy(seq, indices, opts, &cauchy_witness))
        throw NoHausdorffLimit("complement tail not Cauchy: " + cauchy_witness);

    const int M = indices.back();
    const Domain last = seq.at(M);
    const CompactSample cloud = complement_cloud(last);

    KernelResult res;
    res.horizon = M;
    res.resolution = opts.grid_h;
    res.basepoint = last.basepoint;

    // Degenerate condition: every spherical eps-disc about the basepoint
    // limit meets the complement over the whole tail.
    {
        bool degenerate = true;
        for (const double eps : opts.eps_grid) {
            int first_ok = -1;
            for (const int m : indices) {
                const Domain dm = seq.at(m);
                const double d = sph_dist_to_sample(SpherePoint(res.basepoint),
                                                    complement_cloud(dm));
                if (d < eps) {
                    if (first_ok < 0) first_ok = m;
                } else {
                    first_ok = -1; // must hold for the whole tail afterwards
                }
            }
            if (first_ok < 0 || first_ok > indices[indices.size() / 2]) {
                degenerate = false;
                break;
            }
        }
        if (degenerate) {
            res.degenerate = true;
            return res;
        }
    }

    // Flood fill of the complement of the blocked set.
    double wx0 = res.basepoint.real(), wx1 = wx0, wy0 = res.basepoint.imag(), wy1 = wy0;
    for (const auto& p : cloud.points) {
        if (p.is_infinity()) continue;
        if (std::abs(p.z) > opts.window) continue;
        wx0 = std::min(wx0, p.z.real());
        wx1 = std::max(wx1, p.z.real());
        wy0 = std::min(wy0, p.z.imag());
        wy1 = std::max(wy1, p.z.imag());
    }
    const double h = opts.grid_h;
    wx0 -= 4 * h;
    wy0 -= 4 * h;
    wx1 += 4 * h;
    wy1 += 4 * h;
    const int nx = static_cast<int>(std::ceil((wx1 - wx0) / h)) + 1;
    const int ny = static_cast<int>(std::ceil((wy1 - wy0) / h)) + 1;
    auto node = [&](int i, int j) { return Complex(wx0 + i * h, wy0 + j * h); };
    auto idx = [&](int i, int j) { return j * nx + i; };

    // blocking radius in the chart grows with |z|^2 (spherical to chart)
    const double max_factor = 1.0 + std::max({wx1 * wx1 + wy1 * wy1, wx0 * wx0 + wy0 * wy0});
    PointHash hash(std::max(h, opts.block_radius * max_factor));
    for (const auto& p : cloud.points)
        if (!p.is_infinity() && std::abs(p.z) <= opts.window + 1.0) hash.insert(p.z);

    std::vector<uint8_t> state(static_cast<size_t>(nx) * ny, 0); // 0 free, 1 blocked, 2 kernel
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Complex z = node(i, j);
            const double r_chart = opts.block_radius * (1.0 + std::norm(z));
            if (hash.any_within(z, r_chart)) state[idx(i, j)] = 1;
        }
    }

    const int ui = static_cast<int>(std::round((res.basepoint.real() - wx0) / h));
    const int uj = static_cast<int>(std::round((res.basepoint.imag() - wy0) / h));
    if (ui < 0 || uj < 0 || ui >= nx || uj >= ny || state[idx(ui, uj)] == 1)
        throw NoHausdorffLimit("basepoint limit blocked but degenerate condition not met");

    std::queue<int> q;
    q.push(idx(ui, uj));
    state[idx(ui, uj)] = 2;
    while (!q.empty()) {
        const int id = q.front();
        q.pop();
        const int i = id % nx, j = id / nx;
        const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
        for (const auto& [i2, j2] : nb) {
            if (i2 < 0 || j2 < 0 || i2 >= nx || j2 >= ny) continue;
            if (state[idx(i2, j2)] != 0) continue;
            state[idx(i2, j2)] = 2;
            q.push(idx(i2, j2));
        }
    }

    // kernel boundary: kernel cells adjacent to non-kernel cells, projected
    // onto the nearest complement sample
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (state[idx(i, j)] != 2) continue;
            bool boundary = (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny);
            if (!boundary) {
                boundary = state[idx(i - 1, j)] != 2 || state[idx(i + 1, j)] != 2 ||
                           state[idx(i, j - 1)] != 2 || state[idx(i, j + 1)] != 2;
            }
            if (!boundary) continue;
            const Complex z = node(i, j);
            const double r_chart = 2.0 * opts.block_radius * (1.0 + std::norm(z)) + 2.0 * h;
            res.boundary.push_back(hash.nearest(z, r_chart));
        }
    }

    // complement components of the kernel: connected clusters of non-kernel
    // cells (blocked or unreached)
    std::vector<int> cluster(static_cast<size_t>(nx) * ny, -1);
    int n_clusters = 0;
    std::vector<bool> touches_frame;
    std::vector<std::vector<Complex>> cluster_interface;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (state[idx(i, j)] == 2 || cluster[idx(i, j)] >= 0) continue;
            const int c = n_clusters++;
            touches_frame.push_back(false);
            cluster_interface.emplace_back();
            std::queue<int> qq;
            qq.push(idx(i, j));
            cluster[idx(i, j)] = c;
            while (!qq.empty()) {
                const int id = qq.front();
                qq.pop();
                const int ci = id % nx, cj = id / nx;
                if (ci == 0 || cj == 0 || ci + 1 == nx || cj + 1 == ny) touches_frame[c] = true;
                bool interface = false;
                const int nb[8][2] = {{ci - 1, cj}, {ci + 1, cj}, {ci, cj - 1}, {ci, cj + 1},
                                      {ci - 1, cj - 1}, {ci + 1, cj + 1}, {ci - 1, cj + 1},
                                      {ci + 1, cj - 1}};
                for (const auto& [i2, j2] : nb) {
                    if (i2 < 0 || j2 < 0 || i2 >= nx || j2 >= ny) continue;
                    const int id2 = idx(i2, j2);
                    if (state[id2] == 2) {
                        interface = true;
                        continue;
                    }
                    if (cluster[id2] < 0) {
                        cluster[id2] = c;
                        qq.push(id2);
                    }
                }
                if (interface && state[id] == 1) {
                    const Complex z = node(ci, cj);
                    const double r_chart =
                        2.0 * opts.block_radius * (1.0 + std::norm(z)) + 2.0 * h;
                    cluster_interface[c].push_back(hash.nearest(z, r_chart));
                }
            }
        }
    }

    // assemble the kernel domain: clusters adjacent to the kernel region
    std::vector<Component> comps;
    int unbounded_at = -1;
    for (int c = 0; c < n_clusters; ++c) {
        if (cluster_interface[c].empty()) continue; // not adjacent to the kernel
        CloudSpec cloud_spec;
        cloud_spec.unbounded = touches_frame[c];
        const size_t stride = std::max<size_t>(1, cluster_interface[c].size() / 1500);
        for (size_t k = 0; k < cluster_interface[c].size(); k += stride)
            cloud_spec.points.push_back(cluster_interface[c][k]);
        cloud_spec.resolution = std::max(h, opts.block_radius);
        if (cloud_spec.unbounded) unbounded_at = static_cast<int>(comps.size());
        comps.emplace_back(ComponentGeometry(cloud_spec), std::max(h, opts.block_radius));
    }
    if (unbounded_at >= 0) std::swap(comps[unbounded_at], comps.back());

    Domain kernel;
    kernel.components = std::move(comps);
    kernel.basepoint = res.basepoint;
    res.connectivity = kernel.connectivity();
    res.kernel = std::move(kernel);
    return res;
}

} // namespace

CompactSample KernelResult::boundary_sample() const {
    std::vector<SpherePoint> pts(boundary.begin(), boundary.end());
    if (pts.empty()) pts.emplace_back(basepoint);
    return CompactSample(std::move(pts), SampleKind::PolylineRegion, resolution);
}

KernelResult hausdorff_kernel(const DomainSequence& seq, const KernelOptions& opts) {
    return kernel_impl(seq, subseq_indices(seq.horizon, 1, 1), opts);
}

KernelResult hausdorff_kernel_subseq(const DomainSequence& seq, int stride, int offset,
                                     const KernelOptions& opts) {
    return kernel_impl(seq, subseq_indices(seq.horizon, stride, offset), opts);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "converges";
        case Verdict::Degenerate: return "degenerate";
        case Verdict::Diverges: return "diverges";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Compare two kernels: degenerate flags equal; non-degenerate kernels agree
// on basepoint and boundary within tol.
bool kernels_agree(const KernelResult& a, const KernelResult& b, double tol, double* gap) {
    if (a.degenerate != b.degenerate) {
        if (gap) *gap = kPi / 2;
        return false;
    }
    if (a.degenerate) {
        const double d = sph_dist(SpherePoint(a.basepoint), SpherePoint(b.basepoint));
        if (gap) *gap = d;
        return d <= tol;
    }
    const double d = hausdorff_dist(a.boundary_sample(), b.boundary_sample());
    if (gap) *gap = d;
    return d <= tol;
}

} // namespace

std::string ConvergenceReport::text() const {
    std::ostringstream os;
    os << "verdict: " << verdict_name(verdict) << " (consistent up to m=" << horizon
       << ", tol basepoint " << tol_basepoint << ", tol kernel " << tol_kernel << ")\n";
    os << "condition i:   " << (cond_i.pass ? "pass" : "fail") << "  " << cond_i.witness << "\n";
    os << "condition ii:  " << (cond_ii.pass ? "pass" : "fail") << "  " << cond_ii.witness << "\n";
    os << "condition iii: " << (cond_iii.pass ? "pass" : "fail") << "  " << cond_iii.witness
       << "\n";
    os << summary << "\n";
    return os.str();
}

ConvergenceReport check_convergence(const DomainSequence& seq, const CandidateLimit& candidate,
                                    const ConvergenceOptions& opts) {
    ConvergenceReport rep;
    rep.horizon = seq.horizon;
    rep.tol_basepoint = opts.tol_basepoint;
    rep.tol_kernel = opts.tol_kernel;

    // i) basepoints: Cauchy over the tail and close to the candidate point.
    {
        const int M = seq.horizon;
        const Complex uM = seq.at(M).basepoint;
        double osc = 0.0;
        for (int k = 1; k <= std::min(opts.kernel.tail, M - 1); ++k)
            osc = std::max(osc, sph_dist(SpherePoint(seq.at(M - k).basepoint), SpherePoint(uM)));
        const double to_cand = sph_dist(SpherePoint(uM), SpherePoint(candidate.point));
        std::ostringstream os;
        os << "tail oscillation " << osc << ", gap to candidate " << to_cand;
        rep.cond_i.witness = os.str();
        rep.cond_i.pass = osc <= opts.tol_basepoint && to_cand <= opts.tol_basepoint;
    }

    // ii) compact exhaustion of the candidate (skipped for singletons, where
    // the degenerate form of iii takes over).
    if (candidate.is_singleton) {
        bool ok = true;
        std::ostringstream os;
        for (const double eps : opts.kernel.eps_grid) {
            int m_eps = -1;
            for (int m = 1; m <= seq.horizon; ++m) {
                const double d =
                    sph_dist_to_sample(SpherePoint(candidate.point), seq.at(m).complement_sample());
                if (d < eps) {
                    if (m_eps < 0) m_eps = m;
                } else {
                    m_eps = -1;
                }
            }
            if (m_eps < 0) ok = false;
            os << "eps=" << eps << ": M(eps)=" << m_eps << "; ";
        }
        rep.cond_ii.pass = ok;
        rep.cond_ii.witness = "degenerate form: " + os.str();
    } else {
        const Domain& cand = *candidate.domain;
        bool all_ok = true;
        std::ostringstream os;
        for (const double eps : opts.kernel.eps_grid) {
            // sample K_eps = {z : delta#(z) >= eps}
            double x0, y0, x1, y1;
            cand.bounding_box(x0, y0, x1, y1);
            std::vector<Complex> pts;
            const int grid = static_cast<int>(std::ceil(std::sqrt(opts.exhaustion_samples)));
            for (int j = 0; j <= grid; ++j) {
                for (int i = 0; i <= grid; ++i) {
                    const Complex z(x0 + (x1 - x0) * i / grid, y0 + (y1 - y0) * j / grid);
                    if (!cand.contains(z)) continue;
                    try {
                        if (boundary_distance(cand, SpherePoint(z)) >= eps) pts.push_back(z);
                    } catch (const PointNotInDomain&) {
                    }
                }
            }
            if (pts.empty()) {
                os << "eps=" << eps << ": K_eps empty; ";
                continue;
            }
            int m_eps = -1;
            for (int m = 1; m <= seq.horizon; ++m) {
                const Domain dm = seq.at(m);
                bool contained = true;
                for (const auto& z : pts)
                    if (!dm.contains(z)) {
                        contained = false;
                        break;
                    }
                if (contained) {
                    if (m_eps < 0) m_eps = m;
                } else {
                    m_eps = -1;
                }
            }
            if (m_eps < 0) all_ok = false;
            os << "eps=" << eps << ": |K_eps|=" << pts.size() << " M(eps)=" << m_eps << "; ";
        }
        rep.cond_ii.pass = all_ok;
        rep.cond_ii.witness = os.str();
    }

    // iii) kernel-subsequence surrogate: kernels of the full sequence and of
    // the even/odd subsequences must agree with each other and the candidate.
    bool no_limit = false;
    try {
        rep.kernel_full = hausdorff_kernel(seq, opts.kernel);
        rep.kernel_even = hausdorff_kernel_subseq(seq, 2, 2, opts.kernel);
        rep.kernel_odd = hausdorff_kernel_subseq(seq, 2, 1, opts.kernel);
    } catch (const NoHausdorffLimit& e) {
        no_limit = true;
        rep.cond_iii.pass = false;
        rep.cond_iii.witness = e.what();
    }
    double eo_gap = 0.0;
    if (!no_limit) {
        const bool eo = kernels_agree(rep.kernel_even, rep.kernel_odd, opts.tol_kernel, &eo_gap);
        double fc_gap = 0.0;
        bool fc = true;
        if (candidate.is_singleton) {
            fc = rep.kernel_full.degenerate &&
                 sph_dist(SpherePoint(rep.kernel_full.basepoint), SpherePoint(candidate.point)) <=
                     opts.tol_basepoint;
            fc_gap = rep.kernel_full.degenerate
                         ? sph_dist(SpherePoint(rep.kernel_full.basepoint),
                                    SpherePoint(candidate.point))
                         : kPi / 2;
        } else {
            if (rep.kernel_full.degenerate) {
                fc = false;
                fc_gap = kPi / 2;
            } else {
                fc_gap = hausdorff_dist(rep.kernel_full.boundary_sample(),
                                        candidate.domain->complement_sample());
                fc = fc_gap <= opts.tol_kernel;
            }
        }
        std::ostringstream os;
        os << "even/odd kernel gap " << eo_gap << ", kernel-to-candidate gap " << fc_gap;
        rep.cond_iii.pass = eo && fc;
        rep.cond_iii.witness = os.str();
    }

    // verdict, horizon-qualified
    if (!no_limit && rep.cond_i.pass && rep.cond_ii.pass && rep.cond_iii.pass) {
        rep.verdict = candidate.is_singleton ? Verdict::Degenerate : Verdict::Converges;
    } else if (no_limit || eo_gap > 2.0 * opts.tol_kernel) {
        rep.verdict = Verdict::Diverges;
    } else if (!rep.cond_i.pass &&
               sph_dist(SpherePoint(seq.at(seq.horizon).basepoint),
                        SpherePoint(candidate.point)) > 4.0 * opts.tol_basepoint) {
        rep.verdict = Verdict::Diverges;
    } else {
        rep.verdict = Verdict::Inconclusive;
    }
    std::ostringstream sum;
    sum << "sequence '" << seq.description << "' is " << verdict_name(rep.verdict)
        << " relative to the candidate, up to m=" << seq.horizon;
    rep.summary = sum.str();
    return rep;
}

FieldBuilder pde_field_builder(double h, SolveOptions solve_opts) {
    return [h, solve_opts](const Domain& d, int) { return solve_density(d, h, solve_opts); };
}

bool GeodesicSuite::deviations_decreasing() const {
    for (size_t k = 1; k < rows.size(); ++k)
        if (rows[k].deviation >= rows[k - 1].deviation) return false;
    return true;
}

bool GeodesicSuite::length_gaps_decreasing() const {
    for (size_t k = 1; k < rows.size(); ++k)
        if (std::abs(rows[k].length - limit_length) >=
            std::abs(rows[k - 1].length - limit_length))
            return false;
    return true;
}

GeodesicSuite geodesic_convergence_suite(const DomainSequence& seq, const MetricField& limit_field,
                                         const Meridian& limit_meridian,
                                         const std::vector<int>& schedule,
                                         const FieldBuilder& fields, TrackMode mode) {
    GeodesicSuite suite;
    suite.limit_length = limit_meridian.length;
    suite.limit_dist = limit_meridian.dist;
    (void)limit_field;
    for (const int m : schedule) {
        const Domain dm = seq.at(m);
        const MetricField fm = fields(dm, m);
        ClosedCurve curve_m;
        if (mode == TrackMode::Track) {
            curve_m = shorten_in_class(fm, limit_meridian.curve);
        } else {
            // find the matching separation by mask
            Separation sep_m{};
            bool found = false;
            for (const auto& s : enumerate_separations(dm))
                if (s.e_mask == limit_meridian.separation.e_mask) {
                    sep_m = s;
                    found = true;
                    break;
                }
            if (!found) throw LabelingInconsistent("separation class missing at m");
            curve_m = find_meridian(fm, sep_m).curve;
        }
        GeodesicSuite::Row row;
        row.m = m;
        row.length = hyp_length(fm, curve_m);
        row.dist = hyp_dist_point_to_set(fm, dm.basepoint, curve_m);
        row.deviation = curve_hausdorff(curve_m, limit_meridian.curve);
        suite.rows.push_back(row);
    }
    return suite;
}

BoundsSuite meridian_bounds_suite(const DomainSequence& seq, const std::vector<int>& schedule,
                                  const FieldBuilder& fields) {
    BoundsSuite suite;
    suite.min_length = std::numeric_limits<double>::max();
    for (const int m : schedule) {
        const Domain dm = seq.at(m);
        const MetricField fm = fields(dm, m);
        BoundsSuite::Row row;
        row.m = m;
        for (const Meridian& mer : extended_system(fm)) {
            row.lengths.push_back(mer.length);
            row.dists.push_back(mer.dist);
            suite.min_length = std::min(suite.min_length, mer.length);
            suite.max_length = std::max(suite.max_length, mer.length);
            suite.max_dist = std::max(suite.max_dist, mer.dist);
        }
        suite.rows.push_back(row);
    }
    // trend checks over the scheduled tail
    if (suite.rows.size() >= 2) {
        std::vector<double> mins, maxs;
        for (const auto& r : suite.rows) {
            mins.push_back(*std::min_element(r.lengths.begin(), r.lengths.end()));
            maxs.push_back(*std::max_element(r.lengths.begin(), r.lengths.end()));
        }
        suite.lower_bound_ok = mins.back() > 0.75 * mins.front();
        suite.maxima_stable = maxs.back() < 1.25 * maxs.front() + 1e-9;
    } else {
        suite.lower_bound_ok = suite.min_length > 0;
        suite.maxima_stable = true;
    }
    return suite;
}

CanonicalSuite canonical_convergence_suite(const DomainSequence& seq, const Domain& limit,
                                           const CanonicalLabeling& labeling,
                                           const std::vector<int>& schedule,
                                           const CanonicalOptions& opts) {
    CanonicalSuite suite;
    const CanonicalMap limit_map = solve_canonical_map(limit, labeling, opts);
    suite.limit_lambda = limit_map.lambda;

    // sampled compact subset of the limit standard domain, away from the
    // boundary circles and the slits
    std::vector<Complex> wpts;
    const double lam1 = limit_map.lambda.lambda1();
    for (int ir = 1; ir <= 5; ++ir) {
        const double level = lam1 * ir / 6.0;
        for (int k = 0; k < 12; ++k) {
            const Complex w = std::polar(std::exp(level), 2 * kPi * k / 12.0);
            bool clear = std::abs(level) > 0.08 * lam1 && std::abs(level - lam1) > 0.08 * lam1;
            for (size_t j = 1; j + 1 < limit_map.lambda.lambdas.size() + 1 && clear; ++j) {
                // keep away from slit levels
                if (std::abs(level - limit_map.lambda.lambdas[j]) < 0.1 * lam1) clear = false;
            }
            if (clear) wpts.push_back(w);
        }
    }

    for (const int m : schedule) {
        const Domain dm = seq.at(m);
        if (dm.connectivity() != limit.connectivity())
            throw LabelingInconsistent("connectivity changed along the sequence");
        const CanonicalMap map_m = solve_canonical_map(dm, labeling, opts);
        CanonicalSuite::Row row;
        row.m = m;
        row.lambda = map_m.lambda;
        row.lambda_dev = LambdaVector::inf_distance(map_m.lambda, limit_map.lambda);
        double worst = 0.0;
        int used = 0;
        for (const auto& w : wpts) {
            // the point must lie in both standard domains
            if (std::abs(w) >= std::exp(map_m.lambda.lambda1())) continue;
            try {
                const Complex za = eval_inverse(map_m, w);
                const Complex zb = eval_inverse(limit_map, w);
                worst = std::max(worst, sph_dist(SpherePoint(za), SpherePoint(zb)));
                ++used;
            } catch (const Error&) {
            }
        }
        if (used < static_cast<int>(wpts.size()) / 2)
            throw LabelingInconsistent("too few comparable points on the standard domain");
        row.psi_dev = worst;
        suite.rows.push_back(row);
    }
    return suite;
}

} // namespace meridian
