#pragma once

#include <functional>

#include "meridian/canonical.hpp"
#include "meridian/geodesic.hpp"

namespace meridian {

// Sequence of pointed domains m -> (U_m, u_m), m = 1..horizon. Generators
// must keep a consistent component indexing across m (the correspondence the
// suites rely on).
struct DomainSequence {
    std::function<Domain(int)> generator;
    int horizon = 30;
    std::string description;

    Domain at(int m) const { return generator(m); }
};

struct KernelOptions {
    double grid_h = 0.005;     // flood-fill resolution in the chart
    double block_radius = 0.012; // spherical blocking radius around complement samples
    double window = 4.0;       // chart window half-size for the fill
    double cauchy_tol = 0.02;  // Hausdorff Cauchy tolerance over the tail
    int tail = 5;              // tail length for Cauchy checks
    std::vector<double> eps_grid = {0.2, 0.1, 0.05}; // degenerate-detection radii
};

// Numerical Carathedory kernel at the sequence horizon: Hausdorff-limit
// complement, flood fill, component containing the basepoint limit -- or the
// singleton when the degenerate condition holds.
struct KernelResult {
    bool degenerate = false;
    Complex basepoint{0, 0};
    std::optional<Domain> kernel;        // absent in the degenerate case
    std::vector<Complex> boundary;       // kernel boundary samples (projected)
    int connectivity = 0;
    int horizon = 0;
    double resolution = 0.0;

    CompactSample boundary_sample() const;
};

KernelResult hausdorff_kernel(const DomainSequence& seq, const KernelOptions& opts = {});
// Kernel of the arithmetic subsequence m = offset, offset+stride, ...
KernelResult hausdorff_kernel_subseq(const DomainSequence& seq, int stride, int offset,
                                     const KernelOptions& opts = {});

// Candidate limit: a pointed domain or a declared singleton.
struct CandidateLimit {
    bool is_singleton = false;
    Complex point{0, 0};
    std::optional<Domain> domain;

    static CandidateLimit pointed(Domain d) {
        CandidateLimit c;
        c.point = d.basepoint;
        c.domain = std::move(d);
        return c;
    }
    static CandidateLimit singleton(Complex u) {
        CandidateLimit c;
        c.is_singleton = true;
        c.point = u;
        return c;
    }
};

enum class Verdict { Converges, Degenerate, Diverges, Inconclusive };
const char* verdict_name(Verdict v);

struct ConditionReport {
    bool pass = false;
    std::string witness;
};

// All verdicts are horizon-qualified: they assert consistency (or an explicit
// inconsistency witness) up to m = horizon, never a limit.
struct ConvergenceReport {
    Verdict verdict = Verdict::Inconclusive;
    ConditionReport cond_i, cond_ii, cond_iii;
    KernelResult kernel_full, kernel_even, kernel_odd;
    int horizon = 0;
    double tol_basepoint = 0.0, tol_kernel = 0.0;
    std::string summary;

    std::string text() const; // structured text block
};

struct ConvergenceOptions {
    KernelOptions kernel;
    double tol_basepoint = 0.05; // condition i tolerance at the horizon
    double tol_kernel = 0.05;    // kernel agreement tolerance (spherical Hausdorff)
    int exhaustion_samples = 400;
};

ConvergenceReport check_convergence(const DomainSequence& seq, const CandidateLimit& candidate,
                                    const ConvergenceOptions& opts = {});

// How metric fields are built per member domain (PDE by default; round-model
// scenarios may substitute the closed form).
using FieldBuilder = std::function<MetricField(const Domain&, int m)>;
FieldBuilder pde_field_builder(double h, SolveOptions solve_opts = {});

enum class TrackMode { Track, Refind };

// Per-m geodesic convergence table for one separation class of the limit.
struct GeodesicSuite {
    struct Row {
        int m = 0;
        double length = 0.0, dist = 0.0, deviation = 0.0;
    };
    std::vector<Row> rows;
    double limit_length = 0.0, limit_dist = 0.0;

    bool deviations_decreasing() const;
    bool length_gaps_decreasing() const;
};

GeodesicSuite geodesic_convergence_suite(const DomainSequence& seq, const MetricField& limit_field,
                                         const Meridian& limit_meridian,
                                         const std::vector<int>& schedule,
                                         const FieldBuilder& fields,
                                         TrackMode mode = TrackMode::Track);

// Lengths and distances of full meridian systems over the sequence tail.
struct BoundsSuite {
    struct Row {
        int m = 0;
        std::vector<double> lengths, dists; // per separation class
    };
    std::vector<Row> rows;
    double min_length = 0.0, max_length = 0.0, max_dist = 0.0;
    bool lower_bound_ok = false; // min length not trending to zero
    bool maxima_stable = false;
};

BoundsSuite meridian_bounds_suite(const DomainSequence& seq, const std::vector<int>& schedule,
                                  const FieldBuilder& fields);

// Canonical-map convergence: Lambda_m -> Lambda and inverse maps converging
// on a sampled compact subset of the limit standard domain.
struct CanonicalSuite {
    struct Row {
        int m = 0;
        LambdaVector lambda;
        double lambda_dev = 0.0, psi_dev = 0.0;
    };
    std::vector<Row> rows;
    LambdaVector limit_lambda;
};

CanonicalSuite canonical_convergence_suite(const DomainSequence& seq, const Domain& limit,
                                           const CanonicalLabeling& labeling,
                                           const std::vector<int>& schedule,
                                           const CanonicalOptions& opts = {});

} // namespace meridian
