#include "contour.hpp"

#include <cmath>
#include <map>

namespace meridian::detail {

namespace {

// Crossing points live on grid edges; identifying them by the edge index
// makes segment linking exact (no floating-point matching).
// Horizontal edge (i,j)-(i+1,j): id = 2*(j*nx+i). Vertical edge
// (i,j)-(i,j+1): id = 2*(j*nx+i)+1.
struct Seg {
    long long e0, e1;
};

} // namespace

std::vector<ClosedCurve> extract_level_loops(const std::vector<double>& v, int nx, int ny,
                                             double x0, double y0, double h, double level) {
    auto val = [&](int i, int j) {
        const double x = v[static_cast<size_t>(j) * nx + i] - level;
        return x == 0.0 ? 1e-300 : x; // nudge exact hits off the level
    };
    auto hedge = [&](int i, int j) -> long long { return 2LL * (static_cast<long long>(j) * nx + i); };
    auto vedge = [&](int i, int j) -> long long { return hedge(i, j) + 1; };

    std::map<long long, Complex> crossing;
    auto cross_on = [&](long long id, int i, int j, bool horizontal) {
        auto it = crossing.find(id);
        if (it != crossing.end()) return;
        const double a = val(i, j);
        const double b = horizontal ? val(i + 1, j) : val(i, j + 1);
        const double t = a / (a - b);
        const double x = x0 + (i + (horizontal ? t : 0.0)) * h;
        const double y = y0 + (j + (horizontal ? 0.0 : t)) * h;
        crossing.emplace(id, Complex(x, y));
    };

    std::vector<Seg> segs;
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const bool s00 = val(i, j) > 0, s10 = val(i + 1, j) > 0;
            const bool s01 = val(i, j + 1) > 0, s11 = val(i + 1, j + 1) > 0;
            const int c = (s00 ? 1 : 0) | (s10 ? 2 : 0) | (s11 ? 4 : 0) | (s01 ? 8 : 0);
            if (c == 0 || c == 15) continue;
            const long long bottom = hedge(i, j), top = hedge(i, j + 1);
            const long long left = vedge(i, j), right = vedge(i + 1, j);
            auto add = [&](long long e0, bool h0, int i0, int j0, long long e1, bool h1, int i1, int j1) {
                cross_on(e0, i0, j0, h0);
                cross_on(e1, i1, j1, h1);
                segs.push_back({e0, e1});
            };
            switch (c) {
                case 1: case 14: add(left, false, i, j, bottom, true, i, j); break;
                case 2: case 13: add(bottom, true, i, j, right, false, i + 1, j); break;
                case 3: case 12: add(left, false, i, j, right, false, i + 1, j); break;
                case 4: case 11: add(right, false, i + 1, j, top, true, i, j + 1); break;
                case 6: case 9:  add(bottom, true, i, j, top, true, i, j + 1); break;
                case 7: case 8:  add(left, false, i, j, top, true, i, j + 1); break;
                case 5: case 10: {
                    // ambiguous saddle; resolve by the cell-centre average
                    const double mid = 0.25 * (val(i, j) + val(i + 1, j) + val(i, j + 1) + val(i + 1, j + 1));
                    const bool centre_pos = mid > 0;
                    const bool connect_low = (c == 5) == centre_pos;
                    if (connect_low) {
                        add(left, false, i, j, bottom, true, i, j);
                        add(right, false, i + 1, j, top, true, i, j + 1);
                    } else {
                        add(bottom, true, i, j, right, false, i + 1, j);
                        add(left, false, i, j, top, true, i, j + 1);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // Link segments into loops via edge-id adjacency.
    std::multimap<long long, size_t> by_end;
    for (size_t k = 0; k < segs.size(); ++k) {
        by_end.emplace(segs[k].e0, k);
        by_end.emplace(segs[k].e1, k);
    }
    std::vector<bool> used(segs.size(), false);
    std::vector<ClosedCurve> loops;
    for (size_t k = 0; k < segs.size(); ++k) {
        if (used[k]) continue;
        std::vector<long long> chain;
        chain.push_back(segs[k].e0);
        chain.push_back(segs[k].e1);
        used[k] = true;
        bool closed = false;
        while (true) {
            const long long tail = chain.back();
            size_t next = SIZE_MAX;
            auto range = by_end.equal_range(tail);
            for (auto it = range.first; it != range.second; ++it)
                if (!used[it->second]) {
                    next = it->second;
                    break;
                }
            if (next == SIZE_MAX) break;
            used[next] = true;
            chain.push_back(segs[next].e0 == tail ? segs[next].e1 : segs[next].e0);
            if (chain.back() == chain.front()) {
                closed = true;
                break;
            }
        }
        if (!closed || chain.size() < 4) continue;
        std::vector<Complex> pts;
        pts.reserve(chain.size());
        for (size_t t = 0; t + 1 < chain.size(); ++t) pts.push_back(crossing.at(chain[t]));
        loops.emplace_back(std::move(pts));
    }
    return loops;
}

} // namespace meridian::detail
