#pragma once

#include "sawlab/bigint.hpp"
#include "sawlab/count_table.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/lattice.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace sawlab {

enum class SymmetryMode { None, Octant };

struct SearchPlan {
    int prefix_depth = 6;
    unsigned worker_count = 0; // 0 = hardware concurrency
    SymmetryMode symmetry = SymmetryMode::None;
    double node_budget = 1e11;
};

namespace detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

inline void check_budget(double estimate, const SearchPlan& plan, const char* what) {
    if (estimate > plan.node_budget)
        throw BudgetError(std::string(what) + ": estimated node count exceeds budget");
}

// Runs task(i) for i in [0, count) over a worker pool; work is claimed
// through an atomic index so the partition is dynamic but results must be
// merged commutatively by the caller.
inline void parallel_for(std::size_t count, unsigned workers,
                         const std::function<void(std::size_t, unsigned)>& task) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                task(i, w);
            }
        });
    }
    for (auto& t : pool) t.join();
}

// Flat occupancy grid over [-extent, extent]^2 with precomputed step offsets.
struct Grid {
    explicit Grid(int extent)
        : extent(extent), stride(2 * extent + 1),
          cells(static_cast<std::size_t>(stride) * stride, 0) {
        // E, N, W, S in index space; x changes by stride, y by 1.
        offsets[0] = stride;
        offsets[1] = 1;
        offsets[2] = -stride;
        offsets[3] = -1;
    }
    int origin() const { return extent * stride + extent; }
    int x_of(int idx) const { return idx / stride - extent; }
    int y_of(int idx) const { return idx % stride - extent; }

    int extent;
    int stride;
    std::vector<std::uint8_t> cells;
    int offsets[4];
};

} // namespace detail

// ---------------------------------------------------------------------------
// count_saws: number of n-step SAWs anchored at the origin.
// ---------------------------------------------------------------------------

namespace detail {

struct SawCounter {
    Grid grid;
    const Domain* domain;
    int n_max;
    std::vector<std::uint64_t> tally;
    bool octant;

    SawCounter(int n_max, const Domain& dom, bool octant)
        : grid(n_max + 1), domain(&dom), n_max(n_max),
          tally(n_max + 1, 0), octant(octant) {
        grid.cells[grid.origin()] = 1;
    }

    bool allowed(int idx) const {
        if (domain->kind() == Domain::Kind::FullPlane) return true;
        return domain->contains({grid.x_of(idx), grid.y_of(idx)});
    }

    // Plain four-direction DFS; tallies every node.
    void dfs(int pos, int depth, int min_depth) {
        if (depth >= min_depth) ++tally[depth];
        if (depth == n_max) return;
        for (int d = 0; d < 4; ++d) {
            const int nxt = pos + grid.offsets[d];
            if (grid.cells[nxt] || !allowed(nxt)) continue;
            grid.cells[nxt] = 1;
            dfs(nxt, depth + 1, min_depth);
            grid.cells[nxt] = 0;
        }
    }

    // Octant-restricted DFS: first step East, first off-axis step North.
    // Tallies only walks that have left the axis.
    void dfs_octant(int pos, int depth, bool on_axis, int min_depth) {
        if (!on_axis && depth >= min_depth) ++tally[depth];
        if (depth == n_max) return;
        if (on_axis) {
            const int east = pos + grid.offsets[0];
            grid.cells[east] = 1;
            dfs_octant(east, depth + 1, true, min_depth);
            grid.cells[east] = 0;
            if (depth >= 1) { // leaving the axis requires at least one East step
                const int north = pos + grid.offsets[1];
                grid.cells[north] = 1;
                dfs_octant(north, depth + 1, false, min_depth);
                grid.cells[north] = 0;
            }
            return;
        }
        for (int d = 0; d < 4; ++d) {
            const int nxt = pos + grid.offsets[d];
            if (grid.cells[nxt]) continue;
            grid.cells[nxt] = 1;
            dfs_octant(nxt, depth + 1, false, min_depth);
            grid.cells[nxt] = 0;
        }
    }
};

// Collects all self-avoiding prefixes of exactly `depth` steps as vertex
// index sequences (origin excluded); shorter walks are tallied in `counter`.
inline void collect_prefixes(SawCounter& c, int pos, int depth, int target,
                             bool on_axis, std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
    if (depth == target) {
        out.push_back(cur);
        return;
    }
    if (c.octant) {
        if (!on_axis) ++c.tally[depth];
    } else {
        ++c.tally[depth];
    }
    const auto try_step = [&](int d, bool next_on_axis) {
        const int nxt = pos + c.grid.offsets[d];
        if (c.grid.cells[nxt] || !c.allowed(nxt)) return;
        c.grid.cells[nxt] = 1;
        cur.push_back(nxt);
        collect_prefixes(c, nxt, depth + 1, target, next_on_axis, cur, out);
        cur.pop_back();
        c.grid.cells[nxt] = 0;
    };
    if (c.octant && on_axis) {
        try_step(0, true);
        if (depth >= 1) try_step(1, false);
        return;
    }
    for (int d = 0; d < 4; ++d) try_step(d, false);
}

} // namespace detail

inline CountTable count_saws(int n_max, const Domain& domain = Domain::full_plane(),
                             const SearchPlan& plan = {}) {
    if (n_max < 0) throw DomainError("count_saws: n_max must be >= 0");
    detail::check_budget(std::pow(2.64, n_max), plan, "count_saws");
    const bool octant = plan.symmetry == SymmetryMode::Octant;
    if (octant && domain.kind() != Domain::Kind::FullPlane)
        throw DomainError("count_saws: octant symmetry requires the full plane");

    const unsigned workers = detail::resolve_workers(plan.worker_count);
    const int prefix_depth = std::min(plan.prefix_depth, n_max);

    detail::SawCounter root(n_max, domain, octant);
    std::vector<std::vector<int>> prefixes;
    std::vector<int> cur;
    detail::collect_prefixes(root, root.grid.origin(), 0, prefix_depth,
                             /*on_axis=*/true, cur, prefixes);

    std::vector<std::vector<std::uint64_t>> partial(
        workers, std::vector<std::uint64_t>(n_max + 1, 0));
    detail::parallel_for(prefixes.size(), workers, [&](std::size_t i, unsigned w) {
        detail::SawCounter local(n_max, domain, octant);
        int pos = local.grid.origin();
        bool on_axis = true;
        for (int idx : prefixes[i]) {
            local.grid.cells[idx] = 1;
            if (idx != pos + local.grid.offsets[0]) on_axis = false;
            pos = idx;
        }
        if (octant)
            local.dfs_octant(pos, prefix_depth, on_axis, prefix_depth);
        else
            local.dfs(pos, prefix_depth, prefix_depth);
        for (int n = 0; n <= n_max; ++n) partial[w][n] += local.tally[n];
    });

    CountTable table(static_cast<std::size_t>(n_max));
    for (int n = 0; n <= n_max; ++n) {
        BigInt total = root.tally[n];
        for (unsigned w = 0; w < workers; ++w) total += partial[w][n];
        if (octant) {
            total *= 8;
            if (n >= 1) total += 4; // the four straight axis walks
            if (n == 0) total = 1;
        }
        table.at(n) = total;
    }
    return table;
}

// ---------------------------------------------------------------------------
// count_polygons: p_{m,n} for SAPs up to translation, perimeter x area.
// ---------------------------------------------------------------------------

inline JointCountTable count_polygons(int m_max, const SearchPlan& plan = {}) {
    if (m_max < 4) throw DomainError("count_polygons: m_max must be >= 4");
    detail::check_budget(std::pow(2.64, m_max), plan, "count_polygons");

    detail::Grid grid(m_max / 2 + 1);
    // tally[m][area] over closed walks with first step East.
    std::vector<std::vector<std::uint64_t>> closed(m_max + 1);
    // Max area at perimeter m is floor(m/4) * floor((m+2)/4) (rectangle).
    for (int m = 4; m <= m_max; ++m)
        closed[m].assign(static_cast<std::size_t>(m / 4) * ((m + 2) / 4) + 1, 0);

    const int origin = grid.origin();
    // Shoelace accumulator: sum of (x_i*y_{i+1} - x_{i+1}*y_i) along edges.
    std::function<void(int, int, long long)> dfs = [&](int pos, int depth,
                                                       long long twice_area) {
        const int x = grid.x_of(pos);
        const int y = grid.y_of(pos);
        const int dist = std::abs(x) + std::abs(y);
        if (depth >= 3 && dist == 1 && depth + 1 <= m_max) {
            const long long area = std::llabs(twice_area) / 2;
            ++closed[depth + 1][static_cast<std::size_t>(area)];
        }
        if (depth == m_max - 1) return;
        if (dist > m_max - depth) return; // cannot close in time
        for (int d = 0; d < 4; ++d) {
            const int nxt = pos + grid.offsets[d];
            if (grid.cells[nxt]) continue;
            const int nx = grid.x_of(nxt);
            const int ny = grid.y_of(nxt);
            const long long term =
                static_cast<long long>(x) * ny - static_cast<long long>(nx) * y;
            grid.cells[nxt] = 1;
            dfs(nxt, depth + 1, twice_area + term);
            grid.cells[nxt] = 0;
        }
    };

    grid.cells[origin] = 1;
    const int east = origin + grid.offsets[0];
    grid.cells[east] = 1;
    dfs(east, 1, 0); // first step East; multiply by 4 below
    grid.cells[east] = 0;
    grid.cells[origin] = 0;

    JointCountTable table("perimeter", "area");
    for (int m = 4; m <= m_max; ++m) {
        for (std::size_t a = 0; a < closed[m].size(); ++a) {
            if (closed[m][a] == 0) continue;
            BigInt rooted = BigInt(closed[m][a]) * 4;
            // Each polygon shape yields 2m rooted directed closed walks.
            if (rooted % (2 * m) != 0)
                throw Error("count_polygons: rooted count not divisible by 2m");
            table.at(m, static_cast<long>(a)) = rooted / (2 * m);
        }
    }
    return table;
}

// a_n = sum_m p_{m,n}; requires perimeter coverage up to 2n+2.
inline CountTable area_counts(const JointCountTable& table, int n_max) {
    long m_max_present = 0;
    for (const auto& [k, v] : table.entries()) m_max_present = std::max(m_max_present, k.first);
    if (m_max_present < 2L * n_max + 2)
        throw CoverageError("area_counts: perimeter range truncates area classes");
    CountTable out(static_cast<std::size_t>(n_max));
    for (const auto& [k, v] : table.entries())
        if (k.second >= 1 && k.second <= n_max) out.at(k.second) += v;
    return out;
}

// ---------------------------------------------------------------------------
// count_half_plane: c_n^+(i), walks in y >= 0 with i surface vertices
// (origin excluded).
// ---------------------------------------------------------------------------

namespace detail {

struct HalfPlaneCounter {
    Grid grid;
    int n_max;
    // tally[n * (n_max+1) + i]
    std::vector<std::uint64_t> tally;

    explicit HalfPlaneCounter(int n_max)
        : grid(n_max + 1), n_max(n_max),
          tally(static_cast<std::size_t>(n_max + 1) * (n_max + 1), 0) {
        grid.cells[grid.origin()] = 1;
    }

    void dfs(int pos, int depth, int contacts, int min_depth) {
        if (depth >= min_depth)
            ++tally[static_cast<std::size_t>(depth) * (n_max + 1) + contacts];
        if (depth == n_max) return;
        for (int d = 0; d < 4; ++d) {
            const int nxt = pos + grid.offsets[d];
            if (grid.cells[nxt]) continue;
            const int ny = grid.y_of(nxt);
            if (ny < 0) continue;
            grid.cells[nxt] = 1;
            dfs(nxt, depth + 1, contacts + (ny == 0 ? 1 : 0), min_depth);
            grid.cells[nxt] = 0;
        }
    }

    void collect(int pos, int depth, int target, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
        if (depth == target) {
            out.push_back(cur);
            return;
        }
        int contacts = 0;
        for (int idx : cur)
            if (grid.y_of(idx) == 0) ++contacts;
        ++tally[static_cast<std::size_t>(depth) * (n_max + 1) + contacts];
        for (int d = 0; d < 4; ++d) {
            const int nxt = pos + grid.offsets[d];
            if (grid.cells[nxt] || grid.y_of(nxt) < 0) continue;
            grid.cells[nxt] = 1;
            cur.push_back(nxt);
            collect(nxt, depth + 1, target, cur, out);
            cur.pop_back();
            grid.cells[nxt] = 0;
        }
    }
};

} // namespace detail

inline JointCountTable count_half_plane(int n_max, const SearchPlan& plan = {}) {
    if (n_max < 0) throw DomainError("count_half_plane: n_max must be >= 0");
    detail::check_budget(std::pow(2.64, n_max), plan, "count_half_plane");
    const unsigned workers = detail::resolve_workers(plan.worker_count);
    const int prefix_depth = std::min(plan.prefix_depth, n_max);

    detail::HalfPlaneCounter root(n_max);
    std::vector<std::vector<int>> prefixes;
    std::vector<int> cur;
    root.collect(root.grid.origin(), 0, prefix_depth, cur, prefixes);

    std::vector<std::vector<std::uint64_t>> partial(
        workers,
        std::vector<std::uint64_t>(static_cast<std::size_t>(n_max + 1) * (n_max + 1), 0));
    detail::parallel_for(prefixes.size(), workers, [&](std::size_t i, unsigned w) {
        detail::HalfPlaneCounter local(n_max);
        int pos = local.grid.origin();
        int contacts = 0;
        for (int idx : prefixes[i]) {
            local.grid.cells[idx] = 1;
            if (local.grid.y_of(idx) == 0) ++contacts;
            pos = idx;
        }
        local.dfs(pos, prefix_depth, contacts, prefix_depth);
        for (std::size_t k = 0; k < local.tally.size(); ++k) partial[w][k] += local.tally[k];
    });

    JointCountTable table("length", "surface_contacts");
    for (int n = 0; n <= n_max; ++n) {
        for (int i = 0; i <= n_max; ++i) {
            BigInt total = root.tally[static_cast<std::size_t>(n) * (n_max + 1) + i];
            for (unsigned w = 0; w < workers; ++w)
                total += partial[w][static_cast<std::size_t>(n) * (n_max + 1) + i];
            if (total != 0) table.at(n, i) = total;
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// count_crossing: c_n(L), SAWs from (0,0) to (L,L) inside the LxL square.
// ---------------------------------------------------------------------------

namespace detail {

// Grid cells are indexed row-major over [0,L]^2; occupancy and reachability
// are kept in 64-bit masks (requires (L+1)^2 <= 64, i.e. L <= 6 at the
// default budget).
struct CrossingCounter {
    int side;                  // L
    int dim;                   // L + 1
    std::vector<std::uint64_t> tally;
    std::uint64_t visited = 0;
    std::uint64_t full;
    std::uint64_t not_left_col, not_right_col;
    int target;

    explicit CrossingCounter(int L)
        : side(L), dim(L + 1), tally(static_cast<std::size_t>((L + 1) * (L + 1)), 0) {
        const int cells = dim * dim;
        full = cells == 64 ? ~0ULL : ((1ULL << cells) - 1);
        not_left_col = 0;
        not_right_col = 0;
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                const int idx = r * dim + c;
                if (c != 0) not_left_col |= 1ULL << idx;
                if (c != dim - 1) not_right_col |= 1ULL << idx;
            }
        }
        target = dim * dim - 1;
    }

    bool reachable(int from) const {
        const std::uint64_t free = full & ~visited;
        std::uint64_t reach = 1ULL << from;
        for (;;) {
            const std::uint64_t grown =
                reach | (((reach << 1) & not_left_col) | ((reach >> 1) & not_right_col) |
                         (reach << dim) | (reach >> dim)) & (free | (1ULL << target));
            const std::uint64_t next = (grown | reach) & full;
            if (next == reach) break;
            reach = next;
            if (reach & (1ULL << target)) return true;
        }
        return (reach & (1ULL << target)) != 0;
    }

    void dfs(int pos, int depth) {
        const int row = pos / dim;
        const int col = pos % dim;
        for (int d = 0; d < 4; ++d) {
            int nr = row, nc = col;
            switch (d) {
                case 0: ++nc; break;
                case 1: ++nr; break;
                case 2: --nc; break;
                case 3: --nr; break;
            }
            if (nr < 0 || nr >= dim || nc < 0 || nc >= dim) continue;
            const int nxt = nr * dim + nc;
            if (visited & (1ULL << nxt)) continue;
            if (nxt == target) {
                ++tally[depth + 1];
                continue;
            }
            visited |= 1ULL << nxt;
            if (reachable(nxt)) dfs(nxt, depth + 1);
            visited &= ~(1ULL << nxt);
        }
    }
};

} // namespace detail

inline CountTable count_crossing(int L, const SearchPlan& plan = {}) {
    if (L < 1) throw DomainError("count_crossing: L must be >= 1");
    detail::check_budget(std::pow(1.745, static_cast<double>(L) * L), plan,
                         "count_crossing");
    if ((L + 1) * (L + 1) > 64)
        throw BudgetError("count_crossing: grid exceeds the bitmask engine size");

    // First-step symmetry: paths starting East mirror onto paths starting
    // North across the main diagonal, so enumerate East starts and double.
    detail::CrossingCounter c(L);
    c.visited = 1ULL; // (0,0)
    const int east = 1;
    c.visited |= 1ULL << east;
    c.dfs(east, 1);

    const int n_max = (L + 1) * (L + 1) - 1;
    CountTable table(static_cast<std::size_t>(n_max));
    for (int n = 0; n <= n_max; ++n) table.at(n) = BigInt(c.tally[n]) * 2;
    return table;
}

// ---------------------------------------------------------------------------
// count_interacting_pulled: C(N,m,x) for surface-tethered half-plane walks.
// ---------------------------------------------------------------------------

namespace detail {

struct InteractingCounter {
    Grid grid;
    int n_max;
    // tally[n] indexed by m * (2n_max+1) + (x + n_max)
    std::vector<std::vector<std::uint64_t>> tally;

    explicit InteractingCounter(int n_max) : grid(n_max + 1), n_max(n_max) {
        grid.cells[grid.origin()] = 1;
        tally.resize(n_max + 1);
        // Contact count is bounded by n + 2 (lattice-adjacency handshake).
        for (int n = 0; n <= n_max; ++n)
            tally[n].assign(static_cast<std::size_t>(n + 3) * (2 * n_max + 1), 0);
    }

    void bump(int depth, int contacts, int x) {
        ++tally[depth][static_cast<std::size_t>(contacts) * (2 * n_max + 1) +
                       (x + n_max)];
    }

    int new_contacts(int pos, int prev) const {
        int c = 0;
        for (int d = 0; d < 4; ++d) {
            const int nb = pos + grid.offsets[d];
            if (nb != prev && grid.cells[nb]) ++c;
        }
        return c;
    }

    void dfs(int pos, int depth, int contacts, int min_depth) {
        if (depth >= min_depth) bump(depth, contacts, grid.x_of(pos));
        if (depth == n_max) return;
        for (int d = 0; d < 4; ++d) {
            const int nxt = pos + grid.offsets[d];
            if (grid.cells[nxt] || grid.y_of(nxt) < 0) continue;
            grid.cells[nxt] = 1;
            dfs(nxt, depth + 1, contacts + new_contacts(nxt, pos), min_depth);
            grid.cells[nxt] = 0;
        }
    }

    void collect(int pos, int depth, int contacts, int target, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
        if (depth == target) {
            out.push_back(cur);
            return;
        }
        bump(depth, contacts, grid.x_of(pos));
        for (int d = 0; d < 4; ++d) {
            const int nxt = pos + grid.offsets[d];
            if (grid.cells[nxt] || grid.y_of(nxt) < 0) continue;
            const int add = new_contacts(nxt, pos);
            grid.cells[nxt] = 1;
            cur.push_back(nxt);
            collect(nxt, depth + 1, contacts + add, target, cur, out);
            cur.pop_back();
            grid.cells[nxt] = 0;
        }
    }
};

} // namespace detail

// Returns one (contacts, displacement) table per walk length N = 0..N_max.
inline std::vector<JointCountTable> count_interacting_pulled(int N_max,
                                                             const SearchPlan& plan = {}) {
    if (N_max < 1) throw DomainError("count_interacting_pulled: N_max must be >= 1");
    detail::check_budget(std::pow(2.64, N_max), plan, "count_interacting_pulled");
    const unsigned workers = detail::resolve_workers(plan.worker_count);
    const int prefix_depth = std::min(plan.prefix_depth, N_max);

    detail::InteractingCounter root(N_max);
    std::vector<std::vector<int>> prefixes;
    std::vector<int> cur;
    root.collect(root.grid.origin(), 0, 0, prefix_depth, cur, prefixes);

    std::vector<detail::InteractingCounter> partial;
    partial.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) partial.emplace_back(N_max);

    detail::parallel_for(prefixes.size(), workers, [&](std::size_t i, unsigned w) {
        detail::InteractingCounter local(N_max);
        int pos = local.grid.origin();
        int contacts = 0;
        // Replay the prefix, rebuilding occupancy and the contact count.
        for (int idx : prefixes[i]) {
            contacts += local.new_contacts(idx, pos);
            local.grid.cells[idx] = 1;
            pos = idx;
        }
        local.dfs(pos, prefix_depth, contacts, prefix_depth);
        for (int n = 0; n <= N_max; ++n)
            for (std::size_t k = 0; k < local.tally[n].size(); ++k)
                partial[w].tally[n][k] += local.tally[n][k];
    });

    std::vector<JointCountTable> out;
    out.reserve(N_max + 1);
    for (int n = 0; n <= N_max; ++n) {
        JointCountTable t("contacts", "displacement");
        for (int m = 0; m <= n + 2; ++m) {
            for (int x = -N_max; x <= N_max; ++x) {
                const std::size_t k =
                    static_cast<std::size_t>(m) * (2 * N_max + 1) + (x + N_max);
                BigInt total = root.tally[n][k];
                for (unsigned w = 0; w < workers; ++w) total += partial[w].tally[n][k];
                if (total != 0) t.at(m, x) = total;
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact mean-square end-to-end distance at fixed length (pivot MC oracle).
// ---------------------------------------------------------------------------

inline double exact_mean_square_end_distance(int n) {
    if (n < 1) throw DomainError("exact_mean_square_end_distance: n must be >= 1");
    detail::Grid grid(n + 1);
    BigInt sum_r2 = 0;
    BigInt count = 0;
    std::function<void(int, int)> dfs = [&](int pos, int depth) {
        if (depth == n) {
            const long long x = grid.x_of(pos);
            const long long y = grid.y_of(pos);
            sum_r2 += x * x + y * y;
            ++count;
            return;
        }
        for (int d = 0; d < 4; ++d) {
            const int nxt = pos + grid.offsets[d];
            if (grid.cells[nxt]) continue;
            grid.cells[nxt] = 1;
            dfs(nxt, depth + 1);
            grid.cells[nxt] = 0;
        }
    };
    grid.cells[grid.origin()] = 1;
    dfs(grid.origin(), 0);
    // Exact rational value fits comfortably in double for desk-scale n.
    return sum_r2.convert_to<double>() / count.convert_to<double>();
}

} // namespace sawlab
