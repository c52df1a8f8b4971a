#pragma once

// Honeycomb trapezoid domains and the complex parafermionic walk observable.
//
// Brick-wall integer coordinates: a vertex is (ix, iy) with real position
// (ix/2, iy*sqrt(3)/2).  Columns ix mod 6 in {0,3} hold "A" vertices with
// edges East/North-West/South-West; columns ix mod 6 in {2,5} hold "B"
// vertices with edges West/North-East/South-East; columns 1,4 mod 6 are
// empty.  Mid-edges get quadrupled coordinates (mx, my) = 2*(ix, iy) + step,
// real position (mx/4, my*sqrt(3)/4).
//
// The trapezoid with width parameter T and height parameter L is
//   ix in [2, 3T],  3*iy - ix <= 6L,  3*iy + ix >= -6L.
// Its left boundary cuts exactly the horizontal edges at ix=2 (2L+1 of
// them), the right boundary the horizontal edges at ix=3T, and the slanted
// top/bottom staircases cut only NW/SW edges respectively.  The start
// mid-edge a = (2, 0) is the middle of the left boundary; walks begin by
// entering the vertex (2, 0) heading East.

#include "sawlab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace sawlab::honeycomb {

inline const double kCriticalX = 1.0 / std::sqrt(2.0 + std::sqrt(2.0));
inline const double kCriticalAlpha = -5.0 * std::acos(-1.0) / 24.0;
inline const double kCriticalY = 1.0 + std::sqrt(2.0);

// Direction k is a multiple of 60 degrees: 0=E, 1=NE, 2=NW, 3=W, 4=SW, 5=SE.
inline constexpr std::array<int, 6> kDix = {2, 1, -1, -2, -1, 1};
inline constexpr std::array<int, 6> kDiy = {0, 1, 1, 0, -1, -1};

struct Vertex {
    int ix = 0;
    int iy = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
    std::complex<double> position() const {
        return {ix / 2.0, iy * std::sqrt(3.0) / 2.0};
    }
};

struct MidEdge {
    int mx = 0;
    int my = 0;
    friend bool operator==(const MidEdge&, const MidEdge&) = default;
    friend auto operator<=>(const MidEdge&, const MidEdge&) = default;
    std::complex<double> position() const {
        return {mx / 4.0, my * std::sqrt(3.0) / 4.0};
    }
};

inline bool is_a_vertex(Vertex v) {
    const int m = ((v.ix % 6) + 6) % 6;
    return m == 0 || m == 3;
}

inline Vertex neighbor(Vertex v, int k) { return {v.ix + kDix[k], v.iy + kDiy[k]}; }

inline MidEdge mid_edge(Vertex v, int k) {
    return {2 * v.ix + kDix[k], 2 * v.iy + kDiy[k]};
}

// The three edge directions incident to a vertex.
inline std::array<int, 3> directions(Vertex v) {
    return is_a_vertex(v) ? std::array<int, 3>{0, 2, 4} : std::array<int, 3>{1, 3, 5};
}

enum class BoundaryClass { Interior, Start, Left, Right, TopBottom };

class Trapezoid {
public:
    Trapezoid(int T, int L, bool adsorbing = false)
        : T_(T), L_(L), adsorbing_(adsorbing) {
        if (T < 1 || L < 1) throw DomainError("Trapezoid: need T >= 1 and L >= 1");
        build();
    }

    int width() const { return T_; }
    int height() const { return L_; }
    bool adsorbing() const { return adsorbing_; }

    bool contains(Vertex v) const {
        if (v.ix < 2 || v.ix > 3 * T_) return false;
        const int m = ((v.ix % 6) + 6) % 6;
        if (m == 1 || m == 4) return false;
        if (((v.ix + v.iy) % 2 + 2) % 2 != 0) return false;
        return 3 * v.iy - v.ix <= 6 * L_ && 3 * v.iy + v.ix >= -6 * L_;
    }

    // Right-hand side wall vertices, the adsorbing set.
    bool wall(Vertex v) const { return adsorbing_ && contains(v) && v.ix == 3 * T_; }

    bool interior(Vertex v) const {
        if (!contains(v)) return false;
        for (int k : directions(v))
            if (!contains(neighbor(v, k))) return false;
        return true;
    }

    MidEdge start() const { return mid_edge({2, 0}, 3); }
    Vertex start_vertex() const { return {2, 0}; }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::map<MidEdge, BoundaryClass>& mid_edges() const { return mid_edges_; }

    BoundaryClass classify(MidEdge m) const {
        auto it = mid_edges_.find(m);
        if (it == mid_edges_.end()) throw DomainError("classify: unknown mid-edge");
        return it->second;
    }

private:
    void build() {
        for (int ix = 2; ix <= 3 * T_; ++ix) {
            for (int iy = -(6 * L_ + ix) / 3; 3 * iy - ix <= 6 * L_; ++iy) {
                const Vertex v{ix, iy};
                if (contains(v)) vertices_.push_back(v);
            }
        }
        for (const Vertex& v : vertices_) {
            for (int k : directions(v)) {
                const MidEdge m = mid_edge(v, k);
                if (contains(neighbor(v, k))) {
                    mid_edges_.emplace(m, BoundaryClass::Interior);
                    continue;
                }
                BoundaryClass cls;
                switch (k) {
                    case 3: cls = BoundaryClass::Left; break;
                    case 0: cls = BoundaryClass::Right; break;
                    case 2:
                    case 4: cls = BoundaryClass::TopBottom; break;
                    default:
                        throw Error("Trapezoid: unexpected boundary edge direction");
                }
                mid_edges_.emplace(m, cls);
            }
        }
        mid_edges_[start()] = BoundaryClass::Start;
    }

    int T_;
    int L_;
    bool adsorbing_;
    std::vector<Vertex> vertices_;
    std::map<MidEdge, BoundaryClass> mid_edges_;
};

// F(p) = sum over SAWs from the start mid-edge a ending at p of
// x^{vertices} * e^{i alpha (left turns - right turns)} * y^{wall visits},
// together with the phase-free weight sums used by the boundary identities.
struct ObservableTable {
    double x = 0.0;
    double alpha = 0.0;
    double y = 1.0;
    std::map<MidEdge, std::complex<long double>> values;
    std::map<MidEdge, long double> weight_sums;
    std::uint64_t walks_enumerated = 0;

    std::complex<long double> value(MidEdge m) const {
        auto it = values.find(m);
        return it == values.end() ? std::complex<long double>{} : it->second;
    }
    long double weight_sum(MidEdge m) const {
        auto it = weight_sums.find(m);
        return it == weight_sums.end() ? 0.0L : it->second;
    }
};

namespace detail {

struct ObservableEnumerator {
    const Trapezoid& dom;
    double x, y;
    std::complex<long double> turn_left, turn_right;
    int max_vertices;
    std::uint64_t budget;
    std::uint64_t nodes = 0;

    std::vector<Vertex> verts;
    std::map<Vertex, int> vid;
    // adjacency[id][k]: neighbour vertex id or -1; edge_of[id][k]: mid-edge id.
    std::vector<std::array<int, 6>> adjacency;
    std::vector<std::array<int, 6>> edge_of;
    std::vector<MidEdge> edges;
    std::vector<char> on_wall;
    std::vector<char> visited;
    std::vector<std::complex<long double>> f;
    std::vector<long double> w;

    ObservableEnumerator(const Trapezoid& dom, double x, double alpha, double y,
                         int max_vertices, std::uint64_t budget)
        : dom(dom), x(x), y(y),
          turn_left(std::polar(1.0L, static_cast<long double>(alpha))),
          turn_right(std::polar(1.0L, -static_cast<long double>(alpha))),
          max_vertices(max_vertices), budget(budget) {
        verts = dom.vertices();
        for (std::size_t i = 0; i < verts.size(); ++i) vid[verts[i]] = static_cast<int>(i);
        std::map<MidEdge, int> eid;
        adjacency.assign(verts.size(), {-1, -1, -1, -1, -1, -1});
        edge_of.assign(verts.size(), {-1, -1, -1, -1, -1, -1});
        for (std::size_t i = 0; i < verts.size(); ++i) {
            for (int k : directions(verts[i])) {
                const MidEdge m = mid_edge(verts[i], k);
                auto [it, fresh] = eid.emplace(m, static_cast<int>(edges.size()));
                if (fresh) edges.push_back(m);
                edge_of[i][k] = it->second;
                const Vertex nb = neighbor(verts[i], k);
                auto vit = vid.find(nb);
                if (vit != vid.end() && dom.contains(nb)) adjacency[i][k] = vit->second;
            }
        }
        on_wall.assign(verts.size(), 0);
        for (std::size_t i = 0; i < verts.size(); ++i) on_wall[i] = dom.wall(verts[i]);
        visited.assign(verts.size(), 0);
        f.assign(edges.size(), {});
        w.assign(edges.size(), 0.0L);
    }

    // Arrive at vertex id `v` along direction `dir`; `weight` already includes
    // this vertex's x (and y, if on the wall), `phase` the turns made so far.
    void dfs(int v, int dir, int depth, long double weight,
             std::complex<long double> phase) {
        if (++nodes > budget)
            throw BudgetError("observable: walk enumeration exceeds the node budget");
        for (int t = 0; t < 2; ++t) {
            const int k = (dir + (t == 0 ? 1 : 5)) % 6;
            const std::complex<long double> ph =
                phase * (t == 0 ? turn_left : turn_right);
            const int e = edge_of[v][k];
            f[e] += weight * ph;
            w[e] += weight;
            const int u = adjacency[v][k];
            if (u < 0 || visited[u] || depth >= max_vertices) continue;
            visited[u] = 1;
            dfs(u, k, depth + 1, weight * x * (on_wall[u] ? y : 1.0), ph);
            visited[u] = 0;
        }
    }

    ObservableTable run() {
        ObservableTable out;
        out.x = x;
        out.y = y;
        // Empty walk: weight 1 at the start mid-edge.
        const int a = edge_of[vid.at(dom.start_vertex())][3];
        f[a] += 1.0L;
        w[a] += 1.0L;
        if (max_vertices >= 1) {
            const int v0 = vid.at(dom.start_vertex());
            visited[v0] = 1;
            dfs(v0, 0, 1, x * (on_wall[v0] ? y : 1.0), {1.0L, 0.0L});
            visited[v0] = 0;
        }
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (f[e] != std::complex<long double>{}) out.values[edges[e]] = f[e];
            if (w[e] != 0.0L) out.weight_sums[edges[e]] = w[e];
        }
        out.walks_enumerated = nodes;
        return out;
    }
};

} // namespace detail

inline ObservableTable observable(const Trapezoid& dom, double x, double alpha,
                                  double y = 1.0, int max_vertices = 1 << 30,
                                  std::uint64_t node_budget = 20'000'000'000ULL) {
    detail::ObservableEnumerator e(dom, x, alpha, y, max_vertices, node_budget);
    ObservableTable out = e.run();
    out.alpha = alpha;
    return out;
}

// (p1 - v) F(p1) + (p2 - v) F(p2) + (p3 - v) F(p3) over the three mid-edges
// incident to the interior vertex v, with mid-edge positions as complex
// numbers.
inline std::complex<double> local_identity_residual(const ObservableTable& table,
                                                    const Trapezoid& dom, Vertex v) {
    if (!dom.interior(v))
        throw BoundaryVertexError("local_identity_residual: vertex is not interior");
    std::complex<long double> acc{};
    const std::complex<double> vp = v.position();
    for (int k : directions(v)) {
        const std::complex<double> d = mid_edge(v, k).position() - vp;
        acc += std::complex<long double>(d.real(), d.imag()) * table.value(mid_edge(v, k));
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

namespace detail {

struct BoundarySums {
    long double left = 0.0L;      // left boundary, start mid-edge excluded
    long double right = 0.0L;
    long double top_bottom = 0.0L;
};

inline BoundarySums boundary_sums(const ObservableTable& table, const Trapezoid& dom) {
    BoundarySums s;
    for (const auto& [m, cls] : dom.mid_edges()) {
        switch (cls) {
            case BoundaryClass::Left: s.left += table.weight_sum(m); break;
            case BoundaryClass::Right: s.right += table.weight_sum(m); break;
            case BoundaryClass::TopBottom: s.top_bottom += table.weight_sum(m); break;
            default: break;
        }
    }
    return s;
}

} // namespace detail

// |cos(3pi/8) L + (1/sqrt 2) M + R - 1| with L, M, R the phase-free walk
// generating functions on the left, top/bottom, and right boundaries.
// Vanishes (to rounding) exactly at x = kCriticalX.
inline double domain_identity_residual(const Trapezoid& dom, double x,
                                       std::uint64_t node_budget = 20'000'000'000ULL) {
    const ObservableTable t =
        observable(dom, x, kCriticalAlpha, 1.0, 1 << 30, node_budget);
    const auto s = detail::boundary_sums(t, dom);
    const long double pi = std::acos(-1.0L);
    const long double lhs = std::cos(3 * pi / 8) * s.left +
                            s.top_bottom / std::sqrt(2.0L) + s.right;
    return static_cast<double>(std::abs(lhs - 1.0L));
}

// |cos(3pi/8) A + cos(pi/4) E + ((y*-y)/(y(y*-1))) B - 1| with wall weight y
// on the right-hand wall vertices and y* = 1 + sqrt 2.  Reduces to the bulk
// identity at y = 1; the B coefficient vanishes at y = y*.
inline double adsorption_identity_residual(const Trapezoid& dom, double x, double y,
                                           std::uint64_t node_budget = 20'000'000'000ULL) {
    if (y <= 0) throw DomainError("adsorption_identity_residual: y must be > 0");
    if (!dom.adsorbing())
        throw DomainError("adsorption_identity_residual: domain is not adsorbing");
    const ObservableTable t =
        observable(dom, x, kCriticalAlpha, y, 1 << 30, node_budget);
    const auto s = detail::boundary_sums(t, dom);
    const long double pi = std::acos(-1.0L);
    const long double ystar = 1.0L + std::sqrt(2.0L);
    const long double cb = (ystar - static_cast<long double>(y)) /
                           (static_cast<long double>(y) * (ystar - 1.0L));
    const long double lhs = std::cos(3 * pi / 8) * s.left +
                            std::cos(pi / 4) * s.top_bottom + cb * s.right;
    return static_cast<double>(std::abs(lhs - 1.0L));
}

// Contour form of the summed local identities: the signed direction-weighted
// sum of F over all boundary mid-edges (start included).  Telescopes to zero
// at (x_c, alpha_c) because every interior mid-edge cancels between its two
// endpoints.
inline std::complex<double> boundary_contour_sum(const ObservableTable& table,
                                                 const Trapezoid& dom) {
    std::complex<long double> acc{};
    for (const Vertex& v : dom.vertices()) {
        const std::complex<double> vp = v.position();
        for (int k : directions(v)) {
            if (dom.contains(neighbor(v, k))) continue;
            const std::complex<double> d = mid_edge(v, k).position() - vp;
            acc += std::complex<long double>(d.real(), d.imag()) *
                   table.value(mid_edge(v, k));
        }
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

} // namespace sawlab::honeycomb
