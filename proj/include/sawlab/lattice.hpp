#pragma once

#include "sawlab/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace sawlab {

struct Point {
    int x = 0;
    int y = 0;
    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
};

enum class SquareStep : std::uint8_t { East, North, West, South };

inline constexpr std::array<SquareStep, 4> kAllSteps = {
    SquareStep::East, SquareStep::North, SquareStep::West, SquareStep::South};

inline Point displacement(SquareStep s) {
    switch (s) {
        case SquareStep::East: return {1, 0};
        case SquareStep::North: return {0, 1};
        case SquareStep::West: return {-1, 0};
        case SquareStep::South: return {0, -1};
    }
    return {0, 0};
}

// Geometry of the active region, as a containment predicate.
class Domain {
public:
    enum class Kind { FullPlane, HalfPlane, Square };

    static Domain full_plane() { return Domain(Kind::FullPlane, 0); }
    static Domain half_plane() { return Domain(Kind::HalfPlane, 0); }
    static Domain square(int side) { return Domain(Kind::Square, side); }

    bool contains(Point p) const {
        switch (kind_) {
            case Kind::FullPlane: return true;
            case Kind::HalfPlane: return p.y >= 0;
            case Kind::Square:
                return p.x >= 0 && p.x <= side_ && p.y >= 0 && p.y <= side_;
        }
        return false;
    }

    Kind kind() const { return kind_; }
    int side() const { return side_; }

private:
    Domain(Kind k, int side) : kind_(k), side_(side) {}
    Kind kind_;
    int side_;
};

// An origin-anchored self-avoiding walk, stored as its vertex sequence.
class Walk {
public:
    Walk() : vertices_{Point{0, 0}} {}

    const std::vector<Point>& vertices() const { return vertices_; }
    std::size_t length() const { return vertices_.size() - 1; }
    Point end() const { return vertices_.back(); }

    std::vector<SquareStep> steps() const {
        std::vector<SquareStep> out;
        out.reserve(length());
        for (std::size_t i = 1; i < vertices_.size(); ++i) {
            const Point d = vertices_[i] - vertices_[i - 1];
            for (SquareStep s : kAllSteps)
                if (displacement(s) == d) out.push_back(s);
        }
        return out;
    }

    bool self_avoiding() const {
        auto v = vertices_;
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    }

    friend Walk extend(const Walk& w, SquareStep s, const Domain& domain);

private:
    std::vector<Point> vertices_;
};

inline Walk extend(const Walk& walk, SquareStep step,
                   const Domain& domain = Domain::full_plane()) {
    const Point target = walk.end() + displacement(step);
    if (!domain.contains(target)) throw DomainError("extend: target outside domain");
    for (const Point& p : walk.vertices())
        if (p == target) throw OccupiedError("extend: target vertex already visited");
    Walk out = walk;
    out.vertices_.push_back(target);
    return out;
}

// A self-avoiding polygon in canonical form: translated so its
// lexicographically least vertex is the origin, traversed from that vertex
// with the lexicographically smaller of the two orientations.
class Polygon {
public:
    // Builds from any cyclic vertex sequence (closing edge implied).
    explicit Polygon(std::vector<Point> cycle) : vertices_(std::move(cycle)) {
        canonicalize();
    }

    const std::vector<Point>& vertices() const { return vertices_; }
    int perimeter() const { return static_cast<int>(vertices_.size()); }

    // Shoelace area, orientation-free.
    long long area() const {
        long long twice = 0;
        const std::size_t n = vertices_.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = vertices_[i];
            const Point& b = vertices_[(i + 1) % n];
            twice += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
        }
        return std::llabs(twice) / 2;
    }

    friend bool operator==(const Polygon&, const Polygon&) = default;

private:
    void canonicalize() {
        const std::size_t n = vertices_.size();
        const Point least = *std::min_element(vertices_.begin(), vertices_.end());
        for (auto& p : vertices_) p = p - least;

        std::vector<Point> best;
        for (int dir = 0; dir < 2; ++dir) {
            for (std::size_t start = 0; start < n; ++start) {
                if (!(vertices_[start] == Point{0, 0})) continue;
                std::vector<Point> cand(n);
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t idx =
                        dir == 0 ? (start + i) % n : (start + n - i) % n;
                    cand[i] = vertices_[idx];
                }
                if (best.empty() || cand < best) best = std::move(cand);
            }
        }
        vertices_ = std::move(best);
    }

    std::vector<Point> vertices_;
};

inline Polygon close_polygon(const Walk& walk) {
    if (walk.length() < 3) throw NotClosableError("close_polygon: walk too short");
    const Point e = walk.end();
    if (std::abs(e.x) + std::abs(e.y) != 1)
        throw NotClosableError("close_polygon: end-point not adjacent to origin");
    return Polygon(walk.vertices());
}

// Flat bitmap of visited lattice points over the window [-n, n]^2.
class OccupancySet {
public:
    explicit OccupancySet(int max_extent)
        : extent_(max_extent), width_(2 * max_extent + 1),
          cells_(static_cast<std::size_t>(width_) * width_, 0) {}

    void insert(Point p) { cells_[index(p)] = 1; }
    void remove(Point p) { cells_[index(p)] = 0; }
    bool contains(Point p) const { return cells_[index(p)] != 0; }
    int extent() const { return extent_; }

private:
    std::size_t index(Point p) const {
        return static_cast<std::size_t>(p.x + extent_) * width_ + (p.y + extent_);
    }
    int extent_;
    int width_;
    std::vector<std::uint8_t> cells_;
};

} // namespace sawlab
