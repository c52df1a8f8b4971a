#pragma once

// Double-exponential (tanh-sinh) quadrature over a finite interval, with
// integrand callbacks that receive accurately-computed distances to both
// endpoints so algebraically singular factors like (x-a)^p can be evaluated
// without cancellation.

#include "sawlab/errors.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <mutex>
#include <vector>

namespace sawlab {

template <class Real>
struct QuadratureResult {
    Real value{};
    Real error_estimate{};
    int levels_used = 0;
};

namespace detail {

template <class Real>
struct TanhSinhNode {
    Real one_minus_x; // 1 - tanh((pi/2) sinh t), t >= 0
    Real one_plus_x;  // by symmetry the node at -t has the two swapped
    Real weight;      // (pi/2) cosh t / cosh^2((pi/2) sinh t)
};

// Nodes are nested: level 0 holds t = j (j >= 0), level k >= 1 holds the
// odd multiples of 2^-k, so refining a level reuses all previous evaluations.
template <class Real>
const std::vector<TanhSinhNode<Real>>& tanh_sinh_level(int level) {
    // deque: growing the cache never moves already-published levels.
    static std::deque<std::vector<TanhSinhNode<Real>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    using std::asinh;
    using std::atan;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sinh;
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real pi_half = Real(2) * atan(Real(1));
    const Real t_max = asinh((Real(2) / (2 * pi_half)) * (-log(eps) + 2));
    while (static_cast<int>(cache.size()) <= level) {
        const int k = static_cast<int>(cache.size());
        const Real h = Real(1) / Real(std::int64_t(1) << k);
        std::vector<TanhSinhNode<Real>> nodes;
        for (std::int64_t j = 0;; ++j) {
            if (k > 0 && j % 2 == 0) continue; // even multiples live in coarser levels
            const Real t = Real(j) * h;
            if (t > t_max) break;
            const Real s = pi_half * sinh(t);
            const Real e2 = exp(-2 * s);
            const Real denom = 1 + e2;
            TanhSinhNode<Real> node;
            node.one_minus_x = 2 * e2 / denom;
            node.one_plus_x = 2 / denom;
            const Real ch = (exp(s) + exp(-s)) / 2;
            node.weight = pi_half * cosh(t) / (ch * ch);
            nodes.push_back(node);
        }
        cache.push_back(std::move(nodes));
    }
    return cache[level];
}

} // namespace detail

// Integrates f(x, x - a, b - x) over [a, b].  Converged when two successive
// refinement levels agree to rel_tol; throws ToleranceError otherwise.
template <class Real, class F>
QuadratureResult<Real> tanh_sinh(F&& f, Real a, Real b, Real rel_tol,
                                 int max_level = 12) {
    using std::abs;
    if (!(b > a)) throw DomainError("tanh_sinh: need b > a");
    const Real mid = (a + b) / 2;
    const Real half = (b - a) / 2;

    const auto eval_level = [&](int level) {
        Real sum = 0;
        for (const auto& node : detail::tanh_sinh_level<Real>(level)) {
            const Real up = half * node.one_minus_x;   // b - x for t >= 0
            const Real lo = half * node.one_plus_x;    // x - a for t >= 0
            sum += node.weight * f(b - up, lo, up);
            if (node.one_minus_x != node.one_plus_x)   // mirrored node at -t
                sum += node.weight * f(a + up, up, lo);
        }
        return sum;
    };

    QuadratureResult<Real> out;
    // acc accumulates the raw node sum; S_k = half * h_k * acc, where each
    // refinement only adds the odd multiples of the new spacing.
    Real acc = eval_level(0);
    Real value = half * acc;
    Real prev = value;
    for (int level = 1; level <= max_level; ++level) {
        acc += eval_level(level);
        const Real h = Real(1) / Real(std::int64_t(1) << level);
        value = half * h * acc;
        out.levels_used = level;
        out.error_estimate = abs(value - prev);
        if (out.error_estimate <= rel_tol * abs(value)) {
            out.value = value;
            return out;
        }
        prev = value;
    }
    throw ToleranceError("tanh_sinh: quadrature did not reach the requested tolerance");
}

} // namespace sawlab
