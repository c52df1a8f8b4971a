#pragma once

// Pivot-algorithm sampler for fixed-length square-lattice SAWs and the
// mean-square end-to-end exponent fit.  The sampler is the classic O(n)
// pivot move: pick a site and one of the 8 lattice point-group elements,
// transform the tail, and accept iff the result is self-avoiding.  Collision
// checks use a timestamped dense grid so no per-move clearing is needed.

#include "sawlab/errors.hpp"
#include "sawlab/lattice.hpp"
#include "sawlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace sawlab {

// The dihedral group of the square lattice.
inline Point apply_symmetry(int g, Point p) {
    switch (g & 7) {
        case 0: return {p.x, p.y};
        case 1: return {-p.y, p.x};
        case 2: return {-p.x, -p.y};
        case 3: return {p.y, -p.x};
        case 4: return {-p.x, p.y};
        case 5: return {p.x, -p.y};
        case 6: return {p.y, p.x};
        case 7: return {-p.y, -p.x};
    }
    return p;
}

class PivotChain {
public:
    PivotChain(int n, std::uint64_t seed, std::uint64_t stream = 0)
        : n_(n), rng_(seed, stream), extent_(n), width_(2 * n + 1),
          stamps_(static_cast<std::size_t>(width_) * width_, 0) {
        if (n < 2) throw DomainError("PivotChain: need n >= 2");
        vertices_.resize(n + 1);
        for (int i = 0; i <= n; ++i) vertices_[i] = {i, 0}; // straight rod
        scratch_.resize(n + 1);
    }

    int length() const { return n_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    std::uint64_t accepted() const { return accepted_; }
    std::uint64_t attempted() const { return attempted_; }

    double end_distance_squared() const {
        const Point e = vertices_.back();
        return double(e.x) * e.x + double(e.y) * e.y;
    }

    bool self_avoiding() const {
        std::vector<Point> v = vertices_;
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    }

    // One random pivot attempt; returns whether the move was accepted.
    bool step() {
        const int p = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n_)));
        const int g = static_cast<int>(rng_.below(8));
        return attempt(p, g);
    }

    // Pivot the tail after site p by group element g.
    bool attempt(int p, int g) {
        if (p < 0 || p >= n_ || g < 0 || g >= 8)
            throw DomainError("PivotChain::attempt: bad pivot site or symmetry");
        ++attempted_;
        if (g == 0) { // identity: trivially self-avoiding, walk unchanged
            ++accepted_;
            return true;
        }
        const Point pivot = vertices_[p];
        ++stamp_;
        for (int i = 0; i <= p; ++i) stamps_[index(vertices_[i])] = stamp_;
        for (int i = p + 1; i <= n_; ++i) {
            const Point q = pivot + apply_symmetry(g, vertices_[i] - pivot);
            auto& cell = stamps_[index(q)];
            if (cell == stamp_) return false;
            cell = stamp_;
            scratch_[i] = q;
        }
        for (int i = p + 1; i <= n_; ++i) vertices_[i] = scratch_[i];
        ++accepted_;
        return true;
    }

private:
    std::size_t index(Point p) const {
        return static_cast<std::size_t>(p.x + extent_) * width_ + (p.y + extent_);
    }

    int n_;
    Xoshiro256pp rng_;
    int extent_;
    int width_;
    std::vector<Point> vertices_;
    std::vector<Point> scratch_;
    std::vector<std::uint64_t> stamps_;
    std::uint64_t stamp_ = 0;
    std::uint64_t accepted_ = 0;
    std::uint64_t attempted_ = 0;
};

struct NuDatum {
    int n = 0;
    double mean_r2 = 0.0;
    double se = 0.0; // standard error of the mean (0 for exact entries)
};

struct NuEstimate {
    std::vector<NuDatum> data;
    double nu = 0.0;
    double nu_se = 0.0;
    double intercept = 0.0;            // log prefactor
    std::vector<double> fit_residuals; // log-space residuals per data point
};

struct PivotPlan {
    int warmup_factor = 20;   // discard warmup_factor * n attempts
    int stride_divisor = 2;   // sample every n / stride_divisor attempts
    int batches = 50;         // batch-means blocks for the standard error
    double min_acceptance = 0.01;
};

// Samples E|w_n|^2 for one chain length.
inline NuDatum sample_mean_square(int n, std::uint64_t samples, std::uint64_t seed,
                                  std::uint64_t stream, const PivotPlan& plan = {}) {
    PivotChain chain(n, seed, stream);
    const std::uint64_t warmup =
        static_cast<std::uint64_t>(plan.warmup_factor) * n;
    for (std::uint64_t i = 0; i < warmup; ++i) chain.step();
    const int stride = std::max(1, n / std::max(1, plan.stride_divisor));

    const std::uint64_t per_batch = std::max<std::uint64_t>(1, samples / plan.batches);
    std::vector<double> batch_means;
    double total = 0.0;
    std::uint64_t taken = 0;
    double batch_sum = 0.0;
    std::uint64_t in_batch = 0;
    while (taken < samples) {
        for (int s = 0; s < stride; ++s) chain.step();
        const double r2 = chain.end_distance_squared();
        total += r2;
        batch_sum += r2;
        ++taken;
        if (++in_batch == per_batch) {
            batch_means.push_back(batch_sum / per_batch);
            batch_sum = 0.0;
            in_batch = 0;
        }
    }
    const double rate =
        static_cast<double>(chain.accepted()) / static_cast<double>(chain.attempted());
    if (rate < plan.min_acceptance)
        throw ConvergenceError("sample_mean_square: pivot acceptance rate below 1%");

    NuDatum d;
    d.n = n;
    d.mean_r2 = total / static_cast<double>(taken);
    double var = 0.0;
    for (double b : batch_means) {
        const double dev = b - d.mean_r2;
        var += dev * dev;
    }
    const std::size_t nb = batch_means.size();
    d.se = nb > 1 ? std::sqrt(var / (double(nb) * (nb - 1))) : 0.0;
    return d;
}

// Weighted least squares of log E|w|^2 against log n; slope = 2 nu.
inline NuEstimate fit_nu(std::vector<NuDatum> data) {
    if (data.size() < 2) throw InsufficientDataError("fit_nu: need >= 2 lengths");
    NuEstimate out;
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (const auto& d : data) {
        const double xi = std::log(double(d.n));
        const double yi = std::log(d.mean_r2);
        // log-space sigma ~ se / mean; exact entries get unit weight scale.
        const double sig = d.se > 0 ? d.se / d.mean_r2 : 1e-6;
        const double w = 1.0 / (sig * sig);
        sw += w;
        swx += w * xi;
        swy += w * yi;
        swxx += w * xi * xi;
        swxy += w * xi * yi;
    }
    const double det = sw * swxx - swx * swx;
    if (det <= 0) throw InsufficientDataError("fit_nu: degenerate design");
    const double slope = (sw * swxy - swx * swy) / det;
    const double intercept = (swxx * swy - swx * swxy) / det;
    out.nu = slope / 2;
    out.nu_se = std::sqrt(sw / det) / 2;
    out.intercept = intercept;
    for (const auto& d : data)
        out.fit_residuals.push_back(std::log(d.mean_r2) -
                                    (intercept + slope * std::log(double(d.n))));
    out.data = std::move(data);
    return out;
}

// Full pipeline: one chain per length, deterministic given the seed.
inline NuEstimate estimate_nu(const std::vector<int>& n_values,
                              std::uint64_t samples_per_n, std::uint64_t seed,
                              const PivotPlan& plan = {}) {
    if (n_values.size() < 2)
        throw InsufficientDataError("estimate_nu: need >= 2 lengths");
    std::vector<NuDatum> data;
    for (std::size_t i = 0; i < n_values.size(); ++i)
        data.push_back(sample_mean_square(n_values[i], samples_per_n, seed,
                                          /*stream=*/i + 1, plan));
    return fit_nu(std::move(data));
}

} // namespace sawlab
