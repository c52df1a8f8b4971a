#pragma once

#include "sawlab/bigint.hpp"
#include "sawlab/count_table.hpp"
#include "sawlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sawlab {

enum class GrowthMethod { RawRoot, Ratio, AitkenRatio };

struct GrowthEstimate {
    std::vector<std::pair<int, double>> point_estimates;
    double extrapolated = 0.0;
    GrowthMethod method = GrowthMethod::AitkenRatio;
};

// One Aitken delta-squared step applied to the tail of a sequence.
// Falls back to the last raw value when the second difference vanishes
// (exactly geometric input).
inline double aitken_tail(const std::vector<double>& seq) {
    double best = seq.back();
    for (std::size_t i = seq.size(); i >= 3; --i) {
        const double a = seq[i - 3], b = seq[i - 2], c = seq[i - 1];
        const double denom = (c - b) - (b - a);
        if (std::abs(denom) > 1e-12 * std::max({std::abs(a), std::abs(b), std::abs(c)})) {
            best = c - (c - b) * (c - b) / denom;
            break;
        }
    }
    return best;
}

// Growth-constant estimate from a count table via the ratio method with
// Aitken acceleration.
inline GrowthEstimate estimate_mu(const CountTable& table,
                                  GrowthMethod method = GrowthMethod::AitkenRatio) {
    if (table.max_n() < 10)
        throw InsufficientDataError("estimate_mu: need counts up to n >= 10");
    GrowthEstimate out;
    out.method = method;
    std::vector<double> ratios;
    for (std::size_t n = 1; n <= table.max_n(); ++n) {
        const double r = std::exp(log_big(table.at(n)) - log_big(table.at(n - 1)));
        ratios.push_back(r);
        if (method == GrowthMethod::RawRoot) {
            out.point_estimates.emplace_back(static_cast<int>(n),
                                             std::exp(log_big(table.at(n)) / double(n)));
        } else {
            out.point_estimates.emplace_back(static_cast<int>(n), r);
        }
    }
    switch (method) {
        case GrowthMethod::RawRoot:
            out.extrapolated = out.point_estimates.back().second;
            break;
        case GrowthMethod::Ratio:
            out.extrapolated = ratios.back();
            break;
        case GrowthMethod::AitkenRatio: {
            // The ratio sequence approaches mu like mu*(1 + g/n) plus an
            // alternating subleading term.  Aitken alone locks onto the
            // oscillation, so first cancel the analytic 1/n piece with a
            // Richardson difference e_n = n r_n - (n-1) r_{n-1}, then apply
            // one Aitken step to that sequence.  Exactly geometric input
            // passes through unchanged (e_n = r and the Aitken fallback).
            std::vector<double> richardson;
            for (std::size_t i = 1; i < ratios.size(); ++i)
                richardson.push_back(double(i + 1) * ratios[i] -
                                     double(i) * ratios[i - 1]);
            out.extrapolated = aitken_tail(richardson);
            break;
        }
    }
    return out;
}

struct SeriesBoundsReport {
    // (n, m) pairs with c_{n+m} > c_n * c_m. Must be empty for true SAW data.
    std::vector<std::pair<int, int>> submultiplicativity_violations;
    // min over n >= 1 of c_n / mu_ref^n.
    double min_ratio_to_power = 0.0;
    // Hammersley-Welsh diagnostic: s_n = log(c_n / mu_ref^n) / sqrt(n).
    std::vector<double> hw_diagnostic;
};

inline SeriesBoundsReport validate_series_bounds(const CountTable& table, double mu_ref) {
    if (mu_ref <= 0) throw DomainError("validate_series_bounds: mu_ref must be > 0");
    SeriesBoundsReport report;
    const int n_max = static_cast<int>(table.max_n());
    for (int n = 1; n <= n_max; ++n) {
        for (int m = n; n + m <= n_max; ++m) {
            if (table.at(n + m) > table.at(n) * table.at(m))
                report.submultiplicativity_violations.emplace_back(n, m);
        }
    }
    const double log_mu = std::log(mu_ref);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= n_max; ++n) {
        const double excess = log_big(table.at(n)) - n * log_mu;
        min_ratio = std::min(min_ratio, std::exp(excess));
        report.hw_diagnostic.push_back(excess / std::sqrt(double(n)));
    }
    report.min_ratio_to_power = min_ratio;
    return report;
}

// lambda estimate for walks crossing a square: total(L) ~ lambda^{L^2}.
// Point estimates are total^{1/L^2}; the extrapolation fits
// log total = L^2 log(lambda) + L b + c through the three largest L.
inline GrowthEstimate estimate_lambda(const std::map<int, BigInt>& totals) {
    if (totals.size() < 4)
        throw InsufficientDataError("estimate_lambda: need totals for at least L=1..4");
    GrowthEstimate out;
    out.method = GrowthMethod::RawRoot;
    std::vector<std::pair<int, double>> logs;
    for (const auto& [L, total] : totals) {
        const double lt = log_big(total);
        logs.emplace_back(L, lt);
        out.point_estimates.emplace_back(L, std::exp(lt / (double(L) * L)));
    }
    // Exact 3x3 solve through the three largest L.
    const auto [L1, y1] = logs[logs.size() - 3];
    const auto [L2, y2] = logs[logs.size() - 2];
    const auto [L3, y3] = logs[logs.size() - 1];
    const double a1 = double(L1) * L1, a2 = double(L2) * L2, a3 = double(L3) * L3;
    // Eliminate c, then b.
    const double d21 = (y2 - y1), d32 = (y3 - y2);
    const double A21 = a2 - a1, A32 = a3 - a2;
    const double B21 = L2 - L1, B32 = L3 - L2;
    const double log_lambda = (d32 * B21 - d21 * B32) / (A32 * B21 - A21 * B32);
    out.extrapolated = std::exp(log_lambda);
    return out;
}

// <n(x,L)> = sum n c_n x^n / sum c_n x^n, evaluated in log space.
inline double mean_crossing_length(const CountTable& table, double x) {
    if (x <= 0) throw DomainError("mean_crossing_length: x must be > 0");
    const double log_x = std::log(x);
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(table.max_n() + 1,
                              -std::numeric_limits<double>::infinity());
    for (std::size_t n = 0; n <= table.max_n(); ++n) {
        if (table.at(n) == 0) continue;
        terms[n] = log_big(table.at(n)) + double(n) * log_x;
        max_term = std::max(max_term, terms[n]);
    }
    double z = 0.0, zn = 0.0;
    for (std::size_t n = 0; n <= table.max_n(); ++n) {
        if (terms[n] == -std::numeric_limits<double>::infinity()) continue;
        const double w = std::exp(terms[n] - max_term);
        z += w;
        zn += double(n) * w;
    }
    return zn / z;
}

struct FreeEnergyCurve {
    int perimeter = 0;
    std::vector<std::pair<double, double>> values; // (q, kappa_m(q))
};

// kappa_m(q) = (1/m) log( sum_n p_{m,n} q^n ), evaluated in log space with
// exact big-integer coefficients.
inline FreeEnergyCurve free_energy_curve(const JointCountTable& table, int m,
                                         const std::vector<double>& q_grid) {
    std::vector<std::pair<long, BigInt>> coeffs;
    for (const auto& [k, v] : table.entries())
        if (k.first == m) coeffs.emplace_back(k.second, v);
    if (coeffs.empty())
        throw AbsentPerimeterError("free_energy_curve: perimeter not in table");

    FreeEnergyCurve out;
    out.perimeter = m;
    for (double q : q_grid) {
        if (q <= 0 || q > 1)
            throw DomainError("free_energy_curve: q must be in (0, 1]");
        const double log_q = std::log(q);
        double max_term = -std::numeric_limits<double>::infinity();
        std::vector<double> terms;
        for (const auto& [n, c] : coeffs) {
            terms.push_back(log_big(c) + double(n) * log_q);
            max_term = std::max(max_term, terms.back());
        }
        double s = 0.0;
        for (double t : terms) s += std::exp(t - max_term);
        out.values.emplace_back(q, (max_term + std::log(s)) / double(m));
    }
    return out;
}

// Ratio estimate of the area growth constant lambda = lim a_n^{1/n}.
inline GrowthEstimate estimate_area_growth(const CountTable& area_table) {
    if (area_table.max_n() < 8)
        throw InsufficientDataError("estimate_area_growth: need areas up to n >= 8");
    GrowthEstimate out;
    out.method = GrowthMethod::Ratio;
    std::vector<double> ratios;
    for (std::size_t n = 2; n <= area_table.max_n(); ++n) {
        const double r = std::exp(log_big(area_table.at(n)) - log_big(area_table.at(n - 1)));
        ratios.push_back(r);
        out.point_estimates.emplace_back(static_cast<int>(n), r);
    }
    out.extrapolated = aitken_tail(ratios);
    return out;
}

} // namespace sawlab
