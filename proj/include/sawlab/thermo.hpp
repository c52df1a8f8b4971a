#pragma once

// Thermodynamics over exact (contacts, displacement) and (length, contacts)
// count tables: partition functions, free energies, moments, fluctuation
// scans, and surface-adsorption growth estimates.  All sums are evaluated in
// log space so that big-integer counts and large Boltzmann factors never
// overflow a double.

#include "sawlab/bigint.hpp"
#include "sawlab/count_table.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace sawlab {

// Contact energy fixed at -1 and k_B at 1, so omega = e^{1/T} > 1.
// The pulling weight is u = exp(f F / T) with f = force_sign; +1 makes
// positive F favour positive displacement.
struct EnsembleWeights {
    double T = 1.0;
    double F = 0.0;
    double y = 1.0;
    int force_sign = +1;

    EnsembleWeights() = default;
    EnsembleWeights(double T, double F, double y = 1.0, int force_sign = +1)
        : T(T), F(F), y(y), force_sign(force_sign) {
        if (!(this->T > 0)) throw DomainError("EnsembleWeights: T must be > 0");
        if (!(this->y > 0)) throw DomainError("EnsembleWeights: y must be > 0");
        if (force_sign != 1 && force_sign != -1)
            throw DomainError("EnsembleWeights: force_sign must be +1 or -1");
    }

    double log_omega() const { return 1.0 / T; }
    double log_u() const { return force_sign * F / T; }
    double omega() const { return std::exp(log_omega()); }
    double u() const { return std::exp(log_u()); }
};

namespace detail {

// Log-sum-exp accumulator for sums of positive weighted terms.
struct LogSum {
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> terms; // (log term, multiplier)

    void add(double log_term, double multiplier = 1.0) {
        terms.emplace_back(log_term, multiplier);
        max_term = std::max(max_term, log_term);
    }
    // Sum of multiplier * exp(log term - max_term).
    double reduced() const {
        double s = 0.0;
        for (const auto& [lt, mult] : terms) s += mult * std::exp(lt - max_term);
        return s;
    }
    double log() const { return max_term + std::log(reduced()); }
    double value() const { return std::exp(log()); }
};

} // namespace detail

// Z_N(F,T) = sum_{m,x} C(N,m,x) omega^m u^x.
inline double log_partition_force(const JointCountTable& table,
                                  const EnsembleWeights& w) {
    detail::LogSum z;
    for (const auto& [k, c] : table.entries())
        z.add(log_big(c) + k.first * w.log_omega() + k.second * w.log_u());
    if (z.terms.empty()) throw DomainError("partition_force: empty table");
    return z.log();
}

inline double partition_force(const JointCountTable& table, const EnsembleWeights& w) {
    return std::exp(log_partition_force(table, w));
}

// Constant-distance ensemble Z_N(x,T) = sum_m C(N,m,x) omega^m.
inline double partition_distance(const JointCountTable& table, long x,
                                 const EnsembleWeights& w) {
    detail::LogSum z;
    for (const auto& [k, c] : table.entries())
        if (k.second == x) z.add(log_big(c) + k.first * w.log_omega());
    if (z.terms.empty())
        throw AbsentDisplacementError("partition_distance: no walk attains x");
    return z.value();
}

struct ThermoObservables {
    double Z = 0.0;
    double G = 0.0;        // -T log Z
    double mean_m = 0.0;
    double mean_m2 = 0.0;
    double chi = 0.0;      // <m^2> - <m>^2
    double mean_x = 0.0;
};

inline ThermoObservables observables(const JointCountTable& table,
                                     const EnsembleWeights& w) {
    detail::LogSum z;
    for (const auto& [k, c] : table.entries())
        z.add(log_big(c) + k.first * w.log_omega() + k.second * w.log_u());
    if (z.terms.empty()) throw DomainError("observables: empty table");
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, sx = 0.0;
    std::size_t i = 0;
    for (const auto& [k, c] : table.entries()) {
        const double t = std::exp(z.terms[i++].first - z.max_term);
        s0 += t;
        s1 += k.first * t;
        s2 += double(k.first) * k.first * t;
        sx += k.second * t;
    }
    ThermoObservables out;
    out.Z = std::exp(z.max_term + std::log(s0));
    out.G = -w.T * (z.max_term + std::log(s0));
    out.mean_m = s1 / s0;
    out.mean_m2 = s2 / s0;
    out.chi = std::max(0.0, out.mean_m2 - out.mean_m * out.mean_m);
    out.mean_x = sx / s0;
    return out;
}

struct ThermoCurve {
    int N = 0;
    double F = 0.0;
    std::vector<double> T_grid;
    std::vector<ThermoObservables> points;
    std::vector<std::size_t> peak_indices; // local maxima of chi(T)
};

inline std::vector<double> default_temperature_grid() {
    std::vector<double> grid;
    for (double T = 0.2; T <= 3.0 + 1e-9; T += 0.05) grid.push_back(T);
    return grid;
}

// chi(T) at fixed force, with strict 3-point local maxima detected after an
// optional 3-point moving-average smoothing pass.
inline ThermoCurve fluctuation_scan(const JointCountTable& table, int N, double F,
                                    const std::vector<double>& T_grid,
                                    bool smooth = false, int force_sign = +1) {
    if (T_grid.size() < 3) throw InsufficientDataError("fluctuation_scan: grid too small");
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        if (!(T_grid[i] > 0)) throw DomainError("fluctuation_scan: T must be > 0");
        if (i > 0 && !(T_grid[i] > T_grid[i - 1]))
            throw DomainError("fluctuation_scan: grid must be increasing");
    }
    ThermoCurve curve;
    curve.N = N;
    curve.F = F;
    curve.T_grid = T_grid;
    std::vector<double> chi;
    for (double T : T_grid) {
        curve.points.push_back(observables(table, EnsembleWeights(T, F, 1.0, force_sign)));
        chi.push_back(curve.points.back().chi);
    }
    std::vector<double> signal = chi;
    if (smooth) {
        for (std::size_t i = 1; i + 1 < chi.size(); ++i)
            signal[i] = (chi[i - 1] + chi[i] + chi[i + 1]) / 3.0;
    }
    for (std::size_t i = 1; i + 1 < signal.size(); ++i)
        if (signal[i] > signal[i - 1] && signal[i] > signal[i + 1])
            curve.peak_indices.push_back(i);
    return curve;
}

// C_n^+(y) = sum_i c_n^+(i) y^i over a (length, surface contacts) table.
inline double log_adsorption_partition(const JointCountTable& table, int n, double y) {
    if (!(y > 0)) throw DomainError("adsorption_partition: y must be > 0");
    detail::LogSum z;
    for (const auto& [k, c] : table.entries())
        if (k.first == n) z.add(log_big(c) + k.second * std::log(y));
    if (z.terms.empty())
        throw AbsentLengthError("adsorption_partition: length not present in table");
    return z.log();
}

inline double adsorption_partition(const JointCountTable& table, int n, double y) {
    return std::exp(log_adsorption_partition(table, n, y));
}

struct AdsorptionGrowth {
    std::map<double, GrowthEstimate> estimates; // y -> estimate
    double y_c_estimate = 0.0;                  // first y whose ratio beats mu_ref
};

// Finite-n growth estimates mu_n(y) = C_n^+(y)^{1/n} with ratio
// extrapolation, plus a crude finite-size y_c: the first grid y whose
// extrapolated ratio exceeds mu_ref * (1 + margin).
inline AdsorptionGrowth adsorption_growth(const JointCountTable& table,
                                          const std::vector<double>& y_grid,
                                          double mu_ref = 2.6381585303,
                                          double margin = 0.0) {
    long n_max = 0;
    for (const auto& [k, c] : table.entries()) n_max = std::max(n_max, k.first);
    if (n_max < 12)
        throw InsufficientDataError("adsorption_growth: need lengths up to n >= 12");
    AdsorptionGrowth out;
    for (double y : y_grid) {
        GrowthEstimate est;
        est.method = GrowthMethod::Ratio;
        std::vector<double> ratios;
        double prev = 0.0; // log C_0 = 0 (the empty walk)
        for (long n = 1; n <= n_max; ++n) {
            const double cur = log_adsorption_partition(table, static_cast<int>(n), y);
            est.point_estimates.emplace_back(static_cast<int>(n), std::exp(cur / n));
            ratios.push_back(std::exp(cur - prev));
            prev = cur;
        }
        est.extrapolated = aitken_tail(ratios);
        out.estimates.emplace(y, est);
        if (out.y_c_estimate == 0.0 && est.extrapolated > mu_ref * (1.0 + margin))
            out.y_c_estimate = y;
    }
    return out;
}

} // namespace sawlab
