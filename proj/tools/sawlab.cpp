// sawlab: command-line front end.  One subcommand per computation, JSON or
// CSV reports, and a built-in golden store for --check runs.

#include "CLI11.hpp"
#include "json.hpp"

#include "sawlab/enumerate.hpp"
#include "sawlab/hitting.hpp"
#include "sawlab/honeycomb.hpp"
#include "sawlab/pivot.hpp"
#include "sawlab/series.hpp"
#include "sawlab/thermo.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using ojson = nlohmann::ordered_json;
using namespace sawlab;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Golden store: reference values with citations, used by --check and echoed
// into every report that touches them.

struct GoldenEntry {
    double reference;
    double rel_tol; // acceptance tolerance for --check
    const char* citation;
};

const std::map<std::string, GoldenEntry>& golden_store() {
    static const std::map<std::string, GoldenEntry> store = {
        {"c_2", {12.0, 0.0, "W. J. C. Orr, Trans. Faraday Soc. 43, 12 (1947)"}},
        {"c_3", {36.0, 0.0, "W. J. C. Orr, Trans. Faraday Soc. 43, 12 (1947)"}},
        {"c_4", {100.0, 0.0, "W. J. C. Orr, Trans. Faraday Soc. 43, 12 (1947)"}},
        {"mu_square",
         {2.6381585303, 5e-3,
          "J. L. Jacobsen, C. R. Scullard and A. J. Guttmann, J. Phys. A 49, "
          "494004 (2016)"}},
        {"p_4", {1.0, 0.0, "I. Jensen and A. J. Guttmann, J. Phys. A 32, 4867 (1999)"}},
        {"p_6", {2.0, 0.0, "I. Jensen and A. J. Guttmann, J. Phys. A 32, 4867 (1999)"}},
        {"p_8", {7.0, 0.0, "I. Jensen and A. J. Guttmann, J. Phys. A 32, 4867 (1999)"}},
        {"crossing_total_1",
         {2.0, 0.0, "S. G. Whittington and A. J. Guttmann, J. Phys. A 23, 5601 (1990)"}},
        {"crossing_total_2",
         {12.0, 0.0, "S. G. Whittington and A. J. Guttmann, J. Phys. A 23, 5601 (1990)"}},
        {"crossing_total_3",
         {184.0, 0.0, "S. G. Whittington and A. J. Guttmann, J. Phys. A 23, 5601 (1990)"}},
        {"crossing_total_4",
         {8512.0, 0.0, "S. G. Whittington and A. J. Guttmann, J. Phys. A 23, 5601 (1990)"}},
        {"lambda_crossing",
         {1.744550, 1.2e-2,
          "A. J. Guttmann and I. Jensen, J. Phys. A 55, 485201 (2022)"}},
        {"x_c_honeycomb",
         {0.5411961001461971, 1e-12,
          "H. Duminil-Copin and S. Smirnov, Ann. of Math. 175, 1653 (2012)"}},
        {"y_c_adsorption",
         {2.414213562373095, 1e-12,
          "N. R. Beaton, M. Bousquet-Melou, J. de Gier, H. Duminil-Copin and "
          "A. J. Guttmann, Comm. Math. Phys. 326, 727 (2014)"}},
        {"brownian_ratio_r10",
         {3.8375894519594e-7, 2e-13,
          "F. Bornemann, D. Laurie, S. Wagon and J. Waanders, The SIAM 100-Digit "
          "Challenge, SIAM (2004), Problem 10"}},
        {"trefethen_pe",
         {3.837587979251226e-7, 1e-12,
          "F. Bornemann, D. Laurie, S. Wagon and J. Waanders, The SIAM 100-Digit "
          "Challenge, SIAM (2004), Problem 10"}},
        {"alpha_m1_r10",
         {1.20561454706472212e-6, 1e-12,
          "F. Bornemann, D. Laurie, S. Wagon and J. Waanders, The SIAM 100-Digit "
          "Challenge, SIAM (2004), Problem 10"}},
        {"hitting_r10_b0.625",
         {6.6829899353e-5, 5e-9,
          "frozen from this project's extended-precision tanh-sinh quadrature"}},
        {"asymptotic_r10_b0.625",
         {6.6824528e-5, 1e-4,
          "frozen from this project's extended-precision tanh-sinh quadrature"}},
        {"refined_r10_b0.625",
         {6.682989679e-5, 1e-9,
          "frozen from this project's extended-precision tanh-sinh quadrature"}},
        {"nu_2d", {0.75, 4e-2, "B. Nienhuis, Phys. Rev. Lett. 49, 1062 (1982)"}},
    };
    return store;
}

struct Check {
    std::string name;
    double computed;
};

// ---------------------------------------------------------------------------
// Common run plumbing.

struct Common {
    std::string format = "json";
    std::string out;
    bool check = false;
    unsigned workers = 0;
    double node_budget = 1e11;
};

unsigned env_workers() {
    const char* v = std::getenv("SAWLAB_THREADS");
    if (!v) return 0;
    const long n = std::strtol(v, nullptr, 10);
    return n > 0 ? static_cast<unsigned>(n) : 0;
}

void add_common(CLI::App* sub, Common& c) {
    c.workers = env_workers();
    sub->add_option("--format", c.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "Write the report to this path");
    sub->add_flag("--check", c.check, "Print pass/fail against the golden store");
    sub->add_option("--workers", c.workers, "Worker threads (0 = auto)");
    sub->add_option("--node-budget", c.node_budget, "Search-node budget");
}

SearchPlan make_plan(const Common& c, SymmetryMode sym = SymmetryMode::None) {
    SearchPlan plan;
    plan.worker_count = c.workers;
    plan.symmetry = sym;
    plan.node_budget = c.node_budget;
    return plan;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void flatten_csv(const ojson& j, const std::string& prefix,
                 std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten_csv(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j)
            flatten_csv(v, prefix + "[" + std::to_string(i++) + "]", rows);
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

// Assembles the report, writes it, and runs --check. Returns the exit code.
int emit(const Common& common, ojson config, ojson results,
         const std::vector<Check>& checks, double ms) {
    ojson golden = ojson::array();
    bool all_pass = true;
    for (const Check& c : checks) {
        const GoldenEntry& g = golden_store().at(c.name);
        const double rel = g.reference == 0.0
                               ? std::abs(c.computed)
                               : std::abs(c.computed - g.reference) / std::abs(g.reference);
        golden.push_back({{"name", c.name},
                          {"computed", c.computed},
                          {"reference", g.reference},
                          {"rel_err", rel},
                          {"citation", g.citation}});
        if (common.check) {
            const bool pass = rel <= g.rel_tol;
            all_pass = all_pass && pass;
            std::cerr << (pass ? "[PASS] " : "[FAIL] ") << c.name
                      << " computed=" << c.computed << " reference=" << g.reference
                      << " rel_err=" << rel << '\n';
        }
    }
    ojson report{{"config", std::move(config)},
                 {"version", kVersion},
                 {"timing_ms", ms},
                 {"results", std::move(results)},
                 {"golden_checks", std::move(golden)}};

    std::string payload;
    if (common.format == "json") {
        payload = report.dump(2);
        payload += '\n';
    } else {
        std::vector<std::pair<std::string, std::string>> rows;
        ojson flat = report;
        flat.erase("timing_ms"); // keep CSV byte-stable across runs
        flatten_csv(flat, "", rows);
        std::ostringstream os;
        os << "key,value\n";
        for (const auto& [k, v] : rows)
            os << csv_escape(k) << ',' << csv_escape(v) << '\n';
        payload = os.str();
    }
    if (common.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(common.out, std::ios::binary);
        if (!f) throw Error("cannot open output file: " + common.out);
        f << payload;
    }
    return (common.check && !all_pass) ? 1 : 0;
}

double to_double(const BigInt& b) { return b.convert_to<double>(); }

ojson big_array(const std::vector<BigInt>& v) {
    ojson a = ojson::array();
    for (const auto& b : v) a.push_back(b.str());
    return a;
}

ojson growth_json(const GrowthEstimate& g) {
    ojson pts = ojson::array();
    for (const auto& [n, v] : g.point_estimates) pts.push_back({{"n", n}, {"value", v}});
    return {{"point_estimates", std::move(pts)}, {"extrapolated", g.extrapolated}};
}

std::vector<double> parse_grid(const std::string& text) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
        throw DomainError("grid must be lo:hi:step with step > 0");
    std::vector<double> grid;
    for (double v = lo; v <= hi + 1e-9 * step; v += step) grid.push_back(v);
    if (grid.size() < 2) throw DomainError("grid must contain at least two points");
    return grid;
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns (results, golden checks).

struct Outcome {
    ojson results;
    std::vector<Check> checks;
};

Outcome run_count(int n_max, const std::string& symmetry, const Common& common) {
    if (n_max < 0) throw DomainError("--n-max must be >= 0");
    const auto plan = make_plan(
        common, symmetry == "octant" ? SymmetryMode::Octant : SymmetryMode::None);
    const CountTable t = count_saws(n_max, Domain::full_plane(), plan);
    Outcome out;
    out.results = {{"n_max", n_max}, {"c", big_array(t.counts())}};
    for (int n : {2, 3, 4})
        if (n_max >= n)
            out.checks.push_back({"c_" + std::to_string(n), to_double(t.at(n))});
    return out;
}

Outcome run_polygons(int m_max, const Common& common) {
    if (m_max < 4) throw DomainError("--m-max must be >= 4");
    const JointCountTable t = count_polygons(m_max, make_plan(common));
    Outcome out;
    ojson perims = ojson::array();
    for (int m = 3; m <= m_max; ++m)
        perims.push_back({{"m", m}, {"p", t.marginal_first(m).str()}});
    ojson joint = ojson::array();
    for (const auto& [k, c] : t.entries())
        joint.push_back({{"m", k.first}, {"area", k.second}, {"count", c.str()}});
    out.results = {{"m_max", m_max},
                   {"perimeter_counts", std::move(perims)},
                   {"joint_counts", std::move(joint)}};
    for (int m : {4, 6, 8})
        if (m_max >= m)
            out.checks.push_back(
                {"p_" + std::to_string(m), to_double(t.marginal_first(m))});
    return out;
}

Outcome run_halfplane(int n_max, const Common& common) {
    if (n_max < 0) throw DomainError("--n-max must be >= 0");
    const JointCountTable t = count_half_plane(n_max, make_plan(common));
    Outcome out;
    ojson totals = ojson::array();
    for (int n = 0; n <= n_max; ++n) totals.push_back(t.marginal_first(n).str());
    ojson joint = ojson::array();
    for (const auto& [k, c] : t.entries())
        joint.push_back({{"n", k.first}, {"contacts", k.second}, {"count", c.str()}});
    out.results = {{"n_max", n_max},
                   {"c_plus", std::move(totals)},
                   {"joint_counts", std::move(joint)}};
    return out;
}

Outcome run_crossing(int l_max, const Common& common) {
    if (l_max < 1) throw DomainError("--l-max must be >= 1");
    Outcome out;
    ojson per_l = ojson::array();
    for (int L = 1; L <= l_max; ++L) {
        const CountTable t = count_crossing(L, make_plan(common));
        per_l.push_back({{"L", L},
                         {"total", t.total().str()},
                         {"by_length", big_array(t.counts())}});
        if (L <= 4)
            out.checks.push_back(
                {"crossing_total_" + std::to_string(L), to_double(t.total())});
    }
    out.results = {{"l_max", l_max}, {"walks", std::move(per_l)}};
    return out;
}

Outcome run_interacting(int n_max, const Common& common) {
    if (n_max < 1) throw DomainError("--n-max must be >= 1");
    const auto tables = count_interacting_pulled(n_max, make_plan(common));
    Outcome out;
    ojson totals = ojson::array();
    for (int N = 0; N <= n_max; ++N) totals.push_back(tables[N].total().str());
    ojson joint = ojson::array();
    for (const auto& [k, c] : tables[n_max].entries())
        joint.push_back(
            {{"contacts", k.first}, {"displacement", k.second}, {"count", c.str()}});
    out.results = {{"n_max", n_max},
                   {"totals", std::move(totals)},
                   {"joint_counts_at_n_max", std::move(joint)}};
    return out;
}

Outcome run_mu(int n_max, const std::string& method, const Common& common) {
    if (n_max < 10) throw DomainError("--n-max must be >= 10");
    const CountTable t =
        count_saws(n_max, Domain::full_plane(), make_plan(common, SymmetryMode::Octant));
    GrowthMethod m = GrowthMethod::AitkenRatio;
    if (method == "ratio") m = GrowthMethod::Ratio;
    if (method == "raw") m = GrowthMethod::RawRoot;
    const GrowthEstimate est = estimate_mu(t, m);
    const SeriesBoundsReport bounds = validate_series_bounds(t, 2.6381585303);
    Outcome out;
    ojson viol = ojson::array();
    for (const auto& [n, mm] : bounds.submultiplicativity_violations)
        viol.push_back({{"n", n}, {"m", mm}});
    out.results = {{"n_max", n_max},
                   {"method", method},
                   {"estimate", growth_json(est)},
                   {"submultiplicativity_violations", std::move(viol)},
                   {"min_ratio_to_power", bounds.min_ratio_to_power},
                   {"hw_diagnostic", bounds.hw_diagnostic}};
    out.checks.push_back({"mu_square", est.extrapolated});
    return out;
}

Outcome run_lambda(int l_max, const Common& common) {
    if (l_max < 4) throw DomainError("--l-max must be >= 4");
    std::map<int, BigInt> totals;
    for (int L = 1; L <= l_max; ++L)
        totals[L] = count_crossing(L, make_plan(common)).total();
    const GrowthEstimate est = estimate_lambda(totals);
    Outcome out;
    ojson per_l = ojson::array();
    for (const auto& [L, t] : totals) per_l.push_back({{"L", L}, {"total", t.str()}});
    out.results = {{"l_max", l_max},
                   {"totals", std::move(per_l)},
                   {"estimate", growth_json(est)}};
    out.checks.push_back({"lambda_crossing", est.extrapolated});
    return out;
}

Outcome run_kappa(int m_max, int m, const std::string& q_grid, const Common& common) {
    if (m_max < 4 || m > m_max) throw DomainError("need 4 <= m <= --m-max");
    const JointCountTable t = count_polygons(m_max, make_plan(common));
    const FreeEnergyCurve curve = free_energy_curve(t, m, parse_grid(q_grid));
    Outcome out;
    ojson vals = ojson::array();
    for (const auto& [q, kap] : curve.values)
        vals.push_back({{"q", q}, {"kappa", kap}});
    out.results = {{"m_max", m_max}, {"m", m}, {"curve", std::move(vals)}};
    return out;
}

Outcome run_honeycomb_local(int T, int L, double x, double alpha) {
    const honeycomb::Trapezoid dom(T, L);
    const auto table = honeycomb::observable(dom, x, alpha);
    double worst = 0.0;
    int interior = 0;
    for (const auto& v : dom.vertices()) {
        if (!dom.interior(v)) continue;
        ++interior;
        worst = std::max(worst,
                         std::abs(honeycomb::local_identity_residual(table, dom, v)));
    }
    Outcome out;
    out.results = {{"T", T},
                   {"L", L},
                   {"x", x},
                   {"alpha", alpha},
                   {"interior_vertices", interior},
                   {"walks_enumerated", table.walks_enumerated},
                   {"max_residual", worst}};
    out.checks.push_back({"x_c_honeycomb", honeycomb::kCriticalX});
    return out;
}

Outcome run_honeycomb_domain(int T, int L, double x) {
    const honeycomb::Trapezoid dom(T, L);
    const double res = honeycomb::domain_identity_residual(dom, x);
    Outcome out;
    out.results = {{"T", T}, {"L", L}, {"x", x}, {"residual", res}};
    out.checks.push_back({"x_c_honeycomb", honeycomb::kCriticalX});
    return out;
}

Outcome run_honeycomb_adsorb(int T, int L, double x, double y) {
    const honeycomb::Trapezoid dom(T, L, /*adsorbing=*/true);
    const double res = honeycomb::adsorption_identity_residual(dom, x, y);
    Outcome out;
    out.results = {{"T", T}, {"L", L}, {"x", x}, {"y", y}, {"residual", res}};
    out.checks.push_back({"y_c_adsorption", honeycomb::kCriticalY});
    return out;
}

template <class Real>
ojson hit_results(double r, double b, double rel_tol) {
    const auto p = hitting::alpha_from_r(Real(r), Real(b));
    ojson out{{"r", r}, {"b", b}};
    std::ostringstream alpha_s, value_s;
    alpha_s.precision(std::numeric_limits<Real>::max_digits10);
    value_s.precision(std::numeric_limits<Real>::max_digits10);
    alpha_s << p.alpha_m1;
    const Real value = b == 1.0 ? hitting::brownian_ratio(p)
                                : hitting::hitting_ratio(p, Real(rel_tol));
    value_s << value;
    out["alpha_minus_1"] = alpha_s.str();
    out["ratio"] = value_s.str();
    out["ratio_double"] = static_cast<double>(value);
    out["alpha_minus_1_double"] = static_cast<double>(p.alpha_m1);
    return out;
}

Outcome run_hit(double r, double b, const std::string& precision, double rel_tol) {
    if (!(r > 0)) throw DomainError("--r must be > 0");
    Outcome out;
    out.results = precision == "extended" ? hit_results<hitting::Real50>(r, b, rel_tol)
                                          : hit_results<double>(r, b, rel_tol);
    out.results["precision"] = precision;
    if (r == 10.0) {
        out.checks.push_back(
            {"alpha_m1_r10", out.results["alpha_minus_1_double"].get<double>()});
        if (b == 1.0)
            out.checks.push_back(
                {"brownian_ratio_r10", out.results["ratio_double"].get<double>()});
        if (b == 0.625)
            out.checks.push_back(
                {"hitting_r10_b0.625", out.results["ratio_double"].get<double>()});
    }
    return out;
}

Outcome run_hit_asymptotic(double r, double b) {
    const double asym = hitting::asymptotic_ratio(r, b);
    const double refined = hitting::refined_ratio(r, b);
    Outcome out;
    out.results = {{"r", r}, {"b", b}, {"asymptotic", asym}, {"refined", refined}};
    if (r == 10.0 && b == 0.625) {
        out.checks.push_back({"asymptotic_r10_b0.625", asym});
        out.checks.push_back({"refined_r10_b0.625", refined});
    }
    return out;
}

Outcome run_trefethen() {
    const double pe = hitting::trefethen_pe<double>();
    const double ratio = pe / (1.0 - pe);
    Outcome out;
    std::ostringstream pe50;
    pe50.precision(std::numeric_limits<hitting::Real50>::max_digits10);
    pe50 << hitting::trefethen_pe<hitting::Real50>();
    out.results = {{"p_e", pe}, {"ratio", ratio}, {"p_e_extended", pe50.str()}};
    out.checks.push_back({"trefethen_pe", pe});
    out.checks.push_back({"brownian_ratio_r10", ratio});
    return out;
}

Outcome run_pull_scan(int n_max, double F, const std::string& temp_grid, bool smooth,
                      int force_sign, const Common& common) {
    if (n_max < 1) throw DomainError("--n-max must be >= 1");
    const auto tables = count_interacting_pulled(n_max, make_plan(common));
    const auto grid = parse_grid(temp_grid);
    const ThermoCurve curve =
        fluctuation_scan(tables[n_max], n_max, F, grid, smooth, force_sign);
    Outcome out;
    ojson pts = ojson::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const ThermoObservables& o = curve.points[i];
        pts.push_back({{"T", grid[i]},
                       {"log_Z", std::log(o.Z)},
                       {"mean_m", o.mean_m},
                       {"chi", o.chi},
                       {"mean_x", o.mean_x}});
    }
    ojson peaks = ojson::array();
    for (std::size_t i : curve.peak_indices) peaks.push_back(grid[i]);
    out.results = {{"n_max", n_max},
                   {"force", F},
                   {"force_sign", force_sign},
                   {"smooth", smooth},
                   {"points", std::move(pts)},
                   {"peak_temperatures", std::move(peaks)}};
    return out;
}

Outcome run_adsorb(int n_max, std::vector<double> ys, double mu_ref, double margin,
                   const Common& common) {
    if (n_max < 12) throw DomainError("--n-max must be >= 12");
    if (ys.empty()) ys = {0.25, 0.5, 1.0, 2.0, 4.0};
    const JointCountTable t = count_half_plane(n_max, make_plan(common));
    const AdsorptionGrowth g = adsorption_growth(t, ys, mu_ref, margin);
    Outcome out;
    ojson ests = ojson::array();
    for (const auto& [y, est] : g.estimates)
        ests.push_back({{"y", y}, {"estimate", growth_json(est)}});
    out.results = {{"n_max", n_max},
                   {"mu_ref", mu_ref},
                   {"estimates", std::move(ests)},
                   {"y_c_estimate", g.y_c_estimate}};
    return out;
}

Outcome run_pivot_nu(std::vector<int> ns, std::uint64_t samples, std::uint64_t seed,
                     const PivotPlan& plan) {
    if (ns.empty()) ns = {100, 200, 400, 800};
    for (int n : ns)
        if (n < 2) throw DomainError("--n values must be >= 2");
    const NuEstimate est = estimate_nu(ns, samples, seed, plan);
    Outcome out;
    ojson data = ojson::array();
    for (std::size_t i = 0; i < est.data.size(); ++i)
        data.push_back({{"n", est.data[i].n},
                        {"mean_r2", est.data[i].mean_r2},
                        {"se", est.data[i].se},
                        {"fit_residual", est.fit_residuals[i]}});
    out.results = {{"n", ns},
                   {"samples_per_n", samples},
                   {"seed", seed},
                   {"data", std::move(data)},
                   {"nu", est.nu},
                   {"nu_se", est.nu_se},
                   {"log_prefactor", est.intercept}};
    out.checks.push_back({"nu_2d", est.nu});
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sawlab: exact and Monte Carlo tools for square-lattice "
                 "self-avoiding walks"};
    app.require_subcommand(1);

    int exit_code = 0;
    const auto t0 = std::chrono::steady_clock::now();
    const auto finish = [&](const Common& common, ojson config, Outcome o) {
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        exit_code = emit(common, std::move(config), std::move(o.results), o.checks, ms);
    };

    // count
    {
        auto* sub = app.add_subcommand("count", "Count self-avoiding walks by length");
        auto common = std::make_shared<Common>();
        auto n_max = std::make_shared<int>(10);
        auto sym = std::make_shared<std::string>("octant");
        sub->add_option("--n-max", *n_max, "Maximum walk length")->required();
        sub->add_option("--symmetry", *sym, "Symmetry reduction")
            ->check(CLI::IsMember({"octant", "none"}));
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "count"}, {"n_max", *n_max}, {"symmetry", *sym}},
                   run_count(*n_max, *sym, *common));
        });
    }
    // polygons
    {
        auto* sub = app.add_subcommand("polygons", "Census of self-avoiding polygons");
        auto common = std::make_shared<Common>();
        auto m_max = std::make_shared<int>(10);
        sub->add_option("--m-max", *m_max, "Maximum perimeter")->required();
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common, {{"subcommand", "polygons"}, {"m_max", *m_max}},
                   run_polygons(*m_max, *common));
        });
    }
    // halfplane
    {
        auto* sub = app.add_subcommand("halfplane",
                                       "Half-plane walks with surface contacts");
        auto common = std::make_shared<Common>();
        auto n_max = std::make_shared<int>(10);
        sub->add_option("--n-max", *n_max, "Maximum walk length")->required();
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common, {{"subcommand", "halfplane"}, {"n_max", *n_max}},
                   run_halfplane(*n_max, *common));
        });
    }
    // crossing
    {
        auto* sub = app.add_subcommand("crossing", "Walks crossing an LxL square");
        auto common = std::make_shared<Common>();
        auto l_max = std::make_shared<int>(4);
        sub->add_option("--l-max", *l_max, "Largest square side")->required();
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common, {{"subcommand", "crossing"}, {"l_max", *l_max}},
                   run_crossing(*l_max, *common));
        });
    }
    // interacting
    {
        auto* sub = app.add_subcommand(
            "interacting", "Surface-tethered walks by contacts and displacement");
        auto common = std::make_shared<Common>();
        auto n_max = std::make_shared<int>(10);
        sub->add_option("--n-max", *n_max, "Walk length")->required();
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common, {{"subcommand", "interacting"}, {"n_max", *n_max}},
                   run_interacting(*n_max, *common));
        });
    }
    // mu
    {
        auto* sub = app.add_subcommand("mu", "Connective-constant estimate");
        auto common = std::make_shared<Common>();
        auto n_max = std::make_shared<int>(18);
        auto method = std::make_shared<std::string>("aitken");
        sub->add_option("--n-max", *n_max, "Series length");
        sub->add_option("--method", *method, "Extrapolation method")
            ->check(CLI::IsMember({"aitken", "ratio", "raw"}));
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "mu"}, {"n_max", *n_max}, {"method", *method}},
                   run_mu(*n_max, *method, *common));
        });
    }
    // lambda
    {
        auto* sub = app.add_subcommand("lambda", "Crossing-walk growth constant");
        auto common = std::make_shared<Common>();
        auto l_max = std::make_shared<int>(5);
        sub->add_option("--l-max", *l_max, "Largest square side");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common, {{"subcommand", "lambda"}, {"l_max", *l_max}},
                   run_lambda(*l_max, *common));
        });
    }
    // kappa
    {
        auto* sub = app.add_subcommand("kappa",
                                       "Polygon area free energy at fixed perimeter");
        auto common = std::make_shared<Common>();
        auto m_max = std::make_shared<int>(14);
        auto m = std::make_shared<int>(10);
        auto q_grid = std::make_shared<std::string>("0.1:1.0:0.1");
        sub->add_option("--m-max", *m_max, "Census perimeter bound");
        sub->add_option("--m", *m, "Perimeter to evaluate")->required();
        sub->add_option("--q-grid", *q_grid, "Area fugacity grid lo:hi:step");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "kappa"},
                    {"m_max", *m_max},
                    {"m", *m},
                    {"q_grid", *q_grid}},
                   run_kappa(*m_max, *m, *q_grid, *common));
        });
    }
    // honeycomb-local
    {
        auto* sub = app.add_subcommand(
            "honeycomb-local", "Parafermionic local identity on the trapezoid");
        auto common = std::make_shared<Common>();
        auto T = std::make_shared<int>(3), L = std::make_shared<int>(3);
        auto x = std::make_shared<double>(honeycomb::kCriticalX);
        auto alpha = std::make_shared<double>(honeycomb::kCriticalAlpha);
        sub->add_option("--t", *T, "Trapezoid width");
        sub->add_option("--l", *L, "Trapezoid half-height");
        sub->add_option("--x", *x, "Step fugacity");
        sub->add_option("--alpha", *alpha, "Winding phase");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "honeycomb-local"},
                    {"t", *T},
                    {"l", *L},
                    {"x", *x},
                    {"alpha", *alpha}},
                   run_honeycomb_local(*T, *L, *x, *alpha));
        });
    }
    // honeycomb-domain
    {
        auto* sub = app.add_subcommand("honeycomb-domain",
                                       "Boundary identity on the trapezoid");
        auto common = std::make_shared<Common>();
        auto T = std::make_shared<int>(3), L = std::make_shared<int>(3);
        auto x = std::make_shared<double>(honeycomb::kCriticalX);
        sub->add_option("--t", *T, "Trapezoid width");
        sub->add_option("--l", *L, "Trapezoid half-height");
        sub->add_option("--x", *x, "Step fugacity");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "honeycomb-domain"}, {"t", *T}, {"l", *L}, {"x", *x}},
                   run_honeycomb_domain(*T, *L, *x));
        });
    }
    // honeycomb-adsorb
    {
        auto* sub = app.add_subcommand("honeycomb-adsorb",
                                       "Adsorbing-wall identity on the trapezoid");
        auto common = std::make_shared<Common>();
        auto T = std::make_shared<int>(3), L = std::make_shared<int>(3);
        auto x = std::make_shared<double>(honeycomb::kCriticalX);
        auto y = std::make_shared<double>(honeycomb::kCriticalY);
        sub->add_option("--t", *T, "Trapezoid width");
        sub->add_option("--l", *L, "Trapezoid half-height");
        sub->add_option("--x", *x, "Step fugacity");
        sub->add_option("--y", *y, "Wall fugacity");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "honeycomb-adsorb"},
                    {"t", *T},
                    {"l", *L},
                    {"x", *x},
                    {"y", *y}},
                   run_honeycomb_adsorb(*T, *L, *x, *y));
        });
    }
    // hit
    {
        auto* sub = app.add_subcommand("hit",
                                       "Rectangle boundary-hitting ratio");
        auto common = std::make_shared<Common>();
        auto r = std::make_shared<double>(10.0), b = std::make_shared<double>(1.0);
        auto precision = std::make_shared<std::string>("double");
        auto rel_tol = std::make_shared<double>(1e-12);
        sub->add_option("--r", *r, "Aspect ratio")->required();
        sub->add_option("--b", *b, "Boundary density exponent");
        sub->add_option("--precision", *precision, "Arithmetic precision")
            ->check(CLI::IsMember({"double", "extended"}));
        sub->add_option("--rel-tol", *rel_tol, "Quadrature tolerance");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "hit"},
                    {"r", *r},
                    {"b", *b},
                    {"precision", *precision},
                    {"rel_tol", *rel_tol}},
                   run_hit(*r, *b, *precision, *rel_tol));
        });
    }
    // hit-asymptotic
    {
        auto* sub = app.add_subcommand("hit-asymptotic",
                                       "Large-r expansions of the hitting ratio");
        auto common = std::make_shared<Common>();
        auto r = std::make_shared<double>(10.0), b = std::make_shared<double>(0.625);
        sub->add_option("--r", *r, "Aspect ratio")->required();
        sub->add_option("--b", *b, "Boundary density exponent");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common, {{"subcommand", "hit-asymptotic"}, {"r", *r}, {"b", *b}},
                   run_hit_asymptotic(*r, *b));
        });
    }
    // trefethen
    {
        auto* sub = app.add_subcommand(
            "trefethen", "Closed-form reference for the r=10 Brownian ratio");
        auto common = std::make_shared<Common>();
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common, {{"subcommand", "trefethen"}}, run_trefethen());
        });
    }
    // pull-scan
    {
        auto* sub = app.add_subcommand(
            "pull-scan", "Contact-fluctuation scan for a pulled tethered walk");
        auto common = std::make_shared<Common>();
        auto n_max = std::make_shared<int>(10);
        auto F = std::make_shared<double>(0.0);
        auto grid = std::make_shared<std::string>("0.2:3.0:0.05");
        auto smooth = std::make_shared<bool>(false);
        auto force_sign = std::make_shared<int>(1);
        sub->add_option("--n-max", *n_max, "Walk length")->required();
        sub->add_option("--force", *F, "Pulling force");
        sub->add_option("--temp-grid", *grid, "Temperature grid lo:hi:step");
        sub->add_flag("--smooth", *smooth, "3-point smoothing before peak detection");
        sub->add_option("--force-sign", *force_sign, "Sign convention (+1 or -1)");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "pull-scan"},
                    {"n_max", *n_max},
                    {"force", *F},
                    {"temp_grid", *grid},
                    {"smooth", *smooth},
                    {"force_sign", *force_sign}},
                   run_pull_scan(*n_max, *F, *grid, *smooth, *force_sign, *common));
        });
    }
    // adsorb
    {
        auto* sub = app.add_subcommand("adsorb",
                                       "Half-plane adsorption growth estimates");
        auto common = std::make_shared<Common>();
        auto n_max = std::make_shared<int>(14);
        auto ys = std::make_shared<std::vector<double>>();
        auto mu_ref = std::make_shared<double>(2.6381585303);
        auto margin = std::make_shared<double>(0.0);
        sub->add_option("--n-max", *n_max, "Series length");
        sub->add_option("--y", *ys, "Wall fugacities (repeatable)");
        sub->add_option("--mu-ref", *mu_ref, "Bulk growth reference");
        sub->add_option("--margin", *margin, "Detection margin");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "adsorb"},
                    {"n_max", *n_max},
                    {"y", *ys},
                    {"mu_ref", *mu_ref},
                    {"margin", *margin}},
                   run_adsorb(*n_max, *ys, *mu_ref, *margin, *common));
        });
    }
    // pivot-nu
    {
        auto* sub = app.add_subcommand("pivot-nu",
                                       "Monte Carlo size exponent from pivot sampling");
        auto common = std::make_shared<Common>();
        auto ns = std::make_shared<std::vector<int>>();
        auto samples = std::make_shared<std::uint64_t>(100000);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto plan = std::make_shared<PivotPlan>();
        sub->add_option("--n", *ns, "Chain lengths (repeatable)");
        sub->add_option("--samples", *samples, "Samples per length");
        sub->add_option("--seed", *seed, "RNG seed");
        sub->add_option("--warmup-factor", plan->warmup_factor, "Warm-up attempts per site");
        sub->add_option("--stride-divisor", plan->stride_divisor,
                        "Sample every n/stride-divisor attempts");
        add_common(sub, *common);
        sub->callback([=, &finish] {
            finish(*common,
                   {{"subcommand", "pivot-nu"},
                    {"n", *ns},
                    {"samples", *samples},
                    {"seed", *seed},
                    {"warmup_factor", plan->warmup_factor},
                    {"stride_divisor", plan->stride_divisor}},
                   run_pivot_nu(*ns, *samples, *seed, *plan));
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "sawlab: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "sawlab: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "sawlab: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
