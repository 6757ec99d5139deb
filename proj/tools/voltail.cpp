// voltail: tail asymptotics for one-dimensional diffusion and time-changed
// CEV models.
//
// Subcommands: geodesic, energy, fig2, cev-tail, wing, critical-lambda,
// carrlee, replicate, mc, doss-check, report.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "voltail/carrlee.hpp"
#include "voltail/cev.hpp"
#include "voltail/config.hpp"
#include "voltail/csv.hpp"
#include "voltail/energy.hpp"
#include "voltail/geodesic.hpp"
#include "voltail/montecarlo.hpp"
#include "voltail/timechange.hpp"
#include "voltail/vol_model.hpp"

using json = nlohmann::ordered_json;
using namespace voltail;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ReportSink {
    std::string path;       // --report target ("" = disabled)
    json data = json::object();

    void begin(const std::string& command, const std::vector<std::string>& argv) {
        data["command"] = command;
        data["argv"] = argv;
        data["version"] = VOLTAIL_VERSION;
        data["outputs"] = json::object();
    }
    void output(const std::string& key, const json& value) { data["outputs"][key] = value; }
    void flush() const {
        if (path.empty())
            return;
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write report " + path);
        out << data.dump(2) << "\n";
    }
};

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-")
        return std::cout;
    file.open(path);
    if (!file)
        throw std::runtime_error("cannot write " + path);
    return file;
}

std::string fmt(double v) { return format_double(v); }

// Keys shared by subcommands, resolved as config-file value overridden by flag.
struct CommonOpts {
    std::string config_path;
    std::string model_spec;
    bool confirm_bounds = false;

    Config config() const {
        if (config_path.empty())
            return Config::parse_text("");
        return Config::parse_file(config_path);
    }

    VolModel model(const Config& cfg) const {
        std::string spec = model_spec;
        bool confirm = confirm_bounds;
        if (spec.empty()) {
            std::string kind = cfg.get_string("vol", "kind", "");
            if (kind.empty())
                throw std::invalid_argument("no model given (use --model or [vol] kind=...)");
            if (kind == "constant")
                spec = "constant:" + cfg.get_string("vol", "sigma0", "");
            else if (kind == "fig1")
                spec = "fig1";
            else if (kind == "cev")
                spec = "cev:" + cfg.get_string("vol", "delta", "") + "," +
                       cfg.get_string("vol", "beta", "");
            else if (kind == "expr")
                spec = "expr:" + cfg.get_string("vol", "expr", "");
            else
                throw std::invalid_argument("[vol] kind must be constant|fig1|cev|expr");
            confirm = confirm || cfg.get_long("vol", "confirm-bounds", 0) != 0;
        }
        return parse_model_spec(spec, confirm);
    }
};

int cmd_geodesic(const CommonOpts& common, double from, const std::optional<double>& to,
                 const std::string& grid_spec, const std::string& out_path, ReportSink& report) {
    Config cfg = common.config();
    VolModel model = common.model(cfg);
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    if (!grid_spec.empty()) {
        os << "y,u,d\n";
        json rows = json::array();
        for (double u : parse_grid_spec(grid_spec)) {
            double d = geodesic_distance(model, from, u);
            os << fmt(from) << "," << fmt(u) << "," << fmt(d) << "\n";
            rows.push_back({from, u, d});
        }
        report.output("rows", rows);
        return kExitOk;
    }
    if (!to)
        throw std::invalid_argument("geodesic needs --to or --grid");
    double d = geodesic_distance(model, from, *to);
    os << fmt(d) << "\n";
    report.output("d", d);
    return kExitOk;
}

int cmd_energy(const CommonOpts& common, double t, double u_time, double x,
               const std::optional<double>& y, const std::string& y_grid_spec,
               const std::string& drift_spec, int n_grid, int multistarts,
               const std::string& out_path, ReportSink& report) {
    Config cfg = common.config();
    VolModel model = common.model(cfg);
    DriftSpec drift = parse_drift_spec(drift_spec);

    std::vector<double> ys;
    if (!y_grid_spec.empty())
        ys = parse_grid_spec(y_grid_spec);
    else if (y)
        ys.push_back(*y);
    else
        throw std::invalid_argument("energy needs --y or --y-grid");

    EnergyCurveOptions opt;
    opt.n_grid = n_grid;
    opt.multistarts = multistarts;
    auto rows = energy_curve(model, drift, t, u_time, x, ys, opt);

    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "y,E,half_d2,method,residual\n";
    int failures = 0;
    json jrows = json::array();
    for (const auto& r : rows) {
        if (!r.ok) {
            ++failures;
            std::cerr << "energy: row y=" << fmt(r.y) << " failed: " << r.error << "\n";
            continue;
        }
        const char* method = r.method == EnergyMethod::Shooting ? "shooting" : "direct";
        os << fmt(r.y) << "," << fmt(r.energy) << "," << fmt(r.half_d2) << "," << method << ","
           << fmt(r.residual) << "\n";
        jrows.push_back({{"y", r.y}, {"E", r.energy}, {"half_d2", r.half_d2}});
    }
    report.output("rows", jrows);
    report.output("failures", failures);
    if (failures > 0) {
        std::cerr << "energy: " << failures << " of " << rows.size() << " rows failed\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_fig2(const CommonOpts& common, bool mu_zero, int n_grid, const std::string& out_path,
             ReportSink& report) {
    VolModel model = VolModel::paper_figure1();
    DriftSpec drift = mu_zero ? DriftSpec::zero() : DriftSpec::driftless_log_stock();
    std::vector<double> ys = parse_grid_spec("-3:3:0.05");

    EnergyCurveOptions opt;
    opt.n_grid = n_grid;
    auto rows = energy_curve(model, drift, 0.0, 1.0, 0.0, ys, opt);

    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "y,E,half_d2\n";
    int failures = 0;
    for (const auto& r : rows) {
        if (!r.ok) {
            ++failures;
            std::cerr << "fig2: row y=" << fmt(r.y) << " failed: " << r.error << "\n";
            continue;
        }
        os << fmt(r.y) << "," << fmt(r.energy) << "," << fmt(r.half_d2) << "\n";
    }
    report.output("rows_written", static_cast<int>(rows.size()) - failures);
    report.output("failures", failures);
    if (failures > 0) {
        std::cerr << "fig2: " << failures << " solver failures\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int cmd_cev_tail(double delta, double beta, double x0, double T, const std::string& x_grid_spec,
                 const std::string& out_path, ReportSink& report) {
    CevParams p{delta, beta, x0, T};
    p.validate();
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "x,log_density,asymptote,ratio\n";
    json rows = json::array();
    for (double x : parse_grid_spec(x_grid_spec)) {
        double lp = cev_log_density(p, x);
        double asym = cev_tail_asymptote(p, x);
        double ratio = -lp / asym;
        os << fmt(x) << "," << fmt(lp) << "," << fmt(asym) << "," << fmt(ratio) << "\n";
        rows.push_back({x, lp, asym, ratio});
    }
    report.output("rows", rows);
    return kExitOk;
}

int cmd_wing(const CommonOpts& common, const std::string& kind, double delta, double beta,
             double x0, double T, double t, double u_time, const std::string& k_grid_spec,
             const std::string& drift_spec, const std::string& out_path, ReportSink& report) {
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "k,i2_over_k\n";
    json rows = json::array();
    if (kind == "cev") {
        CevParams p{delta, beta, x0, T};
        p.validate();
        for (double k : parse_grid_spec(k_grid_spec)) {
            double v = cev_wing_asymptote(p, k);
            os << fmt(k) << "," << fmt(v) << "\n";
            rows.push_back({k, v});
        }
    } else if (kind == "locvol") {
        Config cfg = common.config();
        VolModel model = common.model(cfg);
        DriftSpec drift = parse_drift_spec(drift_spec);
        for (double k : parse_grid_spec(k_grid_spec)) {
            EnergyProblem prob{t, u_time, x0, x0 + k, model, drift};
            EnergySolution sol = solve_euler_lagrange(prob);
            double v = locvol_wing_asymptote(k, sol.energy);
            os << fmt(k) << "," << fmt(v) << "\n";
            rows.push_back({k, v});
        }
    } else {
        throw std::invalid_argument("wing --kind must be cev or locvol");
    }
    report.output("rows", rows);
    return kExitOk;
}

int cmd_critical_lambda(double kappa, double theta, double sigma_v, double v0, double T,
                        ReportSink& report) {
    CirParams p{kappa, theta, sigma_v, v0};
    CriticalMoment cm = critical_lambda(p, T);
    std::cout << "lambda_star = " << fmt(cm.lambda_star) << "\n";
    std::cout << "bracket = [" << fmt(cm.bracket_lo) << ", " << fmt(cm.bracket_hi) << "]\n";
    report.output("lambda_star", cm.lambda_star);
    report.output("bracket", {cm.bracket_lo, cm.bracket_hi});
    if (std::isfinite(cm.lambda_star) && cm.lambda_star > 0.0) {
        double slope = digital_tail_slope(cm);
        FeasibilityVerdict verdict = subexponential_feasibility(slope);
        std::cout << "digital_tail_slope = " << fmt(slope) << "\n";
        std::cout << "carr_lee_feasible = " << (verdict.feasible ? "yes" : "no") << "\n";
        report.output("digital_tail_slope", slope);
        report.output("carr_lee_feasible", verdict.feasible);
    } else {
        FeasibilityVerdict verdict = subexponential_feasibility(
            std::numeric_limits<double>::infinity());
        std::cout << "digital_tail_slope = inf\n";
        std::cout << "carr_lee_feasible = " << (verdict.feasible ? "yes" : "no") << "\n";
        report.output("digital_tail_slope", "inf");
        report.output("carr_lee_feasible", verdict.feasible);
    }
    return kExitOk;
}

int cmd_carrlee(const std::string& kind, double lambda, double s0, double delta, double beta,
                double x0, double T, const std::string& samples_path, ReportSink& report) {
    EigenContract c;
    c.lambda = lambda;
    if (kind == "brownian") {
        c.kind = EigenKind::Brownian;
    } else if (kind == "cev") {
        c.kind = EigenKind::Cev;
        c.cev = CevParams{delta, beta, x0, T};
    } else {
        throw std::invalid_argument("carrlee --kind must be brownian or cev");
    }
    std::vector<double> samples = read_sample_csv(samples_path);
    McEstimate est = recover_clock_laplace(c, s0, samples);
    std::cout << "laplace_estimate = " << fmt(est.value) << " +/- " << fmt(est.half_width_95)
              << " (n = " << est.n_effective << ")\n";
    if (est.heavy_tail_flag)
        std::cout << "warning: heavy-tail dominance detected; lambda may exceed the clock's "
                     "critical moment\n";
    report.output("laplace_estimate", est.value);
    report.output("half_width_95", est.half_width_95);
    report.output("heavy_tail_flag", est.heavy_tail_flag);
    return kExitOk;
}

int cmd_replicate(const std::string& payoff_expr, double forward, const std::string& grid_spec,
                  const std::string& out_path, ReportSink& report) {
    Expr expr = Expr::parse(payoff_expr);
    Payoff payoff;
    payoff.value = [expr](double s) { return expr.eval(s); };
    std::vector<double> grid = parse_grid_spec(grid_spec);
    ReplicationWeights w = replication_weights(payoff, forward, grid);

    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "kind,strike,weight\n";
    os << "cash," << fmt(w.forward_point) << "," << fmt(w.cash) << "\n";
    os << "forward," << fmt(w.forward_point) << "," << fmt(w.forward) << "\n";
    for (std::size_t i = 0; i < w.put_strikes.size(); ++i)
        os << "put," << fmt(w.put_strikes[i]) << "," << fmt(w.put_weights[i]) << "\n";
    for (std::size_t i = 0; i < w.call_strikes.size(); ++i)
        os << "call," << fmt(w.call_strikes[i]) << "," << fmt(w.call_weights[i]) << "\n";
    report.output("cash", w.cash);
    report.output("forward", w.forward);
    report.output("n_puts", w.put_strikes.size());
    report.output("n_calls", w.call_strikes.size());
    return kExitOk;
}

int cmd_mc(const CommonOpts& common, const std::string& process, McConfig mc, double x0, double t,
           const std::string& drift_spec, double delta, double beta, double T, double kappa,
           double theta, double sigma_v, double v0, const std::string& emit,
           const std::string& clock_path, const std::string& out_path, ReportSink& report) {
    std::vector<double> samples;
    std::string header = "sample";
    if (process == "log-stock") {
        Config cfg = common.config();
        VolModel model = common.model(cfg);
        samples = simulate_log_stock(model, parse_drift_spec(drift_spec), x0, t, mc);
    } else if (process == "cev") {
        CevParams p{delta, beta, x0, T};
        CevSimResult res = simulate_cev(p, mc);
        samples = std::move(res.terminal);
        std::cout << "absorbed_fraction = " << fmt(res.absorbed_fraction) << "\n";
        report.output("absorbed_fraction", res.absorbed_fraction);
    } else if (process == "cir") {
        CirParams p{kappa, theta, sigma_v, v0};
        auto pairs = simulate_cir_and_integral(p, T, mc);
        samples.reserve(pairs.size());
        bool want_vt = emit == "vT";
        header = want_vt ? "v_T" : "integral";
        for (const auto& [vt, integral] : pairs)
            samples.push_back(want_vt ? vt : integral);
    } else if (process == "compose") {
        CevParams p{delta, beta, x0, T};
        std::vector<double> clock = read_sample_csv(clock_path);
        samples = compose_time_change(p, clock, mc);
    } else {
        throw std::invalid_argument("mc process must be log-stock, cev, cir, or compose");
    }
    if (out_path.empty())
        throw std::invalid_argument("mc needs --out for the sample file");
    write_sample_csv(out_path, header, samples);
    McEstimate mean = expectation(samples);
    std::cout << "n = " << samples.size() << ", mean = " << fmt(mean.value) << " +/- "
              << fmt(mean.half_width_95) << "\n";
    report.output("n", samples.size());
    report.output("mean", mean.value);
    report.output("seed", mc.seed);
    return kExitOk;
}

int cmd_doss_check(const CommonOpts& common, double x0, double t, double c1, double c2,
                   const std::string& x_grid_spec, const std::string& out_path,
                   ReportSink& report) {
    Config cfg = common.config();
    VolModel model = common.model(cfg);
    DossBounds bounds{c1, c2};
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "x,d,asymptote,lower,upper\n";
    json rows = json::array();
    for (double x : parse_grid_spec(x_grid_spec)) {
        double d = geodesic_distance(model, x0, x);
        double asym = doss_tail_asymptote(model, x0, x, t);
        SandwichTail st = doss_sandwich_tail(model, bounds, x0, x, t);
        os << fmt(x) << "," << fmt(d) << "," << fmt(asym) << "," << fmt(st.lower) << ","
           << fmt(st.upper) << "\n";
        rows.push_back({x, d, asym, st.lower, st.upper});
    }
    report.output("rows", rows);
    return kExitOk;
}

int run(const std::vector<std::string>& args);

int cmd_report_replay(const std::string& replay_path) {
    std::ifstream in(replay_path);
    if (!in)
        throw std::runtime_error("cannot read report " + replay_path);
    json data = json::parse(in);
    std::vector<std::string> argv = data.at("argv").get<std::vector<std::string>>();
    return run(argv);
}

int run(const std::vector<std::string>& args) {
    CLI::App app{"tail asymptotics for 1-d diffusions, CEV and time-changed CEV models"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts common;
    ReportSink report;
    app.add_option("--config", common.config_path, "key=value config file");

    // geodesic
    auto* geo = app.add_subcommand("geodesic", "geodesic distance d(y,u) = int dz/sigma");
    double geo_from = 0.0;
    std::optional<double> geo_to;
    std::string geo_grid, geo_out;
    geo->add_option("--model", common.model_spec, "constant:<s> | fig1 | cev:<d>,<b> | expr:<e>");
    geo->add_flag("--confirm-bounds", common.confirm_bounds,
                  "accept grid-estimated bounds for expression models");
    geo->add_option("--from", geo_from, "start point y")->required();
    geo->add_option("--to", geo_to, "end point u");
    geo->add_option("--grid", geo_grid, "emit CSV rows for u in lo:hi:step");
    geo->add_option("--out", geo_out, "output file (default stdout)");
    geo->add_option("--report", report.path, "write a JSON run report");

    // energy
    auto* ene = app.add_subcommand("energy", "energy functional E(t,x;u,y)");
    double ene_t = 0.0, ene_u = 1.0, ene_x = 0.0;
    std::optional<double> ene_y;
    std::string ene_ygrid, ene_out, ene_drift = "log-stock";
    int ene_ngrid = 257, ene_multistarts = 6;
    ene->add_option("--model", common.model_spec, "volatility model spec")->required();
    ene->add_flag("--confirm-bounds", common.confirm_bounds);
    ene->add_option("--t", ene_t, "start time");
    ene->add_option("--u", ene_u, "end time");
    ene->add_option("--x", ene_x, "start point");
    ene->add_option("--y", ene_y, "end point");
    ene->add_option("--y-grid", ene_ygrid, "end points lo:hi:step");
    ene->add_option("--mu", ene_drift, "drift: log-stock | zero | const:<c> | expr:<e>");
    ene->add_option("--n-grid", ene_ngrid, "path grid points (>= 64)");
    ene->add_option("--multistarts", ene_multistarts, "shooting multistarts (1..6)");
    ene->add_option("--out", ene_out, "output CSV (default stdout)");
    ene->add_option("--report", report.path, "write a JSON run report");

    // fig2
    auto* fig = app.add_subcommand("fig2", "energy vs half squared geodesic distance curve");
    bool fig_mu_zero = false;
    int fig_ngrid = 257;
    std::string fig_out;
    fig->add_flag("--mu-zero", fig_mu_zero, "use zero drift (b = bhat case)");
    fig->add_option("--n-grid", fig_ngrid, "path grid points");
    fig->add_option("--out", fig_out, "output CSV (default stdout)");
    fig->add_option("--report", report.path, "write a JSON run report");

    // cev-tail
    auto* ct = app.add_subcommand("cev-tail", "stopped-CEV log density vs tail asymptote");
    double ct_delta = 0.2, ct_beta = -0.5, ct_x0 = 1.0, ct_T = 1.0;
    std::string ct_grid = "10:100:10", ct_out;
    ct->add_option("--delta", ct_delta)->required();
    ct->add_option("--beta", ct_beta)->required();
    ct->add_option("--x0", ct_x0)->required();
    ct->add_option("--T", ct_T)->required();
    ct->add_option("--x-grid", ct_grid, "evaluation points lo:hi:step");
    ct->add_option("--out", ct_out, "output CSV (default stdout)");
    ct->add_option("--report", report.path, "write a JSON run report");

    // wing
    auto* wing = app.add_subcommand("wing", "large-strike implied variance slope I^2(k)/k");
    std::string wing_kind = "cev", wing_grid = "1:10:1", wing_out, wing_drift = "log-stock";
    double wing_delta = 0.2, wing_beta = -0.5, wing_x0 = 1.0, wing_T = 1.0;
    double wing_t = 0.0, wing_u = 1.0;
    wing->add_option("--kind", wing_kind, "cev | locvol")->required();
    wing->add_option("--delta", wing_delta);
    wing->add_option("--beta", wing_beta);
    wing->add_option("--x0", wing_x0);
    wing->add_option("--T", wing_T);
    wing->add_option("--t", wing_t, "locvol: start time");
    wing->add_option("--u", wing_u, "locvol: expiry");
    wing->add_option("--model", common.model_spec, "locvol: volatility model");
    wing->add_flag("--confirm-bounds", common.confirm_bounds);
    wing->add_option("--mu", wing_drift, "locvol: drift spec");
    wing->add_option("--k-grid", wing_grid, "log-moneyness grid lo:hi:step");
    wing->add_option("--out", wing_out, "output CSV (default stdout)");
    wing->add_option("--report", report.path, "write a JSON run report");

    // critical-lambda
    auto* cl = app.add_subcommand("critical-lambda",
                                  "critical exponential moment of the integrated CIR clock");
    double cl_kappa = 2.0, cl_theta = 0.04, cl_sigma = 0.5, cl_v0 = 0.04, cl_T = 1.0;
    cl->add_option("--kappa", cl_kappa)->required();
    cl->add_option("--theta", cl_theta)->required();
    cl->add_option("--sigma-v", cl_sigma)->required();
    cl->add_option("--v0", cl_v0)->required();
    cl->add_option("--T", cl_T)->required();
    cl->add_option("--report", report.path, "write a JSON run report");

    // carrlee
    auto* carr = app.add_subcommand("carrlee", "clock Laplace transform from terminal samples");
    std::string carr_kind = "brownian", carr_samples;
    double carr_lambda = 0.5, carr_s0 = 1.0;
    double carr_delta = 0.2, carr_beta = -0.5, carr_x0 = 1.0, carr_T = 1.0;
    carr->add_option("--kind", carr_kind, "brownian | cev")->required();
    carr->add_option("--lambda", carr_lambda)->required();
    carr->add_option("--s0", carr_s0)->required();
    carr->add_option("--samples", carr_samples, "terminal sample CSV")->required();
    carr->add_option("--delta", carr_delta);
    carr->add_option("--beta", carr_beta);
    carr->add_option("--x0", carr_x0);
    carr->add_option("--T", carr_T);
    carr->add_option("--report", report.path, "write a JSON run report");

    // replicate
    auto* rep = app.add_subcommand("replicate", "Carr-Madan static replication weights");
    std::string rep_payoff, rep_grid, rep_out;
    double rep_forward = 1.0;
    rep->add_option("--payoff", rep_payoff, "payoff expression in x")->required();
    rep->add_option("--forward", rep_forward, "expansion point")->required();
    rep->add_option("--grid", rep_grid, "strike grid lo:hi:step")->required();
    rep->add_option("--out", rep_out, "output CSV (default stdout)");
    rep->add_option("--report", report.path, "write a JSON run report");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo sample generation");
    std::string mc_process, mc_emit = "integral", mc_clock, mc_out, mc_drift = "log-stock";
    McConfig mc_cfg;
    double mc_x0 = 0.0, mc_t = 1.0;
    double mc_delta = 0.2, mc_beta = -0.5, mc_T = 1.0;
    double mc_kappa = 2.0, mc_theta = 0.04, mc_sigma_v = 0.5, mc_v0 = 0.04;
    mc->add_option("process", mc_process, "log-stock | cev | cir | compose")->required();
    mc->add_option("--n-paths", mc_cfg.n_paths);
    mc->add_option("--n-steps", mc_cfg.n_steps);
    mc->add_option("--seed", mc_cfg.seed);
    mc->add_option("--model", common.model_spec, "log-stock: volatility model");
    mc->add_flag("--confirm-bounds", common.confirm_bounds);
    mc->add_option("--mu", mc_drift, "log-stock: drift spec");
    mc->add_option("--x0", mc_x0);
    mc->add_option("--t", mc_t, "log-stock horizon");
    mc->add_option("--delta", mc_delta);
    mc->add_option("--beta", mc_beta);
    mc->add_option("--T", mc_T, "cev/cir horizon");
    mc->add_option("--kappa", mc_kappa);
    mc->add_option("--theta", mc_theta);
    mc->add_option("--sigma-v", mc_sigma_v);
    mc->add_option("--v0", mc_v0);
    mc->add_option("--emit", mc_emit, "cir: vT | integral");
    mc->add_option("--clock-file", mc_clock, "compose: clock sample CSV");
    mc->add_option("--out", mc_out, "sample CSV output")->required();
    mc->add_option("--report", report.path, "write a JSON run report");

    // doss-check
    auto* doss = app.add_subcommand("doss-check", "geodesic tail asymptote and sandwich bounds");
    double doss_x0 = 0.0, doss_t = 1.0, doss_c1 = 0.0, doss_c2 = 0.0;
    std::string doss_grid, doss_out;
    doss->add_option("--model", common.model_spec)->required();
    doss->add_flag("--confirm-bounds", common.confirm_bounds);
    doss->add_option("--x0", doss_x0);
    doss->add_option("--t", doss_t);
    doss->add_option("--c1", doss_c1, "lower drift constant C1");
    doss->add_option("--c2", doss_c2, "upper drift constant C2");
    doss->add_option("--x-grid", doss_grid, "thresholds lo:hi:step")->required();
    doss->add_option("--out", doss_out, "output CSV (default stdout)");
    doss->add_option("--report", report.path, "write a JSON run report");

    // report replay
    auto* repy = app.add_subcommand("report", "re-run a command from a JSON run report");
    std::string repy_path;
    repy->add_option("--replay", repy_path, "report file to replay")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        int rc = kExitOk;
        if (geo->parsed()) {
            report.begin("geodesic", args);
            rc = cmd_geodesic(common, geo_from, geo_to, geo_grid, geo_out, report);
        } else if (ene->parsed()) {
            report.begin("energy", args);
            rc = cmd_energy(common, ene_t, ene_u, ene_x, ene_y, ene_ygrid, ene_drift, ene_ngrid,
                            ene_multistarts, ene_out, report);
        } else if (fig->parsed()) {
            report.begin("fig2", args);
            rc = cmd_fig2(common, fig_mu_zero, fig_ngrid, fig_out, report);
        } else if (ct->parsed()) {
            report.begin("cev-tail", args);
            rc = cmd_cev_tail(ct_delta, ct_beta, ct_x0, ct_T, ct_grid, ct_out, report);
        } else if (wing->parsed()) {
            report.begin("wing", args);
            rc = cmd_wing(common, wing_kind, wing_delta, wing_beta, wing_x0, wing_T, wing_t,
                          wing_u, wing_grid, wing_drift, wing_out, report);
        } else if (cl->parsed()) {
            report.begin("critical-lambda", args);
            rc = cmd_critical_lambda(cl_kappa, cl_theta, cl_sigma, cl_v0, cl_T, report);
        } else if (carr->parsed()) {
            report.begin("carrlee", args);
            rc = cmd_carrlee(carr_kind, carr_lambda, carr_s0, carr_delta, carr_beta, carr_x0,
                             carr_T, carr_samples, report);
        } else if (rep->parsed()) {
            report.begin("replicate", args);
            rc = cmd_replicate(rep_payoff, rep_forward, rep_grid, rep_out, report);
        } else if (mc->parsed()) {
            report.begin("mc", args);
            rc = cmd_mc(common, mc_process, mc_cfg, mc_x0, mc_t, mc_drift, mc_delta, mc_beta, mc_T,
                        mc_kappa, mc_theta, mc_sigma_v, mc_v0, mc_emit, mc_clock, mc_out, report);
        } else if (doss->parsed()) {
            report.begin("doss-check", args);
            rc = cmd_doss_check(common, doss_x0, doss_t, doss_c1, doss_c2, doss_grid, doss_out,
                                report);
        } else if (repy->parsed()) {
            return cmd_report_replay(repy_path);
        }
        report.flush();
        return rc;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ExprError& e) {
        std::cerr << "config error: " << e.what() << " (column " << e.column() << ")\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}
