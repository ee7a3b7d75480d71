#include "cli_support.hpp"

#include "p3lab/ensemble_mc.hpp"
#include "p3lab/hierarchy.hpp"
#include "p3lab/kernel_limits.hpp"
#include "p3lab/orthopoly.hpp"
#include "p3lab/painleve_extract.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>

using namespace p3lab;
using namespace p3lab::cli;
using nlohmann::json;

namespace {

constexpr int kDefaultPrec = 60;

// Parameters of the active subcommand and the start time, echoed into every sidecar.
struct RunContext {
    json parameters = json::object();
    std::string config;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
} run;

void sidecar(const std::string& path, json meta) {
    meta["parameters"] = run.parameters;
    meta["config"] = run.config;
    meta["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - run.start).count();
    write_sidecar(path, meta);
}

void record_parameters(const CLI::App* sub) {
    run.config = "[" + sub->get_name() + "]\n";
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name == "config") continue;
        std::string v;
        if (opt->count() > 0) {
            for (const std::string& r : opt->results()) v += (v.empty() ? "" : ",") + r;
        } else {
            v = opt->get_default_str();
            if (v.size() >= 2 && (v.front() == '[' || v.front() == '{')) v = v.substr(1, v.size() - 2);
        }
        if (opt->get_expected_min() == 0 && v.empty()) v = "false";
        run.parameters[name] = v;
        if (!v.empty()) run.config += name + "=" + v + "\n";
    }
}

struct Output {
    std::string path;
    bool plot = false;
};

Ensemble parse_ensemble(const std::string& s) {
    if (s == "plue") return Ensemble::pLUE;
    if (s == "pgue") return Ensemble::pGUE;
    if (s == "plue-scaled") return Ensemble::pLUE_scaled;
    throw DomainError("unknown ensemble '" + s + "' (plue, pgue, plue-scaled)");
}

// Weight parameters are parsed from their decimal text at the working precision.
PerturbedWeight make_weight(const std::string& ens, int n, int k, const std::string& alpha, const std::string& t,
                            int prec) {
    PrecisionGuard g(prec);
    PerturbedWeight w{parse_ensemble(ens), n, k, Real(alpha), Real(t), Precision{prec}};
    w.validate();
    return w;
}

json constants_json(int k, double alpha) {
    const HierarchyConstants c = hierarchy_constants(k, alpha);
    return {{"c1", laguerre_c1()}, {"tau", c.tau},   {"z0", c.z0}, {"beta", c.beta},
            {"g1", c.g1},          {"g2", c.g2},     {"eta", c.eta}, {"c2", c.c2},
            {"r0", r_initial(alpha)}};
}

void finish(const Output& out, const CsvTable& t, json meta, PlotKind kind, PlotOptions plot) {
    write_csv(out.path, t);
    sidecar(out.path, meta);
    if (!out.plot) return;
    std::string svg = out.path;
    if (svg.size() > 4 && svg.compare(svg.size() - 4, 4, ".csv") == 0) svg.resize(svg.size() - 4);
    svg += ".svg";
    emit_plot(out.path, kind, svg, plot);
    meta["plot_source"] = out.path;
    sidecar(svg, meta);
}

std::string row_label(int n, int k, double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "n=%d k=%d t=%g", n, k, t);
    return buf;
}

struct CheckRow {
    std::string name;
    double value;
    double threshold;
    bool pass() const { return value < threshold; }
};

std::vector<CheckRow> identities_suite(int prec) {
    std::vector<CheckRow> rows;
    for (int n : {2, 3, 4})
        for (int k : {1, 2})
            for (const char* t : {"0.02", "0.05"}) {
                GueLueResiduals r;
                {
                    PrecisionGuard g(prec);
                    r = pgue_plue_residual(n, k, Real("0.3"), Real(t), Precision{prec});
                }
                const std::string label = "pgue-plue " + row_label(n, k, std::stod(t));
                rows.push_back({label + " even", static_cast<double>(r.even), 1e-45});
                rows.push_back({label + " odd", static_cast<double>(r.odd), 1e-45});
            }
    const PerturbedWeight w = make_weight("plue", 5, 1, "0.3", "0.1", prec);
    const DiffIdentityResiduals d = diff_identity_residual(w, 5);
    rows.push_back({"diff-identity kernel form n=5", static_cast<double>(abs(d.kernel_form)), 1e-10});
    rows.push_back({"diff-identity residue form n=5", static_cast<double>(abs(d.residue_form)), 1e-10});
    return rows;
}

std::vector<CheckRow> hierarchy_suite() {
    std::vector<CheckRow> rows;
    double prev = 0;
    for (int m : {41, 81, 161}) {
        HierarchyCheckK1 h = hierarchy_check_k1(0.3, uniform_nodes(1.0, 2.5, m), 7);
        const double e = std::max({h.piii.max_abs(), h.system1.max_abs(), h.lenard_l1.max_abs()});
        rows.push_back({"k=1 chain residual m=" + std::to_string(m), e, 1e-2});
        if (prev > 0) rows.push_back({"k=1 error ratio m=" + std::to_string(m) + "/" + std::to_string(m / 2 + 1), e / prev, 1.0 / 12});
        rows.push_back({"k=1 system p=0 m=" + std::to_string(m), h.system0.max_abs(), 1e-12});
        prev = e;
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments for the Painleve III hierarchy in perturbed Laguerre ensembles", "p3lab"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "key=value file mirroring the flags, in a [subcommand] section");
    app.option_defaults()->always_capture_default();

    Output out;
    int prec = 0;
    std::map<std::string, std::function<int()>> runners;
    std::string active;

    auto common = [&](CLI::App* sub, const std::string& default_out, int default_prec) {
        sub->add_option("--out", out.path, "output CSV")->default_val(default_out);
        sub->add_flag("--plot", out.plot, "also write an SVG next to the CSV");
        sub->add_option("--prec", prec, "working precision in decimal digits")
            ->envname("P3LAB_PREC")
            ->default_val(default_prec)
            ->check(CLI::Range(30, 2000));
    };

    // moments
    std::string ens = "plue", alpha_s = "0", t_s = "0";
    int n = 4, k = 1, count = 0;
    {
        auto* sub = app.add_subcommand("moments", "weight moments mu_0..mu_{count-1}");
        sub->add_option("--ensemble", ens)->check(CLI::IsMember({"plue", "pgue", "plue-scaled"}));
        sub->add_option("--n", n)->check(CLI::PositiveNumber);
        sub->add_option("--k", k)->check(CLI::PositiveNumber);
        sub->add_option("--alpha", alpha_s);
        sub->add_option("--t", t_s);
        sub->add_option("--count", count, "number of moments (default 2n + 2)");
        common(sub, "moments.csv", kDefaultPrec);
        runners["moments"] = [&] {
            const PerturbedWeight w = make_weight(ens, n, k, alpha_s, t_s, prec);
            const int c = count > 0 ? count : 2 * n + 2;
            PrecisionGuard g(prec);
            const std::vector<Real> mu = moments(w, c);
            CsvTable t{{"m", "mu"}, {}};
            for (int m = 0; m < c; ++m) t.rows.push_back({std::to_string(m), to_string(mu[m])});
            finish(out, t, {{"subcommand", "moments"}}, PlotKind::line, {});
            return 0;
        };
    }

    // partition
    {
        auto* sub = app.add_subcommand("partition", "norms h_j and recurrence coefficients; log Z_n in the sidecar");
        sub->add_option("--ensemble", ens)->check(CLI::IsMember({"plue", "pgue", "plue-scaled"}));
        sub->add_option("--n", n)->check(CLI::PositiveNumber);
        sub->add_option("--k", k)->check(CLI::PositiveNumber);
        sub->add_option("--alpha", alpha_s);
        sub->add_option("--t", t_s);
        common(sub, "partition.csv", kDefaultPrec);
        runners["partition"] = [&] {
            const PerturbedWeight w = make_weight(ens, n, k, alpha_s, t_s, prec);
            const OPSystem<Real> sys = build_op_system(w, n);
            PrecisionGuard g(prec);
            CsvTable t{{"j", "h", "a", "b"}, {}};
            for (int j = 0; j < n; ++j)
                t.rows.push_back({std::to_string(j), to_string(sys.h[j]), to_string(sys.a[j]), to_string(sys.b[j])});
            json meta{{"subcommand", "partition"}, {"log_Z", to_string(log_partition(sys, n))}};
            finish(out, t, meta, PlotKind::line, {});
            return 0;
        };
    }

    // kernel
    std::string kmode = "finite-n", scaling = "with_c1";
    double alpha = 0, s = 1;
    std::vector<double> grid{-5, -2, -1, -0.5, -0.1}, grid_v;
    {
        auto* sub = app.add_subcommand("kernel", "finite-n rescaled kernel or its Bessel/Airy limit on a grid");
        sub->add_option("--mode", kmode)->check(CLI::IsMember({"finite-n", "bessel", "airy"}));
        sub->add_option("--n", n)->check(CLI::PositiveNumber);
        sub->add_option("--k", k)->check(CLI::PositiveNumber);
        sub->add_option("--alpha", alpha);
        sub->add_option("--s", s);
        sub->add_option("--grid", grid, "u values (comma separated)")->delimiter(',');
        sub->add_option("--grid-v", grid_v, "v values (default: the u grid)")->delimiter(',');
        sub->add_option("--scaling-mode", scaling)->check(CLI::IsMember({"with_c1", "without_c1", "with-c1", "without-c1"}));
        common(sub, "kernel.csv", kDefaultPrec);
        runners["kernel"] = [&] {
            const KernelMode m = parse_kernel_mode(kmode);
            const std::vector<double>& gv = grid_v.empty() ? grid : grid_v;
            const KernelSample S = sample_kernel(m, n, k, alpha, s, grid, gv, parse_scaling_mode(scaling));
            CsvTable t{{"u", "v", "K"}, {}};
            for (size_t i = 0; i < grid.size(); ++i)
                for (size_t j = 0; j < gv.size(); ++j) t.rows.push_back({fmt(grid[i]), fmt(gv[j]), fmt(S.values(i, j))});
            json meta{{"subcommand", "kernel"}, {"mode", to_string(m)}, {"t", S.t},
                      {"constants", {{"c1", S.c1}, {"eta", S.eta}, {"z0", S.z0}, {"c2", S.c2}}}};
            finish(out, t, meta, PlotKind::heatmap, {});
            return 0;
        };
    }

    // extract-r
    std::vector<int> n_list{32, 64};
    double s_min = 1e-2, s_max = 10;
    int per_decade = 24, stencil = 7, fit_degree = 3;
    {
        auto* sub = app.add_subcommand("extract-r", "transcendent table r(s), y, l_1 from finite-n partition functions");
        sub->add_option("--k", k)->check(CLI::PositiveNumber);
        sub->add_option("--alpha", alpha);
        sub->add_option("--n-list", n_list)->delimiter(',');
        sub->add_option("--s-min", s_min)->check(CLI::PositiveNumber);
        sub->add_option("--s-max", s_max)->check(CLI::PositiveNumber);
        sub->add_option("--points-per-decade", per_decade)->check(CLI::Range(12, 1000));
        sub->add_option("--stencil", stencil)->check(CLI::Range(4, 99));
        sub->add_option("--fit-degree", fit_degree)->check(CLI::Range(1, 10));
        sub->add_option("--scaling-mode", scaling)->check(CLI::IsMember({"with_c1", "without_c1", "with-c1", "without-c1"}));
        common(sub, "table.csv", 40);
        runners["extract-r"] = [&] {
            if (!(s_max > s_min)) throw DomainError("extract-r: need s-max > s-min");
            ExtractOptions opt;
            opt.mode = parse_scaling_mode(scaling);
            opt.stencil = stencil;
            opt.fit_degree = fit_degree;
            opt.prec = Precision{prec};
            const TranscendentTable T = extract_table(k, alpha, log_grid(s_min, s_max, per_decade), n_list, opt);
            CsvTable t;
            t.header = {"s"};
            for (int m : T.n_used) t.header.push_back("t_n" + std::to_string(m));
            for (int m : T.n_used) t.header.push_back("r_n" + std::to_string(m));
            for (const char* h : {"r_extrapolated", "sigma", "y", "ell1"}) t.header.push_back(h);
            for (size_t j = 0; j < T.s.size(); ++j) {
                std::vector<std::string> row{fmt(T.s[j])};
                for (size_t i = 0; i < T.n_used.size(); ++i) row.push_back(fmt(T.t[i][j]));
                for (size_t i = 0; i < T.n_used.size(); ++i) row.push_back(fmt(T.r[i][j]));
                for (double v : {T.r_extrapolated[j], T.sigma[j], T.y[j], T.ell1[j]}) row.push_back(fmt(v));
                t.rows.push_back(row);
            }
            json meta{{"subcommand", "extract-r"}, {"scaling_mode", to_string(T.mode)}, {"n_used", T.n_used},
                      {"constants", constants_json(k, alpha)}};
            PlotOptions po;
            po.x = "s";
            po.log_x = true;
            po.y = {"r_extrapolated"};
            for (int m : T.n_used) po.y.push_back("r_n" + std::to_string(m));
            finish(out, t, meta, PlotKind::line, po);
            return 0;
        };
    }

    // sample
    double t_param = 0.01;
    long steps = 100000;
    int chains = 4, bins = 20;
    std::uint64_t seed = 1;
    std::string samples_out;
    {
        auto* sub = app.add_subcommand("sample", "Metropolis sampler; histogram against the exact one-point function");
        sub->add_option("--n", n)->check(CLI::PositiveNumber);
        sub->add_option("--k", k)->check(CLI::PositiveNumber);
        sub->add_option("--alpha", alpha);
        sub->add_option("--t", t_param)->check(CLI::NonNegativeNumber);
        sub->add_option("--steps", steps, "sweeps per chain")->check(CLI::PositiveNumber);
        sub->add_option("--chains", chains)->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed);
        sub->add_option("--bins", bins)->check(CLI::Range(2, 1000));
        sub->add_option("--samples-out", samples_out, "also write raw post-burn-in samples");
        common(sub, "histogram.csv", kDefaultPrec);
        runners["sample"] = [&] {
            const MCParams p{n, k, alpha, t_param};
            ChainOptions co;
            co.sweeps = steps;
            co.seed = seed;
            const std::vector<ChainResult> ch = run_chains(p, co, chains);
            const OnePointDensity rho(p);
            const std::vector<double> edges = rho.quantile_edges(bins);
            const std::vector<double> counts = histogram(ch, edges);
            long total = 0;
            for (const auto& c : ch) total += static_cast<long>(c.samples.size());
            CsvTable t{{"bin", "lo", "hi", "count", "expected"}, {}};
            for (int b = 0; b < bins; ++b)
                t.rows.push_back({std::to_string(b), fmt(edges[b]), fmt(edges[b + 1]), fmt(counts[b]),
                                  fmt(rho.mass(edges[b], edges[b + 1]) / n * total)});
            json chains_meta = json::array();
            for (const auto& c : ch)
                chains_meta.push_back({{"chain", c.chain}, {"kept", c.kept}, {"acceptance_rate", c.acceptance_rate},
                                       {"proposal_scale", c.proposal_scale}, {"max_cache_drift", c.max_cache_drift}});
            json meta{{"subcommand", "sample"}, {"rng", Rng::algorithm}, {"samples", total}, {"chains", chains_meta}};
            try {
                const DensityComparison D = density_compare(ch, rho, bins, 100, 1);
                meta["chi2"] = D.chi2;
                meta["dof"] = D.dof;
                meta["p_value"] = D.p_value;
                meta["batches"] = D.batches;
            } catch (const DomainError& e) {
                meta["p_value"] = nullptr;
                meta["p_value_skipped"] = e.what();
            }
            finish(out, t, meta, PlotKind::line, {"hi", {"count", "expected"}});
            if (!samples_out.empty()) {
                CsvTable raw{{"chain", "row"}, {}};
                for (int i = 0; i < n; ++i) raw.header.push_back("x" + std::to_string(i));
                for (const auto& c : ch)
                    for (long r = 0; r < c.kept; ++r) {
                        std::vector<std::string> row{std::to_string(c.chain), std::to_string(r)};
                        for (int i = 0; i < n; ++i) row.push_back(fmt(c.at(r, i)));
                        raw.rows.push_back(std::move(row));
                    }
                write_csv(samples_out, raw);
                json m2 = meta;
                m2["histogram"] = out.path;
                sidecar(samples_out, m2);
            }
            return 0;
        };
    }

    // hierarchy-check
    double h_alpha = 0.3, l_start = -4, dl_start = 0, h_smin = 1, h_smax = 2.5;
    int points = 81;
    std::string grid_kind = "uniform";
    {
        auto* sub = app.add_subcommand("hierarchy-check", "k = 1 hierarchy residual curves on a reference PIII solution");
        sub->add_option("--alpha", h_alpha);
        sub->add_option("--s-min", h_smin)->check(CLI::PositiveNumber);
        sub->add_option("--s-max", h_smax)->check(CLI::PositiveNumber);
        sub->add_option("--points", points)->check(CLI::Range(8, 100000));
        sub->add_option("--stencil", stencil)->check(CLI::Range(4, 99));
        sub->add_option("--grid", grid_kind)->check(CLI::IsMember({"uniform", "chebyshev"}));
        sub->add_option("--l-start", l_start, "l_1 at s-min");
        sub->add_option("--dl-start", dl_start, "l_1' at s-min");
        common(sub, "hierarchy.csv", kDefaultPrec);
        runners["hierarchy-check"] = [&] {
            if (!(h_smax > h_smin)) throw DomainError("hierarchy-check: need s-max > s-min");
            const Eigen::VectorXd nodes = grid_kind == "uniform" ? uniform_nodes(h_smin, h_smax, points)
                                                                 : chebyshev_nodes(h_smin, h_smax, points);
            const HierarchyCheckK1 h = hierarchy_check_k1(h_alpha, nodes, stencil, l_start, dl_start);
            const std::vector<std::pair<const char*, const GridFn*>> cols{
                {"l1", &h.l1},           {"u", &h.u},                 {"piii", &h.piii},
                {"system0", &h.system0}, {"system1", &h.system1},     {"lenard_l1", &h.lenard_l1},
                {"lenard_l2", &h.lenard_l2}};
            CsvTable t{{"s"}, {}};
            json sup;
            for (const auto& [name, f] : cols) {
                t.header.push_back(name);
                if (std::string(name) != "l1" && std::string(name) != "u") sup[name] = f->max_abs();
            }
            for (Eigen::Index i = 0; i < nodes.size(); ++i) {
                std::vector<std::string> row{fmt(nodes[i])};
                for (const auto& c : cols) row.push_back(fmt((*c.second)[i]));
                t.rows.push_back(row);
            }
            json meta{{"subcommand", "hierarchy-check"}, {"sup_residuals", sup}, {"constants", constants_json(1, h_alpha)}};
            finish(out, t, meta, PlotKind::line, {"s", {"piii", "system1", "lenard_l1", "lenard_l2"}});
            return 0;
        };
    }

    // check
    std::string suite = "identities";
    {
        auto* sub = app.add_subcommand("check", "residual suites with a PASS/FAIL table");
        sub->add_option("--suite", suite)->check(CLI::IsMember({"identities", "hierarchy", "all"}));
        common(sub, "", kDefaultPrec);
        runners["check"] = [&] {
            std::vector<CheckRow> rows;
            if (suite == "identities" || suite == "all") rows = identities_suite(prec);
            if (suite == "hierarchy" || suite == "all")
                for (const CheckRow& r : hierarchy_suite()) rows.push_back(r);
            bool all = true;
            CsvTable t{{"check", "value", "threshold", "result"}, {}};
            for (const CheckRow& r : rows) {
                std::printf("%-4s  %-40s %.3e < %.0e\n", r.pass() ? "PASS" : "FAIL", r.name.c_str(), r.value, r.threshold);
                all = all && r.pass();
                t.rows.push_back({r.name, fmt(r.value), fmt(r.threshold), r.pass() ? "PASS" : "FAIL"});
            }
            if (!out.path.empty()) {
                write_csv(out.path, t);
                sidecar(out.path, {{"subcommand", "check"}, {"suite", suite}, {"all_pass", all}});
            }
            return all ? 0 : static_cast<int>(check_failed);
        };
    }

    // plot
    std::string csv_in, kind = "line", svg_out, x_col;
    std::vector<std::string> y_cols;
    bool log_x = false;
    {
        auto* sub = app.add_subcommand("plot", "static SVG from a CSV written by this tool");
        sub->add_option("--csv", csv_in)->required();
        sub->add_option("--kind", kind)->check(CLI::IsMember({"line", "heatmap"}));
        sub->add_option("--x", x_col);
        sub->add_option("--y", y_cols)->delimiter(',');
        sub->add_flag("--log-x", log_x);
        sub->add_option("--out", svg_out, "SVG path (default: the CSV path with .svg)");
        runners["plot"] = [&] {
            std::string path = svg_out;
            if (path.empty()) {
                path = csv_in;
                if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0) path.resize(path.size() - 4);
                path += ".svg";
            }
            PlotOptions po;
            po.x = x_col;
            po.y = y_cols;
            po.log_x = log_x;
            emit_plot(csv_in, parse_plot_kind(kind), path, po);
            sidecar(path, {{"subcommand", "plot"}, {"source", csv_in}, {"kind", kind}});
            return 0;
        };
    }

    auto fail = [&](const std::string& kind_name, ExitCode code, const std::string& msg) {
        std::cerr << error_record(kind_name, code, msg, active).dump() << '\n';
        return static_cast<int>(code);
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", usage_error, e.what());
    }

    const CLI::App* chosen = nullptr;
    for (const CLI::App* sub : app.get_subcommands()) chosen = sub;
    if (!chosen) {
        // A config file with a [subcommand] section selects it.
        for (const CLI::App* sub : app.get_subcommands({}))
            for (const CLI::Option* opt : sub->get_options())
                if (opt->count() > 0) chosen = sub;
    }
    if (!chosen) return fail("usage", usage_error, "no subcommand given (try --help)");
    active = chosen->get_name();
    record_parameters(chosen);

    try {
        return runners.at(active)();
    } catch (const PrecisionError& e) {
        return fail("precision", precision_exhausted, e.what());
    } catch (const SingularityError& e) {
        return fail("singularity", numerical_failure, e.what());
    } catch (const DomainError& e) {
        return fail("invalid-parameter", usage_error, e.what());
    } catch (const std::invalid_argument& e) {
        return fail("invalid-parameter", usage_error, e.what());
    } catch (const CsvError& e) {
        return fail("malformed-csv", usage_error, e.what());
    } catch (const IoError& e) {
        return fail("io", io_error, e.what());
    } catch (const McmcError& e) {
        return fail("mcmc", numerical_failure, e.what());
    } catch (const std::exception& e) {
        return fail("numerical", numerical_failure, e.what());
    }
}
