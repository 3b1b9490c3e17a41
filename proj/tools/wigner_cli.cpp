#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wignerlab/bh_kernel.hpp"
#include "wignerlab/ensemble.hpp"
#include "wignerlab/fredholm.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/ou_flow.hpp"
#include "wignerlab/spectra.hpp"
#include "wignerlab/statistics.hpp"

using json = nlohmann::json;

namespace {

struct Common {
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--workers", c.workers, "worker thread count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", c.out, "output file path");
}

/// Runs fn(0..n-1) on a worker pool; results must be stored by index so the
/// output is independent of scheduling.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next++; i < n; i = next++) fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs) {
        if (e) std::rethrow_exception(e);
    }
}

class Manifest {
public:
    Manifest(const std::string& out, std::uint64_t hash, std::uint64_t seed)
        : start_(std::chrono::steady_clock::now()) {
        if (out.empty()) return;
        path_ = out + ".manifest.json";
        doc_["config_hash"] = wigner::io::hash_hex(hash);
        doc_["version"] = "wignerlab 0.1.0";
        doc_["master_seed"] = seed;
        doc_["status"] = "running";
        doc_["outputs"] = json::array({out});
        write();
    }

    void add_seed(std::uint64_t s) {
        if (!path_.empty()) doc_["sample_seeds"].push_back(s);
    }

    void finish() {
        if (path_.empty()) return;
        const auto dt = std::chrono::steady_clock::now() - start_;
        doc_["wall_seconds"] =
            std::chrono::duration<double>(dt).count();
        doc_["status"] = "done";
        write();
    }

private:
    void write() {
        std::ofstream f(path_);
        f << doc_.dump(2) << "\n";
    }
    std::string path_;
    json doc_;
    std::chrono::steady_clock::time_point start_;
};

wigner::EntryLaw make_law(const std::string& name, double param,
                          double variance) {
    if (name == "gaussian") return wigner::EntryLaw::gaussian(variance);
    return wigner::EntryLaw::from_name(name, param).scaled_to_variance(variance);
}

wigner::SpectralSample spectrum_of(int n, wigner::Convention conv,
                                   const std::string& law, double param,
                                   std::uint64_t seed) {
    if (law == "gaussian") {
        return wigner::hermitian_eigenvalues(wigner::sample_gue(n, conv, seed));
    }
    const double off_var = conv == wigner::Convention::support2 ? 0.5 : 0.125;
    const double diag_var = conv == wigner::Convention::support2 ? 1.0 : 0.25;
    return wigner::hermitian_eigenvalues(
        wigner::sample_wigner(n, make_law(law, param, off_var),
                              make_law(law, param, diag_var), conv, seed));
}

void emit_json(const Common& c, const json& doc) {
    if (c.out.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream f(c.out);
        if (!f) throw std::runtime_error("cannot open " + c.out);
        f << doc.dump(2) << "\n";
    }
}

std::vector<double> parse_sweep(const std::string& spec) {
    // "lo:hi:step" inclusive sweep
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
        !(step > 0.0) || hi < lo) {
        throw std::invalid_argument("bad sweep spec: " + spec);
    }
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-12 * step; x += step) v.push_back(x);
    return v;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open table " + path);
    Table t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) fields.push_back(cell);
        if (t.header.empty()) {
            t.header = fields;
            continue;
        }
        std::vector<double> row;
        for (const auto& f : fields) row.push_back(std::stod(f));
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw std::invalid_argument("empty table " + path);
    return t;
}

int run_app(int argc, char** argv) {
    CLI::App app{"numerical laboratory for bulk eigenvalue statistics"};
    app.require_subcommand(1);
    app.set_config("--config");

    // validate-law
    auto* c_val = app.add_subcommand("validate-law", "check an entry law");
    Common val_c;
    std::string val_law = "gaussian";
    double val_param = 0.0, val_var = 0.5;
    add_common(c_val, val_c);
    c_val->add_option("--law", val_law, "gaussian|quartic|two_sided_exponential|bump");
    c_val->add_option("--param", val_param, "law parameter");
    c_val->add_option("--variance", val_var, "target variance");

    // sample-spectrum
    auto* c_spec = app.add_subcommand("sample-spectrum", "sample spectra");
    Common spec_c;
    int spec_n = 200, spec_m = 1;
    std::string spec_law = "gaussian", spec_conv = "support2";
    double spec_param = 0.0;
    add_common(c_spec, spec_c);
    c_spec->add_option("--N", spec_n)->check(CLI::PositiveNumber);
    c_spec->add_option("--samples", spec_m)->check(CLI::PositiveNumber);
    c_spec->add_option("--law", spec_law);
    c_spec->add_option("--param", spec_param);
    c_spec->add_option("--convention", spec_conv);

    // sc-check
    auto* c_sc = app.add_subcommand("sc-check", "local-law good-set check");
    Common sc_c;
    int sc_n = 1024, sc_m = 1;
    double sc_eta = 0.05, sc_tol = 0.05, sc_k = 10.0;
    double sc_lo = -1.0, sc_hi = 1.0;
    std::string sc_law = "gaussian", sc_conv = "support2";
    double sc_param = 0.0;
    add_common(c_sc, sc_c);
    c_sc->add_option("--N", sc_n);
    c_sc->add_option("--samples", sc_m);
    c_sc->add_option("--eta", sc_eta);
    c_sc->add_option("--tol", sc_tol);
    c_sc->add_option("--K", sc_k);
    c_sc->add_option("--window-lo", sc_lo);
    c_sc->add_option("--window-hi", sc_hi);
    c_sc->add_option("--law", sc_law);
    c_sc->add_option("--param", sc_param);
    c_sc->add_option("--convention", sc_conv);

    // flow
    auto* c_flow = app.add_subcommand("flow", "matrix OU flow drift check");
    Common flow_c;
    int flow_n = 200, flow_m = 1;
    double flow_t = 1.0;
    add_common(c_flow, flow_c);
    c_flow->add_option("--N", flow_n);
    c_flow->add_option("--samples", flow_m);
    c_flow->add_option("--t", flow_t);

    // reverse
    auto* c_rev = app.add_subcommand("reverse", "time-reversal error sweep");
    Common rev_c;
    int rev_m = 3, rev_points = 9;
    double rev_tmin = 1e-3, rev_tmax = 1e-1;
    std::string rev_coeffs;
    add_common(c_rev, rev_c);
    c_rev->add_option("--order", rev_m)->check(CLI::Range(2, 16));
    c_rev->add_option("--t-min", rev_tmin);
    c_rev->add_option("--t-max", rev_tmax);
    c_rev->add_option("--points", rev_points)->check(CLI::Range(2, 1000));
    c_rev->add_option("--coeffs", rev_coeffs, "coefficient file (default builtin)");

    // kernel
    auto* c_ker = app.add_subcommand("kernel", "contour kernel sweep");
    Common ker_c;
    int ker_n = 500;
    double ker_u = 0.0, ker_lambda = 0.5, ker_t = 0.0;
    double ker_eta0 = 0.1, ker_trunc = 40.0, ker_dens = 3.0;
    std::string ker_sweep = "0.25:3:0.25", ker_y = "quantile";
    add_common(c_ker, ker_c);
    c_ker->add_option("--N", ker_n);
    c_ker->add_option("--u", ker_u);
    c_ker->add_option("--lambda", ker_lambda, "t = N^(lambda-1)");
    c_ker->add_option("--t", ker_t, "explicit t (overrides lambda)");
    c_ker->add_option("--tau-sweep", ker_sweep, "lo:hi:step");
    c_ker->add_option("--spectrum", ker_y, "quantile|gaussian");
    c_ker->add_option("--eta0", ker_eta0);
    c_ker->add_option("--truncation", ker_trunc);
    c_ker->add_option("--quad-density", ker_dens);

    // fredholm
    auto* c_fred = app.add_subcommand("fredholm", "sine-kernel gap table");
    Common fred_c;
    double fred_max = 4.0, fred_step = 0.05;
    int fred_order = 40;
    add_common(c_fred, fred_c);
    c_fred->add_option("--alpha-max", fred_max);
    c_fred->add_option("--step", fred_step);
    c_fred->add_option("--order", fred_order);

    // gaps
    auto* c_gap = app.add_subcommand("gaps", "empirical gap statistic");
    Common gap_c;
    int gap_n = 400, gap_m = 500;
    double gap_u = 0.0, gap_delta = 0.8;
    std::vector<double> gap_s{1.0};
    std::string gap_law = "gaussian", gap_conv = "support2";
    double gap_param = 0.0;
    add_common(c_gap, gap_c);
    c_gap->add_option("--N", gap_n);
    c_gap->add_option("--samples", gap_m);
    c_gap->add_option("--u", gap_u);
    c_gap->add_option("--s", gap_s)->expected(-1);
    c_gap->add_option("--delta", gap_delta);
    c_gap->add_option("--law", gap_law);
    c_gap->add_option("--param", gap_param);
    c_gap->add_option("--convention", gap_conv);

    // paircorr
    auto* c_pc = app.add_subcommand("paircorr", "pair correlation histogram");
    Common pc_c;
    int pc_n = 1024, pc_m = 200, pc_bins = 12;
    double pc_u = 0.0, pc_taumax = 3.0, pc_half = 0.05;
    std::string pc_law = "gaussian", pc_conv = "support2";
    double pc_param = 0.0;
    add_common(c_pc, pc_c);
    c_pc->add_option("--N", pc_n);
    c_pc->add_option("--samples", pc_m);
    c_pc->add_option("--u", pc_u);
    c_pc->add_option("--tau-max", pc_taumax);
    c_pc->add_option("--bins", pc_bins);
    c_pc->add_option("--half-width", pc_half);
    c_pc->add_option("--law", pc_law);
    c_pc->add_option("--param", pc_param);
    c_pc->add_option("--convention", pc_conv);

    // compare
    auto* c_cmp = app.add_subcommand("compare", "compare two result tables");
    Common cmp_c;
    std::string cmp_a, cmp_b;
    int cmp_col_a = 1, cmp_col_b = 1;
    double cmp_tol = 0.05;
    add_common(c_cmp, cmp_c);
    c_cmp->add_option("--table", cmp_a)->required();
    c_cmp->add_option("--reference", cmp_b)->required();
    c_cmp->add_option("--col", cmp_col_a, "value column in --table");
    c_cmp->add_option("--ref-col", cmp_col_b, "value column in --reference");
    c_cmp->add_option("--tolerance", cmp_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    // hash the scientific configuration only; output path and worker count
    // change neither the results nor the bytes written
    std::string cfg_text;
    {
        std::istringstream full(app.config_to_str(true, false));
        std::string line;
        while (std::getline(full, line)) {
            // lines look like "subcommand.key=value"
            const auto eq = line.find('=');
            std::string key = eq == std::string::npos ? line : line.substr(0, eq);
            const auto dot = key.rfind('.');
            if (dot != std::string::npos) key = key.substr(dot + 1);
            if (key == "out" || key == "workers") continue;
            cfg_text += line;
            cfg_text += '\n';
        }
    }
    const std::uint64_t cfg_hash = wigner::io::config_hash(cfg_text);

    if (*c_val) {
        const auto law = make_law(val_law, val_param, val_var);
        const auto rep = wigner::validate_law(law);
        json doc{{"config_hash", wigner::io::hash_hex(cfg_hash)},
                 {"law", val_law},
                 {"normalized", rep.normalized},
                 {"mean_zero", rep.mean_zero},
                 {"variance_ok", rep.variance_ok},
                 {"derivative_growth_ok", rep.derivative_growth_ok},
                 {"tail_ok", rep.tail_ok},
                 {"measured_mass", rep.measured_mass},
                 {"measured_mean", rep.measured_mean},
                 {"measured_variance", rep.measured_variance},
                 {"pass", rep.pass()}};
        emit_json(val_c, doc);
        return rep.pass() ? 0 : 1;
    }

    if (*c_spec) {
        Manifest man(spec_c.out, cfg_hash, spec_c.seed);
        const auto conv = wigner::convention_from_string(spec_conv);
        std::vector<wigner::SpectralSample> res(spec_m);
        parallel_for(spec_m, spec_c.workers, [&](int i) {
            res[i] = spectrum_of(spec_n, conv, spec_law, spec_param,
                                 wigner::derive_seed(spec_c.seed, i));
        });
        wigner::io::CsvWriter csv(spec_c.out.empty() ? "/dev/stdout" : spec_c.out);
        csv.meta("config_hash", wigner::io::hash_hex(cfg_hash));
        csv.meta("N", std::to_string(spec_n));
        csv.meta("convention", spec_conv);
        csv.header({"sample", "index", "eigenvalue"});
        for (int i = 0; i < spec_m; ++i) {
            man.add_seed(wigner::derive_seed(spec_c.seed, i));
            for (int j = 0; j < res[i].size(); ++j) {
                csv.row({static_cast<double>(i), static_cast<double>(j),
                         res[i].eigenvalues[j]});
            }
        }
        man.finish();
        return 0;
    }

    if (*c_sc) {
        Manifest man(sc_c.out, cfg_hash, sc_c.seed);
        const auto conv = wigner::convention_from_string(sc_conv);
        const wigner::SemicircleRef ref{conv, 0.0};
        std::vector<wigner::GoodSetReport> reps(sc_m);
        parallel_for(sc_m, sc_c.workers, [&](int i) {
            const auto s = spectrum_of(sc_n, conv, sc_law, sc_param,
                                       wigner::derive_seed(sc_c.seed, i));
            reps[i] = wigner::in_good_set(s, ref, sc_eta, sc_tol, sc_k, sc_lo,
                                          sc_hi);
        });
        wigner::io::CsvWriter csv(sc_c.out.empty() ? "/dev/stdout" : sc_c.out);
        csv.meta("config_hash", wigner::io::hash_hex(cfg_hash));
        csv.meta("N", std::to_string(sc_n));
        csv.meta("eta", sc_eta);
        csv.meta("tol", sc_tol);
        csv.header({"sample", "worst_deviation", "max_abs_eigenvalue", "pass"});
        int passed = 0;
        for (int i = 0; i < sc_m; ++i) {
            passed += reps[i].pass;
            csv.row({static_cast<double>(i), reps[i].worst_deviation,
                     reps[i].max_abs_eigenvalue,
                     static_cast<double>(reps[i].pass)});
        }
        man.finish();
        std::cerr << "sc-check pass rate " << passed << "/" << sc_m << "\n";
        return 0;
    }

    if (*c_flow) {
        Manifest man(flow_c.out, cfg_hash, flow_c.seed);
        // Pooled entry moments before/after one exact OU transition.
        double s0 = 0, sq0 = 0, s1 = 0, sq1 = 0, d0 = 0, dq0 = 0, d1 = 0,
               dq1 = 0;
        long n_off = 0, n_diag = 0;
        for (int i = 0; i < flow_m; ++i) {
            const auto h0 = wigner::sample_gue(
                flow_n, wigner::Convention::support2,
                wigner::derive_seed(flow_c.seed, 2 * i));
            const auto h1 = wigner::matrix_ou_step(
                h0, flow_t, wigner::derive_seed(flow_c.seed, 2 * i + 1));
            const double scale = std::sqrt(static_cast<double>(flow_n));
            for (int a = 0; a < flow_n; ++a) {
                for (int b = a + 1; b < flow_n; ++b) {
                    const double re0 = h0.at(a, b).real() * scale;
                    const double im0 = h0.at(a, b).imag() * scale;
                    const double re1 = h1.at(a, b).real() * scale;
                    const double im1 = h1.at(a, b).imag() * scale;
                    s0 += re0 + im0;
                    sq0 += re0 * re0 + im0 * im0;
                    s1 += re1 + im1;
                    sq1 += re1 * re1 + im1 * im1;
                    n_off += 2;
                }
                const double x0 = h0.at(a, a).real() * scale;
                const double x1 = h1.at(a, a).real() * scale;
                d0 += x0;
                dq0 += x0 * x0;
                d1 += x1;
                dq1 += x1 * x1;
                ++n_diag;
            }
        }
        wigner::io::CsvWriter csv(flow_c.out.empty() ? "/dev/stdout"
                                                     : flow_c.out);
        csv.meta("config_hash", wigner::io::hash_hex(cfg_hash));
        csv.meta("N", std::to_string(flow_n));
        csv.meta("t", flow_t);
        csv.header({"quantity", "initial", "evolved"});
        const auto var = [](double s, double sq, long n) {
            return sq / n - (s / n) * (s / n);
        };
        csv.raw_row({"offdiag_mean", wigner::io::format_double(s0 / n_off),
                     wigner::io::format_double(s1 / n_off)});
        csv.raw_row({"offdiag_var",
                     wigner::io::format_double(var(s0, sq0, n_off)),
                     wigner::io::format_double(var(s1, sq1, n_off))});
        csv.raw_row({"diag_mean", wigner::io::format_double(d0 / n_diag),
                     wigner::io::format_double(d1 / n_diag)});
        csv.raw_row({"diag_var",
                     wigner::io::format_double(var(d0, dq0, n_diag)),
                     wigner::io::format_double(var(d1, dq1, n_diag))});
        man.finish();
        return 0;
    }

    if (*c_rev) {
        Manifest man(rev_c.out, cfg_hash, rev_c.seed);
        wigner::HermiteDensity v = [&] {
            if (!rev_coeffs.empty()) return wigner::io::read_coeffs(rev_coeffs);
            std::vector<double> c(5, 0.0);
            c[0] = std::pow(M_PI, 0.25);
            c[2] = 0.2;
            c[4] = 0.05;
            return wigner::HermiteDensity(c);
        }();
        std::vector<double> ts(rev_points), chi(rev_points);
        for (int i = 0; i < rev_points; ++i) {
            ts[i] = rev_tmin * std::pow(rev_tmax / rev_tmin,
                                        static_cast<double>(i) /
                                            (rev_points - 1));
            chi[i] = wigner::reversal_error_chi2(v, ts[i], rev_m);
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < rev_points; ++i) {
            const double x = std::log(ts[i]), y = std::log(chi[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (rev_points * sxy - sx * sy) /
                             (rev_points * sxx - sx * sx);
        wigner::io::CsvWriter csv(rev_c.out.empty() ? "/dev/stdout" : rev_c.out);
        csv.meta("config_hash", wigner::io::hash_hex(cfg_hash));
        csv.meta("order", std::to_string(rev_m));
        csv.meta("loglog_slope", slope);
        csv.header({"t", "chi2"});
        for (int i = 0; i < rev_points; ++i) csv.row({ts[i], chi[i]});
        man.finish();
        return 0;
    }

    if (*c_ker) {
        Manifest man(ker_c.out, cfg_hash, ker_c.seed);
        wigner::KernelConfig cfg;
        cfg.u = ker_u;
        cfg.t = ker_t > 0.0
                    ? ker_t
                    : std::pow(static_cast<double>(ker_n), ker_lambda - 1.0);
        cfg.eta0 = ker_eta0;
        cfg.truncation = ker_trunc;
        cfg.quad_density = ker_dens;
        const wigner::SemicircleRef base{wigner::Convention::support1, 0.0};
        cfg.y = ker_y == "quantile"
                    ? wigner::semicircle_quantiles(ker_n, base)
                    : spectrum_of(ker_n, wigner::Convention::support1,
                                  "gaussian", 0.0, ker_c.seed);
        const auto taus = parse_sweep(ker_sweep);
        std::vector<std::array<double, 5>> rows(taus.size());
        parallel_for(static_cast<int>(taus.size()), ker_c.workers, [&](int i) {
            wigner::KernelConfig c = cfg;
            c.tau = taus[i];
            const auto v = wigner::eval_kernel(c);
            const double approx = wigner::saddle_approx_kernel(c);
            const double sinc = wigner::sine_kernel(taus[i]);
            rows[i] = {taus[i], v.value, approx, sinc,
                       std::abs(v.value - sinc)};
        });
        wigner::io::CsvWriter csv(ker_c.out.empty() ? "/dev/stdout" : ker_c.out);
        csv.meta("config_hash", wigner::io::hash_hex(cfg_hash));
        csv.meta("N", std::to_string(ker_n));
        csv.meta("t", cfg.t);
        csv.meta("u", ker_u);
        csv.header({"tau", "kernel", "saddle_approx", "sinc", "abs_error"});
        for (const auto& r : rows) {
            csv.row({r[0], r[1], r[2], r[3], r[4]});
        }
        man.finish();
        return 0;
    }

    if (*c_fred) {
        Manifest man(fred_c.out, cfg_hash, fred_c.seed);
        wigner::io::CsvWriter csv(fred_c.out.empty() ? "/dev/stdout"
                                                     : fred_c.out);
        csv.meta("config_hash", wigner::io::hash_hex(cfg_hash));
        csv.meta("order", std::to_string(fred_order));
        csv.header({"alpha", "det", "p", "int_p"});
        double cum = 0.0, prev_p = 0.0, prev_a = 0.0;
        for (double a = 0.0; a <= fred_max + 1e-12; a += fred_step) {
            const double det = wigner::fredholm_det(a, fred_order);
            const double p = a > 2e-3
                                 ? wigner::gap_density(a, fred_order)
                                 : M_PI * M_PI * a * a / 3.0;
            if (a > 0.0) cum += 0.5 * (p + prev_p) * (a - prev_a);
            csv.row({a, det, p, cum});
            prev_p = p;
            prev_a = a;
        }
        man.finish();
        return 0;
    }

    if (*c_gap) {
        Manifest man(gap_c.out, cfg_hash, gap_c.seed);
        const auto conv = wigner::convention_from_string(gap_conv);
        const wigner::SemicircleRef ref{conv, 0.0};
        std::vector<wigner::SpectralSample> specs(gap_m);
        parallel_for(gap_m, gap_c.workers, [&](int i) {
            specs[i] = spectrum_of(gap_n, conv, gap_law, gap_param,
                                   wigner::derive_seed(gap_c.seed, i));
        });
        wigner::io::CsvWriter csv(gap_c.out.empty() ? "/dev/stdout" : gap_c.out);
        csv.meta("config_hash", wigner::io::hash_hex(cfg_hash));
        csv.meta("N", std::to_string(gap_n));
        csv.meta("u", gap_u);
        csv.meta("delta", gap_delta);
        csv.header({"s", "lambda", "stderr", "samples"});
        for (double s : gap_s) {
            std::vector<wigner::GapEstimate> parts(gap_m);
            for (int i = 0; i < gap_m; ++i) {
                parts[i] =
                    wigner::gap_statistic(specs[i], ref, gap_u, s, gap_delta);
            }
            const auto agg = wigner::aggregate_gap_estimates(parts);
            csv.row({s, agg.value, agg.std_error,
                     static_cast<double>(agg.samples)});
        }
        man.finish();
        return 0;
    }

    if (*c_pc) {
        Manifest man(pc_c.out, cfg_hash, pc_c.seed);
        const auto conv = wigner::convention_from_string(pc_conv);
        const wigner::SemicircleRef ref{conv, 0.0};
        std::vector<wigner::SpectralSample> specs(pc_m);
        parallel_for(pc_m, pc_c.workers, [&](int i) {
            specs[i] = spectrum_of(pc_n, conv, pc_law, pc_param,
                                   wigner::derive_seed(pc_c.seed, i));
        });
        const auto est = wigner::pair_correlation_estimate(
            specs, ref, pc_u, pc_taumax, pc_bins, pc_half);
        wigner::io::CsvWriter csv(pc_c.out.empty() ? "/dev/stdout" : pc_c.out);
        csv.meta("config_hash", wigner::io::hash_hex(cfg_hash));
        csv.meta("N", std::to_string(pc_n));
        csv.meta("u", pc_u);
        csv.meta("total_pairs", static_cast<double>(est.total_pairs));
        csv.header({"tau_lo", "tau_hi", "density", "stderr", "counts"});
        for (int b = 0; b < pc_bins; ++b) {
            csv.row({est.edges[b], est.edges[b + 1], est.density[b],
                     est.std_error[b], static_cast<double>(est.counts[b])});
        }
        man.finish();
        return 0;
    }

    if (*c_cmp) {
        const Table a = read_table(cmp_a);
        const Table b = read_table(cmp_b);
        if (a.rows.size() != b.rows.size()) {
            throw std::invalid_argument("compare: row count mismatch");
        }
        double sup = 0.0;
        json rows = json::array();
        for (size_t i = 0; i < a.rows.size(); ++i) {
            if (std::abs(a.rows[i][0] - b.rows[i][0]) > 1e-12) {
                throw std::invalid_argument("compare: abscissae mismatch at row " +
                                            std::to_string(i));
            }
            const double dev =
                std::abs(a.rows[i][cmp_col_a] - b.rows[i][cmp_col_b]);
            sup = std::max(sup, dev);
            rows.push_back({{"x", a.rows[i][0]}, {"deviation", dev}});
        }
        const bool pass = sup <= cmp_tol;
        json doc{{"config_hash", wigner::io::hash_hex(cfg_hash)},
                 {"sup_deviation", sup},
                 {"tolerance", cmp_tol},
                 {"pass", pass},
                 {"rows", rows}};
        emit_json(cmp_c, doc);
        return pass ? 0 : 1;
    }

    return 64;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
}
