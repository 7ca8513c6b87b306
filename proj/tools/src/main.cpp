// bfringe: command-line front end. Every subcommand is seeded and writes
// CSV/JSON with the generating configuration embedded, so any run can be
// reproduced from its output alone.

#include <bfringe/analysis.hpp>
#include <bfringe/btree.hpp>
#include <bfringe/errors.hpp>
#include <bfringe/replacement.hpp>
#include <bfringe/spectral.hpp>
#include <bfringe/urn.hpp>
#include <bfringe/version.hpp>
#include <bfringe/wlimit.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace bfringe;

namespace {

std::string out_dir() {
    const char* env = std::getenv("BFRINGE_OUTDIR");
    return env != nullptr && *env != '\0' ? std::string(env) : std::string(".");
}

fs::path resolve_output(const std::string& flag, const std::string& fallback_name) {
    if (!flag.empty()) return fs::path(flag);
    return fs::path(out_dir()) / fallback_name;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open output file: " + path.string());
    f << text;
}

void print_summary(json j) {
    j["version"] = BFRINGE_VERSION;
    std::cout << j.dump() << "\n";
}

json rule_to_json(const ReplacementRule& r) {
    return json{{"m", r.m},
                {"algorithm", to_string(r.algorithm)},
                {"dim", r.dim},
                {"rows", r.rows},
                {"increments", r.increments},
                {"gap_diag", r.gap_diag},
                {"balance", r.balance}};
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CompositionVector parse_initial(const std::string& s, int dim) {
    CompositionVector v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stoll(tok));
    if (static_cast<int>(v.size()) != dim) {
        throw std::invalid_argument("--initial must have exactly dim = " + std::to_string(dim) +
                                    " entries");
    }
    return v;
}

// ---------------------------------------------------------------------------
// trajectory CSV
// ---------------------------------------------------------------------------

std::string trajectory_csv(const Trajectory& t, const std::string& coords, const json& meta) {
    const bool fringe = coords == "fringe";
    std::ostringstream os;
    os << "# " << meta.dump() << "\n";
    os << "n";
    for (int k = 1; k <= t.rule.dim; ++k) os << (fringe ? ",l" : ",g") << k;
    if (t.has_jump_times()) os << ",tau";
    os << "\n";
    for (std::size_t i = 0; i < t.record_n.size(); ++i) {
        os << t.record_n[i];
        const CompositionVector row =
            fringe ? gaps_to_fringe(t.rule, t.record_gaps[i]) : t.record_gaps[i];
        for (auto v : row) os << ',' << v;
        if (t.has_jump_times()) os << ',' << fmt_double(t.jump_times[i]);
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// subcommand state
// ---------------------------------------------------------------------------

struct Options {
    int m = 2;
    std::string algorithm = "optimistic";
    std::string engine = "urn";
    std::string coords = "gaps";
    std::string variant = "ct";
    std::string quantity = "sigma2";
    std::string name;
    std::string scale = "desk";
    std::string initial;
    std::string output;
    std::string samples_out;
    std::int64_t n_steps = 1000;
    std::uint64_t seed = 1;
    std::int64_t stride = 0;
    int from_m = 2, to_m = 100;
    int depth = 15;
    std::size_t samples = 10000;
    int iters = 40;
    int pmax = 12;
    int points = 400;
    std::size_t subsample = 256;
    int trace_stride = 1;
    double anchor_re = std::numeric_limits<double>::quiet_NaN();
    double anchor_im = 0.0;
};

std::optional<Complex> anchor_option(const Options& o) {
    if (std::isnan(o.anchor_re)) return std::nullopt;
    return Complex(o.anchor_re, o.anchor_im);
}

// ---------------------------------------------------------------------------
// command implementations
// ---------------------------------------------------------------------------

void cmd_rule(const Options& o) {
    const auto rule = make_rule(o.m, algorithm_from_string(o.algorithm));
    json payload = rule_to_json(rule);
    if (!o.output.empty()) {
        write_text(o.output, payload.dump(2) + "\n");
        print_summary({{"command", "rule"}, {"m", o.m}, {"algorithm", o.algorithm},
                       {"output", o.output}});
    } else {
        payload["command"] = "rule";
        print_summary(payload);
    }
}

json spectrum_payload(const SpectrumBundle& b) {
    json roots = json::array();
    for (const auto& r : b.roots) roots.push_back(complex_to_json(r));
    json j{{"m", b.m},
           {"lambda2", complex_to_json(b.lambda2)},
           {"sigma2", b.sigma2},
           {"tau2", b.tau2},
           {"max_dual_residual", b.max_dual_residual},
           {"roots", roots}};
    if (std::isnan(b.sigma3)) j["sigma3"] = nullptr; else j["sigma3"] = b.sigma3;
    return j;
}

void cmd_spectrum(const Options& o) {
    const auto b = compute_spectrum(o.m);
    json payload = spectrum_payload(b);
    if (!o.output.empty()) {
        write_text(o.output, payload.dump(2) + "\n");
        print_summary({{"command", "spectrum"}, {"m", o.m}, {"sigma2", b.sigma2},
                       {"tau2", b.tau2}, {"output", o.output}});
    } else {
        payload["command"] = "spectrum";
        print_summary(payload);
    }
}

void cmd_table(const Options& o) {
    if (o.from_m < 2 || o.to_m < o.from_m) {
        throw std::invalid_argument("table: need 2 <= from <= to");
    }
    std::ostringstream os;
    json meta{{"command", "table"}, {"quantity", o.quantity}, {"from", o.from_m},
              {"to", o.to_m}, {"version", BFRINGE_VERSION}};
    os << "# " << meta.dump() << "\n";
    os << "m," << o.quantity << "\n";
    for (int m = o.from_m; m <= o.to_m; ++m) {
        double value = 0.0;
        if (o.quantity == "sigma2" || o.quantity == "tau2") {
            if (m == 2) {
                // no nonreal root for m = 2; the second root is real
                value = o.quantity == "sigma2" ? -6.0 : 0.0;
            } else {
                const Complex l2 = lambda2_root(m);
                value = o.quantity == "sigma2" ? l2.real() : l2.imag();
            }
        } else if (o.quantity == "sigma3") {
            value = compute_spectrum(m).sigma3;
        } else {
            throw std::invalid_argument("table: unknown quantity " + o.quantity);
        }
        os << m << ',' << fmt_double(value) << "\n";
    }
    const auto path = resolve_output(o.output, "table_" + o.quantity + ".csv");
    write_text(path, os.str());
    print_summary({{"command", "table"}, {"quantity", o.quantity}, {"from", o.from_m},
                   {"to", o.to_m}, {"output", path.string()}});
}

Trajectory simulate_urn(const Options& o, const ReplacementRule& rule, std::int64_t stride) {
    CompositionVector init;
    if (!o.initial.empty()) {
        init = parse_initial(o.initial, rule.dim);
    } else {
        init.assign(static_cast<std::size_t>(rule.dim), 0);
        init[0] = rule.gap_diag[0];  // B-tree start: one type-1 fringe node
    }
    return run_trajectory(rule, std::move(init), o.n_steps, o.seed, stride);
}

Trajectory simulate_tree(const Options& o, const ReplacementRule& rule, std::int64_t stride) {
    if (!o.initial.empty()) {
        throw std::invalid_argument("simulate: --initial applies to the urn engine only");
    }
    BTree tree(o.m, rule.algorithm);
    auto rng = Xoshiro256pp::substream(o.seed, 0);
    for (int i = 0; i < o.m - 1; ++i) tree.insert_random(rng);

    // step index is aligned with the urn: n = key_count - (m-1)
    Trajectory t;
    t.rule = rule;
    t.initial.assign(static_cast<std::size_t>(rule.dim), 0);
    t.initial[0] = rule.gap_diag[0];
    t.seed = o.seed;
    t.stride = stride;
    t.n_steps = o.n_steps;
    t.record_n.push_back(0);
    t.record_gaps.push_back(tree.gap_composition());
    for (std::int64_t i = 1; i <= o.n_steps; ++i) {
        tree.insert_random(rng);
        if (i % stride == 0 || i == o.n_steps) {
            t.record_n.push_back(i);
            t.record_gaps.push_back(tree.gap_composition());
        }
    }
    return t;
}

void cmd_simulate(const Options& o) {
    const auto rule = make_rule(o.m, algorithm_from_string(o.algorithm));
    const std::int64_t stride = o.stride > 0 ? o.stride : std::max<std::int64_t>(1, o.n_steps / 1000);
    const Trajectory t = o.engine == "tree" ? simulate_tree(o, rule, stride)
                                            : simulate_urn(o, rule, stride);
    json meta{{"command", "simulate"}, {"m", o.m}, {"algorithm", o.algorithm},
              {"engine", o.engine}, {"coords", o.coords}, {"n", o.n_steps},
              {"seed", o.seed}, {"stride", stride}, {"initial", t.initial},
              {"version", BFRINGE_VERSION}};
    const auto path = resolve_output(o.output, "trajectory_m" + std::to_string(o.m) + "_" +
                                                   o.engine + "_seed" + std::to_string(o.seed) +
                                                   ".csv");
    write_text(path, trajectory_csv(t, o.coords, meta));
    print_summary({{"command", "simulate"}, {"m", o.m}, {"engine", o.engine},
                   {"n", o.n_steps}, {"seed", o.seed}, {"output", path.string()}});
}

void cmd_embed(const Options& o) {
    const auto rule = make_rule(o.m, algorithm_from_string(o.algorithm));
    const std::int64_t stride = o.stride > 0 ? o.stride : std::max<std::int64_t>(1, o.n_steps / 1000);
    Trajectory t = simulate_urn(o, rule, stride);
    t = embed_continuous(t, o.seed);
    json meta{{"command", "embed"}, {"m", o.m}, {"algorithm", o.algorithm},
              {"coords", o.coords}, {"n", o.n_steps}, {"seed", o.seed},
              {"stride", stride}, {"initial", t.initial}, {"version", BFRINGE_VERSION}};
    const auto path = resolve_output(o.output, "embedded_m" + std::to_string(o.m) + "_seed" +
                                                   std::to_string(o.seed) + ".csv");
    write_text(path, trajectory_csv(t, o.coords, meta));
    json summary{{"command", "embed"}, {"m", o.m}, {"n", o.n_steps}, {"seed", o.seed},
                 {"output", path.string()}};
    if (t.record_n.back() >= 1000) summary["xi_hat"] = estimate_xi(t);
    print_summary(summary);
}

ProjectionSeries project_run(const Options& o, SpectrumBundle& spec_out) {
    const auto rule = make_rule(o.m, Algorithm::optimistic);
    spec_out = compute_spectrum(o.m);
    CompositionVector init(static_cast<std::size_t>(rule.dim), 0);
    init[0] = rule.gap_diag[0];
    const double ratio = std::pow(static_cast<double>(std::max<std::int64_t>(o.n_steps, 2)),
                                  1.0 / std::max(2, o.points));
    auto cps = log_spaced_checkpoints(o.n_steps, std::max(1.0005, ratio));
    const Trajectory t = run_trajectory_at(rule, std::move(init), o.n_steps, o.seed, cps);
    return project_W(t, spec_out);
}

void cmd_project(const Options& o) {
    SpectrumBundle spec;
    const ProjectionSeries series = project_run(o, spec);
    std::ostringstream os;
    json meta{{"command", "project"}, {"m", o.m}, {"n", o.n_steps}, {"seed", o.seed},
              {"points", o.points}, {"version", BFRINGE_VERSION}};
    os << "# " << meta.dump() << "\n";
    os << "n,re_w,im_w,drift_err\n";
    for (std::size_t i = 0; i < series.n.size(); ++i) {
        os << series.n[i] << ',' << fmt_double(series.w[i].real()) << ','
           << fmt_double(series.w[i].imag()) << ',' << fmt_double(series.drift_error[i]) << "\n";
    }
    const auto path = resolve_output(o.output, "projection_m" + std::to_string(o.m) + "_seed" +
                                                   std::to_string(o.seed) + ".csv");
    write_text(path, os.str());
    print_summary({{"command", "project"}, {"m", o.m}, {"n", o.n_steps}, {"seed", o.seed},
                   {"output", path.string()}});
}

void cmd_fit(const Options& o) {
    SpectrumBundle spec;
    const ProjectionSeries series = project_run(o, spec);
    const OscillationFit fit = oscillation_fit(series);
    print_summary({{"command", "fit"}, {"m", o.m}, {"n", o.n_steps}, {"seed", o.seed},
                   {"rho", fit.rho}, {"phi", fit.phi}, {"residual", fit.residual},
                   {"sigma2", spec.sigma2}, {"tau2", spec.tau2}});
}

void cmd_cascade(const Options& o) {
    const Complex lambda = lambda2_root(o.m);
    const auto set = cascade_sample(wvariant_from_string(o.variant), o.m, lambda, o.depth,
                                    o.samples, o.seed, anchor_option(o));
    std::ostringstream os;
    json meta{{"command", "cascade"}, {"variant", o.variant}, {"m", o.m},
              {"depth", o.depth}, {"samples", o.samples}, {"seed", o.seed},
              {"anchor", complex_to_json(set.anchor)}, {"version", BFRINGE_VERSION}};
    os << "# " << meta.dump() << "\n";
    os << "re,im\n";
    for (const Complex& y : set.samples) {
        os << fmt_double(y.real()) << ',' << fmt_double(y.imag()) << "\n";
    }
    const auto path = resolve_output(o.output, "cascade_" + o.variant + "_m" +
                                                   std::to_string(o.m) + "_seed" +
                                                   std::to_string(o.seed) + ".csv");
    write_text(path, os.str());
    print_summary({{"command", "cascade"}, {"variant", o.variant}, {"m", o.m},
                   {"depth", o.depth}, {"samples", o.samples}, {"seed", o.seed},
                   {"mean", complex_to_json(set.mean)},
                   {"variance", set.variance},
                   {"predicted_variance_at_depth", set.predicted_variance_at_depth},
                   {"predicted_variance_limit", set.predicted_variance_limit},
                   {"truncation_l2",
                    set.predicted_variance_limit - set.predicted_variance_at_depth},
                   {"output", path.string()}});
}

void cmd_moments(const Options& o) {
    const Complex lambda = lambda2_root(o.m);
    const WVariant variant = wvariant_from_string(o.variant);
    const Complex anchor = anchor_option(o).value_or(default_anchor(variant, o.m, lambda));
    const MomentTable t = moments_W(variant, o.m, lambda, anchor, o.pmax);
    json arr = json::array();
    for (std::size_t p = 0; p < t.mu.size(); ++p) {
        arr.push_back({{"p", p}, {"re", t.mu[p].real()}, {"im", t.mu[p].imag()}});
    }
    json payload{{"command", "moments"}, {"variant", o.variant}, {"m", o.m},
                 {"lambda", complex_to_json(lambda)}, {"anchor", complex_to_json(anchor)},
                 {"moments", arr}};
    if (!o.output.empty()) {
        write_text(o.output, payload.dump(2) + "\n");
        print_summary({{"command", "moments"}, {"m", o.m}, {"variant", o.variant},
                       {"pmax", o.pmax}, {"output", o.output}});
    } else {
        print_summary(payload);
    }
}

void cmd_fixpoint(const Options& o) {
    const Complex lambda = lambda2_root(o.m);
    const WVariant variant = wvariant_from_string(o.variant);
    const Complex anchor = anchor_option(o).value_or(default_anchor(variant, o.m, lambda));
    FixpointOptions fo;
    fo.wass_subsample = o.subsample;
    fo.trace_stride = o.trace_stride;
    const FixpointResult r = fixpoint_iterate(variant, o.m, lambda, anchor, o.samples,
                                              o.iters, o.seed, fo);
    if (!o.samples_out.empty()) {
        std::ostringstream os;
        json meta{{"command", "fixpoint"}, {"variant", o.variant}, {"m", o.m},
                  {"samples", o.samples}, {"iters", o.iters}, {"seed", o.seed},
                  {"version", BFRINGE_VERSION}};
        os << "# " << meta.dump() << "\n" << "re,im\n";
        for (const Complex& y : r.samples.samples) {
            os << fmt_double(y.real()) << ',' << fmt_double(y.imag()) << "\n";
        }
        write_text(o.samples_out, os.str());
    }
    print_summary({{"command", "fixpoint"}, {"variant", o.variant}, {"m", o.m},
                   {"samples", o.samples}, {"iters", o.iters}, {"seed", o.seed},
                   {"contraction_bound", r.contraction_bound},
                   {"distance_trace", r.distance_trace},
                   {"mean", complex_to_json(r.samples.mean)},
                   {"second_abs_moment", r.samples.second_abs_moment},
                   {"exact_second_abs_moment",
                    second_abs_moment_exact(variant, o.m, lambda, anchor)}});
}

void cmd_laplace_check(const Options& o) {
    const Complex lambda = lambda2_root(o.m);
    const auto residuals = laplace_residual(o.m, lambda, o.pmax);
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    print_summary({{"command", "laplace-check"}, {"m", o.m}, {"pmax", o.pmax},
                   {"lambda", complex_to_json(lambda)}, {"max_residual", worst},
                   {"residuals", residuals}});
}

void cmd_figure(const Options& o, bool n_overridden) {
    const bool drift = o.name == "drift-small" || o.name == "drift-large";
    const bool scaled = o.name == "scaled-small" || o.name == "scaled-large";
    if (!drift && !scaled) {
        throw std::invalid_argument("figure: unknown name " + o.name +
                                    " (drift-small|drift-large|scaled-small|scaled-large)");
    }
    const bool large = o.name == "drift-large" || o.name == "scaled-large";
    const std::vector<int> ms = large ? std::vector<int>{65, 100, 237}
                                      : std::vector<int>{10, 30, 55};
    std::int64_t n = o.scale == "full" ? 10000000 : 100000;
    if (n_overridden) n = o.n_steps;
    json files = json::array();
    for (std::size_t idx = 0; idx < ms.size(); ++idx) {
        const int m = ms[idx];
        const auto rule = make_rule(m, Algorithm::optimistic);
        CompositionVector init(static_cast<std::size_t>(rule.dim), 0);
        init[0] = rule.gap_diag[0];
        const std::int64_t stride = std::max<std::int64_t>(1, n / 2000);
        const std::uint64_t seed = o.seed + idx;
        const Trajectory t = run_trajectory(rule, std::move(init), n, seed, stride);

        // recorded coordinates: types 1, floor(m/2) and m
        const int mid = m / 2;
        std::ostringstream os;
        json meta{{"command", "figure"}, {"name", o.name}, {"m", m}, {"n", n},
                  {"seed", seed}, {"stride", stride}, {"coordinates", {1, mid, m}},
                  {"version", BFRINGE_VERSION}};
        os << "# " << meta.dump() << "\n";
        if (drift) {
            os << "n,g1,gmid,gm\n";
            for (std::size_t i = 0; i < t.record_n.size(); ++i) {
                const auto& g = t.record_gaps[i];
                os << t.record_n[i] << ',' << g[0] << ',' << g[static_cast<std::size_t>(mid - 1)]
                   << ',' << g[static_cast<std::size_t>(m - 1)] << "\n";
            }
        } else {
            const auto spec = compute_spectrum(m);
            const double exponent = large ? spec.sigma2 : 0.5;
            os << "n,x_scaled\n";
            for (std::size_t i = 0; i < t.record_n.size(); ++i) {
                if (t.record_n[i] < 1) continue;
                const double nn = static_cast<double>(t.record_n[i]);
                const double x = (static_cast<double>(
                                      t.record_gaps[i][static_cast<std::size_t>(mid - 1)]) -
                                  nn * spec.v1[static_cast<std::size_t>(mid - 1)]) /
                                 std::pow(nn, exponent);
                os << t.record_n[i] << ',' << fmt_double(x) << "\n";
            }
        }
        const fs::path path = fs::path(out_dir()) /
                              (o.name + "_m" + std::to_string(m) + ".csv");
        write_text(path, os.str());
        files.push_back(path.string());
    }
    print_summary({{"command", "figure"}, {"name", o.name}, {"scale", o.scale},
                   {"n", n}, {"seed", o.seed}, {"outputs", files}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"B-tree fringe dynamics as Polya urns: simulators, spectral data, "
                 "and the complex limit law"};
    app.require_subcommand(1);
    Options o;

    auto add_m = [&](CLI::App* c) { c->add_option("--m", o.m, "B-tree parameter (>= 2)"); };

    auto* c_rule = app.add_subcommand("rule", "print a replacement rule as JSON");
    add_m(c_rule);
    c_rule->add_option("--algorithm", o.algorithm, "optimistic|prudent");
    c_rule->add_option("-o,--output", o.output, "output file (default: stdout)");

    auto* c_spec = app.add_subcommand("spectrum", "spectral data for one m as JSON");
    add_m(c_spec);
    c_spec->add_option("-o,--output", o.output, "output file (default: stdout)");

    auto* c_table = app.add_subcommand("table", "CSV table of a spectral quantity over m");
    c_table->add_option("--quantity", o.quantity, "sigma2|tau2|sigma3");
    c_table->add_option("--from", o.from_m, "first m");
    c_table->add_option("--to", o.to_m, "last m");
    c_table->add_option("-o,--output", o.output, "output CSV");

    auto* c_sim = app.add_subcommand("simulate", "run the urn chain or the B-tree simulator");
    add_m(c_sim);
    c_sim->add_option("--algorithm", o.algorithm, "optimistic|prudent");
    c_sim->add_option("--engine", o.engine, "urn|tree");
    c_sim->add_option("--n", o.n_steps, "number of insertions");
    c_sim->add_option("--seed", o.seed, "master seed");
    c_sim->add_option("--stride", o.stride, "record every stride steps (default n/1000)");
    c_sim->add_option("--coords", o.coords, "gaps|fringe");
    c_sim->add_option("--initial", o.initial, "initial gap composition, comma separated");
    c_sim->add_option("-o,--output", o.output, "output CSV");

    auto* c_embed = app.add_subcommand("embed",
                                       "urn trajectory with continuous-time jump instants");
    add_m(c_embed);
    c_embed->add_option("--algorithm", o.algorithm, "optimistic|prudent");
    c_embed->add_option("--n", o.n_steps, "number of insertions");
    c_embed->add_option("--seed", o.seed, "master seed");
    c_embed->add_option("--stride", o.stride, "record stride");
    c_embed->add_option("--coords", o.coords, "gaps|fringe");
    c_embed->add_option("--initial", o.initial, "initial gap composition");
    c_embed->add_option("-o,--output", o.output, "output CSV");

    auto* c_proj = app.add_subcommand("project", "W_n series and drift errors (optimistic urn)");
    add_m(c_proj);
    c_proj->add_option("--n", o.n_steps, "number of insertions");
    c_proj->add_option("--seed", o.seed, "master seed");
    c_proj->add_option("--points", o.points, "approximate number of log-spaced records");
    c_proj->add_option("-o,--output", o.output, "output CSV");

    auto* c_fit = app.add_subcommand("fit", "oscillation fit over the last decade (m >= 60)");
    add_m(c_fit);
    c_fit->add_option("--n", o.n_steps, "number of insertions");
    c_fit->add_option("--seed", o.seed, "master seed");
    c_fit->add_option("--points", o.points, "approximate number of log-spaced records");

    auto* c_casc = app.add_subcommand("cascade", "cascade samples of the limit law W");
    add_m(c_casc);
    c_casc->add_option("--variant", o.variant, "ct|dt");
    c_casc->add_option("--depth", o.depth, "cascade depth");
    c_casc->add_option("--samples", o.samples, "number of samples");
    c_casc->add_option("--seed", o.seed, "master seed");
    c_casc->add_option("--anchor-re", o.anchor_re, "anchor real part (default per variant)");
    c_casc->add_option("--anchor-im", o.anchor_im, "anchor imaginary part");
    c_casc->add_option("-o,--output", o.output, "output CSV of re,im samples");

    auto* c_mom = app.add_subcommand("moments", "analytic moment table of W");
    add_m(c_mom);
    c_mom->add_option("--variant", o.variant, "ct|dt");
    c_mom->add_option("--pmax", o.pmax, "highest moment order");
    c_mom->add_option("--anchor-re", o.anchor_re, "anchor real part (default per variant)");
    c_mom->add_option("--anchor-im", o.anchor_im, "anchor imaginary part");
    c_mom->add_option("-o,--output", o.output, "output JSON");

    auto* c_fix = app.add_subcommand("fixpoint", "Wasserstein fixed-point iteration");
    add_m(c_fix);
    c_fix->add_option("--variant", o.variant, "ct|dt");
    c_fix->add_option("--samples", o.samples, "particles per iterate");
    c_fix->add_option("--iters", o.iters, "iterations");
    c_fix->add_option("--seed", o.seed, "master seed");
    c_fix->add_option("--subsample", o.subsample, "points per W2 evaluation (<= 2000)");
    c_fix->add_option("--trace-stride", o.trace_stride, "W2 every this many iterations");
    c_fix->add_option("--anchor-re", o.anchor_re, "anchor real part (default per variant)");
    c_fix->add_option("--anchor-im", o.anchor_im, "anchor imaginary part");
    c_fix->add_option("--samples-out", o.samples_out, "also write final samples CSV here");

    auto* c_lap = app.add_subcommand("laplace-check", "residuals of the transform system");
    add_m(c_lap);
    c_lap->add_option("--pmax", o.pmax, "series truncation order");

    auto* c_fig = app.add_subcommand("figure", "batch runs reproducing a figure family");
    c_fig->add_option("--name", o.name, "drift-small|drift-large|scaled-small|scaled-large")
        ->required();
    c_fig->add_option("--scale", o.scale, "desk (n=1e5) | full (n=1e7)");
    auto* fig_n = c_fig->add_option("--n", o.n_steps, "explicit n override");
    c_fig->add_option("--seed", o.seed, "master seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_rule->parsed()) cmd_rule(o);
        else if (c_spec->parsed()) cmd_spectrum(o);
        else if (c_table->parsed()) cmd_table(o);
        else if (c_sim->parsed()) cmd_simulate(o);
        else if (c_embed->parsed()) cmd_embed(o);
        else if (c_proj->parsed()) cmd_project(o);
        else if (c_fit->parsed()) cmd_fit(o);
        else if (c_casc->parsed()) cmd_cascade(o);
        else if (c_mom->parsed()) cmd_moments(o);
        else if (c_fix->parsed()) cmd_fixpoint(o);
        else if (c_lap->parsed()) cmd_laplace_check(o);
        else if (c_fig->parsed()) cmd_figure(o, fig_n->count() > 0);
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
