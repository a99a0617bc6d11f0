// Command-line front end: simulate, fit, roc, bench, replay.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <sns/bench.hpp>
#include <sns/evaluation.hpp>
#include <sns/io.hpp>
#include <sns/jgl.hpp>
#include <sns/parallel.hpp>
#include <sns/pipeline.hpp>
#include <sns/rng.hpp>
#include <sns/simulation.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* tool_version = "1.0.0";

struct Run
{
    std::string command;
    std::vector<std::string> argv;  // recorded arguments without --out-dir
    json config = json::object();
    std::vector<fs::path> inputs;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::size_t unconverged = 0;
};

void write_manifest(const fs::path& dir, const Run& run)
{
    json m;
    m["tool"] = "sns";
    m["version"] = tool_version;
    m["command"] = run.command;
    m["argv"] = run.argv;
    m["cwd"] = fs::current_path().string();
    m["config"] = run.config;
    m["seed"] = run.config.contains("seed") ? run.config["seed"] : json(nullptr);
    m["prng"] = std::string(sns::CounterRng::algorithm_id);
    json inputs = json::array();
    for (const auto& p : run.inputs) {
        inputs.push_back({{"path", fs::absolute(p).string()}, {"fnv1a64", sns::io::file_digest(p)}});
    }
    m["inputs"] = inputs;
    m["outputs"] = run.outputs;
    m["unconverged_solves"] = run.unconverged;
    m["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - run.start).count();

    std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    if (!out) throw sns::Error(sns::ErrorCode::IoError, "cannot write " + (dir / "manifest.json").string());
    out << m.dump(2) << '\n';
}

void prepare_out_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw sns::Error(sns::ErrorCode::IoError, "cannot create output directory " + dir.string() + ": " +
                                                      ec.message());
    }
}

std::vector<sns::DataMatrix> load_standardized(const std::vector<fs::path>& files)
{
    std::vector<sns::DataMatrix> data;
    for (const auto& f : files) {
        try {
            data.push_back(sns::center_scale(sns::io::read_matrix_csv(f)));
        } catch (const sns::ZeroVarianceColumn& e) {
            throw sns::Error(sns::ErrorCode::ZeroVarianceColumn,
                             f.string() + ": column " + std::to_string(e.column() + 1) + " is constant");
        }
        if (data.back().cols() != data.front().cols()) {
            throw sns::Error(sns::ErrorCode::DimensionError,
                             f.string() + " has " + std::to_string(data.back().cols()) + " columns, expected " +
                                 std::to_string(data.front().cols()));
        }
    }
    return data;
}

std::string indexed(const std::string& stem, std::size_t k)
{
    return stem + "_" + std::to_string(k + 1) + ".csv";
}

std::vector<std::string> column_header(sns::Index p)
{
    std::vector<std::string> h;
    for (sns::Index j = 0; j < p; ++j) h.push_back("V" + std::to_string(j + 1));
    return h;
}

sns::EdgeRule parse_rule(const std::string& s)
{
    if (s == "and") return sns::EdgeRule::And;
    if (s == "or") return sns::EdgeRule::Or;
    throw sns::Error(sns::ErrorCode::UsageError, "edge rule must be 'and' or 'or'");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs
{
    sns::Index p = 0;
    int k = 2;
    sns::Index n = 0;
    double s = 0.0;
    double rho = 0.0;
    std::uint64_t seed = 0;
    fs::path out_dir;
};

int cmd_simulate(const SimulateArgs& a, Run& run)
{
    const sns::SimulationSpec spec{a.p, a.k, a.n, a.s, a.rho, a.seed};
    sns::validate(spec);
    if (a.n < 2) throw sns::Error(sns::ErrorCode::InfeasibleSpec, "n must be at least 2");
    run.config = {{"p", a.p}, {"k", a.k}, {"n", a.n}, {"s", a.s}, {"rho", a.rho}, {"seed", a.seed}};

    const sns::GroundTruth truth = sns::simulate_truth(spec);
    const std::vector<sns::Matrix> data = sns::simulate_data(spec, truth);
    prepare_out_dir(a.out_dir);
    for (std::size_t k = 0; k < truth.K(); ++k) {
        sns::io::write_matrix_csv(a.out_dir / indexed("data", k), data[k], column_header(a.p));
        sns::io::write_edges_csv(a.out_dir / indexed("truth_edges", k), truth.edges[k]);
        sns::io::write_matrix_csv(a.out_dir / indexed("omega", k), truth.precision[k]);
        run.outputs.insert(run.outputs.end(),
                           {indexed("data", k), indexed("truth_edges", k), indexed("omega", k)});
    }
    write_manifest(a.out_dir, run);
    return 0;
}

// ---------------------------------------------------------------- fit

struct SolverArgs
{
    double b = 1.0;
    double tol = 1e-6;
    int max_iter = 10000;

    sns::AdmmOptions admm() const { return {b, tol, tol, max_iter, 10.0}; }
    sns::GlassoOptions glasso() const { return {b, tol, tol, max_iter}; }
    json to_json() const { return {{"b", b}, {"tol", tol}, {"max_iter", max_iter}}; }
};

struct FitArgs
{
    std::string method = "sns";
    double lambda = 0.0;
    double lambda_init = 0.05;
    std::string edge_rule = "and";
    int lla_steps = 1;
    std::vector<std::string> data;
    fs::path out_dir;
    SolverArgs solver;
};

int cmd_fit(const FitArgs& a, unsigned threads, Run& run)
{
    const sns::EdgeRule rule = parse_rule(a.edge_rule);
    run.config = {{"method", a.method},       {"lambda", a.lambda},   {"lambda_init", a.lambda_init},
                  {"edge_rule", a.edge_rule}, {"lla_steps", a.lla_steps}, {"data", a.data},
                  {"solver", a.solver.to_json()}};
    for (const auto& d : a.data) run.inputs.emplace_back(d);
    const auto data = load_standardized(run.inputs);

    sns::FitResult fit;
    if (a.method == "sns") {
        sns::SnsConfig cfg;
        cfg.lambda = a.lambda;
        cfg.lambda_init = a.lambda_init;
        cfg.lla_steps = a.lla_steps;
        cfg.edge_rule = rule;
        cfg.solver = a.solver.admm();
        cfg.threads = threads;
        fit = sns::sns_fit(data, cfg);
    } else if (a.method == "ins") {
        fit = sns::ins_fit(data, a.lambda, a.solver.admm(), threads);
    } else if (a.method == "jgl" || a.method == "igl") {
        sns::JglConfig cfg;
        cfg.lambda_init = a.lambda_init;
        cfg.lla_weighted = a.method == "jgl";
        cfg.solver = a.solver.glasso();
        cfg.init_solver = a.solver.admm();
        cfg.threads = threads;
        fit = sns::jgl_pipeline(data, a.lambda, cfg);
    } else {
        throw sns::Error(sns::ErrorCode::UsageError, "unknown method '" + a.method + "'");
    }

    prepare_out_dir(a.out_dir);
    const bool precision = a.method == "jgl" || a.method == "igl";
    const sns::MultiEdgeSet edges = sns::assemble_edges(fit.coefficients, rule);
    for (std::size_t k = 0; k < data.size(); ++k) {
        sns::io::write_edges_csv(a.out_dir / indexed("edges", k), edges.sets[k]);
        const std::string coef = indexed(precision ? "precision" : "theta", k);
        sns::io::write_matrix_csv(a.out_dir / coef, fit.coefficients.theta[k]);
        run.outputs.insert(run.outputs.end(), {indexed("edges", k), coef});
    }
    for (const auto& s : fit.stats) run.unconverged += s.converged ? 0 : 1;
    write_manifest(a.out_dir, run);
    return run.unconverged == 0 ? 0 : static_cast<int>(sns::ErrorCode::NotConverged);
}

// ---------------------------------------------------------------- roc

struct RocArgs
{
    std::string truth_dir;
    std::vector<std::string> methods{"sns", "ins"};
    double grid_start = 1e-5;
    double grid_end = 1.0;
    int grid_points = 100;
    int replicates = 5;
    std::uint64_t seed = 0;
    sns::Index p = 100;
    int k = 2;
    sns::Index n = 100;
    double s = 5e-3;
    double rho = 0.0;
    double lambda_init = 0.05;
    std::string edge_rule = "and";
    fs::path out_dir;
    SolverArgs solver;
};

struct Replicate
{
    sns::GroundTruth truth;
    std::vector<sns::DataMatrix> data;
};

Replicate load_truth_dir(const fs::path& dir, Run& run)
{
    Replicate rep;
    std::vector<fs::path> data_files;
    for (std::size_t k = 0;; ++k) {
        const fs::path data_file = dir / indexed("data", k);
        const fs::path omega_file = dir / indexed("omega", k);
        if (!fs::exists(data_file)) break;
        data_files.push_back(data_file);
        run.inputs.push_back(data_file);
        run.inputs.push_back(omega_file);
        rep.truth.precision.push_back(sns::io::read_matrix_csv(omega_file));
        rep.truth.edges.push_back(sns::support_edges(rep.truth.precision.back()));
    }
    if (data_files.empty()) {
        throw sns::Error(sns::ErrorCode::IoError, "no data_1.csv found in " + dir.string());
    }
    rep.truth.p = rep.truth.precision.front().rows();
    rep.data = load_standardized(data_files);
    if (rep.data.front().cols() != rep.truth.p) {
        throw sns::Error(sns::ErrorCode::DimensionError, "data and precision files disagree on p");
    }
    return rep;
}

sns::EdgeEstimator make_estimator(const std::string& method, const Replicate& rep, const RocArgs& a,
                                  sns::EdgeRule rule, unsigned threads, std::size_t& unconverged,
                                  std::vector<std::shared_ptr<void>>& keep_alive)
{
    const sns::AdmmOptions opt = a.solver.admm();
    auto count = [&unconverged](const sns::FitResult& f) {
        for (const auto& s : f.stats) unconverged += s.converged ? 0 : 1;
    };
    if (method == "oracle") {
        return [&rep](double) { return sns::MultiEdgeSet{rep.truth.p, rep.truth.edges}; };
    }
    if (method == "ins" || method == "sns") {
        auto engine = std::make_shared<sns::NeighborhoodSelection>(rep.data, opt.b, threads);
        keep_alive.push_back(engine);
        if (method == "ins") {
            return [engine, opt, rule, count](double lambda) {
                const auto f = engine->individual(lambda, opt);
                count(f);
                return sns::assemble_edges(f.coefficients, rule);
            };
        }
        auto init = std::make_shared<sns::FitResult>(engine->individual(a.lambda_init, opt));
        count(*init);
        keep_alive.push_back(init);
        return [engine, init, opt, rule, count](double lambda) {
            sns::SnsConfig cfg;
            cfg.lambda = lambda;
            cfg.solver = opt;
            const auto f = engine->simultaneous(cfg, init->coefficients);
            count(f);
            return sns::assemble_edges(f.coefficients, rule);
        };
    }
    if (method == "jgl" || method == "igl") {
        sns::JglConfig cfg;
        cfg.lambda_init = a.lambda_init;
        cfg.lla_weighted = method == "jgl";
        cfg.solver = a.solver.glasso();
        cfg.init_solver = opt;
        cfg.threads = threads;
        auto baseline = std::make_shared<sns::GraphicalLassoBaseline>(rep.data, cfg);
        keep_alive.push_back(baseline);
        return [baseline, rule, count](double lambda) {
            const auto f = baseline->fit(lambda);
            count(f);
            return sns::assemble_edges(f.coefficients, rule);
        };
    }
    throw sns::Error(sns::ErrorCode::UsageError, "unknown method '" + method + "'");
}

int cmd_roc(const RocArgs& a, unsigned threads, Run& run)
{
    const sns::EdgeRule rule = parse_rule(a.edge_rule);
    const std::vector<double> grid = sns::linear_grid(a.grid_start, a.grid_end, a.grid_points);
    run.config = {{"methods", a.methods},         {"grid_start", a.grid_start}, {"grid_end", a.grid_end},
                  {"grid_points", a.grid_points}, {"lambda_init", a.lambda_init}, {"edge_rule", a.edge_rule},
                  {"solver", a.solver.to_json()}};

    std::vector<Replicate> reps;
    if (!a.truth_dir.empty()) {
        run.config["truth_dir"] = fs::absolute(a.truth_dir).string();
        run.config["replicates"] = 1;
        reps.push_back(load_truth_dir(a.truth_dir, run));
    } else {
        if (a.replicates < 1) throw sns::Error(sns::ErrorCode::UsageError, "replicates must be positive");
        run.config.update({{"p", a.p}, {"k", a.k}, {"n", a.n}, {"s", a.s}, {"rho", a.rho},
                           {"replicates", a.replicates}, {"seed", a.seed}});
        for (int r = 0; r < a.replicates; ++r) {
            const sns::SimulationSpec spec{a.p, a.k, a.n, a.s, a.rho,
                                           sns::CounterRng::derive(a.seed, static_cast<std::uint64_t>(r))};
            Replicate rep;
            rep.truth = sns::simulate_truth(spec);
            for (const auto& x : sns::simulate_data(spec, rep.truth)) rep.data.push_back(sns::center_scale(x));
            reps.push_back(std::move(rep));
        }
    }

    prepare_out_dir(a.out_dir);
    std::ofstream roc(a.out_dir / "roc.csv", std::ios::binary | std::ios::trunc);
    std::ofstream auc(a.out_dir / "auc.csv", std::ios::binary | std::ios::trunc);
    if (!roc || !auc) throw sns::Error(sns::ErrorCode::IoError, "cannot write ROC outputs in " + a.out_dir.string());
    roc << "lambda,afpr,atpr,method,replicate\n";
    auc << "method,replicate,auc\n";
    using sns::io::format_double;

    for (const auto& method : a.methods) {
        std::vector<sns::RocCurve> curves;
        for (std::size_t r = 0; r < reps.size(); ++r) {
            std::vector<std::shared_ptr<void>> keep_alive;
            const auto estimator = make_estimator(method, reps[r], a, rule, threads, run.unconverged, keep_alive);
            curves.push_back(sns::roc_curve(reps[r].truth, estimator, grid));
            const auto& c = curves.back();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                roc << format_double(grid[i]) << ',' << format_double(c.points[i].afpr) << ','
                    << format_double(c.points[i].atpr) << ',' << method << ',' << r + 1 << '\n';
            }
            auc << method << ',' << r + 1 << ',' << format_double(c.auc) << '\n';
        }
        const sns::RocCurve mean = sns::average_roc(curves);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            roc << format_double(grid[i]) << ',' << format_double(mean.points[i].afpr) << ','
                << format_double(mean.points[i].atpr) << ',' << method << ",mean\n";
        }
        auc << method << ",mean," << format_double(mean.auc) << '\n';
        std::cout << method << " mean AUC " << format_double(mean.auc) << '\n';
    }
    if (!roc || !auc) throw sns::Error(sns::ErrorCode::IoError, "failed writing ROC outputs");
    run.outputs = {"roc.csv", "auc.csv"};
    write_manifest(a.out_dir, run);
    return run.unconverged == 0 ? 0 : static_cast<int>(sns::ErrorCode::NotConverged);
}

// ---------------------------------------------------------------- bench

struct BenchArgs
{
    std::vector<sns::Index> p_list{64, 128, 256, 512};
    sns::Index n = 100;
    int k = 2;
    std::uint64_t seed = 0;
    double b = 1.0;
    fs::path out_dir;
};

int cmd_bench(const BenchArgs& a, Run& run)
{
    run.config = {{"p_list", a.p_list}, {"n", a.n}, {"k", a.k}, {"seed", a.seed}, {"b", a.b}};
    prepare_out_dir(a.out_dir);
    std::ofstream out(a.out_dir / "bench.csv", std::ios::binary | std::ios::trunc);
    if (!out) throw sns::Error(sns::ErrorCode::IoError, "cannot write bench.csv");
    out << "p,n,method,seconds_per_iter\n";

    std::vector<double> ps, sns_t, jgl_t;
    for (const auto p : a.p_list) {
        const sns::BenchRecord r = sns::bench_iteration(p, a.n, a.k, a.seed, a.b);
        out << p << ',' << a.n << ",sns," << sns::io::format_double(r.sns_iter_seconds) << '\n';
        out << p << ',' << a.n << ",jgl," << sns::io::format_double(r.jgl_iter_seconds) << '\n';
        std::cout << "p=" << p << " sns " << r.sns_iter_seconds << " s/iter, jgl " << r.jgl_iter_seconds
                  << " s/iter\n";
        ps.push_back(static_cast<double>(p));
        sns_t.push_back(r.sns_iter_seconds);
        jgl_t.push_back(r.jgl_iter_seconds);
    }
    run.outputs = {"bench.csv"};
    if (ps.size() >= 2) {
        std::ofstream slopes(a.out_dir / "bench_slopes.csv", std::ios::binary | std::ios::trunc);
        const double s1 = sns::loglog_slope(ps, sns_t);
        const double s2 = sns::loglog_slope(ps, jgl_t);
        slopes << "method,loglog_slope\nsns," << sns::io::format_double(s1) << "\njgl,"
               << sns::io::format_double(s2) << '\n';
        std::cout << "log-log slope: sns " << s1 << ", jgl " << s2 << '\n';
        run.outputs.push_back("bench_slopes.csv");
    }
    write_manifest(a.out_dir, run);
    return 0;
}

// ---------------------------------------------------------------- dispatch

int run_cli(std::vector<std::string> args);

std::vector<std::string> strip_out_dir(const std::vector<std::string>& args)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--out-dir") {
            ++i;
            continue;
        }
        if (args[i].rfind("--out-dir=", 0) == 0) continue;
        out.push_back(args[i]);
    }
    return out;
}

int cmd_replay(const fs::path& manifest_path, const fs::path& out_dir)
{
    std::ifstream in(manifest_path);
    if (!in) throw sns::Error(sns::ErrorCode::IoError, "cannot open " + manifest_path.string());
    json m;
    try {
        in >> m;
    } catch (const json::exception& e) {
        throw sns::Error(sns::ErrorCode::ParseError, manifest_path.string() + ": " + e.what());
    }
    if (!m.contains("argv") || !m["argv"].is_array()) {
        throw sns::Error(sns::ErrorCode::ParseError, manifest_path.string() + ": missing argv");
    }
    std::vector<std::string> args = m["argv"].get<std::vector<std::string>>();
    args.push_back("--out-dir");
    args.push_back(fs::absolute(out_dir).string());
    // relative input paths in argv are resolved against the recorded working directory
    const fs::path here = fs::current_path();
    if (m.contains("cwd") && m["cwd"].is_string()) fs::current_path(m["cwd"].get<std::string>());
    const int rc = run_cli(std::move(args));
    fs::current_path(here);
    return rc;
}

int run_cli(std::vector<std::string> args)
{
    CLI::App app{"Joint estimation of multiple Gaussian graphical models by simultaneous neighborhood selection"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default: SNS_THREADS or 1)");

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "simulate subpopulation data from random sparse precisions");
    c_sim->add_option("--p", sim.p, "number of variables")->required()->check(CLI::PositiveNumber);
    c_sim->add_option("--k", sim.k, "number of subpopulations")->capture_default_str();
    c_sim->add_option("--n", sim.n, "samples per subpopulation")->required();
    c_sim->add_option("--s", sim.s, "common-edge proportion of C(p,2)")->required();
    c_sim->add_option("--rho", sim.rho, "individual-edge proportion of |A|")->capture_default_str();
    c_sim->add_option("--seed", sim.seed)->capture_default_str();
    c_sim->add_option("--out-dir", sim.out_dir)->required();

    FitArgs fit;
    auto* c_fit = app.add_subcommand("fit", "estimate edge sets from CSV data");
    c_fit->add_option("--method", fit.method, "sns | ins | jgl | igl")->capture_default_str();
    c_fit->add_option("--lambda", fit.lambda)->required()->check(CLI::NonNegativeNumber);
    c_fit->add_option("--lambda-init", fit.lambda_init)->capture_default_str()->check(CLI::NonNegativeNumber);
    c_fit->add_option("--edge-rule", fit.edge_rule, "and | or")->capture_default_str();
    c_fit->add_option("--lla-steps", fit.lla_steps)->capture_default_str()->check(CLI::PositiveNumber);
    c_fit->add_option("--data", fit.data, "comma-separated CSV files, one per subpopulation")
        ->required()
        ->delimiter(',');
    c_fit->add_option("--out-dir", fit.out_dir)->required();
    c_fit->add_option("--b", fit.solver.b, "ADMM step size")->capture_default_str()->check(CLI::PositiveNumber);
    c_fit->add_option("--tol", fit.solver.tol)->capture_default_str();
    c_fit->add_option("--max-iter", fit.solver.max_iter)->capture_default_str();

    RocArgs roc;
    auto* c_roc = app.add_subcommand("roc", "ROC curves and AUC over a lambda grid");
    c_roc->add_option("--truth-dir", roc.truth_dir, "output directory of `simulate` (single replicate)");
    c_roc->add_option("--methods", roc.methods, "sns,ins,jgl,igl,oracle")->delimiter(',')->capture_default_str();
    c_roc->add_option("--grid-start", roc.grid_start)->capture_default_str();
    c_roc->add_option("--grid-end", roc.grid_end)->capture_default_str();
    c_roc->add_option("--grid-points", roc.grid_points)->capture_default_str();
    c_roc->add_option("--replicates", roc.replicates)->capture_default_str();
    c_roc->add_option("--seed", roc.seed)->capture_default_str();
    c_roc->add_option("--p", roc.p)->capture_default_str();
    c_roc->add_option("--k", roc.k)->capture_default_str();
    c_roc->add_option("--n", roc.n)->capture_default_str();
    c_roc->add_option("--s", roc.s)->capture_default_str();
    c_roc->add_option("--rho", roc.rho)->capture_default_str();
    c_roc->add_option("--lambda-init", roc.lambda_init)->capture_default_str();
    c_roc->add_option("--edge-rule", roc.edge_rule)->capture_default_str();
    c_roc->add_option("--b", roc.solver.b)->capture_default_str()->check(CLI::PositiveNumber);
    c_roc->add_option("--tol", roc.solver.tol)->capture_default_str();
    c_roc->add_option("--max-iter", roc.solver.max_iter)->capture_default_str();
    c_roc->add_option("--out-dir", roc.out_dir)->required();

    BenchArgs bench;
    auto* c_bench = app.add_subcommand("bench", "per-iteration ADMM timing, SNS vs graphical lasso");
    c_bench->add_option("--p-list", bench.p_list)->delimiter(',')->capture_default_str();
    c_bench->add_option("--n", bench.n)->capture_default_str();
    c_bench->add_option("--k", bench.k)->capture_default_str();
    c_bench->add_option("--seed", bench.seed)->capture_default_str();
    c_bench->add_option("--b", bench.b)->capture_default_str()->check(CLI::PositiveNumber);
    c_bench->add_option("--out-dir", bench.out_dir)->required();

    fs::path manifest_path, replay_out;
    auto* c_replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
    c_replay->add_option("--manifest", manifest_path)->required();
    c_replay->add_option("--out-dir", replay_out)->required();

    const std::vector<std::string> given = args;
    std::reverse(args.begin(), args.end());  // CLI11 consumes the vector from the back
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: UsageError: " << e.what() << '\n';
        return static_cast<int>(sns::ErrorCode::UsageError);
    }

    const unsigned workers = sns::resolve_threads(threads);
    Run run;
    run.argv = strip_out_dir(given);
    if (*c_sim) {
        run.command = "simulate";
        return cmd_simulate(sim, run);
    }
    if (*c_fit) {
        run.command = "fit";
        return cmd_fit(fit, workers, run);
    }
    if (*c_roc) {
        run.command = "roc";
        return cmd_roc(roc, workers, run);
    }
    if (*c_bench) {
        run.command = "bench";
        return cmd_bench(bench, run);
    }
    return cmd_replay(manifest_path, replay_out);
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_cli(std::move(args));
    } catch (const sns::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return 1;
    }
}
