// rdlab: rate-distortion region computation and finite-blocklength coding
// simulation for two-terminal sources.

#include "rdlab/boho.hpp"
#include "rdlab/checks.hpp"
#include "rdlab/components.hpp"
#include "rdlab/io.hpp"
#include "rdlab/sim.hpp"
#include "rdlab/info.hpp"
#include "rdlab/sweep.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

namespace {

constexpr const char* kVersion = "0.1.0";

int resolve_threads(int cliThreads) {
    if (cliThreads > 0) return cliThreads;
    if (const char* env = std::getenv("RDLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

rdlab::io::Manifest base_manifest(const std::string& command, std::uint64_t seed) {
    rdlab::io::Manifest m;
    m.command = command;
    m.version = kVersion;
    m.seed = seed;
    m.timestamp = "";  // outputs stay byte-reproducible; see the .manifest sidecar
    return m;
}

void write_manifest(const std::string& outPath, rdlab::io::Manifest m) {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m.timestamp = buf;
    rdlab::io::write_file(outPath + ".manifest", m.to_text());
}

struct RegionArgs {
    std::string scheme;
    std::string source;
    std::string sweepFile;
    double d1 = 1.0, d2 = 1.0;
    std::string out = "region.csv";
    bool swapSym = false;
};

int cmd_region(const RegionArgs& args, int threads) {
    (void)threads;
    rdlab::RegionRunOptions opts;
    rdlab::io::Manifest manifest = base_manifest("region", 1);

    std::string sweepText;
    if (!args.sweepFile.empty()) {
        sweepText = rdlab::io::read_file(args.sweepFile);
        manifest.inputDigests.emplace_back("sweep", rdlab::io::fnv1a_hex(sweepText));
    }
    const rdlab::io::KeyValueFile sweep =
        rdlab::io::KeyValueFile::parse(sweepText, args.sweepFile.empty() ? "<defaults>" : args.sweepFile);

    opts.specs = static_cast<int>(sweep.integer_or("random_specs", 200));
    opts.seed = static_cast<std::uint64_t>(sweep.integer_or("seed", 1));
    opts.sample.wSize = static_cast<int>(sweep.integer_or("w_size", 2));
    opts.sample.u1Size = static_cast<int>(sweep.integer_or("u1_size", 2));
    opts.sample.u2Size = static_cast<int>(sweep.integer_or("u2_size", 2));
    opts.sample.kernelFloor = sweep.number_or("kernel_floor", 0.2);
    opts.n = sweep.integer_or("n", 1000000000000000000LL);
    opts.quantizerN = static_cast<int>(sweep.integer_or("quantizer_n", 6));
    // mcml runs the exact small-n construction, where tau must keep the
    // rate-loss log argument positive; flmc defaults to the asymptotic schedule.
    opts.tau = sweep.number_or("tau", args.scheme == "mcml"
                                          ? 0.8
                                          : std::pow(static_cast<double>(opts.n), -0.4));
    opts.hull = sweep.integer_or("hull", 1) != 0;
    opts.enforceRanges = sweep.integer_or("enforce_ranges", args.scheme == "flmc" ? 1 : 0) != 0;
    opts.fixedD1 = args.d1;
    opts.fixedD2 = args.d2;
    opts.swapSymmetrize = args.swapSym;
    manifest.seed = opts.seed;

    manifest.config = {{"scheme", args.scheme},
                       {"source", args.source},
                       {"d1", rdlab::io::fmt17(args.d1)},
                       {"d2", rdlab::io::fmt17(args.d2)},
                       {"random_specs", std::to_string(opts.specs)},
                       {"w_size", std::to_string(opts.sample.wSize)},
                       {"u1_size", std::to_string(opts.sample.u1Size)},
                       {"u2_size", std::to_string(opts.sample.u2Size)},
                       {"n", std::to_string(opts.n)},
                       {"tau", rdlab::io::fmt17(opts.tau)},
                       {"swap_symmetrize", args.swapSym ? "1" : "0"}};

    rdlab::RegionRun run;
    if (args.scheme == "btsi") {
        const std::string text = rdlab::io::read_file(args.source);
        manifest.inputDigests.emplace_back("source", rdlab::io::fnv1a_hex(text));
        const rdlab::SourceWithSideInfo src = rdlab::io::parse_source_si(text, args.source);
        run = rdlab::run_region_btsi(src, opts);
    } else {
        const rdlab::DistributedSource src = rdlab::io::parse_source(args.source);
        if (args.source.rfind("boho:", 0) != 0)
            manifest.inputDigests.emplace_back("source",
                                               rdlab::io::fnv1a_hex(rdlab::io::read_file(args.source)));
        rdlab::ComponentPair components = rdlab::gk_common_part(src).pair;
        if (sweep.has("f1")) {
            std::vector<int> f1, f2;
            for (const auto& t : sweep.values("f1")) f1.push_back(std::stoi(t));
            for (const auto& t : sweep.values("f2")) f2.push_back(std::stoi(t));
            const int sSize = static_cast<int>(sweep.integer("s_size"));
            const double eps = rdlab::epsilon_of(src, f1, f2, sSize);
            components = rdlab::ComponentPair(rdlab::Alphabet(sSize), f1, f2, eps);
        }
        run = rdlab::run_region_scheme(args.scheme, src, components, opts);
    }

    rdlab::io::write_file(args.out, rdlab::io::region_csv(run, args.scheme));
    rdlab::io::write_file(args.out + ".prov.txt", rdlab::io::region_prov_text(run));
    write_manifest(args.out, manifest);

    double minR1 = 1e300, minR2 = 1e300;
    for (const auto& pt : run.boundary.points) {
        minR1 = std::min(minR1, pt.r1);
        minR2 = std::min(minR2, pt.r2);
    }
    std::cout << "region scheme=" << args.scheme << " points=" << run.boundary.points.size()
              << " min_r1=" << minR1 << " min_r2=" << minR2 << " out=" << args.out << "\n";
    return 0;
}

struct BohoArgs {
    double p = 0.3;
    std::vector<double> epsList;
    double d2max = 0.15;
    rdlab::BohoGrids grids;
    std::string out = "boho.csv";
};

int cmd_boho(const BohoArgs& args) {
    rdlab::io::Manifest manifest = base_manifest("boho", 0);
    manifest.config = {{"p", rdlab::io::fmt17(args.p)},
                       {"d2max", rdlab::io::fmt17(args.d2max)},
                       {"delta_points", std::to_string(args.grids.deltaPoints)},
                       {"n_points", std::to_string(args.grids.nPoints)},
                       {"tau_points", std::to_string(args.grids.tauPoints)},
                       {"delta1_points", std::to_string(args.grids.delta1Points)}};

    std::vector<std::pair<double, rdlab::BohoSweep>> curves;
    for (double eps : args.epsList) {
        try {
            curves.emplace_back(eps, rdlab::boho_region_sweep(args.p, eps, args.d2max, args.grids));
            std::cout << "boho eps=" << eps << " points=" << curves.back().second.boundary.points.size()
                      << "\n";
        } catch (const rdlab::InfeasibleError& e) {
            std::cerr << "warning: eps=" << eps << " omitted: " << e.what() << "\n";
        }
    }
    if (curves.empty()) throw rdlab::InfeasibleError("boho: every requested curve was infeasible");
    rdlab::io::write_file(args.out, rdlab::io::boho_csv(curves));
    rdlab::io::write_file(args.out + ".prov.txt", rdlab::io::boho_prov_text(curves));
    write_manifest(args.out, manifest);
    std::cout << "boho curves=" << curves.size() << " out=" << args.out << "\n";
    return 0;
}

struct SimArgs {
    std::string kind;
    std::string configFile;
    std::uint64_t seed = 0;
    bool seedSet = false;
    std::string out = "sim_report.txt";
};

int cmd_sim(const SimArgs& args, int threads) {
    const std::string text = rdlab::io::read_file(args.configFile);
    const rdlab::io::KeyValueFile cfg = rdlab::io::KeyValueFile::parse(text, args.configFile);
    rdlab::io::Manifest manifest = base_manifest("sim " + args.kind, 0);
    manifest.inputDigests.emplace_back("config", rdlab::io::fnv1a_hex(text));

    if (args.kind == "boho") {
        rdlab::BohoSimConfig c;
        c.p = cfg.number_or("p", c.p);
        c.epsilon = cfg.number_or("epsilon", c.epsilon);
        c.n = static_cast<int>(cfg.integer_or("n", c.n));
        c.theta = static_cast<int>(cfg.integer_or("theta", c.theta));
        c.delta = cfg.number_or("delta", c.delta);
        c.delta1 = cfg.number_or("delta1", c.delta1);
        c.tau = cfg.number_or("tau", c.tau);
        c.m = cfg.integer_or("m", c.m);
        c.trials = static_cast<int>(cfg.integer_or("trials", c.trials));
        c.masterSeed = args.seedSet ? args.seed
                                    : static_cast<std::uint64_t>(cfg.integer_or("seed", 1));
        c.threads = threads;
        manifest.seed = c.masterSeed;
        const rdlab::BohoSimReport rep = rdlab::boho_end_to_end(c);
        rdlab::io::write_file(args.out, rep.to_text());
        rdlab::io::write_file(args.out + ".trials.csv", rep.per_trial_csv());
        write_manifest(args.out, manifest);
        std::cout << rep.to_text();
        return rep.hardGatePass ? 0 : 1;
    }

    // quantizer | correction | interleave share the first-layer setup.
    const double delta = cfg.number_or("delta", 0.2);
    const int n = static_cast<int>(cfg.integer_or("n", 8));
    const double tau = cfg.number_or("tau", 0.1);
    const std::uint64_t seed =
        args.seedSet ? args.seed : static_cast<std::uint64_t>(cfg.integer_or("seed", 1));
    manifest.seed = seed;
    const bool exactMode = cfg.str_or("mode", "exact") == "exact";
    const long long samples = cfg.integer_or("samples", 100000);

    const rdlab::JointDist pS = rdlab::JointDist::uniform({rdlab::Alphabet(2)});
    const rdlab::CondDist chan = rdlab::CondDist::bsc(delta);

    std::ostringstream report;
    report.precision(17);
    int exitCode = 0;

    if (args.kind == "quantizer") {
        const bool fixedTheta = cfg.has("theta");
        const rdlab::QuantizerCodebook q =
            fixedTheta ? rdlab::build_quantizer_fixed(pS, chan, n, tau,
                                                      static_cast<int>(cfg.integer("theta")),
                                                      rdlab::EncoderRule::JointlyTypical, seed)
                       : rdlab::build_quantizer(pS, chan, n, tau,
                                                rdlab::EncoderRule::JointlyTypical, seed);
        const double phi = tau * (1.0 / 2.0 + 1.0 / 2.0);  // tau (1/|S| + 1/|W|), binary
        const double phiPrime = 4.0 * 2.0 * std::exp(-2.0 * n * tau * tau / 4.0);
        const auto cov = rdlab::measure_covering(q, pS, phi, phiPrime, exactMode, samples, seed);
        report << "report quantizer\nn " << n << "\ntheta " << q.theta() << "\nrate "
               << q.rate_per_symbol() << "\nphi " << phi << "\nphi_prime " << phiPrime
               << "\nfailure_prob " << cov.failureProb << "\nradius " << cov.radius << "\nvacuous "
               << (cov.vacuous ? 1 : 0) << "\n";
        if (!cov.vacuous && cov.failureProb > phiPrime + cov.radius) exitCode = 1;
    } else if (args.kind == "correction") {
        const rdlab::QuantizerCodebook q = rdlab::build_quantizer_fixed(
            pS, chan, n, tau, static_cast<int>(cfg.integer_or("theta", 6)),
            rdlab::EncoderRule::JointlyTypical, seed);
        const auto corr = rdlab::build_correction(q, pS, exactMode, samples, seed);
        const double pmin = q.target_sw().min_cell();
        const double phi = tau;
        const double phiPrime = 4.0 * 2.0 * std::exp(-2.0 * n * tau * tau / 4.0);
        const double pTau = pmin / (pmin + phi + phiPrime);
        const auto rate = rdlab::correction_rate(corr, pS, pTau);
        report << "report correction\nmode " << (exactMode ? "exact" : "sampled")
               << "\nmax_residual " << corr.maxResidual << "\nh_t " << rate.hT << "\nlambda_bound "
               << rate.lambdaBound << "\np0 " << rate.p0 << "\np_tau " << pTau << "\nbound_applies "
               << (rate.boundApplies ? 1 : 0) << "\nholds " << (rate.holds ? 1 : 0) << "\n";
        if (exactMode && corr.maxResidual > 1e-10) exitCode = 1;
        if (!rate.holds) exitCode = 1;
    } else if (args.kind == "interleave") {
        const rdlab::DistributedSource src = rdlab::io::parse_source(cfg.str_or("source", "boho:p=0.3,eps=0.001"));
        const rdlab::GkResult gk = rdlab::gk_common_part(src);
        rdlab::ComponentPair comp = gk.pair;
        if (cfg.has("f1")) {
            std::vector<int> f1, f2;
            for (const auto& t : cfg.values("f1")) f1.push_back(std::stoi(t));
            for (const auto& t : cfg.values("f2")) f2.push_back(std::stoi(t));
            const int sSize = static_cast<int>(cfg.integer("s_size"));
            comp = rdlab::ComponentPair(rdlab::Alphabet(sSize), f1, f2,
                                        rdlab::epsilon_of(src, f1, f2, sSize));
        }
        std::vector<double> ps(static_cast<std::size_t>(comp.s.size), 0.0);
        const int keepX1[] = {0};
        const rdlab::JointDist pX1 = src.pmf.marginal(keepX1);
        for (int x = 0; x < src.x1.size; ++x)
            ps[static_cast<std::size_t>(comp.f1[static_cast<std::size_t>(x)])] +=
                pX1[static_cast<std::size_t>(x)];
        const rdlab::JointDist pSrc({comp.s}, std::move(ps));
        const rdlab::CondDist chanS =
            comp.s.size == 2 ? rdlab::CondDist::bsc(delta)
                             : rdlab::CondDist::identity(comp.s);
        const rdlab::QuantizerCodebook q = rdlab::build_quantizer_fixed(
            pSrc, chanS, n, tau, static_cast<int>(cfg.integer_or("theta", 6)),
            rdlab::EncoderRule::JointlyTypical, seed);
        const auto corr = rdlab::build_correction(q, pSrc, true);
        const long long m = cfg.integer_or("m", 20000);
        const auto il = rdlab::interleave_and_induce(q, corr, src, comp, m, seed);
        report << "report interleave\nm " << m << "\nagree " << il.probAgreeWS << "\nmax_row_z "
               << il.maxRowZ << "\nrow_z_critical " << il.rowZCritical << "\nrow_invariance "
               << (il.rowInvariancePass ? "pass" : "fail") << "\nshuffle_p " << il.shuffleP
               << "\nshuffle " << (il.shufflePass ? "pass" : "fail") << "\n";
        double agreeExact = 0.0;
        try {
            const rdlab::JointDist exact4 =
                rdlab::exact_induced_joint4(q, corr, src, comp, &agreeExact);
            const double dev = rdlab::variational_distance(exact4, il.empirical4);
            report << "exact_agree " << agreeExact << "\nvariational_to_exact " << dev << "\n";
        } catch (const rdlab::CapExceededError&) {
            report << "exact_agree unavailable\n";
        }
        if (!il.rowInvariancePass || !il.shufflePass) exitCode = 1;
    } else {
        throw CLI::ValidationError("sim: unknown subcommand kind '" + args.kind + "'");
    }

    rdlab::io::write_file(args.out, report.str());
    write_manifest(args.out, manifest);
    std::cout << report.str();
    return exitCode;
}

int cmd_check(const std::string& suite) {
    bool all = true;
    auto run = [&](const rdlab::CheckSuiteResult& r) {
        std::cout << r.to_table();
        all = all && r.all_pass();
    };
    if (suite == "continuity" || suite == "all") run(rdlab::run_continuity_suite());
    if (suite == "typicality" || suite == "all") run(rdlab::run_typicality_suite());
    if (suite == "containment" || suite == "all") run(rdlab::run_containment_suite());
    std::cout << (all ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate-distortion regions and finite-blocklength coding experiments"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker cap (default: RDLAB_THREADS or 1)");

    RegionArgs regionArgs;
    auto* region = app.add_subcommand("region", "compute an achievable region boundary");
    region->add_option("--scheme", regionArgs.scheme, "cc|bt|btsi|flmc|mcml")->required();
    region->add_option("--source", regionArgs.source, "source file or boho:p=..,eps=..")->required();
    region->add_option("--sweep", regionArgs.sweepFile, "sweep config file");
    region->add_option("--d1", regionArgs.d1, "distortion budget for source 1");
    region->add_option("--d2", regionArgs.d2, "distortion budget for source 2");
    region->add_option("--out", regionArgs.out, "output CSV path");
    region->add_flag("--swap-symmetrize", regionArgs.swapSym, "merge the encoder-swapped sweep");

    BohoArgs bohoArgs;
    auto* boho = app.add_subcommand("boho", "closed-form one-help-one boundaries");
    boho->add_option("--p", bohoArgs.p, "helper noise parameter")->required();
    boho->add_option("--eps", bohoArgs.epsList, "component mismatch level (repeatable)")->required();
    boho->add_option("--d2max", bohoArgs.d2max, "distortion slice");
    boho->add_option("--out", bohoArgs.out, "output CSV path");
    boho->add_option("--delta-points", bohoArgs.grids.deltaPoints, "delta grid size");
    boho->add_option("--n-points", bohoArgs.grids.nPoints, "n ladder length");
    boho->add_option("--tau-points", bohoArgs.grids.tauPoints, "tau grid size");
    boho->add_option("--delta1-points", bohoArgs.grids.delta1Points, "delta1 grid size");

    SimArgs simArgs;
    auto* sim = app.add_subcommand("sim", "run a coding-construction simulation");
    sim->add_option("kind", simArgs.kind, "quantizer|correction|interleave|boho")->required();
    sim->add_option("--config", simArgs.configFile, "key-value config file")->required();
    auto* seedOpt = sim->add_option("--seed", simArgs.seed, "override the config seed");
    sim->add_option("--out", simArgs.out, "report path");

    std::string suite;
    auto* check = app.add_subcommand("check", "run verification suites");
    check->add_option("--suite", suite, "continuity|typicality|containment|all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const int nThreads = resolve_threads(threads);
        if (region->parsed()) return cmd_region(regionArgs, nThreads);
        if (boho->parsed()) return cmd_boho(bohoArgs);
        if (sim->parsed()) {
            simArgs.seedSet = seedOpt->count() > 0;
            return cmd_sim(simArgs, nThreads);
        }
        if (check->parsed()) return cmd_check(suite);
    } catch (const rdlab::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const rdlab::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const rdlab::CapExceededError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const rdlab::GateError& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 1;
    } catch (const rdlab::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
