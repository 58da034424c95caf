#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <sskg/bounds.hpp>
#include <sskg/degrade.hpp>
#include <sskg/errors.hpp>
#include <sskg/probcore.hpp>
#include <sskg/protocol.hpp>
#include <sskg/serialize.hpp>
#include <sskg/sources.hpp>
#include <sskg/special.hpp>

namespace {

using nlohmann::json;

/// One resolved value: an explicitly passed flag wins, then the config
/// block, then the built-in default the flag already holds.
template <typename T>
T resolve(const CLI::Option* opt, const T& flagValue, const json& block, const char* key) {
    if (opt != nullptr && opt->count() > 0) return flagValue;
    if (block.contains(key)) {
        try {
            return block.at(key).get<T>();
        } catch (const json::exception& e) {
            throw sskg::validation_error(std::string("config field '") + key + "': " + e.what());
        }
    }
    return flagValue;
}

struct Output {
    std::string format = "json"; // json | csv
    std::string path;            // empty: stdout only

    void emit(const std::string& body, const json& resolvedConfig) const {
        if (format == "csv") {
            // CSV keeps provenance out of the table itself.
            std::cerr << "config: " << resolvedConfig.dump() << "\n";
        }
        std::cout << body;
        if (!body.empty() && body.back() != '\n') std::cout << "\n";
        if (!path.empty()) sskg::write_text_file(path, body);
    }
};

json config_block(const std::string& configPath, const char* name) {
    if (configPath.empty()) return json::object();
    const json root = [&] {
        try {
            return json::parse(sskg::read_text_file(configPath));
        } catch (const json::parse_error& e) {
            throw sskg::validation_error(std::string("config parse: ") + e.what());
        }
    }();
    if (!root.is_object()) throw sskg::validation_error("config root must be an object");
    json block = root.contains(name) ? root.at(name) : json::object();
    if (!block.is_object()) {
        throw sskg::validation_error(std::string("config block '") + name + "' must be an object");
    }
    // Global keys apply to every subcommand unless shadowed.
    for (const char* key : {"seed", "output", "format"}) {
        if (!block.contains(key) && root.contains(key)) block[key] = root.at(key);
    }
    return block;
}

sskg::FadeSpec parse_fade(const std::string& text) {
    std::istringstream is(text);
    std::string kind;
    std::getline(is, kind, ':');
    if (kind == "constant") {
        double a = 0.0;
        char sep = 0;
        if (!(is >> a) || is.get(sep)) {
            throw sskg::validation_error("fade spec: expected constant:<amplitude>");
        }
        return sskg::FadeSpec::constant(a);
    }
    if (kind == "nakagami") {
        std::string ms, ws;
        if (!std::getline(is, ms, ':') || !std::getline(is, ws)) {
            throw sskg::validation_error("fade spec: expected nakagami:<m>:<w>");
        }
        try {
            return sskg::FadeSpec::nakagami(std::stod(ms), std::stod(ws));
        } catch (const std::exception&) {
            throw sskg::validation_error("fade spec: non-numeric nakagami parameters");
        }
    }
    throw sskg::validation_error("fade spec: unknown kind '" + kind + "'");
}

std::string csv_escape_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

int run_bounds(const std::string& configPath, const CLI::Option* distOpt, std::string dist,
               const CLI::Option* fmtOpt, std::string format, const CLI::Option* outOpt,
               std::string outPath) {
    const json block = config_block(configPath, "bounds");
    dist = resolve(distOpt, dist, block, "dist");
    format = resolve(fmtOpt, format, block, "format");
    outPath = resolve(outOpt, outPath, block, "output");
    if (dist.empty()) throw sskg::validation_error("bounds: no input distribution given");

    const auto j = sskg::load_joint3(dist);
    const auto b = sskg::sk_bounds(j);
    const json resolved{{"subcommand", "bounds"}, {"dist", dist}, {"format", format},
                        {"output", outPath}};
    Output out{format, outPath};
    if (format == "csv") {
        std::ostringstream os;
        os << "lowerXY,lowerYX,upperMI,upperCMI,lower,upper\n"
           << csv_escape_number(b.lowerXY) << ',' << csv_escape_number(b.lowerYX) << ','
           << csv_escape_number(b.upperMI) << ',' << csv_escape_number(b.upperCMI) << ','
           << csv_escape_number(b.lower()) << ',' << csv_escape_number(b.upper()) << '\n';
        out.emit(os.str(), resolved);
    } else {
        json doc{{"config", resolved}, {"bounds", json::parse(sskg::to_json(b))}};
        out.emit(doc.dump(2), resolved);
    }
    return 0;
}

int run_degrade(const std::string& configPath, const CLI::Option* distOpt, std::string dist,
                const CLI::Option* tolOpt, double tol, const CLI::Option* mtolOpt,
                double markovTol, const CLI::Option* fmtOpt, std::string format,
                const CLI::Option* outOpt, std::string outPath) {
    const json block = config_block(configPath, "degrade");
    dist = resolve(distOpt, dist, block, "dist");
    tol = resolve(tolOpt, tol, block, "tol");
    markovTol = resolve(mtolOpt, markovTol, block, "markovTol");
    format = resolve(fmtOpt, format, block, "format");
    outPath = resolve(outOpt, outPath, block, "output");
    if (dist.empty()) throw sskg::validation_error("degrade: no input distribution given");

    const auto j = sskg::load_joint3(dist);
    const auto v = sskg::classify_degradedness(j, markovTol, tol);
    const json resolved{{"subcommand", "degrade"}, {"dist", dist},      {"tol", tol},
                        {"markovTol", markovTol},  {"format", format},  {"output", outPath}};
    Output out{format, outPath};
    if (format == "csv") {
        const char* kind = v.kind == sskg::DegradednessVerdict::Kind::Physical ? "physical"
                           : v.kind == sskg::DegradednessVerdict::Kind::Stochastic ? "stochastic"
                                                                                   : "none";
        std::ostringstream os;
        os << "kind,residual,tol\n"
           << kind << ',' << csv_escape_number(v.residual) << ',' << csv_escape_number(v.tol)
           << '\n';
        out.emit(os.str(), resolved);
    } else {
        json doc{{"config", resolved}, {"verdict", json::parse(sskg::to_json(v))}};
        out.emit(doc.dump(2), resolved);
    }
    return 0;
}

int run_order(const std::string& configPath, const CLI::Option* mxOpt, double mx,
              const CLI::Option* wxOpt, double wx, const CLI::Option* mzOpt, double mz,
              const CLI::Option* wzOpt, double wz, const CLI::Option* gridOpt,
              std::size_t pointsPerLaw, const CLI::Option* fmtOpt, std::string format,
              const CLI::Option* outOpt, std::string outPath) {
    const json block = config_block(configPath, "order");
    mx = resolve(mxOpt, mx, block, "mx");
    wx = resolve(wxOpt, wx, block, "wx");
    mz = resolve(mzOpt, mz, block, "mz");
    wz = resolve(wzOpt, wz, block, "wz");
    pointsPerLaw = resolve(gridOpt, pointsPerLaw, block, "grid");
    format = resolve(fmtOpt, format, block, "format");
    outPath = resolve(outOpt, outPath, block, "output");

    const sskg::NakagamiSpec specX(mx, wx);
    const sskg::NakagamiSpec specZ(mz, wz);
    const auto grid = sskg::order_check_grid(specX, specZ, pointsPerLaw);
    const auto report = sskg::nakagami_order_report(specX, specZ, grid);
    const json resolved{{"subcommand", "order"}, {"mx", mx},           {"wx", wx},
                        {"mz", mz},              {"wz", wz},           {"grid", pointsPerLaw},
                        {"format", format},      {"output", outPath}};
    Output out{format, outPath};
    if (format == "csv") {
        std::ostringstream os;
        os << "dominated,firstViolation,gridPoints\n"
           << (report.dominated ? "true" : "false") << ','
           << (report.firstViolation ? csv_escape_number(*report.firstViolation) : std::string())
           << ',' << report.gridPoints << '\n';
        out.emit(os.str(), resolved);
    } else {
        json doc{{"config", resolved},
                 {"dominated", report.dominated},
                 {"firstViolation",
                  report.firstViolation ? json(*report.firstViolation) : json(nullptr)},
                 {"gridPoints", report.gridPoints}};
        out.emit(doc.dump(2), resolved);
    }
    return 0;
}

int run_satellite(const std::string& configPath, const CLI::Option* svOpt, double sourceVar,
                  const CLI::Option* fxOpt, std::string fadeX, const CLI::Option* fzOpt,
                  std::string fadeZ, const CLI::Option* nOpt, std::size_t n,
                  const CLI::Option* binsOpt, std::size_t bins, const CLI::Option* seedOpt,
                  std::uint64_t seed, const CLI::Option* samplesOpt, std::string samplesOut,
                  const CLI::Option* fmtOpt, std::string format, const CLI::Option* outOpt,
                  std::string outPath) {
    const json block = config_block(configPath, "satellite");
    sourceVar = resolve(svOpt, sourceVar, block, "sourceVariance");
    fadeX = resolve(fxOpt, fadeX, block, "fadeX");
    fadeZ = resolve(fzOpt, fadeZ, block, "fadeZ");
    n = resolve(nOpt, n, block, "n");
    bins = resolve(binsOpt, bins, block, "bins");
    seed = resolve(seedOpt, seed, block, "seed");
    samplesOut = resolve(samplesOpt, samplesOut, block, "samplesOut");
    format = resolve(fmtOpt, format, block, "format");
    outPath = resolve(outOpt, outPath, block, "output");

    const sskg::SatelliteSpec spec(sourceVar, parse_fade(fadeX), parse_fade(fadeZ));
    const auto samples = sskg::satellite_sample(spec, n, seed);
    if (!samplesOut.empty()) sskg::write_text_file(samplesOut, sskg::sample_set_csv(samples));
    const auto quantized = sskg::quantize(samples, sskg::gaussian_quantizer(samples, bins));
    const auto b = sskg::sk_bounds(quantized);
    const json resolved{{"subcommand", "satellite"},
                        {"sourceVariance", sourceVar},
                        {"fadeX", fadeX},
                        {"fadeZ", fadeZ},
                        {"n", n},
                        {"bins", bins},
                        {"seed", seed},
                        {"samplesOut", samplesOut},
                        {"format", format},
                        {"output", outPath}};
    Output out{format, outPath};
    if (format == "csv") {
        std::ostringstream os;
        os << "n,bins,seed,lowerXY,lowerYX,upperMI,upperCMI,lower,upper\n"
           << n << ',' << bins << ',' << seed << ',' << csv_escape_number(b.lowerXY) << ','
           << csv_escape_number(b.lowerYX) << ',' << csv_escape_number(b.upperMI) << ','
           << csv_escape_number(b.upperCMI) << ',' << csv_escape_number(b.lower()) << ','
           << csv_escape_number(b.upper()) << '\n';
        out.emit(os.str(), resolved);
    } else {
        json doc{{"config", resolved}, {"bounds", json::parse(sskg::to_json(b))}};
        out.emit(doc.dump(2), resolved);
    }
    return 0;
}

int run_simulate(const std::string& configPath, const CLI::Option* distOpt, std::string dist,
                 const CLI::Option* nOpt, std::vector<std::size_t> ns, const CLI::Option* rOpt,
                 double rateKey, const CLI::Option* r1Opt, std::vector<double> rateConfusions,
                 const CLI::Option* booksOpt, std::size_t books, const CLI::Option* seedOpt,
                 std::uint64_t seed, const CLI::Option* trialsOpt, std::size_t trials,
                 const CLI::Option* modeOpt, std::string mode, const CLI::Option* fmtOpt,
                 std::string format, const CLI::Option* outOpt, std::string outPath) {
    const json block = config_block(configPath, "simulate");
    dist = resolve(distOpt, dist, block, "dist");
    ns = resolve(nOpt, ns, block, "n");
    rateKey = resolve(rOpt, rateKey, block, "rateKey");
    rateConfusions = resolve(r1Opt, rateConfusions, block, "rateConfusion");
    books = resolve(booksOpt, books, block, "books");
    seed = resolve(seedOpt, seed, block, "seed");
    trials = resolve(trialsOpt, trials, block, "trials");
    mode = resolve(modeOpt, mode, block, "mode");
    format = resolve(fmtOpt, format, block, "format");
    outPath = resolve(outOpt, outPath, block, "output");
    if (dist.empty()) throw sskg::validation_error("simulate: no input distribution given");
    if (ns.empty() || rateConfusions.empty() || books == 0) {
        throw sskg::validation_error("simulate: need at least one n, rateConfusion and book");
    }
    if (mode != "auto" && mode != "exact" && mode != "mc") {
        throw sskg::validation_error("simulate: mode must be auto, exact or mc");
    }

    const auto j = sskg::load_joint3(dist);
    const auto pU = sskg::FiniteDist::uniform(j.nx());
    const json resolved{{"subcommand", "simulate"},
                        {"dist", dist},
                        {"n", ns},
                        {"rateKey", rateKey},
                        {"rateConfusion", rateConfusions},
                        {"books", books},
                        {"seed", seed},
                        {"trials", trials},
                        {"mode", mode},
                        {"format", format},
                        {"output", outPath}};

    struct Row {
        std::size_t n;
        double r1;
        std::size_t book;
        std::uint64_t seed;
        sskg::ProtocolReport report;
    };
    std::vector<Row> rows;
    std::uint64_t bookSeed = seed;
    for (const std::size_t n : ns) {
        for (const double r1 : rateConfusions) {
            for (std::size_t book = 0; book < books; ++book, ++bookSeed) {
                const sskg::CodebookSpec spec(n, rateKey, r1, j.nx(), bookSeed);
                const auto cb = sskg::generate_codebook(spec, pU);
                sskg::ProtocolReport report;
                if (mode == "exact" || (mode == "auto" && spec.exact_guard_ok())) {
                    report = sskg::run_protocol_exact(j, cb);
                } else {
                    if (mode == "auto") {
                        std::cerr << "simulate: exact enumeration guard exceeded at n=" << n
                                  << "; falling back to Monte Carlo with " << trials
                                  << " trials\n";
                    }
                    report = sskg::run_protocol_mc(j, cb, trials, bookSeed + 0x9e3779b9ull);
                }
                rows.push_back({n, r1, book, bookSeed, std::move(report)});
            }
        }
    }

    Output out{format, outPath};
    const bool single = rows.size() == 1;
    if (format == "csv" || !single) {
        std::ostringstream os;
        os << "n,rateKey,rateConfusion,book,seed,mode,pe,peStdErr,uniformityGap,effSecrecy,"
              "combinedMetric,nonConfusion,nonStealth\n";
        for (const auto& row : rows) {
            const auto& r = row.report;
            os << row.n << ',' << csv_escape_number(rateKey) << ',' << csv_escape_number(row.r1)
               << ',' << row.book << ',' << row.seed << ',' << r.mode << ','
               << csv_escape_number(r.pe) << ',' << csv_escape_number(r.peStdErr) << ','
               << csv_escape_number(r.uniformityGap) << ',' << csv_escape_number(r.effSecrecy)
               << ',' << csv_escape_number(r.combinedMetric) << ','
               << csv_escape_number(r.nonConfusion) << ',' << csv_escape_number(r.nonStealth)
               << '\n';
        }
        Output csvOut{"csv", outPath};
        csvOut.emit(os.str(), resolved);
    } else {
        json doc{{"config", resolved},
                 {"report", json::parse(sskg::to_json(rows.front().report))}};
        out.emit(doc.dump(2), resolved);
    }
    return 0;
}

int run_budget(const std::string& configPath, const CLI::Option* dzOpt, double dz,
               const CLI::Option* dyOpt, double dy, const CLI::Option* xiOpt, double xi,
               const CLI::Option* nOpt, std::size_t n, const CLI::Option* omegaOpt, double omega,
               const CLI::Option* distOpt, std::string dist, const CLI::Option* fmtOpt,
               std::string format, const CLI::Option* outOpt, std::string outPath) {
    const json block = config_block(configPath, "budget");
    dz = resolve(dzOpt, dz, block, "dz");
    dy = resolve(dyOpt, dy, block, "dy");
    xi = resolve(xiOpt, xi, block, "xi");
    n = resolve(nOpt, n, block, "n");
    omega = resolve(omegaOpt, omega, block, "omega");
    dist = resolve(distOpt, dist, block, "dist");
    format = resolve(fmtOpt, format, block, "format");
    outPath = resolve(outOpt, outPath, block, "output");

    const sskg::BudgetParams params(n, xi, omega);
    if (!sskg::budget_regime_ok(params)) {
        std::cerr << "budget: omega_n sqrt(n) >= n; the scaling sequence is no longer "
                     "vanishing relative to the blocklength\n";
    }
    const double phase2 = sskg::covert_key_budget(dz, dy, params);
    const json resolved{{"subcommand", "budget"}, {"dz", dz},         {"dy", dy},
                        {"xi", xi},               {"n", n},           {"omega", omega},
                        {"dist", dist},           {"format", format}, {"output", outPath}};
    json doc{{"config", resolved},
             {"phase2KeyBits", phase2},
             {"regimeOk", sskg::budget_regime_ok(params)},
             {"schedule", nullptr}};
    std::optional<sskg::KeySchedule> schedule;
    if (!dist.empty()) {
        schedule = sskg::key_schedule(sskg::load_joint3(dist), params, dz, dy);
        doc["schedule"] = json::parse(sskg::to_json(*schedule));
    }
    Output out{format, outPath};
    if (format == "csv") {
        std::ostringstream os;
        os << "phase2KeyBits,regimeOk,feasible\n"
           << csv_escape_number(phase2) << ',' << (sskg::budget_regime_ok(params) ? "true" : "false")
           << ',' << (schedule ? (schedule->feasible ? "true" : "false") : std::string()) << '\n';
        out.emit(os.str(), resolved);
    } else {
        out.emit(doc.dump(2), resolved);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stealthy secret key generation toolbox"};
    app.require_subcommand(1);

    std::string configPath;
    app.add_option("--config", configPath, "JSON config file; flags override its values")
        ->check(CLI::ExistingFile);

    // bounds
    auto* cmdBounds = app.add_subcommand("bounds", "Secret key rate bounds of a source triple")->fallthrough();
    std::string boundsDist, boundsFmt = "json", boundsOut;
    auto* boundsDistOpt = cmdBounds->add_option("dist,--dist", boundsDist, "JointDist3 JSON file");
    auto* boundsFmtOpt = cmdBounds->add_option("--format", boundsFmt)->check(CLI::IsMember({"json", "csv"}));
    auto* boundsOutOpt = cmdBounds->add_option("--output", boundsOut, "also write the report here");

    // degrade
    auto* cmdDegrade = app.add_subcommand("degrade", "Degradedness classification with witness")->fallthrough();
    std::string degDist, degFmt = "json", degOut;
    double degTol = 1e-8, degMarkovTol = 1e-10;
    auto* degDistOpt = cmdDegrade->add_option("dist,--dist", degDist, "JointDist3 JSON file");
    auto* degTolOpt = cmdDegrade->add_option("--tol", degTol, "LP residual tolerance");
    auto* degMtolOpt = cmdDegrade->add_option("--markov-tol", degMarkovTol, "I(X;Z|Y) tolerance");
    auto* degFmtOpt = cmdDegrade->add_option("--format", degFmt)->check(CLI::IsMember({"json", "csv"}));
    auto* degOutOpt = cmdDegrade->add_option("--output", degOut);

    // order
    auto* cmdOrder = app.add_subcommand("order", "Usual stochastic order check for fading powers")->fallthrough();
    double mx = 1.0, wx = 1.0, mz = 1.0, wz = 1.0;
    std::size_t gridPoints = 256;
    std::string orderFmt = "json", orderOut;
    auto* mxOpt = cmdOrder->add_option("--mx", mx, "X fade shape");
    auto* wxOpt = cmdOrder->add_option("--wx", wx, "X fade spread");
    auto* mzOpt = cmdOrder->add_option("--mz", mz, "Z fade shape");
    auto* wzOpt = cmdOrder->add_option("--wz", wz, "Z fade spread");
    auto* gridOpt = cmdOrder->add_option("--grid", gridPoints, "quantile points per law");
    auto* orderFmtOpt = cmdOrder->add_option("--format", orderFmt)->check(CLI::IsMember({"json", "csv"}));
    auto* orderOutOpt = cmdOrder->add_option("--output", orderOut);

    // satellite
    auto* cmdSat = app.add_subcommand("satellite", "Sample the fading source and bound its key rate")->fallthrough();
    double sourceVar = 1.0;
    std::string fadeX = "constant:1", fadeZ = "constant:1", samplesOut, satFmt = "json", satOut;
    std::size_t satN = 10000, satBins = 16;
    std::uint64_t satSeed = 0;
    auto* svOpt = cmdSat->add_option("--source-var", sourceVar, "source variance");
    auto* fxOpt = cmdSat->add_option("--fade-x", fadeX, "constant:<a> or nakagami:<m>:<w>");
    auto* fzOpt = cmdSat->add_option("--fade-z", fadeZ, "constant:<a> or nakagami:<m>:<w>");
    auto* satNOpt = cmdSat->add_option("--n", satN, "number of samples");
    auto* satBinsOpt = cmdSat->add_option("--bins", satBins, "quantizer bins per coordinate");
    auto* satSeedOpt = cmdSat->add_option("--seed", satSeed);
    auto* samplesOpt = cmdSat->add_option("--samples-out", samplesOut, "write raw samples CSV here");
    auto* satFmtOpt = cmdSat->add_option("--format", satFmt)->check(CLI::IsMember({"json", "csv"}));
    auto* satOutOpt = cmdSat->add_option("--output", satOut);

    // simulate
    auto* cmdSim = app.add_subcommand("simulate", "Run the discussion protocol on codebooks")->fallthrough();
    std::string simDist, simMode = "auto", simFmt = "json", simOut;
    std::vector<std::size_t> simNs{2};
    std::vector<double> simR1s{0.5};
    double simR = 0.5;
    std::size_t simBooks = 1, simTrials = 100000;
    std::uint64_t simSeed = 0;
    auto* simDistOpt = cmdSim->add_option("dist,--dist", simDist, "JointDist3 JSON file");
    auto* simNOpt = cmdSim->add_option("--n", simNs, "blocklengths to sweep");
    auto* simROpt = cmdSim->add_option("--rate-key", simR, "key rate R");
    auto* simR1Opt = cmdSim->add_option("--rate-confusion", simR1s, "confusion rates to sweep");
    auto* simBooksOpt = cmdSim->add_option("--books", simBooks, "codebooks per configuration");
    auto* simSeedOpt = cmdSim->add_option("--seed", simSeed, "base codebook seed");
    auto* simTrialsOpt = cmdSim->add_option("--trials", simTrials, "Monte Carlo trials");
    auto* simModeOpt = cmdSim->add_option("--mode", simMode)->check(CLI::IsMember({"auto", "exact", "mc"}));
    auto* simFmtOpt = cmdSim->add_option("--format", simFmt)->check(CLI::IsMember({"json", "csv"}));
    auto* simOutOpt = cmdSim->add_option("--output", simOut);

    // budget
    auto* cmdBudget = app.add_subcommand("budget", "Covert key budget and two-phase schedule")->fallthrough();
    double dz = 0.0, dy = 0.0, xi = 0.1, omega = 1.0;
    std::size_t budgetN = 1;
    std::string budgetDist, budgetFmt = "json", budgetOut;
    auto* dzOpt = cmdBudget->add_option("--dz", dz, "adversary output divergence");
    auto* dyOpt = cmdBudget->add_option("--dy", dy, "receiver output divergence");
    auto* xiOpt = cmdBudget->add_option("--xi", xi, "slack in (0,1)");
    auto* budgetNOpt = cmdBudget->add_option("--n", budgetN, "blocklength");
    auto* omegaOpt = cmdBudget->add_option("--omega", omega, "scaling sequence value");
    auto* budgetDistOpt = cmdBudget->add_option("--dist", budgetDist,
                                                "source file for the full schedule (optional)");
    auto* budgetFmtOpt = cmdBudget->add_option("--format", budgetFmt)->check(CLI::IsMember({"json", "csv"}));
    auto* budgetOutOpt = cmdBudget->add_option("--output", budgetOut);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cmdBounds->parsed()) {
            return run_bounds(configPath, boundsDistOpt, boundsDist, boundsFmtOpt, boundsFmt,
                              boundsOutOpt, boundsOut);
        }
        if (cmdDegrade->parsed()) {
            return run_degrade(configPath, degDistOpt, degDist, degTolOpt, degTol, degMtolOpt,
                               degMarkovTol, degFmtOpt, degFmt, degOutOpt, degOut);
        }
        if (cmdOrder->parsed()) {
            return run_order(configPath, mxOpt, mx, wxOpt, wx, mzOpt, mz, wzOpt, wz, gridOpt,
                             gridPoints, orderFmtOpt, orderFmt, orderOutOpt, orderOut);
        }
        if (cmdSat->parsed()) {
            return run_satellite(configPath, svOpt, sourceVar, fxOpt, fadeX, fzOpt, fadeZ,
                                 satNOpt, satN, satBinsOpt, satBins, satSeedOpt, satSeed,
                                 samplesOpt, samplesOut, satFmtOpt, satFmt, satOutOpt, satOut);
        }
        if (cmdSim->parsed()) {
            return run_simulate(configPath, simDistOpt, simDist, simNOpt, simNs, simROpt, simR,
                                simR1Opt, simR1s, simBooksOpt, simBooks, simSeedOpt, simSeed,
                                simTrialsOpt, simTrials, simModeOpt, simMode, simFmtOpt, simFmt,
                                simOutOpt, simOut);
        }
        if (cmdBudget->parsed()) {
            return run_budget(configPath, dzOpt, dz, dyOpt, dy, xiOpt, xi, budgetNOpt, budgetN,
                              omegaOpt, omega, budgetDistOpt, budgetDist, budgetFmtOpt, budgetFmt,
                              budgetOutOpt, budgetOut);
        }
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const sskg::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const sskg::guard_error& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return 2;
    } catch (const sskg::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
