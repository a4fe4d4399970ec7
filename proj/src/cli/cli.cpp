#include "odo/cli.hpp"

#include "odo/example_d.hpp"
#include "odo/operator_lab.hpp"
#include "odo/report_io.hpp"
#include "odo/witness.hpp"
#include "specs.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

namespace odo {

namespace {

using nlohmann::json;

struct Globals {
    std::string tol = "1/1099511627776";
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::size_t cap = kDefaultDepthCap;
    std::string system = "example-d";
    std::string out_path;
    std::string csv_path;
    bool timing = false;
};

struct VerifyArgs {
    std::string claim;
    unsigned k = 1;
    unsigned l = 2;
    std::string window = "proof";
    std::string window_n;
    std::size_t horizon = 64;
    std::size_t samples = 1000;
    std::size_t smallest = 10;
    std::string epsilon = "1/4";
    bool carry = false;
    unsigned provider_k = 1;
    std::size_t count = 20;
    std::size_t max_depth = 8;
    std::string cylinder = "0,1";
    std::string phi;
    std::string lambda = "1";
    unsigned p = 1;
    unsigned kmax = 6;
};

struct MeasureArgs {
    std::string set;
    std::string n = "1";
    std::string direction = "preimage";
};

struct OrbitArgs {
    std::string indicator;
    std::string phi;
    unsigned p = 2;
    std::size_t steps = 16;
    std::string threshold;
};

// Verdict-bearing records decide the exit code.
struct Outcome {
    std::vector<json> records;
    bool refuted = false;
    bool inconclusive = false;

    void add(const ClaimReport& rep) { add(report_json(rep), rep.verdict); }
    void add(json record, Verdict v) {
        records.push_back(std::move(record));
        if (v == Verdict::Refuted) refuted = true;
        if (v == Verdict::Inconclusive || v == Verdict::HypothesesNotMet) inconclusive = true;
    }
    int exit_code() const {
        if (refuted) return kExitRefuted;
        if (inconclusive) return kExitInconclusive;
        return kExitVerified;
    }
};

void require_marker_system(const Globals& g) {
    if (g.system != "example-d") throw std::invalid_argument("this claim needs --system example-d");
}

ScanOptions scan_options(const Globals& g, const VerifyArgs& v, const Rational& tol) {
    ScanOptions o;
    o.samples = v.samples;
    o.smallest = v.smallest;
    o.seed = g.seed;
    o.tol = tol;
    o.jobs = g.jobs;
    o.cap = g.cap;
    return o;
}

void write_csv(const Globals& g, const std::vector<ScanRow>& rows) {
    if (g.csv_path.empty()) return;
    std::ofstream f(g.csv_path);
    if (!f) throw std::invalid_argument("cannot write " + g.csv_path);
    write_scan_csv(f, rows);
}

Outcome run_verify(const Globals& g, const VerifyArgs& v, const MeasureSeq& ms, const Rational& tol) {
    Outcome o;
    const std::string& c = v.claim;
    if (c == "star") {
        o.add(condition_star(ms, v.horizon));
    } else if (c == "nonatomic") {
        o.add(nonatomic_check(ms, v.horizon));
    } else if (c == "claim1") {
        o.add(claim1_verify(v.k));
    } else if (c == "claim2") {
        std::optional<Integer> window;
        if (!v.window_n.empty()) window = parse_integer(v.window_n);
        o.add(claim2_density(v.k, window));
    } else if (c == "bk-chain") {
        require_marker_system(g);
        o.add(bk_measure_chain(v.kmax, tol));
    } else if (c == "dc1") {
        require_marker_system(g);
        std::vector<ScanRow> rows;
        o.add(dc1_scan(v.k, v.l, scan_options(g, v, tol), &rows));
        write_csv(g, rows);
    } else if (c == "dc2") {
        require_marker_system(g);
        Dc2Window w;
        if (v.window == "proof")
            w = Dc2Window::Proof;
        else if (v.window == "statement")
            w = Dc2Window::Statement;
        else
            throw std::invalid_argument("--window must be statement or proof");
        std::vector<ScanRow> rows;
        o.add(dc2_count(v.k, w, scan_options(g, v, tol), &rows));
        write_csv(g, rows);
    } else if (c == "periodic") {
        o.add(periodicity_suite(ms.base(), v.count, v.max_depth, g.seed));
    } else if (c == "conservative") {
        o.add(conservativity_report(Prefix::from_digits(ms.base(), cli::parse_digits(v.cylinder)), ms));
    } else if (c == "witness") {
        require_marker_system(g);
        WitnessProvider prov = marker_witness_provider(v.provider_k);
        prov.prefer_carry = v.carry;
        const WitnessPair w = hc_witness(prov, parse_rational(v.epsilon), tol, g.cap);
        o.add(witness_json(w), w.report.verdict);
    } else if (c == "sc-gap") {
        if (v.phi.empty()) throw std::invalid_argument("sc-gap needs --phi");
        const SimpleFunction phi = cli::parse_phi(v.phi, ms.base());
        o.add(sc_gap_checker(phi, parse_rational(v.lambda), Integer(v.k), parse_rational(v.epsilon), v.p, ms));
    }
    return o;
}

Outcome run_measure(const Globals& g, const MeasureArgs& a, const MeasureSeq& ms, const Rational& tol) {
    Direction dir;
    if (a.direction == "preimage")
        dir = Direction::Preimage;
    else if (a.direction == "image")
        dir = Direction::Image;
    else
        throw std::invalid_argument("--direction must be preimage or image");
    const PatternSet s = cli::parse_set(a.set, ms, g.system == "example-d");
    const Integer n = parse_integer(a.n);
    if (n < 0) throw std::invalid_argument("--n must be >= 0");
    const CertifiedValue cv = TranslateEngine(s, tol, g.cap).measure(n, dir);
    json j;
    j["claim"] = "measure";
    j["params"] = {{"set", a.set}, {"n", to_string(n)}, {"direction", a.direction}, {"tolerance", to_string(tol)}};
    j["enclosure"] = interval_json(cv.enclosure);
    j["cap_reached"] = cv.cap_reached;
    Outcome o;
    o.add(std::move(j), cv.cap_reached ? Verdict::Inconclusive : Verdict::Verified);
    return o;
}

Outcome run_orbit(const Globals& g, const OrbitArgs& a, const MeasureSeq& ms) {
    if (a.indicator.empty() == a.phi.empty()) throw std::invalid_argument("orbit needs exactly one of --indicator, --phi");
    const SimpleFunction phi =
        a.phi.empty() ? SimpleFunction::indicator(Prefix::from_digits(ms.base(), cli::parse_digits(a.indicator)))
                      : cli::parse_phi(a.phi, ms.base());
    std::optional<Rational> threshold;
    if (!a.threshold.empty()) threshold = parse_rational(a.threshold);
    const OrbitSummary s = orbit_norms(phi, ms, a.p, a.steps, threshold, g.jobs);
    json j = orbit_json(s);
    j["params"] = {{"p", std::to_string(a.p)}, {"steps", std::to_string(a.steps)}};
    if (!g.csv_path.empty()) {
        std::ofstream f(g.csv_path);
        if (!f) throw std::invalid_argument("cannot write " + g.csv_path);
        write_orbit_csv(f, s);
    }
    Outcome o;
    o.records.push_back(std::move(j));
    return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification of odometer composition-operator claims", "odometer"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol", g.tol, "enclosure width target (rational)")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for sampled scans")->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    app.add_option("--cap", g.cap, "depth cap for tail refinement")->capture_default_str();
    app.add_option("--system", g.system, "example-d | uniform:A | dyadic:B[:Q] | table:FILE")->capture_default_str();
    app.add_option("--out", g.out_path, "write records to this file");
    app.add_option("--csv", g.csv_path, "write the scan table to this file");
    app.add_flag("--timing", g.timing, "add wall time to records");
    app.set_config("--config", "", "key=value configuration file; flags take precedence")->envname("ODOMETER_CONFIG");

    VerifyArgs v;
    auto* verify = app.add_subcommand("verify", "run a verifier");
    verify->add_option("claim", v.claim, "claim id")
        ->required()
        ->check(CLI::IsMember({"star", "nonatomic", "claim1", "claim2", "bk-chain", "dc1", "dc2", "periodic",
                               "conservative", "witness", "sc-gap"}));
    verify->add_option("--k", v.k, "k (B_k, I_k, sc-gap shift)")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--l", v.l, "l for dc1")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--window", v.window, "dc2 window: statement | proof")->capture_default_str();
    verify->add_option("--window-n", v.window_n, "claim2 window N");
    verify->add_option("--horizon", v.horizon, "explicit horizon for star / nonatomic")->capture_default_str();
    verify->add_option("--samples", v.samples, "seeded samples")->capture_default_str();
    verify->add_option("--smallest", v.smallest, "smallest elements included in dc1")->capture_default_str();
    verify->add_option("--epsilon", v.epsilon, "epsilon (witness, sc-gap)")->capture_default_str();
    verify->add_flag("--carry", v.carry, "witness: prefer translates that carry past N");
    verify->add_option("--provider-k", v.provider_k, "witness: use B_k")->capture_default_str();
    verify->add_option("--count", v.count, "periodic: random functions")->capture_default_str();
    verify->add_option("--max-depth", v.max_depth, "periodic: largest depth")->capture_default_str();
    verify->add_option("--cylinder", v.cylinder, "conservative: cylinder digits")->capture_default_str();
    verify->add_option("--phi", v.phi, "sc-gap: values on all depth-D cylinders");
    verify->add_option("--lambda", v.lambda, "sc-gap: lambda")->capture_default_str();
    verify->add_option("--p", v.p, "sc-gap: integer p")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_option("--kmax", v.kmax, "bk-chain: largest k")->capture_default_str()->check(CLI::PositiveNumber);

    MeasureArgs m;
    auto* measure = app.add_subcommand("measure", "certified measure of f^-n(S) or f^n(S)");
    measure->add_option("--set", m.set, "B<k> | full | cylinder digits")->required();
    measure->add_option("--n", m.n, "translate")->capture_default_str();
    measure->add_option("--direction", m.direction, "preimage | image")->capture_default_str();

    OrbitArgs ob;
    auto* orbit = app.add_subcommand("orbit", "exact ||T^n phi||_p^p for n = 1..steps");
    orbit->add_option("--indicator", ob.indicator, "cylinder digits of an indicator");
    orbit->add_option("--phi", ob.phi, "values on all depth-D cylinders");
    orbit->add_option("--p", ob.p, "integer p")->capture_default_str()->check(CLI::PositiveNumber);
    orbit->add_option("--steps", ob.steps, "orbit length")->capture_default_str()->check(CLI::PositiveNumber);
    orbit->add_option("--threshold", ob.threshold, "count entries below this value");

    VerifyArgs wv;
    auto* witness = app.add_subcommand("witness", "construct and certify a hypercyclicity witness");
    witness->add_option("--epsilon", wv.epsilon, "epsilon in (0, 1)")->capture_default_str();
    witness->add_flag("--carry", wv.carry, "prefer translates that carry past N");
    witness->add_option("--provider-k", wv.provider_k, "use B_k")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitVerified : kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        const Rational tol = parse_rational(g.tol);
        if (tol <= 0) throw std::invalid_argument("--tol must be positive");
        const MeasureSeq ms = cli::parse_system(g.system);
        if (verify->parsed()) {
            outcome = run_verify(g, v, ms, tol);
        } else if (measure->parsed()) {
            outcome = run_measure(g, m, ms, tol);
        } else if (orbit->parsed()) {
            outcome = run_orbit(g, ob, ms);
        } else {
            wv.claim = "witness";
            outcome = run_verify(g, wv, ms, tol);
        }
    } catch (const ProviderFailure& e) {
        err << "provider failure: " << e.what() << '\n';
        return kExitInconclusive;
    } catch (const CertificationFailure& e) {
        err << "certification failure: " << e.what() << '\n';
        return kExitRefuted;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ofstream file;
    if (!g.out_path.empty()) {
        file.open(g.out_path);
        if (!file) {
            err << "error: cannot write " << g.out_path << '\n';
            return kExitUsage;
        }
    }
    std::ostream& sink = g.out_path.empty() ? out : file;
    for (auto& r : outcome.records) {
        if (g.timing) r["wall_time_s"] = seconds;
        write_record(sink, r);
    }
    return outcome.exit_code();
}

}  // namespace odo
