// Command-line front end: each verification pipeline as a subcommand, with
// deterministic JSON/CSV artifacts (same config + seed => byte-identical
// output). CONELAB_THREADS caps worker threads.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conelab/conelab.hpp"

namespace fs = std::filesystem;
using namespace conelab;

namespace {

struct CommonOpts {
    long n = kDefaultTruncation;
    long kmax = 30;
    std::string basis = "scaled";
    std::string iso = "identity";
    std::string grid = "1/4,1/2,3/4";
    long budget = 10000;
    std::uint64_t seed = 1;
    std::string out = ".";
    long coords = 6;
};

std::vector<Rational> parse_grid(const std::string& s) {
    std::vector<Rational> lambdas;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        Rational l = Rational::parse(item);
        if (l.sign() < 0 || l > Rational(1))
            throw CLI::ValidationError("--grid", "lambda outside [0,1]: " + item);
        lambdas.push_back(std::move(l));
    }
    if (lambdas.empty()) throw CLI::ValidationError("--grid", "empty lambda list");
    return lambdas;
}

void ensure_known_basis(const std::string& name) {
    if (name != "canonical" && name != "scaled" && name != "summing" && name != "difference")
        throw CLI::ValidationError("--basis", "unknown basis: " + name);
}

fs::path prepare_out(const CommonOpts& o) {
    fs::path dir(o.out);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& file, const std::string& content) {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + file.string());
    os << content;
}

json config_echo(const CommonOpts& o) {
    return {{"n", o.n},          {"kmax", o.kmax}, {"basis", o.basis}, {"iso", o.iso},
            {"grid", o.grid},    {"budget", o.budget},
            {"seed", o.seed},    {"coords", o.coords}};
}

CounterexampleConfig make_config(const CommonOpts& o) {
    CounterexampleConfig cfg = CounterexampleConfig::defaults(o.kmax, o.n);
    cfg.basis = basis_by_name(o.basis, o.n);
    cfg.lambdas = parse_grid(o.grid);
    cfg.validate();
    return cfg;
}

int cmd_construct(const CommonOpts& o) {
    CounterexampleConfig cfg = make_config(o);
    fs::path dir = prepare_out(o);
    std::vector<SeqVector> nodes = generate_nodes(cfg);

    {
        std::ostringstream os;
        os << "k";
        for (long j = 1; j <= cfg.truncation; ++j) os << ",c" << j;
        os << "\n";
        for (long k = 1; k <= cfg.k_max; ++k) {
            os << k;
            const SeqVector& y = nodes[static_cast<std::size_t>(k - 1)];
            for (long j = 1; j <= y.size(); ++j) os << "," << y.coord(j).to_string();
            os << "\n";
        }
        write_text(dir / "nodes.csv", os.str());
    }
    {
        std::ostringstream os;
        os << "k,residual_sup_lower,residual_sup_upper\n";
        for (long k = 1; k + 2 <= cfg.k_max; ++k) {
            SeqVector residual = subtract(
                subtract(subtract(scale(Rational(2), nodes[static_cast<std::size_t>(k)]),
                                  nodes[static_cast<std::size_t>(k - 1)]),
                         nodes[static_cast<std::size_t>(k + 1)]),
                cfg.basis.element(k));
            NormInterval ni = residual.norm();
            os << k << "," << ni.lower.to_string() << "," << ni.upper.to_string() << "\n";
        }
        write_text(dir / "residuals.csv", os.str());
    }
    {
        VectorPath path = VectorPath::harmonic_knots(nodes);
        std::ostringstream os;
        os << "k,t_k";
        for (long j = 1; j <= cfg.truncation; ++j) os << ",c" << j;
        os << "\n";
        for (long k = 1; k <= cfg.k_max; ++k) {
            SeqVector v = path.eval(path.knot(k));
            os << k << "," << path.knot(k).to_string();
            for (long j = 1; j <= v.size(); ++j) os << "," << v.coord(j).to_string();
            os << "\n";
        }
        write_text(dir / "path_nodes.csv", os.str());
    }
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    CounterexampleConfig cfg = make_config(o);
    PipelineReport report = run_pipeline(cfg);
    json out = to_json(report);
    out["config"] = config_echo(o);
    fs::path dir = prepare_out(o);
    write_text(dir / "report.json", out.dump(2) + "\n");
    std::cout << "verdict: " << report.verdict << "\n";
    return report.verdict == "counterexample-certified" ? 0 : 1;
}

int cmd_constants(const CommonOpts& o) {
    fs::path dir = prepare_out(o);
    BasisSystem basis = basis_by_name(o.basis, std::max(o.n, o.kmax));

    UncondStrategy strategy;
    strategy.seed = o.seed;
    auto uncond = unconditionality_lower_bound(basis, o.kmax, strategy);
    json uj = to_json(uncond);
    uj["basis"] = o.basis;
    uj["config"] = config_echo(o);
    write_text(dir / "unconditionality.json", uj.dump(2) + "\n");

    auto normal = normality_lower_bound(ConeSpec(basis, +1), o.kmax, {o.budget, o.seed});
    json nj = to_json(normal);
    nj["basis"] = o.basis;
    nj["config"] = config_echo(o);
    write_text(dir / "normality.json", nj.dump(2) + "\n");

    {
        std::ostringstream os;
        os << "n,ratio\n";
        for (long n = 1; n <= 10; ++n)
            os << n << "," << c1_example_ratio(n).to_string() << "\n";
        write_text(dir / "c1_ratios.csv", os.str());
    }
    std::cout << "unconditionality lower bound: " << uncond.lower_bound.to_string() << "\n"
              << "normality lower bound: " << normal.lower_bound.to_string() << "\n";
    return 0;
}

int cmd_trajectory(const CommonOpts& o) {
    CounterexampleConfig cfg = make_config(o);
    fs::path dir = prepare_out(o);
    auto quotients = difference_quotients(cfg);
    const long jmax = std::min(o.coords, cfg.truncation);
    {
        std::ostringstream os;
        os << "k,t_k";
        for (long j = 1; j <= jmax; ++j) os << ",coord_" << j;
        os << "\n";
        for (const auto& [k, q] : quotients) {
            os << k << "," << Rational(1, k).to_decimal_string(20);
            for (long j = 1; j <= jmax; ++j) os << "," << q.coord(j).to_decimal_string(20);
            os << "\n";
        }
        write_text(dir / "trajectory.csv", os.str());
    }
    {
        NonconvergenceReport nr = nonconvergence_report(cfg, jmax);
        std::ostringstream os;
        os << "k,m,gap_lower,bound\n";
        for (const auto& e : nr.gaps)
            os << e.k << "," << e.m << "," << e.gap_lower.to_decimal_string(20) << ","
               << e.bound.to_decimal_string(20) << "\n";
        write_text(dir / "gaps.csv", os.str());
    }
    return 0;
}

int cmd_iso_transfer(const CommonOpts& o) {
    CounterexampleConfig cfg = make_config(o);
    fs::path dir = prepare_out(o);
    LinearIso iso = iso_by_name(o.iso, cfg.truncation + 2);

    VectorPath path = build_main_path(cfg);
    ConeSpec minus_k(cfg.basis, -1);
    auto grid = knot_pair_grid(path.knots(), cfg.lambdas);
    TransferReport transfer = transfer_convexity(iso, path, minus_k, grid, cfg.k_max);

    PushforwardCone pushed{ConeSpec(cfg.basis, +1), iso};
    auto normality = pushforward_normality_check(pushed, cfg.k_max, {o.budget, o.seed});

    bool round_trip = true;
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < 25 && round_trip; ++i) {
        std::vector<Rational> c;
        for (long j = 0; j < 10; ++j)
            c.emplace_back(static_cast<long long>(rng() % 19) - 9,
                           static_cast<long long>(rng() % 6) + 1);
        SeqVector v = SeqVector::make(Space::C0, std::move(c));
        round_trip = iso.inverse(iso.forward(v)) == v;
    }

    json out{{"iso", to_json(iso)},
             {"transfer", to_json(transfer)},
             {"pushforward_normality", to_json(normality)},
             {"round_trip_exact", round_trip},
             {"config", config_echo(o)}};
    write_text(dir / "iso_transfer.json", out.dump(2) + "\n");

    const bool ok = transfer.pass_preserved && transfer.margins_match &&
                    normality.within_bound && round_trip;
    std::cout << (ok ? "iso-transfer checks passed" : "iso-transfer checks FAILED") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conelab: exact-rational cone-convexity constructions in c0 at finite truncation"};
    app.require_subcommand(1);
    app.footer("Environment: CONELAB_THREADS caps worker threads.");

    CommonOpts o;
    auto add_common = [&](CLI::App* sub, bool wants_iso = false) {
        sub->add_option("--n", o.n, "coordinate truncation level");
        sub->add_option("--kmax", o.kmax, "node count / term count");
        sub->add_option("--basis", o.basis, "basis: canonical|scaled|summing|difference");
        if (wants_iso)
            sub->add_option("--iso", o.iso, "isomorphism: identity|diagonal|summing-change");
        sub->add_option("--grid", o.grid, "comma-separated lambda weights in [0,1]");
        sub->add_option("--budget", o.budget, "search trials for normality estimates");
        sub->add_option("--seed", o.seed, "random seed for sampled searches");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--coords", o.coords, "coordinate count in plot files");
    };

    CLI::App* c_construct = app.add_subcommand("construct", "emit the y_k table, recovery residuals and path node values");
    add_common(c_construct);
    CLI::App* c_verify = app.add_subcommand("verify", "run the full pipeline and write report.json");
    add_common(c_verify);
    CLI::App* c_constants = app.add_subcommand("constants", "basis-constant lower bounds (unconditionality, normality, C1 ratios)");
    add_common(c_constants);
    CLI::App* c_trajectory = app.add_subcommand("trajectory", "plot points: quotient coordinates vs k and gap bounds vs (k,m)");
    add_common(c_trajectory);
    CLI::App* c_iso = app.add_subcommand("iso-transfer", "convexity and normality transfer through an isomorphism");
    add_common(c_iso, /*wants_iso=*/true);

    try {
        app.parse(argc, argv);
        ensure_known_basis(o.basis);
        if (c_construct->parsed()) return cmd_construct(o);
        if (c_verify->parsed()) return cmd_verify(o);
        if (c_constants->parsed()) return cmd_constants(o);
        if (c_trajectory->parsed()) return cmd_trajectory(o);
        if (c_iso->parsed()) return cmd_iso_transfer(o);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
