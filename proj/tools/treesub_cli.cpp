#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "treesub/acceptance.hpp"
#include "treesub/coded_tree.hpp"
#include "treesub/gw.hpp"
#include "treesub/harness.hpp"
#include "treesub/looptree.hpp"
#include "treesub/ltsnake.hpp"
#include "treesub/map.hpp"
#include "treesub/rng.hpp"
#include "treesub/snake.hpp"

using namespace treesub;

namespace {

// "-" or empty writes to stdout
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct SimulateOpts {
    std::string mode = "excursion", kind = "brownian", out;
    size_t steps = 0;
    double dt = 0.0, time = 1.0;
    std::uint64_t seed = 1;
};

int cmd_simulate(const SimulateOpts& o) {
    if (o.dt <= 0.0 && o.steps == 0) throw std::invalid_argument("simulate: give --steps or --dt");
    double dt = o.dt > 0.0 ? o.dt : 1.0 / static_cast<double>(o.steps);
    SnakeConfig cfg = SnakeConfig::with_dt(dt, o.seed);
    if (o.mode == "excursion") {
        cfg.mode = SnakeMode::NormalizedExcursion;
        cfg.steps = o.steps ? o.steps : static_cast<size_t>(1.0 / dt);
        cfg.steps += cfg.steps % 2;
        auto life = sample_excursion(cfg, cfg.steps);
        if (o.kind == "lt") {
            save_lt_trace(o.out, run_lt_snake(cfg, life));
        } else {
            save_trace(o.out, run_snake(cfg, life));
        }
        std::cout << "wrote " << o.out << " (" << cfg.steps + 1 << " points)\n";
        return 0;
    }
    if (o.kind == "lt") throw std::invalid_argument("simulate: --kind lt needs --mode excursion");
    cfg.mode = SnakeMode::ReflectedRun;
    cfg.total_time = o.time;
    auto run = run_reflected(cfg);
    for (size_t i = 0; i < run.traces.size(); ++i) {
        save_trace(o.out + "." + std::to_string(i), run.traces[i]);
    }
    std::cout << "wrote " << run.traces.size() << " excursions as " << o.out << ".<k>, local time "
              << run.local_time << ", truncated " << run.truncated << "\n";
    return 0;
}

int cmd_subordinate(const std::string& in, const std::string& by, const std::string& out) {
    CodingFunction c;
    if (by == "lambda") {
        c = subordinate_by_lambda(load_lt_trace(in));
    } else {
        auto tr = load_trace(in);
        TreeView t(CodingFunction{tr.sigma(), tr.zeta});
        std::vector<double> g;
        if (by == "max") {
            g = tr.zbar;
        } else if (by == "min") {
            for (double z : tr.zmin) g.push_back(-z);
        } else {
            throw std::invalid_argument("subordinate: --by must be max, min or lambda");
        }
        c = subordinate_coding(t, g);
    }
    save_coding(out, c);
    std::cout << "wrote " << out << " (sigma " << c.sigma << ", " << c.h.size() << " points)\n";
    return 0;
}

int cmd_skeleton(const std::string& in, int n, const std::string& series, const std::string& out) {
    auto tr = load_trace(in);
    std::vector<double> x;
    if (series == "max") {
        x = tr.zbar;
    } else if (series == "min") {
        for (double z : tr.zmin) x.push_back(-z);
    } else if (series == "lifetime") {
        x = tr.zeta;
    } else {
        throw std::invalid_argument("skeleton: --series must be max, min or lifetime");
    }
    Output o(out);
    write_skeleton_csv(o.os(), dyadic_crossings(x, n, 0.0, tr.dt));
    return 0;
}

struct MapOpts {
    std::string in, op, out;
    size_t pairs = 20, sample = 2000;
    double r = 0.0;
    std::uint64_t seed = 1;
};

int cmd_map(const MapOpts& o) {
    MapView m(load_trace(o.in));
    Output out(o.out);
    auto& os = out.os();
    if (o.op == "dcirc" || o.op == "dstar") {
        CounterRng rng(o.seed, 0);
        std::vector<size_t> ends;
        for (size_t i = 0; i < 2 * o.pairs; ++i) ends.push_back(rng.next_u64() % m.size());
        auto sample = merge_samples(stratified_sample(m.size(), o.sample), merge_samples(ends, ends));
        bool dstar = o.op == "dstar";
        os << (dstar ? "s,t,d_circ,d_star_upper\n" : "s,t,d_circ\n")
           << std::setprecision(std::numeric_limits<double>::max_digits10);
        for (size_t i = 0; i < o.pairs; ++i) {
            size_t s = ends[2 * i], t = ends[2 * i + 1];
            os << s << ',' << t << ',' << d_circ(m, s, t);
            if (dstar) os << ',' << d_star_upper(m, sample, s, t);
            os << '\n';
        }
    } else if (o.op == "net") {
        write_net_csv(os, m, metric_net_times(m));
    } else if (o.op == "hull") {
        os << "t,zhat\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
        for (size_t t : hull_boundary(m, o.r)) os << t << ',' << m.zhat(t) << '\n';
    } else if (o.op == "components") {
        write_components_csv(os, components_and_loops(m));
    } else {
        throw std::invalid_argument("map: unknown --op " + o.op);
    }
    return 0;
}

int cmd_looptree(const std::string& in, int nmax, const std::string& out) {
    auto tr = load_trace(in);
    LooptreeView v(build_gamma(tr, nmax, Extremum::Min));
    Output o(out);
    write_looptree_csv(o.os(), v);
    return 0;
}

int cmd_test(const std::string& name, const std::string& config, bool explore, bool quiet) {
    ExperimentConfig cfg;
    if (!config.empty()) cfg = ExperimentConfig::load(config);
    std::vector<CriterionResult> results;
    if (name == "all") {
        results = run_acceptance(cfg, explore, quiet ? nullptr : &std::cout);
    } else {
        results.push_back(run_criterion(name, cfg, explore));
        if (!quiet) print_criterion(std::cout, results.back());
    }
    bool ok = true;
    for (const auto& r : results) ok = ok && r.pass();
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treesub: subordinated trees, Brownian snake and map simulations"};
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* s = app.add_subcommand("simulate", "simulate a lattice snake and save its trace");
    s->add_option("--mode", sim.mode, "excursion or reflected")
        ->check(CLI::IsMember({"excursion", "reflected"}));
    s->add_option("--kind", sim.kind, "brownian, or lt for the local-time snake")
        ->check(CLI::IsMember({"brownian", "lt"}));
    s->add_option("--steps", sim.steps, "lifetime steps of a normalized excursion");
    s->add_option("--dt", sim.dt, "lifetime time step; dh = sqrt(dt)");
    s->add_option("--time", sim.time, "reflected mode: total lifetime time");
    s->add_option("--seed", sim.seed);
    s->add_option("--out", sim.out)->required();

    std::string sub_in, sub_by = "max", sub_out;
    auto* sb = app.add_subcommand("subordinate", "subordinate the lifetime tree of a trace");
    sb->add_option("--in", sub_in)->required();
    sb->add_option("--by", sub_by)->check(CLI::IsMember({"max", "min", "lambda"}));
    sb->add_option("--out", sub_out)->required();

    std::string sk_in, sk_out, sk_series = "max";
    int sk_n = 3;
    auto* sk = app.add_subcommand("skeleton", "dyadic skeleton of a trace series as CSV");
    sk->add_option("--in", sk_in)->required();
    sk->add_option("--n", sk_n)->check(CLI::Range(0, 30));
    sk->add_option("--series", sk_series, "max, min or lifetime");
    sk->add_option("--out", sk_out);

    MapOpts mo;
    auto* mp = app.add_subcommand("map", "map pseudo-distances, metric net, hull and components");
    mp->add_option("--in", mo.in)->required();
    mp->add_option("--op", mo.op)->required()->check(
        CLI::IsMember({"dcirc", "dstar", "net", "hull", "components"}));
    mp->add_option("--pairs", mo.pairs, "random pairs for dcirc / dstar");
    mp->add_option("--sample", mo.sample, "chain sample size for dstar");
    mp->add_option("--r", mo.r, "hull radius");
    mp->add_option("--seed", mo.seed);
    mp->add_option("--out", mo.out);

    std::string lt_in, lt_out;
    int lt_n = 6;
    auto* lt = app.add_subcommand("looptree", "looptree coding of a trace as CSV");
    lt->add_option("--in", lt_in)->required();
    lt->add_option("--nmax", lt_n)->check(CLI::Range(0, 30));
    lt->add_option("--out", lt_out);

    std::string t_name, t_config;
    bool t_explore = false, t_quiet = false;
    auto* ts = app.add_subcommand("test", "run an acceptance test by name or number, or all");
    ts->add_option("name", t_name)->required();
    ts->add_option("--config", t_config, "key = value file");
    ts->add_flag("--explore", t_explore, "fresh seeds instead of pinned ones");
    ts->add_flag("--quiet", t_quiet);

    auto* ls = app.add_subcommand("list", "list the acceptance tests");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*s) return cmd_simulate(sim);
        if (*sb) return cmd_subordinate(sub_in, sub_by, sub_out);
        if (*sk) return cmd_skeleton(sk_in, sk_n, sk_series, sk_out);
        if (*mp) return cmd_map(mo);
        if (*lt) return cmd_looptree(lt_in, lt_n, lt_out);
        if (*ts) return cmd_test(t_name, t_config, t_explore, t_quiet);
        if (*ls) {
            for (const auto& c : acceptance_criteria()) {
                std::cout << std::setw(3) << c.number << "  " << std::left << std::setw(15) << c.name
                          << std::right << c.summary << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
