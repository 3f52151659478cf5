// skewrank: exact minimum/maximum skew rank toolkit for small graphs.
// Structured output is JSON on stdout; human-readable summaries go to stderr.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "skewrank/engine.hpp"
#include "skewrank/io.hpp"
#include "skewrank/verify.hpp"

namespace {

skewrank::Graph load_graph(const std::string& path) {
    std::ostringstream text;
    if (path == "-") {
        text << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw skewrank::ParseError(0, "cannot open " + path);
        text << in.rdbuf();
    }
    return skewrank::parse_graph(text.str());
}

long parse_long(const std::string& text, const std::string& what) {
    try {
        size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw skewrank::BadParameters("expected an integer for " + what + ", got '" + text + "'");
    }
}

std::vector<long> parse_primes(const std::string& csv) {
    std::vector<long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_long(item, "--primes"));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace skewrank;
    CLI::App app{"exact skew-rank computations over odd prime fields"};
    app.require_subcommand(1);

    std::string file, field_arg = "generic", campaign, json_out, primes_csv;
    bool use_oracle = false, as_json = false;
    long target = 0, p_arg = 0, trials = -1, cases = -1;
    int nn = 0, kk = 0, nmax = -1, threads = 1;
    double budget = -1;
    uint64_t seed = 0;

    auto* mr = app.add_subcommand("mr", "minimum skew rank of a graph (exact or bounds)");
    mr->add_option("file", file, "edge-list file ('-' for stdin)")->required();
    mr->add_option("--field", field_arg, "odd prime p, or 'generic' (default)");
    mr->add_flag("--oracle", use_oracle, "finite mode: force exactness with a certificate");
    mr->add_option("--budget", budget, "nominal search-space cap for the oracle");
    mr->add_option("--seed", seed, "search seed");
    mr->add_option("--threads", threads, "worker threads for the oracle");

    auto* bounds = app.add_subcommand("bounds", "zero-forcing / matching rank bounds");
    bounds->add_option("file", file)->required();

    auto* zf = app.add_subcommand("zf", "zero forcing number and witness");
    zf->add_option("file", file)->required();

    auto* match = app.add_subcommand("match", "matching number and witness");
    match->add_option("file", file)->required();

    auto* certify = app.add_subcommand("certify", "find a matrix of prescribed rank");
    certify->add_option("file", file)->required();
    certify->add_option("--target", target, "target rank (even)")->required();
    certify->add_option("--p", p_arg, "odd prime field")->required();
    certify->add_option("--budget", budget, "nominal search-space cap");
    certify->add_option("--seed", seed, "search seed");

    auto* pp = app.add_subcommand("power-path", "emit P_n^k in edge-list format");
    pp->add_option("--n", nn, "vertex count")->required();
    pp->add_option("--k", kk, "power")->required();
    pp->add_flag("--json", as_json, "emit JSON instead of edge-list text");

    auto* verify = app.add_subcommand("verify", "run a verification campaign");
    verify->add_option("campaign", campaign,
                       "one of: lem-zf lem-maxrank lem-upm thm-odd lem-cut thm-mr4 "
                       "thm-kpath lem-induced lem-subadd lem-multipartite")
        ->required();
    verify->add_option("--nmax", nmax, "largest vertex count");
    verify->add_option("--primes", primes_csv, "comma-separated primes");
    verify->add_option("--seed", seed, "seed for randomized parts");
    verify->add_option("--budget", budget, "nominal search-space cap per oracle call");
    verify->add_option("--trials", trials, "sampling trials");
    verify->add_option("--cases", cases, "random cases");
    verify->add_option("--threads", threads, "worker threads");
    verify->add_option("--json", json_out, "also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*mr) {
            Graph g = load_graph(file);
            FieldSpec spec = field_arg == "generic"
                                 ? FieldSpec::generic()
                                 : FieldSpec::finite(parse_long(field_arg, "--field"));
            if (use_oracle && !spec.is_finite()) {
                std::cerr << "--oracle requires a finite field (--field p)\n";
                return 2;
            }
            EngineOptions opt;
            opt.use_oracle = use_oracle;
            if (budget > 0) opt.oracle.budget = budget;
            opt.oracle.seed = seed;
            opt.oracle.threads = threads;
            RankResult res = mr_exact_structural(g, spec, opt);
            std::cout << to_json(res).dump(2) << '\n';
            std::cerr << "mr in [" << res.lower << ", " << res.upper << "]"
                      << (res.exact ? " exact" : "") << '\n';
            return 0;
        }
        if (*bounds) {
            RankResult res = mr_bounds(load_graph(file));
            std::cout << to_json(res).dump(2) << '\n';
            std::cerr << "bounds [" << res.lower << ", " << res.upper << "]\n";
            return 0;
        }
        if (*zf) {
            auto res = zero_forcing_number(load_graph(file));
            nlohmann::json j{{"zero_forcing_number", res.size}, {"witness", res.witness}};
            std::cout << j.dump(2) << '\n';
            std::cerr << "Z = " << res.size << '\n';
            return 0;
        }
        if (*match) {
            auto res = matching_number(load_graph(file));
            nlohmann::json witness = nlohmann::json::array();
            for (auto [u, v] : res.witness.edges) witness.push_back({u, v});
            nlohmann::json j{{"matching_number", res.size}, {"witness", witness}};
            std::cout << j.dump(2) << '\n';
            std::cerr << "match = " << res.size << '\n';
            return 0;
        }
        if (*certify) {
            Graph g = load_graph(file);
            OracleOptions opt;
            if (budget > 0) opt.budget = budget;
            opt.seed = seed;
            try {
                RankWitness w = skewrank::certify(g, static_cast<int>(target), PrimeField(p_arg), opt);
                std::cout << to_json(w.matrix).dump(2) << '\n';
                std::cerr << "rank " << w.rank << " witness found\n";
                return 0;
            } catch (const NotAchievable& e) {
                std::cerr << e.what() << '\n';
                return 1;
            }
        }
        if (*pp) {
            Graph g = path_power(nn, kk);
            if (as_json) {
                nlohmann::json edges = nlohmann::json::array();
                for (auto [u, v] : g.edges()) edges.push_back({u, v});
                std::cout << nlohmann::json{{"n", g.vertex_count()}, {"edges", edges}}.dump(2)
                          << '\n';
            } else {
                std::cout << serialize_graph(g);
            }
            return 0;
        }
        if (*verify) {
            CampaignOptions opt;
            opt.nmax = nmax;
            if (!primes_csv.empty()) opt.primes = parse_primes(primes_csv);
            opt.seed = seed;
            opt.budget = budget;
            opt.trials = trials;
            opt.cases = cases;
            opt.threads = threads;
            VerificationReport rep = run_verification(campaign, opt);
            nlohmann::json j = to_json(rep);
            std::cout << j.dump(2) << '\n';
            if (!json_out.empty()) {
                std::ofstream out(json_out);
                out << j.dump(2) << '\n';
            }
            std::cerr << rep.family << ": " << rep.agreements << "/" << rep.graphs_checked
                      << " checks agree, " << rep.disagreements.size() << " disagreements, "
                      << rep.notes.size() << " notes, " << rep.runtime_seconds << "s\n";
            return rep.disagreements.empty() ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const UnknownCampaign& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const BadParameters& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 2;
}
