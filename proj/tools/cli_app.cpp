#include "cli_app.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "scc/berezin.hpp"
#include "scc/jsonio.hpp"
#include "scc/lattice.hpp"
#include "scc/verify.hpp"

namespace scc::cli {

namespace {

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed JSON config: ") + e.what());
    }
    return j;
}

void deliver(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw invalid_input("cannot open output file: " + out_path);
    f << text;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

int cmd_cocycle(const std::string& config_path, const std::string& out_path, std::ostream& out) {
    const Json cfg = load_config(config_path);
    Json res;
    if (cfg.contains("g1") && cfg.contains("g2")) {
        const auto g1 = RealSymplectic::from_matrix(matrix_from_json(cfg.at("g1")));
        const auto g2 = RealSymplectic::from_matrix(matrix_from_json(cfg.at("g2")));
        res["c"] = cocycle_c(g1, g2);
        res["gamma_g1"] = trivializer_gamma(g1);
        res["gamma_g2"] = trivializer_gamma(g2);
        res["integer_class"] = integer_class(g1, g2);
    } else if (cfg.contains("maps")) {
        const auto& maps = cfg.at("maps");
        if (!maps.is_array() || maps.size() != 2)
            throw invalid_input("config: maps must list exactly two map specs");
        const Domain d = domain_from_json(cfg.at("domain"));
        const SympMap q1 = map_from_json(maps[0], d);
        const SympMap q2 = map_from_json(maps[1], d);
        const QuadratureGrid grid = grid_from_json(cfg.at("domain"), cfg.at("resolution"));
        const double value = big_cocycle_C(q1, q2, grid);
        // refinement-based error estimate at doubled resolution
        Json res2 = cfg.at("resolution");
        for (auto& v : res2) v = v.get<int>() * 2;
        const QuadratureGrid fine = grid_from_json(cfg.at("domain"), res2);
        const double value_fine = big_cocycle_C(q1, q2, fine);
        res["C"] = value;
        res["value"] = value;
        res["grid"] = cfg.at("resolution");
        res["error_estimate"] = std::abs(value - value_fine);
    } else {
        throw invalid_input("config: need either g1/g2 matrices or a maps list");
    }
    deliver(res.dump(2), out_path, out);
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials,
               const std::string& out_path, std::ostream& out) {
    const auto results = verify::run(suite, seed, trials);
    Json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["trials"] = trials;
    Json arr = Json::array();
    for (const auto& r : results) {
        Json e;
        e["name"] = r.name;
        e["trials"] = r.trials;
        e["failures"] = r.failures;
        e["worst_residual"] = r.worst_residual;
        e["threshold"] = r.threshold;
        e["pass"] = r.pass;
        arr.push_back(e);
    }
    j["suites"] = arr;
    const bool ok = verify::all_pass(results);
    j["all_pass"] = ok;
    deliver(j.dump(2), out_path, out);
    return ok ? 0 : 1;
}

int cmd_twist_report(const std::string& config_path, const std::string& out_path,
                     std::ostream& out) {
    const Json cfg = load_config(config_path);
    const TwistReportConfig trc = twist_report_config_from_json(cfg);
    const TwistReport rep = twist_report(trc.base, trc.eps_list, trc.holes, trc.options);
    std::optional<double> lantern;
    if (trc.lantern) {
        const Json& l = *trc.lantern;
        std::array<double, 4> sv{};
        std::array<double, 3> sw{};
        std::array<double, 3> a{};
        for (int i = 0; i < 4; ++i) sv[i] = l.at("sigma_v")[i].get<double>();
        for (int i = 0; i < 3; ++i) sw[i] = l.at("sigma_w")[i].get<double>();
        for (int i = 0; i < 3; ++i) a[i] = l.at("a")[i].get<double>();
        lantern = lantern_combination(sv, sw, a, l.value("b", 0.0), l.value("H", 0.0));
    }
    deliver(twist_report_to_csv(rep, trc.holes.size(), lantern), out_path, out);
    return 0;
}

int cmd_obstruction(double alpha, const std::string& out_path, std::ostream& out) {
    const ObstructionReport rep = obstruction_witness(alpha);
    Json j;
    j["alpha"] = alpha;
    j["holonomy_I4"] = complex_to_json(rep.holonomy_i4);
    j["holonomy_J3"] = complex_to_json(rep.holonomy_j3);
    j["deviation"] = rep.deviation;
    j["nontrivial"] = rep.nontrivial;
    deliver(j.dump(2), out_path, out);
    return 0;
}

int cmd_holonomy(const std::string& word_csv, double alpha, const std::string& out_path,
                 std::ostream& out) {
    const auto word = parse_word(word_csv);
    const Complex h = holonomy(word, alpha);
    Json j;
    j["word"] = word_csv;
    j["alpha"] = alpha;
    j["holonomy"] = complex_to_json(h);
    deliver(j.dump(2), out_path, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Berezin cocycles on Sp(2n,R), integral cocycles on symplectomorphism "
                 "groups, and the SL(2,Z) holonomy witness"};
    app.require_subcommand(1);

    std::string config_path, out_path, suite = "all", word;
    std::uint64_t seed = 0;
    int trials = 500;
    double alpha = 0.5;

    auto* cocycle = app.add_subcommand("cocycle", "evaluate c(g1,g2) or the integral cocycle C");
    cocycle->add_option("--config", config_path, "JSON config")->required();
    cocycle->add_option("--out", out_path, "output file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "run property-verification suites");
    verify_cmd->add_option("--suite", suite, "suite name or 'all'");
    verify_cmd->add_option("--seed", seed, "RNG seed");
    verify_cmd->add_option("--trials", trials, "trials per suite")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* twist = app.add_subcommand("twist-report", "epsilon sweep of twist invariants (CSV)");
    twist->add_option("--config", config_path, "JSON config")->required();
    twist->add_option("--out", out_path, "output file (default stdout)");

    auto* obstruction = app.add_subcommand("obstruction", "SL(2,Z) obstruction witness");
    obstruction->add_option("--alpha", alpha, "cocycle exponent")->required();
    obstruction->add_option("--out", out_path, "output file (default stdout)");

    auto* holonomy_cmd = app.add_subcommand("holonomy", "multiplier holonomy of a relation word");
    holonomy_cmd->add_option("--word", word, "comma list, e.g. I,I,I,I")->required();
    holonomy_cmd->add_option("--alpha", alpha, "cocycle exponent")->required();
    holonomy_cmd->add_option("--out", out_path, "output file (default stdout)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cocycle->parsed()) return cmd_cocycle(config_path, out_path, out);
        if (verify_cmd->parsed()) return cmd_verify(suite, seed, trials, out_path, out);
        if (twist->parsed()) return cmd_twist_report(config_path, out_path, out);
        if (obstruction->parsed()) return cmd_obstruction(alpha, out_path, out);
        if (holonomy_cmd->parsed()) return cmd_holonomy(word, alpha, out_path, out);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace scc::cli
