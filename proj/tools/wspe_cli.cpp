// wspe: decide, certify and verify weak subgame perfect equilibria.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wspe/commands.hpp"

namespace {

std::set<std::string> split_emit(const std::string& s) {
    std::set<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(item);
    return out;
}

int finish(const wspe::CommandResult& r, const std::optional<std::string>& out_path, bool output_is_file_content) {
    if (!r.diagnostic.empty()) std::cerr << "wspe: " << r.diagnostic << "\n";
    for (const auto& [path, text] : r.files) {
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            std::cerr << "wspe: cannot write " << path << "\n";
            return wspe::exit_code::input_error;
        }
        f << text;
    }
    if (output_is_file_content && !r.files.empty()) return r.exit_code;
    const std::string text = wspe::dump_json(r.output);
    if (out_path && !output_is_file_content) {
        std::ofstream f(*out_path, std::ios::binary);
        if (!f) {
            std::cerr << "wspe: cannot write " << *out_path << "\n";
            return wspe::exit_code::input_error;
        }
        f << text;
    } else {
        std::cout << text;
    }
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak subgame perfect equilibria in multiplayer Boolean games.\n"
                 "Payoffs are bitstrings with player 1 first (\"01\": p1=0, p2=1)."};
    app.require_subcommand(1);

    wspe::RunConfig cfg;
    std::string emit, out, variant = "reach", objective = "buchi";
    std::string lower, upper, constraint, profile, formula;

    auto add_game = [&](CLI::App* sub) {
        sub->add_option("game,--game", cfg.game_path, "game JSON file")->required();
    };
    auto add_bounds = [&](CLI::App* sub) {
        sub->add_option("--lower", lower, "lower payoff bound (default all zeros)");
        sub->add_option("--upper", upper, "upper payoff bound (default all ones)");
        sub->add_option("--constraint", constraint, "constraint sidecar with lower, upper, initial");
        sub->add_option("--emit", emit, "sections to print: fixpoint,trace,witness,profile");
        sub->add_option("--out", out, "write the JSON result here instead of stdout");
    };

    auto* solve = app.add_subcommand("solve", "decide the constrained existence problem");
    add_game(solve);
    add_bounds(solve);
    auto* certify = app.add_subcommand("certify", "solve, then build and verify an equilibrium profile");
    add_game(certify);
    add_bounds(certify);

    auto* verify = app.add_subcommand("verify", "check a profile against one-shot deviations");
    add_game(verify);
    verify->add_option("--profile", profile, "profile JSON (or certify output)")->required();
    verify->add_option("--out", out, "write the report here instead of stdout");

    auto* generate = app.add_subcommand("generate", "write a game file");
    generate->require_subcommand(1);
    auto* gen_qbf = generate->add_subcommand("gen-qbf", "game from a QDIMACS formula");
    gen_qbf->add_option("formula", formula, "QDIMACS file")->required();
    gen_qbf->add_option("--variant", variant, "reach or safety")->check(CLI::IsMember({"reach", "safety"}));
    gen_qbf->add_option("--out", out, "game file; the constraint goes next to it");
    auto* gen_random = generate->add_subcommand("gen-random", "seeded random game");
    gen_random->add_option("--vertices", cfg.random.num_vertices, "number of vertices");
    gen_random->add_option("--players", cfg.random.num_players, "number of players");
    gen_random->add_option("--objective", objective, "objective class");
    gen_random->add_option("--density", cfg.random.edge_density, "edge probability in (0,1]");
    gen_random->add_option("--seed", cfg.random.seed, "random seed");
    gen_random->add_option("--out", out, "game file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : wspe::exit_code::input_error;
    }

    auto opt = [](const std::string& s) { return s.empty() ? std::optional<std::string>{} : std::optional<std::string>{s}; };
    cfg.lower = opt(lower);
    cfg.upper = opt(upper);
    cfg.constraint_path = opt(constraint);
    cfg.profile_path = opt(profile);
    cfg.formula_path = opt(formula);
    cfg.out_path = opt(out);
    cfg.emit = split_emit(emit);
    cfg.variant = variant == "safety" ? wspe::QbfVariant::Safety : wspe::QbfVariant::Reach;

    if (*solve) return finish(wspe::cmd_solve(cfg), cfg.out_path, false);
    if (*certify) return finish(wspe::cmd_certify(cfg), cfg.out_path, false);
    if (*verify) return finish(wspe::cmd_verify(cfg), cfg.out_path, false);
    if (*gen_qbf) return finish(wspe::cmd_generate("gen-qbf", cfg), cfg.out_path, true);
    if (*gen_random) {
        auto kind = wspe::objective_kind_from(objective);
        if (!kind) {
            std::cerr << "wspe: unknown objective class \"" << objective << "\"\n";
            return wspe::exit_code::input_error;
        }
        cfg.random.objective_class = *kind;
        return finish(wspe::cmd_generate("gen-random", cfg), cfg.out_path, true);
    }
    return wspe::exit_code::input_error;
}
