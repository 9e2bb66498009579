#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wspe/fixpoint.hpp"
#include "wspe/json_io.hpp"
#include "wspe/reductions.hpp"
#include "wspe/strategy.hpp"
#include "wspe/witness.hpp"

// Command implementations behind the CLI.  Each returns an exit status and
// a JSON document; nothing here touches stdout.

namespace wspe {

struct RunConfig {
    std::string game_path;
    std::optional<std::string> lower;
    std::optional<std::string> upper;
    std::optional<std::string> constraint_path; ///< sidecar written by gen-qbf
    std::optional<std::string> profile_path;
    std::optional<std::string> formula_path;
    std::optional<std::string> out_path;
    QbfVariant variant = QbfVariant::Reach;
    RandomGameParams random;
    std::set<std::string> emit; ///< empty: the command's default sections
};

struct CommandResult {
    int exit_code = 0;
    Json output;
    std::string diagnostic;
    /// Files to write: (path, contents).
    std::vector<std::pair<std::string, std::string>> files;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int negative = 1;
inline constexpr int input_error = 2;
inline constexpr int verification_failed = 3;
} // namespace exit_code

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::MalformedInput, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::MalformedInput, what + " is not valid JSON: " + e.what());
    }
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

/// "game.json" -> "game.constraint.json"
inline std::string constraint_sidecar_path(const std::string& game_path) {
    auto slash = game_path.find_last_of('/');
    auto dot = game_path.rfind('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return game_path + ".constraint.json";
    return game_path.substr(0, dot) + ".constraint.json";
}

namespace detail {

inline bool is_input_error(ErrorKind k) {
    switch (k) {
    case ErrorKind::DeadEndVertex:
    case ErrorKind::UnknownVertex:
    case ErrorKind::ArityMismatch:
    case ErrorKind::MixedObjectives:
    case ErrorKind::InvalidObjective:
    case ErrorKind::EmptySet:
    case ErrorKind::MalformedFormula:
    case ErrorKind::MalformedInput:
    case ErrorKind::UnsupportedObjective: return true;
    default: return false;
    }
}

inline CommandResult failure(int code, const std::string& why) {
    CommandResult r;
    r.exit_code = code;
    r.diagnostic = why;
    r.output = {{"error", why}};
    return r;
}

struct Query {
    Game game;
    Vertex initial = 0;
    Payoff lower;
    Payoff upper;
};

inline Payoff parse_bound(const std::string& bits, std::size_t n, const char* which) {
    Payoff p = Payoff::parse(bits);
    if (p.size() != n)
        throw Error(ErrorKind::ArityMismatch, std::string(which) + " bound \"" + bits + "\" has " +
                                                  std::to_string(p.size()) + " bits for " + std::to_string(n) +
                                                  " players");
    return p;
}

inline Query load_query(const RunConfig& cfg) {
    if (cfg.game_path.empty()) throw Error(ErrorKind::MalformedInput, "no game file given");
    Query q{parse_game(read_text_file(cfg.game_path)), 0, {}, {}};
    const auto n = static_cast<std::size_t>(q.game.num_players());
    std::optional<std::string> lower = cfg.lower, upper = cfg.upper;
    std::optional<Vertex> initial = q.game.initial();
    if (cfg.constraint_path) {
        Json c = parse_json_text(read_text_file(*cfg.constraint_path), *cfg.constraint_path);
        if (!lower && c.contains("lower")) lower = c.at("lower").get<std::string>();
        if (!upper && c.contains("upper")) upper = c.at("upper").get<std::string>();
        if (c.contains("initial")) initial = c.at("initial").get<int>();
    }
    if (!initial) throw Error(ErrorKind::MalformedInput, "the game has no initial vertex");
    if (*initial < 0 || static_cast<std::size_t>(*initial) >= q.game.num_vertices())
        throw Error(ErrorKind::UnknownVertex, "initial vertex " + std::to_string(*initial) + " is not in the game");
    q.initial = *initial;
    q.lower = lower ? parse_bound(*lower, n, "lower") : Payoff(n, false);
    q.upper = upper ? parse_bound(*upper, n, "upper") : Payoff(n, true);
    return q;
}

inline bool emits(const RunConfig& cfg, const std::string& section, bool by_default) {
    return cfg.emit.empty() ? by_default : cfg.emit.count(section) != 0;
}

inline void add_decision(Json& out, const RunConfig& cfg, const Decision& d, bool fixpoint_by_default) {
    out["exists"] = d.exists;
    out["payoff"] = d.payoff ? Json(d.payoff->to_string()) : Json(nullptr);
    if (emits(cfg, "fixpoint", fixpoint_by_default)) {
        out["fixpoint"] = table_to_json(d.table);
        out["rounds"] = d.trace.rounds;
        out["step"] = d.table.step;
    }
    if (emits(cfg, "trace", fixpoint_by_default)) out["trace"] = trace_to_json(d.trace);
    if (d.product) out["product"] = product_to_json(*d.product);
}

} // namespace detail

inline CommandResult cmd_solve(const RunConfig& cfg) {
    try {
        auto q = detail::load_query(cfg);
        Decision d = decide_constraint(q.game, q.initial, q.lower, q.upper);
        CommandResult r;
        detail::add_decision(r.output, cfg, d, true);
        r.exit_code = d.exists ? exit_code::ok : exit_code::negative;
        return r;
    } catch (const Error& e) {
        return detail::failure(exit_code::input_error, e.what());
    } catch (const std::exception& e) {
        return detail::failure(exit_code::input_error, e.what());
    }
}

inline CommandResult cmd_certify(const RunConfig& cfg) {
    std::optional<detail::Query> q;
    try {
        q = detail::load_query(cfg);
    } catch (const std::exception& e) {
        return detail::failure(exit_code::input_error, e.what());
    }
    try {
        Decision d = decide_constraint(q->game, q->initial, q->lower, q->upper);
        CommandResult r;
        detail::add_decision(r.output, cfg, d, false);
        if (!d.exists) {
            r.exit_code = exit_code::negative;
            return r;
        }
        const Game& g = d.solved_game(q->game);
        SymbolicWitness w = d.product ? build_witness(*d.product, d.table, *d.payoff)
                                      : build_witness(g, d.table, d.table_initial, *d.payoff);
        GoodnessReport good = check_goodness(w, g);
        MooreProfile profile = synthesize_profile(w, g);
        VerifyReport report = verify_weak_spe(profile, g);
        Lasso outcome = outcome_from(profile, g, profile.initial_configuration());
        Payoff outcome_payoff = payoff_of(g, outcome);

        if (detail::emits(cfg, "witness", true)) r.output["witness"] = witness_to_json(w, g);
        if (detail::emits(cfg, "profile", true)) r.output["profile"] = profile_to_json(profile, g);
        Json ver = report_to_json(report);
        ver["goodness"] = goodness_to_json(good);
        ver["outcome"] = lasso_to_json(outcome);
        ver["outcome"]["payoff"] = outcome_payoff.to_string();
        if (d.product) {
            Lasso base = d.product->project(outcome);
            ver["outcome_base"] = lasso_to_json(base);
            ver["outcome_base"]["payoff"] = payoff_of(q->game, base).to_string();
        }
        r.output["verification"] = ver;
        const bool sound = good.good && report.is_weak_spe && outcome_payoff == *d.payoff;
        r.exit_code = sound ? exit_code::ok : exit_code::verification_failed;
        if (!sound) r.diagnostic = "certificate failed verification";
        return r;
    } catch (const Error& e) {
        return detail::failure(detail::is_input_error(e.kind()) ? exit_code::input_error
                                                                : exit_code::verification_failed,
                               e.what());
    } catch (const std::exception& e) {
        return detail::failure(exit_code::verification_failed, e.what());
    }
}

/// Checks a profile file against a game.  Reachability/Safety games are
/// checked on their product, which is how certify writes their profiles.
inline CommandResult cmd_verify(const RunConfig& cfg) {
    try {
        if (!cfg.profile_path) throw Error(ErrorKind::MalformedInput, "no profile file given");
        Game g = parse_game(read_text_file(cfg.game_path));
        Json pj = parse_json_text(read_text_file(*cfg.profile_path), *cfg.profile_path);
        if (pj.contains("profile")) pj = pj.at("profile");
        std::optional<ProductGame> product;
        if (!prefix_independent(g.kind())) {
            if (!g.initial()) throw Error(ErrorKind::MalformedInput, "the game has no initial vertex");
            product = reach_safety_product(g, *g.initial());
        }
        const Game& target = product ? product->game : g;
        MooreProfile profile = profile_from_json(pj, target);
        VerifyReport report = verify_weak_spe(profile, target);
        CommandResult r;
        r.output = report_to_json(report);
        r.exit_code = report.is_weak_spe ? exit_code::ok : exit_code::negative;
        return r;
    } catch (const std::exception& e) {
        return detail::failure(exit_code::input_error, e.what());
    }
}

/// kind: "gen-qbf" or "gen-random".  The game goes to out_path (or the
/// output document when none); gen-qbf also writes the constraint sidecar.
inline CommandResult cmd_generate(const std::string& kind, const RunConfig& cfg) {
    try {
        CommandResult r;
        if (kind == "gen-qbf") {
            if (!cfg.formula_path) throw Error(ErrorKind::MalformedInput, "no formula file given");
            QbfFormula f = parse_qdimacs(read_text_file(*cfg.formula_path));
            QbfInstance inst = qbf_to_game(f, cfg.variant);
            r.output = game_to_json(inst.game);
            if (cfg.out_path) {
                r.files.emplace_back(*cfg.out_path, dump_json(r.output));
                r.files.emplace_back(constraint_sidecar_path(*cfg.out_path), dump_json(qbf_constraint_to_json(inst)));
            } else {
                r.output = {{"game", r.output}, {"constraint", qbf_constraint_to_json(inst)}};
            }
        } else if (kind == "gen-random") {
            r.output = game_to_json(random_game(cfg.random));
            if (cfg.out_path) r.files.emplace_back(*cfg.out_path, dump_json(r.output));
        } else {
            throw Error(ErrorKind::MalformedInput, "unknown generator \"" + kind + "\"");
        }
        return r;
    } catch (const std::exception& e) {
        return detail::failure(exit_code::input_error, e.what());
    }
}

} // namespace wspe
