#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support/fixtures.hpp"
#include "wspe/commands.hpp"

using namespace wspe;
using fixtures::P;

namespace {

std::string data(const char* name) { return std::string(WSPE_TEST_DATA) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "wspe_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

RunConfig for_game(const std::string& path) {
    RunConfig c;
    c.game_path = path;
    return c;
}

} // namespace

TEST_CASE("game JSON round trip", "[json]") {
    Game g = fixtures::example();
    CHECK(game_from_json(game_to_json(g)) == g);
    CHECK(parse_game(read_text_file(data("example.json"))) == g);
    for (int k = 0; k < 9; ++k)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Game r = random_game({5, 2, static_cast<ObjectiveKind>(k), 0.3, seed});
            CHECK(parse_game(dump_json(game_to_json(r))) == r);
        }
}

TEST_CASE("game JSON errors", "[json]") {
    auto kind = [](const std::string& text) {
        try {
            parse_game(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::BudgetExceeded;
    };
    CHECK(kind("{") == ErrorKind::MalformedInput);
    CHECK(kind(R"({"players":1})") == ErrorKind::MalformedInput);
    CHECK(kind(read_text_file(data("dead_end.json"))) == ErrorKind::DeadEndVertex);
    CHECK(kind(R"({"players":1,"vertices":[{"id":0,"owner":1}],"edges":[[0,0]],"objectives":[{"type":"bogus"}]})") ==
          ErrorKind::MalformedInput);
    CHECK(kind(R"({"players":1,"vertices":[{"id":0,"owner":1}],"edges":[[0,0]],"objectives":[{"type":"parity","colors":{"3":1}}]})") ==
          ErrorKind::UnknownVertex);
    CHECK(kind(R"({"players":2,"vertices":[{"id":0,"owner":1}],"edges":[[0,0]],"objectives":[{"type":"buchi","F":[0]}]})") ==
          ErrorKind::ArityMismatch);
}

TEST_CASE("witness and profile JSON round trip", "[json]") {
    Game g = fixtures::example();
    auto d = decide_constraint(g, 0, P("00"), P("11"));
    auto w = build_witness(g, d.table, 0, *d.payoff);
    CHECK(witness_from_json(witness_to_json(w, g)) == w);
    auto prof = synthesize_profile(w, g);
    auto back = profile_from_json(profile_to_json(prof, g), g);
    CHECK(back.witness().lassoes == w.lassoes);
    CHECK(back.size() == prof.size());
    Json j = witness_to_json(w, g);
    CHECK(j["lassoes"]["0,0"]["payoff"] == "01");
    CHECK(j["lassoes"]["0,0"]["stem"] == Json({0, 1, 2}));
}

TEST_CASE("cmd_solve", "[cli]") {
    RunConfig c = for_game(data("example.json"));
    c.lower = "00";
    c.upper = "11";
    auto r = cmd_solve(c);
    CHECK(r.exit_code == 0);
    CHECK(r.output["exists"] == true);
    CHECK(r.output["payoff"] == "01");
    CHECK(r.output["fixpoint"]["0"] == Json({"01"}));
    CHECK(r.output["trace"].size() == 3);
    CHECK(r.output["trace"][1] == Json({{"k", 2}, {"vertex", 0}, {"payoff", "00"}, {"cause", "adjust"}}));

    c.lower = "10";
    c.upper.reset();
    auto no = cmd_solve(c);
    CHECK(no.exit_code == 1);
    CHECK(no.output["exists"] == false);
    CHECK(no.output["payoff"].is_null());

    c.lower = "111";
    CHECK(cmd_solve(c).exit_code == 2);
    CHECK(cmd_solve(for_game(data("dead_end.json"))).exit_code == 2);
    CHECK(cmd_solve(for_game(data("missing.json"))).exit_code == 2);

    RunConfig quiet = for_game(data("example.json"));
    quiet.emit = {"trace"};
    auto q = cmd_solve(quiet);
    CHECK_FALSE(q.output.contains("fixpoint"));
    CHECK(q.output.contains("trace"));

    auto reach = cmd_solve(for_game(data("reach_chain.json")));
    CHECK(reach.exit_code == 0);
    CHECK(reach.output["payoff"] == "1");
    CHECK(reach.output.contains("product"));
}

TEST_CASE("cmd_certify", "[cli]") {
    auto r = cmd_certify(for_game(data("example.json")));
    CHECK(r.exit_code == 0);
    CHECK(r.output["payoff"] == "01");
    CHECK(r.output["verification"]["is_weak_spe"] == true);
    CHECK(r.output["verification"]["goodness"]["good"] == true);
    CHECK(r.output["verification"]["outcome"]["payoff"] == "01");
    CHECK(r.output["witness"]["lassoes"]["2,4"]["stem"] == Json({4}));
    CHECK(r.output["witness"]["lassoes"]["2,4"]["cycle"] == Json({5}));
    CHECK(r.output["profile"]["initial"] == Json({0, 0}));

    auto loop = cmd_certify(for_game(data("self_loop.json")));
    CHECK(loop.exit_code == 0);
    CHECK(loop.output["witness"]["lassoes"].size() == 2);

    RunConfig none = for_game(data("example.json"));
    none.lower = "10";
    CHECK(cmd_certify(none).exit_code == 1);

    auto reach = cmd_certify(for_game(data("reach_chain.json")));
    CHECK(reach.exit_code == 0);
    CHECK(reach.output["verification"]["outcome_base"]["payoff"] == "1");
}

TEST_CASE("cmd_verify", "[cli]") {
    auto cert = cmd_certify(for_game(data("example.json")));
    auto path = scratch("example.profile.json");
    write_file(path, dump_json(cert.output["profile"]));
    RunConfig c = for_game(data("example.json"));
    c.profile_path = path.string();
    auto ok = cmd_verify(c);
    CHECK(ok.exit_code == 0);
    CHECK(ok.output["is_weak_spe"] == true);

    Json bad = cert.output["profile"];
    bad["lassoes"]["2,4"] = {{"stem", {4}}, {"cycle", {6}}, {"payoff", "00"}};
    write_file(path, dump_json(bad));
    auto counter = cmd_verify(c);
    CHECK(counter.exit_code == 1);
    CHECK(counter.output["counterexample"]["deviator"] == 2);
    CHECK(counter.output["counterexample"]["alternative"] == 5);

    write_file(path, "{}");
    CHECK(cmd_verify(c).exit_code == 2);

    // Whole certify output is accepted too.
    auto rc = cmd_certify(for_game(data("reach_chain.json")));
    auto rpath = scratch("reach.cert.json");
    write_file(rpath, dump_json(rc.output));
    RunConfig rv = for_game(data("reach_chain.json"));
    rv.profile_path = rpath.string();
    CHECK(cmd_verify(rv).exit_code == 0);
}

TEST_CASE("cmd_generate", "[cli]") {
    RunConfig c;
    c.formula_path = data("exists_x1.qdimacs");
    c.out_path = scratch("x1.json").string();
    auto r = cmd_generate("gen-qbf", c);
    CHECK(r.exit_code == 0);
    REQUIRE(r.files.size() == 2);
    CHECK(r.files[1].first == scratch("x1.constraint.json").string());
    Game g = parse_game(r.files[0].second);
    CHECK(g.num_vertices() == 6);
    CHECK(g.num_players() == 3);
    Json constraint = Json::parse(r.files[1].second);
    CHECK(constraint["lower"] == "010");

    for (const auto& [p, text] : r.files) write_file(p, text);
    RunConfig solve = for_game(*c.out_path);
    solve.constraint_path = r.files[1].first;
    CHECK(cmd_solve(solve).exit_code == 0);

    c.formula_path = data("bad_prefix.qdimacs");
    CHECK(cmd_generate("gen-qbf", c).exit_code == 2);

    RunConfig rnd;
    rnd.random = {6, 3, ObjectiveKind::Parity, 0.3, 7};
    auto a = cmd_generate("gen-random", rnd), b = cmd_generate("gen-random", rnd);
    CHECK(a.exit_code == 0);
    CHECK(dump_json(a.output) == dump_json(b.output));
    rnd.random.num_vertices = 0;
    CHECK(cmd_generate("gen-random", rnd).exit_code == 2);
    CHECK(cmd_generate("gen-nothing", rnd).exit_code == 2);
}

TEST_CASE("constraint sidecar naming", "[cli]") {
    CHECK(constraint_sidecar_path("a/b.json") == "a/b.constraint.json");
    CHECK(constraint_sidecar_path("a.b/c") == "a.b/c.constraint.json");
}
