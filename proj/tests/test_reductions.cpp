#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace wspe;
using fixtures::P;

TEST_CASE("product of a self-loop", "[reductions]") {
    Game g = fixtures::self_loop(Reachability{{0}});
    auto pg = reach_safety_product(g, 0);
    REQUIRE(pg.game.num_vertices() == 1);
    CHECK(pg.state(0).base == 0);
    CHECK(pg.state(0).satisfied == 1);
    CHECK(pg.game.kind() == ObjectiveKind::Buchi);
    CHECK(payoff_of(pg.game, Lasso{{}, {0}}) == P("1"));
}

TEST_CASE("product of a chain", "[reductions]") {
    RawGame raw;
    raw.num_players = 1;
    raw.owner = {1, 1};
    raw.edges = {{0, 1}, {1, 1}};
    raw.objectives = {Reachability{{1}}};
    Game g = validate_game(raw);
    auto pg = reach_safety_product(g, 0);
    REQUIRE(pg.game.num_vertices() == 2);
    CHECK(pg.state(0) == ProductState{0, 0});
    CHECK(pg.state(1) == ProductState{1, 1});
    CHECK(payoff_of(pg.game, Lasso{{0}, {1}}) == P("1"));

    raw.objectives = {Safety{{1}}};
    auto ps = reach_safety_product(validate_game(raw), 0);
    CHECK(ps.game.kind() == ObjectiveKind::CoBuchi);
    CHECK(payoff_of(ps.game, Lasso{{0}, {1}}) == P("0"));

    try {
        reach_safety_product(fixtures::example(), 0);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedObjective);
    }
}

TEST_CASE("product preserves payoffs and keeps I monotone", "[reductions][property]") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 80; ++round) {
        const auto kind = round % 2 ? ObjectiveKind::Safety : ObjectiveKind::Reachability;
        Game g = random_game({2 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 3), kind, 0.35, rng()});
        auto pg = reach_safety_product(g, 0);
        CHECK(pg.game.num_vertices() <= g.num_vertices() * (std::size_t{1} << g.num_players()));
        for (Vertex u = 0; u < static_cast<Vertex>(pg.game.num_vertices()); ++u)
            for (Vertex w : pg.game.successors(u)) {
                CHECK((pg.state(u).satisfied & ~pg.state(w).satisfied) == 0);
                CHECK(g.has_edge(pg.state(u).base, pg.state(w).base));
            }
        for (int sample = 0; sample < 5; ++sample) {
            std::vector<Vertex> walk{0};
            for (int k = 0; k < 10; ++k) {
                auto s = g.successors(walk.back());
                walk.push_back(s[rng() % s.size()]);
            }
            auto first = std::find(walk.begin(), walk.end() - 1, walk.back());
            if (first == walk.end() - 1) continue;
            Lasso l{{walk.begin(), first}, {first, walk.end() - 1}};
            Lasso lifted = lift_to_product(pg, g, l);
            REQUIRE(lasso_in_game(pg.game, lifted));
            CHECK(payoff_of(pg.game, lifted) == payoff_of(g, l));
            // I grows at most |Π| times along the lifted play.
            int increases = 0;
            for (std::size_t k = 1; k < lifted.length(); ++k)
                if (pg.state(lifted.at(k)).satisfied != pg.state(lifted.at(k - 1)).satisfied) ++increases;
            CHECK(increases <= g.num_players());
        }
    }
}

TEST_CASE("compact_product_lasso stays within (|Π|+1)|V|", "[reductions][property]") {
    std::uint64_t seed = 40;
    for (int round = 0; round < 60; ++round) {
        const auto kind = round % 2 ? ObjectiveKind::Safety : ObjectiveKind::Reachability;
        Game g = random_game({3 + round % 4, 1 + round % 3, kind, 0.35, seed++});
        const auto n = static_cast<std::size_t>(g.num_players());
        auto d = decide_constraint(g, 0, Payoff(n), Payoff(n, true));
        REQUIRE(d.product);
        if (!d.exists) continue;
        auto w = build_witness(*d.product, d.table, *d.payoff);
        CHECK(check_goodness(w, d.product->game).good);
        for (const auto& [slot, l] : w.lassoes) {
            CHECK(l.length() <= (n + 1) * g.num_vertices());
            Payoff p = payoff_of(d.product->game, l);
            for (Vertex u : occ_inf(l).occ.elements()) CHECK(d.table.has(u, p));
        }
        auto prof = synthesize_profile(w, d.product->game);
        CHECK(verify_weak_spe(prof, d.product->game).is_weak_spe);
        Lasso base = d.product->project(outcome_from(prof, d.product->game, prof.initial_configuration()));
        CHECK(payoff_of(g, base) == *d.payoff);
    }
}

TEST_CASE("QDIMACS round trip and errors", "[reductions]") {
    QbfFormula f{2, {{1, 2}, {-1, 2}}};
    CHECK(parse_qdimacs(to_qdimacs(f)) == f);
    CHECK(parse_qdimacs("c comment\np cnf 1 1\ne 1 0\n1 0\n") == QbfFormula{1, {{1}}});
    auto malformed = [](const std::string& text) {
        try {
            parse_qdimacs(text);
        } catch (const Error& e) {
            return e.kind() == ErrorKind::MalformedFormula;
        }
        return false;
    };
    CHECK(malformed("p qbf 2 1\na 1 0\ne 2 0\n1 2 0\n"));
    CHECK(malformed("p qbf 2 1\ne 1 0\ne 2 0\n1 2 0\n"));
    CHECK(malformed("p qbf 2 1\ne 1 2 0\n1 2 0\n"));
    CHECK(malformed("p qbf 1 1\ne 1 0\n1\n"));
    CHECK(malformed("p qbf 1 2\ne 1 0\n1 0\n"));
    CHECK(malformed("p qbf 1 1\ne 1 0\n3 0\n"));
    CHECK(malformed("e 1 0\n1 0\n"));
}

TEST_CASE("qbf_to_game structure", "[reductions]") {
    QbfFormula f{1, {{1}}};
    auto inst = qbf_to_game(f, QbfVariant::Reach);
    CHECK(inst.game.num_players() == 3);
    CHECK(inst.game.num_vertices() == 6);
    CHECK(inst.lower == P("010"));
    CHECK(inst.upper == P("111"));
    CHECK(inst.initial == 0);

    std::mt19937_64 rng(17);
    for (int k = 0; k < 40; ++k) {
        auto q = oracle::random_qbf(rng, 3, 3);
        for (auto variant : {QbfVariant::Reach, QbfVariant::Safety}) {
            auto i = qbf_to_game(q, variant);
            CHECK(i.game.num_vertices() == static_cast<std::size_t>(3 * q.num_vars + 2 * q.clauses.size() + 1));
            CHECK(i.game.num_players() == static_cast<int>(q.clauses.size()) + 2);
        }
    }
}

TEST_CASE("qbf_to_game decides small formulas", "[reductions]") {
    struct Case {
        QbfFormula f;
        bool truth;
    };
    const Case cases[] = {
        {{1, {{1}}}, true},
        {{2, {{1, 2}, {-1, 2}}}, false},
        {{1, {{1}, {-1}}}, false},
    };
    for (const auto& c : cases) {
        CHECK(oracle::eval_qbf(c.f) == c.truth);
        for (auto variant : {QbfVariant::Reach, QbfVariant::Safety}) {
            auto inst = qbf_to_game(c.f, variant);
            CHECK(decide_constraint(inst.game, inst.initial, inst.lower, inst.upper).exists == c.truth);
        }
    }
}

TEST_CASE("random_game", "[reductions]") {
    RandomGameParams p{4, 2, ObjectiveKind::Buchi, 0.5, 7};
    CHECK(random_game(p) == random_game(p));
    p.seed = 8;
    CHECK_FALSE(random_game(p) == random_game({4, 2, ObjectiveKind::Buchi, 0.5, 7}));
    for (int k = 0; k < 9; ++k) {
        RandomGameParams q{5, 3, static_cast<ObjectiveKind>(k), 0.2, static_cast<std::uint64_t>(k)};
        Game g = random_game(q);
        CHECK(g.kind() == q.objective_class);
        CHECK(g.num_vertices() == 5);
    }
    CHECK_THROWS_AS(random_game({0, 1, ObjectiveKind::Buchi, 0.5, 1}), Error);
    CHECK_THROWS_AS(random_game({3, 1, ObjectiveKind::Buchi, 0.0, 1}), Error);

    Game parity = random_game({5, 2, ObjectiveKind::Parity, 0.4, 1});
    auto a = decide_constraint(parity, 0, P("00"), P("11"));
    auto b = decide_constraint(parity, 0, P("00"), P("11"), {RemovalOrder::Kind::Reverse});
    CHECK(a.exists == b.exists);
    CHECK(a.table.labels == b.table.labels);
}
