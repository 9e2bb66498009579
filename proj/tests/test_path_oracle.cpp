#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace wspe;
using fixtures::P;

namespace {

void check_sound(const Game& g, const VertexSet& allowed, const Payoff& p, Vertex v, const PathWitness& w) {
    REQUIRE(!w.stem.empty());
    CHECK(w.stem.front() == v);
    CHECK(w.inf_set.contains(w.stem.back()));
    CHECK(realizable_inf(g, allowed, w.inf_set));
    Lasso l = to_lasso(g, w);
    REQUIRE(lasso_in_game(g, l));
    CHECK(payoff_of(g, l) == p);
    for (Vertex u : occ_inf(l).occ.elements()) CHECK(allowed.contains(u));
}

} // namespace

TEST_CASE("realizable_inf", "[oracle]") {
    Game g = fixtures::example();
    const VertexSet all = g.all_vertices();
    CHECK(realizable_inf(g, all, {1, 2}));
    CHECK_FALSE(realizable_inf(g, all, {0}));
    CHECK(realizable_inf(g, all, {3}));
    CHECK_FALSE(realizable_inf(g, all, {1, 2, 3}));
    CHECK_FALSE(realizable_inf(g, {0, 1}, {1, 2}));
    CHECK_THROWS_AS(realizable_inf(g, all, {}), Error);
}

TEST_CASE("closed_walk_covering", "[oracle]") {
    Game g = fixtures::example();
    CHECK(closed_walk_covering(g, {3}) == std::vector<Vertex>{3});
    CHECK(closed_walk_covering(g, {1, 2}) == std::vector<Vertex>{1, 2});
    try {
        closed_walk_covering(g, {0});
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotRealizable);
    }

    // A simple cycle comes back as itself.
    RawGame raw;
    raw.num_players = 1;
    raw.owner = {1, 1, 1, 1};
    raw.edges = {{0, 2}, {2, 1}, {1, 3}, {3, 0}};
    raw.objectives = {Buchi{{0}}};
    Game cyc = validate_game(raw);
    CHECK(closed_walk_covering(cyc, {0, 1, 2, 3}) == std::vector<Vertex>{0, 2, 1, 3});
}

TEST_CASE("closed_walk_covering covers within the square bound", "[oracle][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Game g = random_game({6, 1, ObjectiveKind::Buchi, 0.35, seed});
        for (const auto& s : oracle::realizable_infs(g, g.all_vertices(), 0)) {
            auto walk = closed_walk_covering(g, s);
            CHECK(walk.front() == s.min());
            CHECK(VertexSet::from(walk) == s);
            CHECK(walk.size() <= s.size() * s.size());
            CHECK(lasso_in_game(g, Lasso{{}, walk}));
        }
    }
}

TEST_CASE("gen_buchi_cobuchi_path", "[oracle]") {
    Game g = fixtures::example();
    const VertexSet all = g.all_vertices();
    auto w = gen_buchi_cobuchi_path(g, all, {VertexSet{3, 5}}, VertexSet{1}, 0);
    REQUIRE(w);
    CHECK((w->inf_set == VertexSet{3} || w->inf_set == VertexSet{5}));
    CHECK(payoff_of(g, to_lasso(g, *w)) == P("01"));

    CHECK_FALSE(gen_buchi_cobuchi_path(g, all, {VertexSet{1}, VertexSet{3, 5}}, {}, 0));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Game r = random_game({5, 2, ObjectiveKind::Buchi, 0.3, seed});
        for (Vertex v = 0; v < 5; ++v) CHECK(gen_buchi_cobuchi_path(r, r.all_vertices(), {}, {}, v));
    }
}

TEST_CASE("streett_path", "[oracle]") {
    Game g = fixtures::self_loop();
    CHECK(streett_path(g, g.all_vertices(), {}, 0));
    CHECK_FALSE(streett_path(g, g.all_vertices(), {{VertexSet{0}, VertexSet{}}}, 0));
    CHECK(streett_path(g, g.all_vertices(), {{VertexSet{0}, VertexSet{0}}}, 0));

    Game f = fixtures::example();
    // Inf meets {1} only together with {2}: the 1-2 cycle qualifies.
    auto w = streett_path(f, f.all_vertices(), {{VertexSet{3}, VertexSet{}}, {VertexSet{5}, VertexSet{}}, {VertexSet{6}, VertexSet{}}}, 0);
    REQUIRE(w);
    CHECK(w->inf_set == VertexSet{1, 2});
}

TEST_CASE("parity as Streett pairs agrees with cycle enumeration", "[oracle][property]") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        RandomGameParams params{6, 2, ObjectiveKind::Parity, 0.35, seed};
        Game g = random_game(params);
        for (Vertex v = 0; v < 6; ++v)
            for (std::uint64_t k = 0; k < 4; ++k) {
                Payoff p = Payoff::nth(2, k);
                auto expected = oracle::payoffs_from(g, g.all_vertices(), v).count(p) != 0;
                auto w = payoff_path(g, g.all_vertices(), p, v);
                CHECK(w.has_value() == expected);
                if (w) {
                    for (Player i = 1; i <= 2; ++i)
                        CHECK(evaluate_gain(g.objective(i), to_lasso(g, *w)) == p.gain(i));
                }
            }
    }
}

TEST_CASE("bc_buchi_path", "[oracle]") {
    Game g = fixtures::example();
    const VertexSet all = g.all_vertices();
    for (Vertex v = 0; v < 7; ++v) CHECK(bc_buchi_path(g, all, {}, Formula::truth(), v));
    auto contradiction = Formula::all_of({Formula::var(1), Formula::negate(Formula::var(1))});
    for (auto strategy : {BcStrategy::Auto, BcStrategy::Enumerate, BcStrategy::Dnf})
        for (Vertex v = 0; v < 7; ++v) CHECK_FALSE(bc_buchi_path(g, all, {VertexSet{1}}, contradiction, v, strategy));
    // f1 & !f2: Inf meets {1} and avoids {3,5}.
    auto f = Formula::all_of({Formula::var(1), Formula::negate(Formula::var(2))});
    auto w = bc_buchi_path(g, all, {VertexSet{1}, VertexSet{3, 5}}, f, 0);
    REQUIRE(w);
    CHECK(w->inf_set == VertexSet{1, 2});
    CHECK_THROWS_AS(bc_buchi_path(g, all, {VertexSet{1}}, Formula::var(2), 0), Error);
}

TEST_CASE("Formula DNF", "[oracle]") {
    auto a = Formula::var(1), b = Formula::var(2), c = Formula::var(3);
    auto f = Formula::all_of({Formula::any_of({a, b}), Formula::negate(Formula::all_of({a, c}))});
    auto dnf = f.to_dnf(100);
    REQUIRE(dnf);
    for (std::uint64_t x = 0; x < 8; ++x) {
        bool any = false;
        for (const auto& t : *dnf) any = any || ((x & t.pos) == t.pos && (x & t.neg) == 0);
        CHECK(any == f.evaluate(x));
    }
    CHECK_FALSE(f.to_dnf(1));
    CHECK(Formula::falsity().to_dnf(4)->empty());
    CHECK(Formula::truth().to_dnf(4)->size() == 1);
}

TEST_CASE("bc_buchi strategies agree on random formulas", "[oracle][property]") {
    std::mt19937_64 rng(5);
    std::function<Formula(int, int)> random_formula = [&](int depth, int vars) -> Formula {
        if (depth == 0 || rng() % 3 == 0) {
            auto v = Formula::var(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(vars)));
            return rng() % 2 ? v : Formula::negate(v);
        }
        std::vector<Formula> args;
        int k = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < k; ++i) args.push_back(random_formula(depth - 1, vars));
        Formula f = rng() % 2 ? Formula::all_of(args) : Formula::any_of(args);
        return rng() % 4 == 0 ? Formula::negate(f) : f;
    };
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Game g = random_game({5, 1, ObjectiveKind::Buchi, 0.35, seed});
        const int vars = 1 + static_cast<int>(rng() % 4);
        std::vector<VertexSet> base;
        for (int i = 0; i < vars; ++i) {
            VertexSet s;
            for (Vertex v = 0; v < 5; ++v)
                if (rng() % 2) s.insert(v);
            base.push_back(s);
        }
        Formula f = random_formula(3, vars);
        for (Vertex v = 0; v < 5; ++v) {
            bool expected = false;
            for (const auto& s : oracle::realizable_infs(g, g.all_vertices(), v)) {
                std::uint64_t a = 0;
                for (int i = 0; i < vars; ++i)
                    if (s.intersects(base[static_cast<std::size_t>(i)])) a |= std::uint64_t{1} << i;
                expected = expected || f.evaluate(a);
            }
            for (auto strategy : {BcStrategy::Auto, BcStrategy::Enumerate, BcStrategy::Dnf})
                CHECK(bc_buchi_path(g, g.all_vertices(), base, f, v, strategy).has_value() == expected);
        }
    }
}

TEST_CASE("explicit_muller_path", "[oracle]") {
    Game g = fixtures::example();
    const VertexSet all = g.all_vertices();
    auto in = explicit_muller_path(g, all, {VertexSet{3}}, MullerMode::In, 0);
    REQUIRE(in);
    CHECK(in->stem == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(in->inf_set == VertexSet{3});

    auto avoid = explicit_muller_path(g, all, {VertexSet{1, 2}}, MullerMode::Avoid, 0);
    REQUIRE(avoid);
    CHECK((avoid->inf_set == VertexSet{3} || avoid->inf_set == VertexSet{5} || avoid->inf_set == VertexSet{6}));

    auto every = oracle::realizable_infs(g, all, 0);
    CHECK(every.size() == 4);
    CHECK_FALSE(explicit_muller_path(g, all, every, MullerMode::Avoid, 0));
}

TEST_CASE("payoff_path on the running example", "[oracle]") {
    Game g = fixtures::example();
    const VertexSet all = g.all_vertices();
    auto w = payoff_path(g, all, P("01"), 0);
    REQUIRE(w);
    check_sound(g, all, P("01"), 0, *w);
    CHECK_FALSE(payoff_path(g, all, P("11"), 0));
    CHECK_FALSE(payoff_path(g, all - VertexSet{4}, P("00"), 0));
    CHECK(payoff_path(g, all, P("00"), 0));
    CHECK_THROWS_AS(payoff_path(g, all, P("0"), 0), Error);

    RawGame raw = to_raw(g);
    for (auto& o : raw.objectives) o = Reachability{std::get<Buchi>(o).target};
    Game reach = validate_game(raw);
    try {
        payoff_path(reach, all, P("01"), 0);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedObjective);
    }
}

TEST_CASE("payoff_path matches brute force for every class", "[oracle][property]") {
    const ObjectiveKind classes[] = {ObjectiveKind::Buchi,  ObjectiveKind::CoBuchi, ObjectiveKind::Parity,
                                     ObjectiveKind::Rabin,  ObjectiveKind::Streett, ObjectiveKind::Muller,
                                     ObjectiveKind::ExplicitMuller};
    std::mt19937_64 rng(99);
    for (auto cls : classes)
        for (int round = 0; round < 12; ++round) {
            RandomGameParams params{2 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 2), cls, 0.3, rng()};
            Game g = random_game(params);
            // A random allowed set containing vertex 0 exercises restriction too.
            VertexSet allowed = g.all_vertices();
            if (round % 2)
                for (Vertex v = 1; v < params.num_vertices; ++v)
                    if (rng() % 3 == 0) allowed.erase(v);
            for (Vertex v : allowed.elements()) {
                auto expected = oracle::payoffs_from(g, allowed, v);
                for (std::uint64_t k = 0; k < (std::uint64_t{1} << params.num_players); ++k) {
                    Payoff p = Payoff::nth(static_cast<std::size_t>(params.num_players), k);
                    auto w = payoff_path(g, allowed, p, v);
                    INFO(to_string(cls) << " seed " << params.seed << " v " << v << " p " << p.to_string());
                    CHECK(w.has_value() == (expected.count(p) != 0));
                    if (w) check_sound(g, allowed, p, v, *w);
                    // Shrinking the allowed set never creates a path.
                    VertexSet smaller = allowed;
                    smaller.erase(allowed.elements().back());
                    if (smaller.contains(v) && payoff_path(g, smaller, p, v)) CHECK(w.has_value());
                }
            }
        }
}
