#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bbopt/asbec.hpp"

using namespace bbopt;

namespace {

Problem bowl(std::size_t dim) {
    Problem p;
    p.space = SearchSpace::cube(dim, 0.0, 1.0);
    p.objective_count = 1;
    p.eval_fn = [](const Point& x) {
        double s = 0.0;
        for (double v : x) s += (v - 0.5) * (v - 0.5);
        return ObjectiveReport{{s}, 0.0};
    };
    return p;
}

const Scalarizer kMin1{{1.0}, Sense::minimize, 0.0};

}  // namespace

TEST_CASE("onlookers select uniformly among equal sources") {
    auto rng = engine_for(41, 0);
    const std::vector<double> scalars(4, 1.0);
    const int n = 100000;
    std::vector<long> hits(4, 0);
    for (int k = 0; k < n; ++k) ++hits[onlooker_select(scalars, Sense::minimize, rng)];
    for (long h : hits) REQUIRE(std::abs(static_cast<double>(h) / n - 0.25) < 0.01);
}

TEST_CASE("onlookers prefer the better source two to one") {
    auto rng = engine_for(42, 0);
    const std::vector<double> scalars{1.0, 2.0};  // minimize: source 0 ranks first
    const int n = 100000;
    long best_hits = 0;
    for (int k = 0; k < n; ++k) best_hits += onlooker_select(scalars, Sense::minimize, rng) == 0;
    REQUIRE(std::abs(static_cast<double>(best_hits) / n - 2.0 / 3.0) < 0.01);
    // under maximize the ranking flips
    long max_hits = 0;
    for (int k = 0; k < n; ++k) max_hits += onlooker_select(scalars, Sense::maximize, rng) == 1;
    REQUIRE(std::abs(static_cast<double>(max_hits) / n - 2.0 / 3.0) < 0.01);
}

TEST_CASE("tied sources share their rank group's average weight") {
    auto rng = engine_for(43, 0);
    const std::vector<double> scalars{1.0, 1.0, 2.0};  // weights (3+2)/2, (3+2)/2, 1
    const int n = 100000;
    std::vector<long> hits(3, 0);
    for (int k = 0; k < n; ++k) ++hits[onlooker_select(scalars, Sense::minimize, rng)];
    REQUIRE(std::abs(static_cast<double>(hits[0]) / n - 2.5 / 6.0) < 0.01);
    REQUIRE(std::abs(static_cast<double>(hits[1]) / n - 2.5 / 6.0) < 0.01);
    REQUIRE(std::abs(static_cast<double>(hits[2]) / n - 1.0 / 6.0) < 0.01);
}

TEST_CASE("onlooker selection handles the degenerate colony") {
    auto rng = engine_for(44, 0);
    REQUIRE(onlooker_select({3.0}, Sense::minimize, rng) == 0);
    REQUIRE_THROWS_AS(onlooker_select({}, Sense::minimize, rng), ConfigError);
}

TEST_CASE("scouts maximize the distance to the live sources") {
    const SearchSpace s = SearchSpace::cube(2, 0.0, 1.0);
    const std::vector<Point> sources{{0.0, 0.0}};
    const std::vector<Point> candidates{{0.1, 0.1}, {0.9, 0.9}, {0.5, 0.5}};
    REQUIRE(scout_pick(s, sources, candidates, nullptr, 0.25) == 1);
    REQUIRE_THROWS_AS(scout_pick(s, sources, {}, nullptr, 0.25), ConfigError);
}

TEST_CASE("scout ties resolve to the lowest candidate index") {
    const SearchSpace s = SearchSpace::cube(2, 0.0, 1.0);
    const std::vector<Point> sources{{0.5, 0.5}};
    const std::vector<Point> candidates{{0.1, 0.5}, {0.9, 0.5}};  // equidistant
    REQUIRE(scout_pick(s, sources, candidates, nullptr, 0.25) == 0);
}

TEST_CASE("the nectar-trend bonus steers the scout") {
    const SearchSpace s = SearchSpace::cube(2, 0.0, 1.0);
    const std::vector<Point> sources{{0.5, 0.5}};
    const std::vector<Point> candidates{{0.1, 0.5}, {0.9, 0.5}};
    const Point anchor{0.9, 0.5};
    REQUIRE(scout_pick(s, sources, candidates, &anchor, 0.25) == 1);
    // with zero beta the anchor is ignored and the tie rule applies again
    REQUIRE(scout_pick(s, sources, candidates, &anchor, 0.0) == 0);
}

TEST_CASE("the mirror stage reflects the failed step through the source") {
    const SearchSpace s = SearchSpace::cube(2, 0.0, 1.0);
    FoodSource src;
    src.position = {0.6, 0.4};
    src.stage = BeeStage::mirror;
    src.pending_x1 = {0.8, 0.3};
    auto rng = engine_for(45, 0);
    auto move = detail::super_bee_move(src, {0.5, 0.5}, s, s, AsbecConfig{}, Sense::minimize, rng);
    REQUIRE(move.stage_used == BeeStage::mirror);
    REQUIRE_THAT(move.point[0], Catch::Matchers::WithinAbs(0.4, 1e-15));
    REQUIRE_THAT(move.point[1], Catch::Matchers::WithinAbs(0.5, 1e-15));
}

TEST_CASE("the vertex stage lands on a quadratic's minimum") {
    // f = (x-0.5)^2; source 0.6, failed step 0.8, mirror 0.4: the parabola
    // through those three points bottoms out exactly at 0.5.
    const SearchSpace s = SearchSpace::cube(1, 0.0, 1.0);
    FoodSource src;
    src.position = {0.6};
    src.record.scalar = 0.01;
    src.stage = BeeStage::vertex;
    src.pending_x1 = {0.8};
    src.pending_f1 = 0.09;
    src.pending_x2 = {0.4};
    src.pending_f2 = 0.01;
    auto rng = engine_for(46, 0);
    auto move = detail::super_bee_move(src, {0.5}, s, s, AsbecConfig{}, Sense::minimize, rng);
    REQUIRE(move.stage_used == BeeStage::vertex);
    REQUIRE_THAT(move.point[0], Catch::Matchers::WithinAbs(0.5, 1e-12));
}

TEST_CASE("a vertex stage without curvature falls back to a random step") {
    const SearchSpace s = SearchSpace::cube(1, 0.0, 1.0);
    FoodSource src;
    src.position = {0.5};
    src.record.scalar = 1.0;
    src.stage = BeeStage::vertex;
    src.pending_x1 = {0.7};
    src.pending_f1 = 1.2;  // collinear: f grows linearly along the chord
    src.pending_x2 = {0.3};
    src.pending_f2 = 0.8;
    auto rng = engine_for(47, 0);
    auto move = detail::super_bee_move(src, {0.2}, s, s, AsbecConfig{}, Sense::minimize, rng);
    REQUIRE(move.stage_used == BeeStage::random_step);
    REQUIRE(s.contains(move.point));
}

TEST_CASE("differential steps stay inside the working box") {
    const SearchSpace s = SearchSpace::cube(3, 0.0, 1.0);
    auto rng = engine_for(48, 0);
    for (int k = 0; k < 500; ++k) {
        const Point p = detail::differential_step(s, {0.95, 0.05, 0.5}, {0.1, 0.9, 0.5}, 0.2, rng);
        REQUIRE(s.contains(p));
    }
}

TEST_CASE("colony accounting: full blocks, exact budget consumption") {
    Problem p = bowl(3);
    AsbecConfig cfg;  // colony/onlookers resolve to the batch width
    Budget b{28, std::nullopt, 4};
    RunResult r = run_asbec(p, cfg, kMin1, b, 51);
    // 4 init + 3 iterations of (4 employed + 4 onlookers)
    REQUIRE(r.ledger.total_evaluations == 28);
    REQUIRE(r.ledger.total_blocks == 7);
    REQUIRE(r.termination_reason == kReasonBudget);
    REQUIRE(r.algorithm == "asbec");
}

TEST_CASE("a budget expiring mid-iteration trims the final block") {
    Problem p = bowl(3);
    Budget b{30, std::nullopt, 4};
    RunResult r = run_asbec(p, AsbecConfig{}, kMin1, b, 52);
    REQUIRE(r.ledger.total_evaluations == 30);  // 28 + a final 2-wide block
    REQUIRE(r.ledger.total_blocks == 8);
}

TEST_CASE("frequent abandonment keeps blocks exactly colony-wide") {
    Problem p = bowl(2);
    AsbecConfig cfg;
    cfg.colony_size = 2;
    cfg.onlooker_count = 2;
    cfg.abandonment_limit = 1;  // scouts ride the employed block constantly
    Budget b{26, std::nullopt, 2};
    RunResult r = run_asbec(p, cfg, kMin1, b, 53);
    REQUIRE(r.ledger.total_evaluations == 26);
    REQUIRE(r.ledger.total_blocks == 13);
    REQUIRE(p.space.contains(r.final_best.point));
}

TEST_CASE("the colony improves a smooth bowl") {
    Problem p = bowl(4);
    Budget b{400, std::nullopt, 8};
    RunResult r = run_asbec(p, AsbecConfig{}, kMin1, b, 54);
    REQUIRE(r.final_best.scalar < 0.01);
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
        REQUIRE(r.trajectory[i].best_scalar < r.trajectory[i - 1].best_scalar);
        REQUIRE(r.trajectory[i].eval_index > r.trajectory[i - 1].eval_index);
    }
}

TEST_CASE("a colony seeded at the optimum keeps it") {
    Problem p = bowl(3);
    const Point at_opt{0.5, 0.5, 0.5};
    Budget b{8, std::nullopt, 8};  // init block only
    RunResult r = run_asbec(p, AsbecConfig{}, kMin1, b, 55, nullptr, &at_opt);
    REQUIRE(r.final_best.point == at_opt);
    REQUIRE(r.final_best.scalar == 0.0);
}

TEST_CASE("an out-of-bounds start is clamped into the box") {
    Problem p = bowl(2);
    const Point wild{5.0, -3.0};
    Budget b{4, std::nullopt, 4};
    RunResult r = run_asbec(p, AsbecConfig{}, kMin1, b, 56, nullptr, &wild);
    REQUIRE(p.space.contains(r.final_best.point));
}

TEST_CASE("colony runs are reproducible and seed-sensitive") {
    Problem p = bowl(3);
    p.noise_sigma = 0.005;
    p.trust_factor = 1.0;
    AcceleratorConfig accel;
    Budget b{120, std::nullopt, 4};
    RunResult a1 = run_asbec(p, AsbecConfig{}, kMin1, b, 57, &accel);
    RunResult a2 = run_asbec(p, AsbecConfig{}, kMin1, b, 57, &accel);
    REQUIRE(a1.final_best.point == a2.final_best.point);
    REQUIRE(a1.final_best.scalar == a2.final_best.scalar);
    REQUIRE(a1.ledger.total_blocks == a2.ledger.total_blocks);
    RunResult a3 = run_asbec(p, AsbecConfig{}, kMin1, b, 58, &accel);
    REQUIRE(a1.final_best.point != a3.final_best.point);
}

TEST_CASE("colony configuration is validated") {
    AsbecConfig cfg;
    cfg.colony_size = 1;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg = AsbecConfig{};
    cfg.nectar_capacity = 1;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg = AsbecConfig{};
    cfg.step_sigma = 0.0;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    // batch 1 with an unresolved colony size cannot form a colony
    Problem p = bowl(2);
    Budget b{10, std::nullopt, 1};
    REQUIRE_THROWS_AS(run_asbec(p, AsbecConfig{}, kMin1, b, 59), ConfigError);
}
