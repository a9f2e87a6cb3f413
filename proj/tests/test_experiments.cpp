#include <doctest.h>

#include "siginform/experiments.hpp"
#include "test_helpers.hpp"

using namespace siginform;

TEST_CASE("draw_instance") {
    Rng rng(81);
    for (int trial = 0; trial < 20; ++trial) {
        const DrawnInstance inst = draw_instance(3, 4, rng);
        const AssumptionReport rep = check_assumptions(inst.gen, &inst.plant);
        CHECK(rep.all_hold());
        CHECK(rep.spectra_disjoint->min_gap >= 1e-3);
        CHECK(is_minimal(inst.plant).minimal);
    }
}

TEST_CASE("reports are deterministic up to wall time") {
    Corollary2Config config;
    config.n = 2;
    config.trials = 10;
    config.seed = 4242;

    Json a = run_corollary2(config);
    Json b = run_corollary2(config);
    a.erase("wall_time_ms");
    b.erase("wall_time_ms");
    CHECK(a.dump() == b.dump());

    Theorem1McConfig t1;
    t1.n = 2;
    t1.n_g = 2;
    t1.l = 2;
    t1.t_len = 7;
    t1.trials = 10;
    t1.seed = 99;
    Json c = run_theorem1_mc(t1);
    Json d = run_theorem1_mc(t1);
    c.erase("wall_time_ms");
    d.erase("wall_time_ms");
    CHECK(c.dump() == d.dump());
}

TEST_CASE("run_theorem1_mc") {
    SUBCASE("small case-B configuration is informative nearly always") {
        Theorem1McConfig config;
        config.n = 2;
        config.n_g = 2;
        config.l = 2;
        config.t_len = 7;
        config.trials = 100;
        config.seed = 7;
        const Json report = run_theorem1_mc(config);
        CHECK(report["summary"]["informative"].get<int>() >= 99);
        CHECK(report["summary"]["failures_explained_by_e2_margin"].get<bool>());
        CHECK(report["trials"].size() == 100);
    }

    SUBCASE("adversarial arm never produces informative data") {
        Theorem1McConfig config;
        config.n = 3;
        config.n_g = 4;
        config.l = 4;
        config.t_len = 10;
        config.trials = 20;
        config.seed = 21;
        config.adversarial = true;
        const Json report = run_theorem1_mc(config);
        CHECK(report["summary"]["informative"].get<int>() == 0);
        for (const auto& trial : report["trials"]) {
            CHECK(trial["e2_member"].get<bool>());
            CHECK(trial["rank_achieved"].get<int>() < trial["rank_required"].get<int>());
        }
    }

    SUBCASE("configs outside case B are rejected") {
        Theorem1McConfig config;
        config.n = 3;
        config.n_g = 7;  // Ng >= L + n
        config.l = 4;
        config.t_len = 13;
        CHECK_THROWS_AS(run_theorem1_mc(config), std::invalid_argument);
        config.n_g = 3;  // Ng < L
        CHECK_THROWS_AS(run_theorem1_mc(config), std::invalid_argument);
        config.n_g = 4;
        config.t_len = 8;  // below Ng + n + L - 1
        CHECK_THROWS_AS(run_theorem1_mc(config), std::invalid_argument);
    }
}

TEST_CASE("run_corollary2") {
    SUBCASE("first-order plants: rank 3 from four samples") {
        Corollary2Config config;
        config.n = 1;
        config.trials = 100;
        config.seed = 5;
        const Json report = run_corollary2(config);
        CHECK(report["config"]["T"].get<int>() == 4);
        CHECK(report["config"]["rank_target"].get<int>() == 3);
        CHECK(report["summary"]["successes"].get<int>() >= 99);
    }

    SUBCASE("recovered recursion predicts fresh data") {
        Corollary2Config config;
        config.n = 3;
        config.trials = 50;
        config.seed = 31;
        const Json report = run_corollary2(config);
        CHECK(report["summary"]["successes"].get<int>() >= 49);
        int checked = 0;
        for (const auto& trial : report["trials"]) {
            if (!trial["success"].get<bool>() || trial["prediction_error"].is_null()) continue;
            CHECK(trial["prediction_error"].get<double>() <= 1e-6);
            ++checked;
        }
        CHECK(checked >= 49);
    }
}

TEST_CASE("run_willems_compare") {
    WillemsCompareConfig config;
    config.n = 3;
    config.trials = 100;
    config.seed = 17;
    const Json report = run_willems_compare(config);

    REQUIRE(report["arms"].size() == 3);
    const auto& relaxed = report["arms"][0];
    const auto& willems = report["arms"][1];
    const auto& control = report["arms"][2];

    CHECK(relaxed["T"].get<int>() == 10);
    CHECK(willems["T"].get<int>() == 13);
    CHECK(relaxed["summary"]["successes"].get<int>() == 100);
    CHECK(willems["summary"]["successes"].get<int>() == 100);
    CHECK(control["summary"]["successes"].get<int>() == 0);
    CHECK(report["data_length_savings"]["willems_T"].get<int>() == 13);
    CHECK(report["data_length_savings"]["relaxed_T"].get<int>() == 10);
}

TEST_CASE("run_lemma2_mc") {
    SUBCASE("a single nonzero sample is persistently exciting of order one") {
        Lemma2Config config;
        config.t_values = {1};
        config.trials = 50;
        config.seed = 3;
        const Json report = run_lemma2_mc(config);
        CHECK(report["arms"][0]["summary"]["pe_hits"].get<int>() == 50);
    }

    SUBCASE("standard lengths hit the bound every time") {
        Lemma2Config config;
        config.t_values = {5, 6};
        config.trials = 200;
        config.seed = 11;
        const Json report = run_lemma2_mc(config);
        for (const auto& arm : report["arms"]) {
            CHECK(arm["summary"]["pe_hits"].get<int>() == 200);
            CHECK(arm["summary"]["realizable_hits"].get<int>() == 200);
        }
    }
}

TEST_CASE("run_ct_informativity") {
    CtInformativityConfig config;
    config.n = 2;
    config.n_g = 3;
    config.l = 3;
    config.k = 7;
    config.trials = 100;
    config.seed = 13;
    const Json report = run_ct_informativity(config);
    CHECK(report["summary"]["informative"].get<int>() >= 99);

    config.n_g = 2;  // below the window length: case A
    const Json control = run_ct_informativity(config);
    CHECK(control["summary"]["informative"].get<int>() == 0);
}
