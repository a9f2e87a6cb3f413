#include <doctest.h>

#include <cmath>

#include "siginform/errors.hpp"
#include "siginform/siggen.hpp"
#include "test_helpers.hpp"

using namespace siginform;

TEST_CASE("check_assumptions") {
    SUBCASE("rotation generator satisfies both") {
        const AssumptionReport rep = check_assumptions(helpers::rotation_generator());
        CHECK(rep.obs_lg_sg);
        CHECK(rep.ctrb_sg_w0);
        CHECK_FALSE(rep.spectra_disjoint.has_value());
    }

    SUBCASE("zero output map is unobservable") {
        SignalGenerator gen = helpers::rotation_generator();
        gen.l_g.setZero();
        CHECK_FALSE(check_assumptions(gen).obs_lg_sg);
    }

    SUBCASE("zero initial state is uncontrollable") {
        SignalGenerator gen = helpers::rotation_generator();
        gen.w0.setZero();
        CHECK_FALSE(check_assumptions(gen).ctrb_sg_w0);
    }

    SUBCASE("spectral gap against a plant") {
        const SignalGenerator gen = helpers::constant_generator();
        LtiSystem plant = helpers::scalar_system(0.5, 1.0, 1.0, 0.0);
        AssumptionReport rep = check_assumptions(gen, &plant);
        REQUIRE(rep.spectra_disjoint.has_value());
        CHECK(rep.spectra_disjoint->disjoint);
        CHECK(rep.spectra_disjoint->min_gap == doctest::Approx(0.5));

        plant.a(0, 0) = 1.0;  // shared eigenvalue with Sg = 1
        rep = check_assumptions(gen, &plant);
        CHECK_FALSE(rep.spectra_disjoint->disjoint);
    }
}

TEST_CASE("response") {
    CHECK(response(helpers::constant_generator(), 4) == std::vector<double>{1, 1, 1, 1});
    CHECK(response(helpers::rotation_generator(), 5) == std::vector<double>{1, 0, -1, 0, 1});

    SUBCASE("period-2 recursion u(t) = u(t-2)") {
        SignalGenerator gen;  // companion of z^2 - 1
        gen.s_g = (Matrix(2, 2) << 0, 1, 1, 0).finished();
        gen.l_g = (Matrix(1, 2) << 1, 0).finished();
        gen.w0 = (Vector(2) << 2, -3).finished();
        const auto u = response(gen, 6);
        for (std::size_t t = 2; t < u.size(); ++t) CHECK(u[t] == doctest::Approx(u[t - 2]));
    }

    SUBCASE("continuous-time generators are rejected") {
        SignalGenerator gen = helpers::constant_generator();
        gen.time_domain = TimeDomain::Continuous;
        CHECK_THROWS_AS(response(gen, 3), std::invalid_argument);
    }
}

TEST_CASE("multisine_generator") {
    SUBCASE("single quarter-turn frequency") {
        const SignalGenerator gen = multisine_generator({M_PI / 2.0}, false);
        CHECK(gen.dimension() == 2);
        const auto u = response(gen, 5);
        CHECK(u[0] == doctest::Approx(1.0));
        CHECK(u[1] == doctest::Approx(0.0));
        CHECK(u[2] == doctest::Approx(-1.0));
    }

    SUBCASE("two frequencies plus bias reach the maximum PE order") {
        const SignalGenerator gen = multisine_generator({0.7, 1.9}, true);
        CHECK(gen.dimension() == 5);
        CHECK(check_assumptions(gen).generator_ok());
        CHECK(max_pe_order(response(gen, 9)) == 5);
    }

    SUBCASE("amplitude and phase reproduce the closed form") {
        const double th = 0.9, amp = 2.5, ph = 0.4;
        const SignalGenerator gen = multisine_generator({th}, false, {amp}, {ph});
        const auto u = response(gen, 12);
        for (std::size_t t = 0; t < u.size(); ++t)
            CHECK(u[t] == doctest::Approx(amp * std::cos(th * static_cast<double>(t) + ph)));
    }

    SUBCASE("invalid frequencies") {
        CHECK_THROWS_AS(multisine_generator({0.5, 0.5}, false), std::invalid_argument);
        CHECK_THROWS_AS(multisine_generator({0.0}, false), std::invalid_argument);
        CHECK_THROWS_AS(multisine_generator({M_PI}, false), std::invalid_argument);
    }

    SUBCASE("assumptions hold across random frequency sets") {
        Rng rng(21);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> freqs;
            const int count = 1 + static_cast<int>(rng.next_u64() % 3);
            for (int i = 0; i < count; ++i) freqs.push_back(0.1 + 2.9 * rng.uniform());
            std::sort(freqs.begin(), freqs.end());
            if (std::adjacent_find(freqs.begin(), freqs.end()) != freqs.end()) continue;
            CHECK(check_assumptions(multisine_generator(freqs, trial % 2 == 0)).generator_ok());
        }
    }
}

TEST_CASE("max_pe_order") {
    CHECK(max_pe_order({0, 0, 0}) == 0);
    CHECK(max_pe_order({1, 0, -1, 0, 1}) == 2);
    CHECK(max_pe_order({5.0}) == 1);

    SUBCASE("random signals achieve the length bound") {
        Rng rng(22);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> u(7);
            for (auto& v : u) v = rng.normal();
            CHECK(max_pe_order(u) == 4);
        }
    }

    SUBCASE("never exceeds floor((T+1)/2)") {
        Rng rng(23);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t t_len = 1 + rng.next_u64() % 10;
            std::vector<double> u(t_len);
            for (auto& v : u) v = rng.normal();
            CHECK(max_pe_order(u) <= static_cast<Index>((t_len + 1) / 2));
        }
    }

    SUBCASE("rank monotonicity across depths") {
        // full row rank up to the maximum order, rank-deficient beyond it
        Rng rng(29);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t t_len = 2 + rng.next_u64() % 9;
            std::vector<double> u(t_len);
            for (auto& v : u) v = rng.normal();
            if (trial % 3 == 0) u = response(multisine_generator({0.4 + rng.uniform()}, false),
                                             static_cast<Index>(t_len));
            const Index pe = max_pe_order(u);
            for (Index k = 1; k <= static_cast<Index>((t_len + 1) / 2); ++k) {
                const bool full = numerical_rank(signal_hankel(u, k)).rank == k;
                CHECK(full == (k <= pe));
            }
        }
    }
}

TEST_CASE("signal_hankel") {
    const Matrix h2 = signal_hankel({1, 2, 3}, 2);
    CHECK((h2 - (Matrix(2, 2) << 1, 2, 2, 3).finished()).norm() == 0.0);
    const Matrix h1 = signal_hankel({1, 2, 3}, 1);
    CHECK((h1 - (Matrix(1, 3) << 1, 2, 3).finished()).norm() == 0.0);
    CHECK_THROWS_AS(signal_hankel({1, 2, 3}, 4), std::invalid_argument);

    SUBCASE("square Hankel of a random signal has full rank") {
        Rng rng(24);
        for (int trial = 0; trial < 1000; ++trial) {
            const Index k = 2 + static_cast<Index>(rng.next_u64() % 4);
            std::vector<double> u(static_cast<std::size_t>(2 * k - 1));
            for (auto& v : u) v = rng.normal();
            CHECK(numerical_rank(signal_hankel(u, k)).rank == k);
        }
    }
}

TEST_CASE("realize_from_signal") {
    SUBCASE("constant signal") {
        const SignalGenerator gen = realize_from_signal({1, 1, 1, 1, 1});
        CHECK(gen.dimension() == 1);
        CHECK(gen.s_g(0, 0) == doctest::Approx(1.0));
        CHECK(gen.w0(0) == doctest::Approx(1.0));
    }

    SUBCASE("quarter-turn signal gives the z^2 + 1 companion") {
        const SignalGenerator gen = realize_from_signal({1, 0, -1, 0, 1});
        REQUIRE(gen.dimension() == 2);
        CHECK(gen.s_g(0, 1) == doctest::Approx(1.0));
        CHECK(gen.s_g(1, 0) == doctest::Approx(-1.0));
        CHECK(gen.s_g(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
        const auto u = response(gen, 5);
        CHECK(u[2] == doctest::Approx(-1.0));
        CHECK(u[4] == doctest::Approx(1.0));
    }

    SUBCASE("random signals round trip at floor((T+1)/2)") {
        Rng rng(225);
        for (std::size_t t_len : {4u, 5u, 6u, 7u, 8u}) {
            for (int trial = 0; trial < 40; ++trial) {
                std::vector<double> u(t_len);
                double max_abs = 0.0;
                for (auto& v : u) {
                    v = rng.normal();
                    max_abs = std::max(max_abs, std::abs(v));
                }
                const SignalGenerator gen = realize_from_signal(u);
                CHECK(gen.dimension() == static_cast<Index>((t_len + 1) / 2));
                const auto back = response(gen, static_cast<Index>(t_len));
                for (std::size_t i = 0; i < t_len; ++i)
                    CHECK(std::abs(back[i] - u[i]) <= 1e-8 * max_abs);
            }
        }
    }

    SUBCASE("zero signal is not representable") {
        CHECK_THROWS_AS(realize_from_signal({0, 0, 0}), std::invalid_argument);
    }

    SUBCASE("wrong explicit order is rejected") {
        CHECK_THROWS_AS(realize_from_signal({1, 1, 1, 1, 1}, 2), std::invalid_argument);
    }

    SUBCASE("generator responses round trip") {
        Rng rng(26);
        for (int trial = 0; trial < 50; ++trial) {
            const Index n_g = 1 + static_cast<Index>(rng.next_u64() % 6);
            const SignalGenerator gen = random_generator(n_g, rng);
            const Index t_len = 2 * n_g + 3;
            const auto u = response(gen, t_len);
            double max_abs = 1e-300;
            for (double v : u) max_abs = std::max(max_abs, std::abs(v));
            const SignalGenerator back = realize_from_signal(u);
            CHECK(back.dimension() == n_g);
            const auto u2 = response(back, t_len);
            for (std::size_t i = 0; i < u.size(); ++i)
                CHECK(std::abs(u2[i] - u[i]) <= 1e-8 * max_abs);
        }
    }
}

TEST_CASE("lemma1_equivalence_check") {
    CHECK(lemma1_equivalence_check(helpers::rotation_generator(), 5));
    CHECK(lemma1_equivalence_check(helpers::constant_generator(), 3));

    SUBCASE("violated assumptions raise") {
        SignalGenerator gen = helpers::rotation_generator();
        gen.w0.setZero();
        CHECK_THROWS_AS(lemma1_equivalence_check(gen, 5), AssumptionViolation);
    }

    SUBCASE("holds for random generators") {
        Rng rng(27);
        for (int trial = 0; trial < 50; ++trial) {
            const Index n_g = 1 + static_cast<Index>(rng.next_u64() % 5);
            CHECK(lemma1_equivalence_check(random_generator(n_g, rng), 2 * n_g + 1));
        }
    }
}

TEST_CASE("random signal PE statistics match the length law") {
    Rng rng(28);
    for (Index t_len : {5, 6, 7, 8}) {
        int hits = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> u(static_cast<std::size_t>(t_len));
            for (auto& v : u) v = rng.normal();
            if (max_pe_order(u) == (t_len + 1) / 2) ++hits;
        }
        CHECK(hits == 100);
    }
}
