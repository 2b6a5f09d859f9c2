#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uhfb/io.hpp"
#include "uhfb/verify.hpp"

using namespace uhfb;

TEST_CASE("complex literals") {
    CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
    CHECK(parse_complex("-2") == Complex(-2.0, 0.0));
    CHECK(parse_complex("1+2i") == Complex(1.0, 2.0));
    CHECK(parse_complex("1-2i") == Complex(1.0, -2.0));
    CHECK(parse_complex("3i") == Complex(0.0, 3.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("+i") == Complex(0.0, 1.0));
    CHECK(parse_complex("2.5e-3+1e2i") == Complex(0.0025, 100.0));
    CHECK(parse_complex(" 1 + 2i ") == Complex(1.0, 2.0));
    CHECK_THROWS_AS(parse_complex(""), error);
    CHECK_THROWS_AS(parse_complex("abc"), error);
    CHECK_THROWS_AS(parse_complex("1+2j"), error);
    CHECK_THROWS_AS(parse_complex("1.2.3"), error);
}

TEST_CASE("unit and term grammar") {
    SECTION("one-site shorthand") {
        auto k = parse_unit_spec("E:2,3");
        CHECK(k.first == Digits{2});
        CHECK(k.second == Digits{3});
    }

    SECTION("multi-site form, either field order") {
        auto k = parse_unit_spec("E;J=1,2;K=2,1");
        CHECK(k.first == Digits{1, 2});
        CHECK(k.second == Digits{2, 1});
        auto r = parse_unit_spec("E;K=2,1;J=1,2");
        CHECK(r == k);
    }

    SECTION("terms carry coefficients") {
        auto [c, k] = parse_term("1-2i*E:1,1");
        CHECK(c == Complex(1.0, -2.0));
        CHECK(k.first == Digits{1});
        auto [c1, k1] = parse_term("E;J=2;K=1");
        CHECK(c1 == Complex(1.0));
        CHECK(k1.second == Digits{1});
    }

    SECTION("malformed specs carry positions") {
        CHECK_THROWS_WITH(parse_unit_spec("F:1,1"),
                          Catch::Matchers::ContainsSubstring("position 0"));
        CHECK_THROWS_AS(parse_unit_spec("E:1"), error);
        CHECK_THROWS_AS(parse_unit_spec("E;J=1,2"), error);
        CHECK_THROWS_AS(parse_unit_spec("E;J=1;K=1,2"), error);
        CHECK_THROWS_AS(parse_unit_spec("E;J=1;J=2;K=1"), error);
        CHECK_THROWS_AS(parse_unit_spec("E;Q=1;K=1"), error);
    }

    SECTION("elements from term lists validate digits against the base") {
        auto base = SequencePrefix::base({2, 3});
        auto x = parse_element(base, {"E;J=1,2;K=2,1", "0.5+0.5i*E;J=2,3;K=1,1"});
        CHECK(x.level() == 2);
        CHECK(x.terms().size() == 2);
        CHECK_THROWS_AS(parse_element(base, {"E;J=1,4;K=1,1"}), error);
        CHECK_THROWS_AS(parse_element(base, {"E:1,1", "E;J=1,1;K=1,1"}), error);
        // level-1 shorthand truncates the base
        auto y = parse_element(base, {"E:2,2"});
        CHECK(y.base() == SequencePrefix::base({2}));
    }
}

TEST_CASE("json round trips") {
    std::mt19937_64 rng(701);
    std::normal_distribution<double> g;

    SECTION("matrices") {
        for (int it = 0; it < 10; ++it) {
            Mat m(3, 2);
            for (Eigen::Index i = 0; i < 3; ++i)
                for (Eigen::Index j = 0; j < 2; ++j) m(i, j) = Complex(g(rng), g(rng));
            Mat back = matrix_from_json(matrix_to_json(m));
            CHECK(max_abs(Mat(back - m)) == 0.0);
        }
        CHECK_THROWS_AS(
            matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"entries", json::array()}}),
            error);
    }

    SECTION("elements") {
        auto base = SequencePrefix::base({2, 3});
        for (int it = 0; it < 10; ++it) {
            AlgebraElement x(base);
            for (int t = 0; t < 4; ++t)
                x.add_term({std::uniform_int_distribution<uint32_t>(1, 2)(rng),
                            std::uniform_int_distribution<uint32_t>(1, 3)(rng)},
                           {std::uniform_int_distribution<uint32_t>(1, 2)(rng),
                            std::uniform_int_distribution<uint32_t>(1, 3)(rng)},
                           Complex(g(rng), g(rng)));
            CHECK(element_from_json(element_to_json(x)) == x);
        }
        // the string form survives a json text round trip as well
        auto x = unit_elem(base, {1, 2}, {2, 3}, Complex(0.5, -1.0));
        auto text = element_to_json(x).dump();
        CHECK(element_from_json(json::parse(text)) == x);
    }

    SECTION("tensors") {
        auto t = coproduct_phi(SequencePrefix::base({2}), SequencePrefix::base({3}),
                               unit_elem(SequencePrefix::base({6}), {2}, {5},
                                         Complex(0.0, 2.0)));
        CHECK(tensor_from_json(tensor_to_json(t)) == t);
    }

    SECTION("verification reports") {
        auto r = verify_cancellation(SequencePrefix::base({2}), SequencePrefix::base({2}), 1);
        auto j = report_to_json(r);
        CHECK(j.at("passed").get<bool>());
        CHECK(j.at("rank").get<uint64_t>() == 16);
        CHECK(j.at("full_dim").get<uint64_t>() == 16);
        CHECK(j.at("instances").get<uint64_t>() == r.instances);
    }
}

TEST_CASE("run configuration") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.tolerance = 1e-3;
    CHECK_THROWS_AS(cfg.validate(), error);
    cfg.tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), error);
    cfg = RunConfig{};
    cfg.level_cap = 0;
    CHECK_THROWS_AS(cfg.validate(), error);
}

TEST_CASE("verification suites") {
    RunConfig cfg;
    cfg.seed = 42;

    SECTION("fast suites pass on defaults") {
        for (const auto& name : {"counit", "noncocommutative", "atoms", "comodule"}) {
            auto r = run_suite(name, cfg);
            INFO(name);
            CHECK(r.passed());
            CHECK(r.instances() > 0);
        }
    }

    SECTION("randomized suites are deterministic for a fixed seed") {
        auto a = run_suite("comodule", cfg);
        auto b = run_suite("comodule", cfg);
        REQUIRE(a.reports.size() == b.reports.size());
        CHECK(a.reports[0].instances == b.reports[0].instances);
        CHECK(a.reports[0].failures == b.reports[0].failures);
    }

    SECTION("level cap trims the grid") {
        RunConfig small = cfg;
        small.level_cap = 1;
        auto r = suite_coassoc(small);
        for (const auto& rep : r.reports) CHECK(rep.check.find("level=2") == std::string::npos);
        CHECK(r.passed());
    }

    SECTION("unknown suites are rejected") {
        CHECK_THROWS_AS(run_suite("nope", cfg), error);
    }

    SECTION("suite names are sorted and complete") {
        auto names = suite_names();
        CHECK(names.size() == 9);
        CHECK(std::is_sorted(names.begin(), names.end()));
        for (const auto& n : names) CHECK_NOTHROW(run_suite(n, cfg));
    }
}
