#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uhfb/uhf.hpp"

using namespace uhfb;

namespace {

AlgebraElement random_element(const SequencePrefix& base, int nterms, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    AlgebraElement x(base);
    for (int t = 0; t < nterms; ++t) {
        Digits j(base.size()), k(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            j[i] = std::uniform_int_distribution<uint32_t>(1, base[i])(rng);
            k[i] = std::uniform_int_distribution<uint32_t>(1, base[i])(rng);
        }
        x.add_term(j, k, Complex(g(rng), g(rng)));
    }
    return x;
}

} // namespace

TEST_CASE("multi index validation") {
    auto b = SequencePrefix::base({2, 3});
    CHECK_NOTHROW(MultiIndex(b, {2, 3}));
    CHECK_THROWS_AS(MultiIndex(b, {2, 4}), error);
    CHECK_THROWS_AS(MultiIndex(b, {0, 1}), error);
    CHECK_THROWS_AS(MultiIndex(b, {1}), error);
}

TEST_CASE("matrix unit elements") {
    auto b = SequencePrefix::base({2, 3});
    auto e = unit_elem(b, {1, 2}, {2, 3});
    CHECK(e.level() == 2);
    CHECK(e.terms().size() == 1);
    CHECK(e.coeff({1, 2}, {2, 3}) == Complex(1.0));
    CHECK_THROWS_AS(unit_elem(b, {1, 4}, {1, 1}), error);

    // adjoint swaps the index pair and conjugates
    auto ec = unit_elem(b, {1, 2}, {2, 3}, Complex(0.0, 2.0));
    CHECK(ec.adjoint() == unit_elem(b, {2, 3}, {1, 2}, Complex(0.0, -2.0)));

    // zero coefficients are pruned
    auto z = e - e;
    CHECK(z.is_zero());
    auto z2 = unit_elem(b, {1, 1}, {1, 1}, 0.0);
    CHECK(z2.is_zero());

    CHECK(e.str() == "E[a=2,3; J=1,2; K=2,3]");
}

TEST_CASE("dense codec") {
    SECTION("single site: E6_22 lands at the (2,2) entry") {
        auto b6 = SequencePrefix::base({6});
        CHECK(max_abs(to_dense(unit_elem(b6, {2}, {2})) - matrix_unit(6, 2, 2)) == 0.0);
    }

    SECTION("multi-site units are kronecker products of site units, exhaustively") {
        auto b = SequencePrefix::base({2, 3});
        for (uint32_t j1 = 1; j1 <= 2; ++j1)
            for (uint32_t j2 = 1; j2 <= 3; ++j2)
                for (uint32_t k1 = 1; k1 <= 2; ++k1)
                    for (uint32_t k2 = 1; k2 <= 3; ++k2) {
                        Mat want = kron(matrix_unit(2, j1, k1), matrix_unit(3, j2, k2));
                        CHECK(max_abs(to_dense(unit_elem(b, {j1, j2}, {k1, k2})) - want) == 0.0);
                    }
    }

    SECTION("big-endian row formula") {
        // row(J) = 1 + (j1-1)*3 + (j2-1) for base (2,3)
        auto b = SequencePrefix::base({2, 3});
        Mat d = to_dense(unit_elem(b, {2, 1}, {1, 3}));
        CHECK(d(3, 2) == Complex(1.0)); // row 4 = 1+(2-1)*3, col 3 = 1+(3-1)
        CHECK(d.cwiseAbs().sum() == 1.0);
    }

    SECTION("round trip and linearity") {
        std::mt19937_64 rng(301);
        auto b = SequencePrefix::base({2, 2, 3});
        for (int it = 0; it < 25; ++it) {
            auto x = random_element(b, 5, rng);
            CHECK(from_dense(b, to_dense(x)) == x);
        }
        CHECK(from_dense(b, Mat::Identity(12, 12)) == AlgebraElement::identity(b));
        CHECK_THROWS_AS(from_dense(b, Mat::Identity(6, 6)), error);
    }

    SECTION("a size-1 site is a scalar tensor factor") {
        auto mixed = SequencePrefix::component({1, 2});
        auto e = unit_elem(mixed, {1, 2}, {1, 1});
        CHECK(max_abs(to_dense(e) - matrix_unit(2, 2, 1)) == 0.0);
    }
}

TEST_CASE("multiplication") {
    auto b = SequencePrefix::base({2, 2});

    SECTION("sitewise delta rule on units, exhaustive") {
        Digits j(2, 1);
        std::vector<Digits> all;
        do {
            all.push_back(j);
            std::size_t i = 2;
            bool more = false;
            while (i > 0) {
                --i;
                if (++j[i] <= b[i]) { more = true; break; }
                j[i] = 1;
            }
            if (!more) break;
        } while (true);
        REQUIRE(all.size() == 4);
        for (const auto& J : all)
            for (const auto& K : all)
                for (const auto& L : all)
                    for (const auto& M : all) {
                        auto prod = unit_elem(b, J, K) * unit_elem(b, L, M);
                        if (K == L)
                            CHECK(prod == unit_elem(b, J, M));
                        else
                            CHECK(prod.is_zero());
                    }
    }

    SECTION("random elements against the dense oracle") {
        std::mt19937_64 rng(302);
        for (int it = 0; it < 50; ++it) {
            auto x = random_element(b, 2, rng);
            auto y = random_element(b, 3, rng);
            Mat want = to_dense(x) * to_dense(y);
            CHECK(max_abs(to_dense(x * y) - want) <= 1e-14 * std::max(1.0, max_abs(want)));
        }
    }

    SECTION("identity, homomorphism and adjoint through the codec") {
        std::mt19937_64 rng(303);
        auto id = AlgebraElement::identity(b);
        CHECK(max_abs(to_dense(id) - Mat::Identity(4, 4)) == 0.0);
        for (int it = 0; it < 25; ++it) {
            auto x = random_element(b, 3, rng);
            auto y = random_element(b, 3, rng);
            CHECK(id * x == x);
            CHECK(x * id == x);
            CHECK(max_abs(to_dense(x + y) - (to_dense(x) + to_dense(y))) == 0.0);
            CHECK(max_abs(to_dense(x.adjoint()) - Mat(to_dense(x).adjoint())) == 0.0);
            Mat put = to_dense(x) * to_dense(y);
            CHECK(max_abs(to_dense(x * y) - put) <= 1e-13 * std::max(1.0, max_abs(put)));
        }
    }

    SECTION("base mismatch is an error") {
        auto c = SequencePrefix::base({2, 3});
        CHECK_THROWS_AS(unit_elem(b, {1, 1}, {1, 1}) * unit_elem(c, {1, 1}, {1, 1}), error);
    }
}

TEST_CASE("level embedding") {
    auto b2 = SequencePrefix::base({2});

    SECTION("unit sum over the appended digit") {
        auto x = unit_elem(b2, {1}, {2});
        auto em = embed_level(x, 3);
        AlgebraElement want(SequencePrefix::base({2, 3}));
        for (uint32_t d = 1; d <= 3; ++d) want.add_term({1, d}, {2, d}, 1.0);
        CHECK(em == want);
    }

    SECTION("identity maps to identity") {
        CHECK(embed_level(AlgebraElement::identity(b2), 2) ==
              AlgebraElement::identity(SequencePrefix::base({2, 2})));
    }

    SECTION("embedding is a unital *-homomorphism and matches kron with I") {
        std::mt19937_64 rng(304);
        for (int it = 0; it < 25; ++it) {
            auto x = random_element(b2, 2, rng);
            auto y = random_element(b2, 2, rng);
            CHECK(embed_level(x * y, 3) == embed_level(x, 3) * embed_level(y, 3));
            CHECK(embed_level(x.adjoint(), 3) == embed_level(x, 3).adjoint());
            CHECK(max_abs(to_dense(embed_level(x, 3)) -
                          kron(to_dense(x), Mat::Identity(3, 3))) == 0.0);
        }
    }
}

TEST_CASE("direct sum elements") {
    auto b = SequencePrefix::base({6});
    DirectSumElement x;
    x.set_component(b, unit_elem(b, {2}, {2}));
    CHECK(x.components().size() == 1);
    CHECK(x.component(b) != nullptr);
    CHECK(x.component(SequencePrefix::base({2})) == nullptr);
    CHECK(x.scalar_part() == Complex(0.0));

    auto s = DirectSumElement::scalar(Complex(2.5, -1.0));
    CHECK(s.scalar_part() == Complex(2.5, -1.0));

    // zero components are dropped
    DirectSumElement z;
    z.set_component(b, unit_elem(b, {1}, {1}) - unit_elem(b, {1}, {1}));
    CHECK(z.components().empty());
    CHECK(z == DirectSumElement());

    // key must match the component's base
    DirectSumElement w;
    CHECK_THROWS_AS(w.set_component(SequencePrefix::base({2}), unit_elem(b, {1}, {1})), error);
}
