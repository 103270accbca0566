#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "pnfield/action.hpp"
#include "pnfield/error.hpp"

using namespace pnfield;

namespace {

std::vector<Index> row(const ActionSpec& a, Index g) {
    std::vector<Index> scratch;
    const auto p = a.permutation(g, scratch);
    return {p.begin(), p.end()};
}

std::vector<Index> labels_row(const ActionSpec& a, Label g) {
    const Index gi = *a.group().index_of(g);
    std::vector<Index> out;
    for (Index x = 0; x < a.carrier_size(); ++x) out.push_back(a.carrier_label(a.apply(gi, x)));
    return out;
}

}  // namespace

TEST_CASE("multiplicative translation") {
    const FieldSpec gf4 = FieldSpec::build(2, 2);
    const ActionSpec a = action_mul_translation(gf4);
    CHECK(a.group().order() == 3);
    CHECK(a.carrier_size() == 4);
    CHECK(labels_row(a, 2) == std::vector<Index>{0, 2, 3, 1});
    CHECK(labels_row(a, 1) == std::vector<Index>{0, 1, 2, 3});
    CHECK(a.group().label(a.group().identity()) == 1);
    CHECK(a.is_faithful());
    CHECK_FALSE(a.is_regular());

    const ActionSpec a8 = action_mul_translation(FieldSpec::build(2, 3));
    CHECK(a8.is_faithful());
    CHECK_FALSE(a8.is_regular());
}

TEST_CASE("additive translation") {
    const FieldSpec gf4 = FieldSpec::build(2, 2);
    const ActionSpec a = action_add_translation(gf4);
    CHECK(labels_row(a, 1) == std::vector<Index>{1, 0, 3, 2});
    CHECK(labels_row(a, 0) == std::vector<Index>{0, 1, 2, 3});
    CHECK(a.is_regular());
    CHECK(a.is_faithful());
    CHECK(a.name() == "xor");
    CHECK(action_add_translation(FieldSpec::build(3, 2)).is_regular());
    CHECK(action_add_translation(FieldSpec::build(3, 2)).name() == "add");
}

TEST_CASE("scalar action") {
    const FieldSpec gf4 = FieldSpec::build(2, 2);
    const VectorSpaceSpec v1(gf4, 1);
    const ActionSpec s1 = action_scalar(v1);
    const ActionSpec m = action_mul_translation(gf4);
    for (Index g = 0; g < 3; ++g) CHECK(row(s1, g) == row(m, g));

    const VectorSpaceSpec v2(gf4, 2);
    const ActionSpec s2 = action_scalar(v2);
    const std::vector<Element> u{1, 2};
    const Index img = s2.apply(*s2.group().index_of(2), v2.from_components(u));
    CHECK(v2.components(img) == std::vector<Element>{2, 3});
    CHECK(labels_row(s2, 1) == [&] {
        std::vector<Index> id(16);
        std::iota(id.begin(), id.end(), 0u);
        return id;
    }());
    CHECK(s2.is_faithful());
    CHECK_FALSE(s2.is_regular());
}

TEST_CASE("star action") {
    const FieldSpec gf8 = FieldSpec::build(2, 3);
    const FieldRing ring(gf8);
    const ActionSpec a = action_star(ring, UnitSubgroup::full(7));
    CHECK(a.carrier_size() == 7);
    CHECK(a.group().label(a.group().identity()) == gf8.gamma());
    // γ² sends γ^j to γ^{2j}.
    const Index g2 = *a.group().index_of(gf8.exp_gamma(2));
    std::vector<Label> got, expected;
    for (std::uint32_t j = 0; j < 7; ++j) {
        got.push_back(a.carrier_label(a.apply(g2, *a.carrier_index(gf8.exp_gamma(j)))));
        expected.push_back(gf8.exp_gamma(2 * j % 7));
    }
    CHECK(got == expected);
    for (Index g = 0; g < a.group().order(); ++g) CHECK(a.carrier_label(a.apply(g, *a.carrier_index(1))) == 1);
    CHECK(labels_row(a, gf8.gamma()) == std::vector<Index>{1, 2, 3, 4, 5, 6, 7});
    CHECK(a.is_faithful());

    CHECK_THROWS_AS(action_star(ring, UnitSubgroup::full(15)), InvalidArgument);
}

TEST_CASE("action axioms for every built-in action up to |G| = 2^7") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (std::uint32_t m = 1; oracle::ipow(p, m) <= 128; ++m) {
            CAPTURE(p);
            CAPTURE(m);
            const FieldSpec f = FieldSpec::build(p, m);
            CHECK(action_mul_translation(f).satisfies_action_axioms());
            CHECK(action_add_translation(f).satisfies_action_axioms());
            if (oracle::ipow(p, 2 * m) <= 1024) CHECK(action_scalar(VectorSpaceSpec(f, 2)).satisfies_action_axioms());
            CHECK(action_left_translation(FiniteGroup::field_multiplicative(f)).satisfies_action_axioms());
            if (f.unit_count() >= 2) {
                const FieldRing ring(f);
                CHECK(action_star(ring, UnitSubgroup::full(ring.n())).satisfies_action_axioms());
            }
        }
    }
}

TEST_CASE("star action: automorphisms of (GF*, .) and faithful for every unit subgroup") {
    for (std::uint32_t q = 2; q <= 7; ++q) {
        CAPTURE(q);
        const FieldSpec f = FieldSpec::build(2, q);
        const FieldRing ring(f);
        std::vector<UnitSubgroup> subgroups{UnitSubgroup::full(ring.n())};
        for (std::uint64_t g = 1; g < ring.n(); ++g) {
            if (std::gcd(g, std::uint64_t{ring.n()}) == 1) subgroups.push_back(UnitSubgroup::generated(ring.n(), {g}));
        }
        for (const UnitSubgroup& sg : subgroups) CHECK(action_star(ring, sg).is_faithful());
        // Every element of U(Z_n) lies in the full group, so this covers every subgroup's maps.
        const ActionSpec a = action_star(ring, subgroups.front());
        bool ok = true;
        for (Index g = 0; g < a.group().order() && ok; ++g) {
            for (Element x = 1; x < f.order() && ok; ++x) {
                for (Element y = 1; y < f.order() && ok; ++y) {
                    const Label lhs = a.carrier_label(a.apply(g, *a.carrier_index(f.mul(x, y))));
                    const Label rhs = f.mul(a.carrier_label(a.apply(g, *a.carrier_index(x))),
                                            a.carrier_label(a.apply(g, *a.carrier_index(y))));
                    ok = lhs == rhs;
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("explicit permutations") {
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    const ActionSpec trivial = ActionSpec::from_permutations(z2, {{0, 1}, {0, 1}}, {0, 1}, "trivial");
    CHECK_FALSE(trivial.is_faithful());
    CHECK_FALSE(trivial.is_regular());
    const ActionSpec swap = ActionSpec::from_permutations(z2, {{0, 1}, {1, 0}}, {0, 1}, "swap");
    CHECK(swap.is_faithful());
    CHECK(swap.is_regular());

    // The subgroup {0, 2} of Z_4 translating Z_4.
    const ActionSpec sub = ActionSpec::from_permutations(z2, {{0, 1, 2, 3}, {2, 3, 0, 1}}, {0, 1, 2, 3}, "sub");
    CHECK(sub.is_faithful());
    CHECK_FALSE(sub.is_regular());
    CHECK(action_left_translation(FiniteGroup::cyclic(4)).is_regular());

    const FiniteGroup z3 = FiniteGroup::cyclic(3);
    CHECK_THROWS_AS(ActionSpec::from_permutations(z3, {{0, 1, 2}, {2, 0, 1}, {2, 0, 1}}, {0, 1, 2}, "bad"),
                    InvalidArgument);
    CHECK_THROWS_AS(ActionSpec::from_permutations(z3, {{0, 1, 2}, {1, 2, 0}, {1, 1, 0}}, {0, 1, 2}, "bad"),
                    InvalidArgument);
    CHECK_THROWS_AS(ActionSpec::from_permutations(z3, {{1, 0, 2}, {1, 2, 0}, {2, 0, 1}}, {0, 1, 2}, "bad"),
                    InvalidArgument);
    CHECK_THROWS_AS(ActionSpec::from_permutations(z2, {{0, 1}}, {0, 1}, "short"), InvalidArgument);
}

TEST_CASE("groups from Cayley tables") {
    const FiniteGroup k4 = FiniteGroup::from_cayley_table({0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0}, "V4");
    CHECK(k4.order() == 4);
    CHECK(k4.identity() == 0);
    for (Index a = 0; a < 4; ++a) CHECK(k4.inverse(a) == a);
    CHECK(k4.quotient(1, 2) == 3);
    CHECK_THROWS_AS(FiniteGroup::from_cayley_table({0, 1, 1, 1}, "bad"), InvalidArgument);
    CHECK_THROWS_AS(FiniteGroup::from_cayley_table({1, 0, 0, 0}, "bad"), InvalidArgument);
    CHECK_THROWS_AS(FiniteGroup::from_cayley_table({0, 1, 2}, "bad"), InvalidArgument);
    // A Latin square with identity that is not associative (order 5 loop).
    const std::vector<Index> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
    CHECK_THROWS_AS(FiniteGroup::from_cayley_table(loop, "loop"), InvalidArgument);
}

TEST_CASE("computed groups agree with their Cayley tables") {
    const FieldSpec gf9 = FieldSpec::build(3, 2);
    for (const FiniteGroup& g : {FiniteGroup::field_additive(gf9), FiniteGroup::field_multiplicative(gf9),
                                 FiniteGroup::elementary_abelian(3, 2), FiniteGroup::cyclic(6)}) {
        const FiniteGroup t = FiniteGroup::from_cayley_table(g.cayley_table(), "copy");
        CHECK(t.identity() == g.identity());
        for (Index a = 0; a < g.order(); ++a) {
            CHECK(t.inverse(a) == g.inverse(a));
            for (Index b = 0; b < g.order(); ++b) CHECK(t.quotient(a, b) == g.quotient(a, b));
        }
    }
    const FiniteGroup mult = FiniteGroup::field_multiplicative(gf9);
    for (Index a = 0; a < mult.order(); ++a) CHECK(mult.label(a) == a + 1);
    CHECK(mult.label(mult.identity()) == 1);
    CHECK(mult.non_identity().size() == 7);
}

TEST_CASE("elementary abelian arithmetic is digit-wise mod p") {
    std::mt19937_64 rng(11);
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {3, 1}, {3, 4}, {3, 5}, {3, 8}, {3, 11}, {5, 3}, {7, 6}, {11, 2}, {127, 2}, {131, 1}, {257, 2}}) {
        CAPTURE(p);
        CAPTURE(k);
        const FiniteGroup g = FiniteGroup::elementary_abelian(p, k);
        const auto digitwise = [&](Index a, Index b, bool subtract) {
            Index out = 0, place = 1;
            for (std::uint32_t i = 0; i < k; ++i, a /= p, b /= p, place *= p) {
                out += (subtract ? (a % p + p - b % p) : (a % p + b % p)) % p * place;
            }
            return out;
        };
        bool ok = true;
        for (int t = 0; t < 4000 && ok; ++t) {
            const Index a = static_cast<Index>(rng() % g.order());
            const Index b = static_cast<Index>(rng() % g.order());
            ok = g.op(a, b) == digitwise(a, b, false) && g.quotient(a, b) == digitwise(a, b, true) &&
                 g.inverse(b) == digitwise(0, b, true);
        }
        CHECK(ok);
        const Index top = static_cast<Index>(g.order() - 1);
        CHECK(g.op(top, 1) == digitwise(top, 1, false));
        CHECK(g.quotient(0, top) == g.inverse(top));
        CHECK_THROWS_AS(g.quotient(static_cast<Index>(g.order()), 0), InvalidArgument);
    }
}
