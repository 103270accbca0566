#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "pnfield/double_field.hpp"
#include "pnfield/error.hpp"

using namespace pnfield;

namespace {

using U128 = unsigned __int128;

U128 pow128(std::uint64_t k, unsigned m) {
    U128 r = 1;
    for (unsigned i = 0; i < m; ++i) r *= k;
    return r;
}

// Every subgroup of U(Z_n): start from {1} and keep adjoining single units
// until nothing new appears. In an abelian group <H, g> = {h * g^k}.
std::vector<std::vector<std::uint64_t>> all_unit_subgroups(std::uint64_t n) {
    std::vector<std::uint64_t> units;
    for (std::uint64_t a = 1; a < n; ++a) {
        if (std::gcd(a, n) == 1) units.push_back(a);
    }
    const auto adjoin = [n](const std::vector<std::uint64_t>& h, std::uint64_t g) {
        std::set<std::uint64_t> s;
        std::uint64_t power = 1;
        do {
            for (std::uint64_t x : h) s.insert(x * power % n);
            power = power * g % n;
        } while (power != 1);
        return std::vector<std::uint64_t>(s.begin(), s.end());
    };
    std::set<std::vector<std::uint64_t>> found{{1}};
    std::vector<std::vector<std::uint64_t>> frontier{{1}};
    while (!frontier.empty()) {
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& h : frontier) {
            for (std::uint64_t g : units) {
                if (std::binary_search(h.begin(), h.end(), g)) continue;
                auto joined = adjoin(h, g);
                if (found.insert(joined).second) next.push_back(std::move(joined));
            }
        }
        frontier = std::move(next);
    }
    return {found.begin(), found.end()};
}

bool difference_unit(const std::vector<std::uint64_t>& s, std::uint64_t n) {
    return std::all_of(s.begin(), s.end(), [n](std::uint64_t i) { return i == 1 || std::gcd(i - 1, n) == 1; });
}

}  // namespace

TEST_CASE("star product examples") {
    const FieldRing r8(FieldSpec::build(2, 3));
    CHECK(r8.star_mul(3, 6) == 7);
    CHECK(r8.star_identity() == 2);
    for (Element y = 1; y < 8; ++y) {
        CHECK(r8.star_mul(2, y) == y);
        CHECK(r8.star_mul(1, y) == 1);
    }
    CHECK_THROWS_AS(r8.star_mul(0, 3), DomainError);
    CHECK_THROWS_AS(r8.star_mul(3, 0), DomainError);
}

TEST_CASE("star inverse") {
    const FieldRing r8(FieldSpec::build(2, 3));
    CHECK(r8.star_inv(3) == 7);
    CHECK(r8.star_inv(2) == 2);
    CHECK_THROWS_AS(r8.star_inv(0), DomainError);
    CHECK_THROWS_AS(r8.star_inv(1), StarZeroDivisor);

    const FieldSpec f16 = FieldSpec::build(2, 4);
    const FieldRing r16(f16);
    try {
        (void)r16.star_inv(f16.exp_gamma(3));
        FAIL("expected a zero divisor");
    } catch (const StarZeroDivisor& e) {
        CHECK(e.exponent() == 3);
        CHECK(e.witness() % 15 != 0);
        CHECK(3 * e.witness() % 15 == 0);
    }
    for (Element a = 1; a < 16; ++a) {
        if (r16.is_star_unit(a)) CHECK(r16.star_mul(a, r16.star_inv(a)) == f16.gamma());
    }
}

TEST_CASE("zero divisors have a witness") {
    for (std::uint32_t m : {2u, 4u, 6u}) {
        const FieldSpec f = FieldSpec::build(2, m);
        const FieldRing ring(f);
        const std::uint32_t n = ring.n();
        for (std::uint32_t i = 1; i < n; ++i) {
            if (std::gcd(i, n) == 1) continue;
            try {
                (void)ring.star_inv(f.exp_gamma(i));
                FAIL("expected a zero divisor");
            } catch (const StarZeroDivisor& e) {
                CHECK(e.witness() % n != 0);
                CHECK(ring.star_mul(f.exp_gamma(i), f.exp_gamma(e.witness() % n)) == 1);
            }
        }
    }
}

TEST_CASE("units") {
    const FieldRing r8(FieldSpec::build(2, 3));
    CHECK(r8.units() == std::vector<Element>{2, 4, 3, 6, 7, 5});
    const FieldRing r16(FieldSpec::build(2, 4));
    CHECK(r16.units().size() == 8);
    const FieldRing r4(FieldSpec::build(2, 2));
    auto u4 = r4.units();
    std::sort(u4.begin(), u4.end());
    CHECK(u4 == std::vector<Element>{2, 3});
}

TEST_CASE("classification") {
    CHECK(FieldRing(FieldSpec::build(2, 3)).classify() == RingKind::double_field);
    CHECK(FieldRing(FieldSpec::build(2, 4)).classify() == RingKind::field_ring);
    CHECK(FieldRing(FieldSpec::build(3, 1)).classify() == RingKind::double_field);
    CHECK(to_string(RingKind::double_field) == "double-field");
    CHECK(to_string(RingKind::field_ring) == "field-ring");
    // Odd characteristic: only GF(3) qualifies.
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        for (std::uint32_t m = 1; oracle::ipow(p, m) <= 20000; ++m) {
            const bool df = FieldRing(FieldSpec::build(p, m)).is_double_field();
            CHECK(df == (p == 3 && m == 1));
        }
    }
    std::vector<std::uint32_t> mersenne;
    for (std::uint32_t m = 1; m <= 13; ++m) {
        if (FieldRing(FieldSpec::build(2, m)).is_double_field()) mersenne.push_back((1u << m) - 1);
    }
    CHECK(mersenne == std::vector<std::uint32_t>{3, 7, 31, 127, 8191});
}

TEST_CASE("ring axioms hold exhaustively up to order 2^7") {
    for (std::uint32_t q = 2; q <= 7; ++q) {
        CAPTURE(q);
        const FieldSpec f = FieldSpec::build(2, q);
        const FieldRing ring(f);
        const Element gamma = f.gamma();
        bool ok = true;
        for (Element a = 1; a < f.order() && ok; ++a) {
            ok = ring.star_mul(gamma, a) == a && ring.star_mul(1, a) == 1;
            for (Element b = 1; b < f.order() && ok; ++b) {
                const Element ab = ring.star_mul(a, b);
                ok = ab == ring.star_mul(b, a);
                ok = ok && f.log_gamma(f.mul(a, b)) == (f.log_gamma(a) + f.log_gamma(b)) % ring.n();
                ok = ok && f.log_gamma(ab) == std::uint64_t{f.log_gamma(a)} * f.log_gamma(b) % ring.n();
                for (Element c = 1; c < f.order() && ok; ++c) {
                    ok = ring.star_mul(ab, c) == ring.star_mul(a, ring.star_mul(b, c)) &&
                         ring.star_mul(a, f.mul(b, c)) == f.mul(ab, ring.star_mul(a, c));
                }
            }
        }
        CHECK(ok);
    }
}

TEST_CASE("mersenne factorization examples") {
    const MersenneSplit a = mersenne_factor(2, 4);
    CHECK(a.factor == 3);
    CHECK(a.cofactor == 5);
    const MersenneSplit b = mersenne_factor(2, 6);
    CHECK(b.factor == 3);
    CHECK(b.cofactor == 21);
    CHECK(b.r == 2);
    CHECK(b.s == 3);
    const MersenneSplit c = mersenne_factor(3, 4);
    CHECK(c.factor == 8);
    CHECK(c.cofactor == 10);
    CHECK_THROWS_AS(mersenne_factor(2, 5), HypothesisError);
    CHECK_THROWS_AS(mersenne_factor(2, 1), HypothesisError);
    CHECK_THROWS_AS(mersenne_factor(1, 4), InvalidArgument);
    CHECK(to_decimal(pow128(5, 32) - 1) == "23283064365386962890624");
}

TEST_CASE("mersenne factorization for composite exponents up to 32") {
    for (std::uint64_t k : {2u, 3u, 5u}) {
        for (unsigned m = 4; m <= 32; ++m) {
            if (oracle::is_prime(m)) continue;
            CAPTURE(k);
            CAPTURE(m);
            const MersenneSplit s = mersenne_factor(k, m);
            const U128 value = pow128(k, m) - 1;
            CHECK(s.value == value);
            CHECK(s.factor * s.cofactor == value);
            CHECK(s.factor > 1);
            CHECK(s.cofactor > 1);
            CHECK(s.factor == pow128(k, s.r) - 1);
            CHECK(s.r * s.s == m);
        }
    }
}

TEST_CASE("unit subgroup validation") {
    CHECK_THROWS_AS(UnitSubgroup::from_members(15, {1, 2}), InvalidArgument);
    CHECK_THROWS_AS(UnitSubgroup::from_members(15, {1, 3}), InvalidArgument);
    CHECK_THROWS_AS(UnitSubgroup::from_members(15, {2, 4, 8}), InvalidArgument);
    const UnitSubgroup g = UnitSubgroup::from_members(15, {14, 1});
    CHECK(g.members() == std::vector<std::uint64_t>{1, 14});
    CHECK(g.difference_unit());
    CHECK(UnitSubgroup::generated(15, {2}).members() == std::vector<std::uint64_t>{1, 2, 4, 8});
    CHECK_FALSE(UnitSubgroup::generated(15, {2}).difference_unit());
    CHECK(UnitSubgroup::full(7).size() == 6);
    CHECK(UnitSubgroup::full(7).difference_unit());
    CHECK(UnitSubgroup::full(15).size() == 8);
}

TEST_CASE("difference-unit subgroup examples") {
    const auto s7 = find_difference_unit_subgroups(7, 1000);
    const auto has = [](const std::vector<UnitSubgroup>& list, std::vector<std::uint64_t> members) {
        return std::any_of(list.begin(), list.end(), [&](const UnitSubgroup& g) { return g.members() == members; });
    };
    CHECK(has(s7, {1, 6}));
    CHECK(has(s7, {1, 2, 3, 4, 5, 6}));
    CHECK(find_difference_unit_subgroups(4, 1000).empty());
    CHECK(has(find_difference_unit_subgroups(9, 1000), {1, 8}));
    CHECK(find_difference_unit_subgroups(2, 1000).size() == 1);
    CHECK_THROWS_AS(find_difference_unit_subgroups(1, 10), InvalidArgument);
    CHECK_THROWS_AS(find_difference_unit_subgroups(65537, 10), InvalidArgument);
}

TEST_CASE("difference-unit existence iff n = 2 or n odd") {
    for (std::uint64_t n = 2; n <= 99; ++n) {
        CAPTURE(n);
        const auto found = find_difference_unit_subgroups(n, 100000);
        CHECK(!found.empty() == (n == 2 || n % 2 == 1));
        for (const UnitSubgroup& g : found) {
            CHECK(g.difference_unit());
            CHECK(difference_unit(g.members(), n));
            CHECK_NOTHROW(UnitSubgroup::from_members(n, g.members()));
        }
        if (n % 2 == 1) {
            CHECK(std::any_of(found.begin(), found.end(), [n](const UnitSubgroup& g) {
                return g.members() == std::vector<std::uint64_t>{1, n - 1};
            }));
        }
        if (oracle::is_prime(n) && n > 2) {
            CHECK(std::any_of(found.begin(), found.end(), [n](const UnitSubgroup& g) { return g.size() == n - 1; }));
        }
        // Completeness against a brute-force subgroup list, trivial group excluded.
        std::set<std::vector<std::uint64_t>> expected;
        for (const auto& s : all_unit_subgroups(n)) {
            if (difference_unit(s, n) && (s.size() > 1 || n == 2)) expected.insert(s);
        }
        std::set<std::vector<std::uint64_t>> got;
        for (const UnitSubgroup& g : found) got.insert(g.members());
        CHECK(got == expected);
    }
}

TEST_CASE("search results are sorted and bounded") {
    const auto all = find_difference_unit_subgroups(31, 1000);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].size() <= all[i].size());
    CHECK(find_difference_unit_subgroups(31, 2).size() == 2);
}
