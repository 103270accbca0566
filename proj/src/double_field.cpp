#include "pnfield/double_field.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "pnfield/error.hpp"
#include "pnfield/number_theory.hpp"

namespace pnfield {

std::string to_string(RingKind kind) {
    return kind == RingKind::double_field ? "double-field" : "field-ring";
}

FieldRing::FieldRing(FieldSpec base) : base_(std::move(base)), double_field_(nt::is_prime(base_.unit_count())) {}

std::uint32_t FieldRing::log_nonzero(Element a) const {
    if (a == 0) throw DomainError("0 is not an element of GF(p^m)*");
    return base_.log_gamma(a);
}

Element FieldRing::star_mul(Element a, Element b) const {
    const std::uint64_t i = log_nonzero(a);
    const std::uint64_t j = log_nonzero(b);
    return base_.exp_gamma(i * j % n());
}

bool FieldRing::is_star_unit(Element a) const {
    return std::gcd(static_cast<std::uint64_t>(log_nonzero(a)), std::uint64_t{n()}) == 1;
}

Element FieldRing::star_inv(Element a) const {
    const std::uint64_t i = log_nonzero(a);
    const std::uint64_t g = std::gcd(i, std::uint64_t{n()});
    if (g != 1) {
        // i == 0 gives g == n; the witness 1 then satisfies 0 · 1 = 0.
        const std::uint64_t witness = i == 0 ? 1 : n() / g;
        throw StarZeroDivisor(i, witness, n());
    }
    return base_.exp_gamma(*nt::mod_inverse(i, n()));
}

std::vector<Element> FieldRing::units() const {
    std::vector<Element> out;
    for (std::uint64_t i = 0; i < n(); ++i) {
        if (std::gcd(i, std::uint64_t{n()}) == 1) out.push_back(base_.exp_gamma(i));
    }
    return out;
}

namespace {

bool compute_difference_unit(std::uint64_t n, const std::vector<std::uint64_t>& members) {
    return std::all_of(members.begin(), members.end(),
                       [n](std::uint64_t i) { return i == 1 % n || std::gcd(i - 1, n) == 1; });
}

}  // namespace

UnitSubgroup::UnitSubgroup(std::uint64_t n, std::vector<std::uint64_t> members)
    : n_(n), members_(std::move(members)), difference_unit_(compute_difference_unit(n_, members_)) {}

UnitSubgroup UnitSubgroup::from_members(std::uint64_t n, std::vector<std::uint64_t> members) {
    if (n < 2) throw InvalidArgument("unit subgroups require n > 1");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members.front() != 1) {
        throw InvalidArgument("a subgroup of U(Z_n) must contain 1");
    }
    for (std::uint64_t a : members) {
        if (a >= n || std::gcd(a, n) != 1) {
            throw InvalidArgument(std::to_string(a) + " is not a unit modulo " + std::to_string(n));
        }
    }
    for (std::uint64_t a : members) {
        for (std::uint64_t b : members) {
            const std::uint64_t c = a * b % n;
            if (!std::binary_search(members.begin(), members.end(), c)) {
                throw InvalidArgument("not closed under multiplication: " + std::to_string(a) + " * " +
                                      std::to_string(b) + " = " + std::to_string(c) + " mod " + std::to_string(n));
            }
        }
    }
    return UnitSubgroup(n, std::move(members));
}

UnitSubgroup UnitSubgroup::generated(std::uint64_t n, const std::vector<std::uint64_t>& generators) {
    if (n < 2) throw InvalidArgument("unit subgroups require n > 1");
    for (std::uint64_t g : generators) {
        if (g >= n || std::gcd(g, n) != 1) {
            throw InvalidArgument(std::to_string(g) + " is not a unit modulo " + std::to_string(n));
        }
    }
    std::vector<bool> seen(n, false);
    std::vector<std::uint64_t> members{1};
    seen[1] = true;
    for (std::size_t k = 0; k < members.size(); ++k) {
        for (std::uint64_t g : generators) {
            const std::uint64_t c = members[k] * g % n;
            if (!seen[c]) {
                seen[c] = true;
                members.push_back(c);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return UnitSubgroup(n, std::move(members));
}

UnitSubgroup UnitSubgroup::full(std::uint64_t n) {
    if (n < 2) throw InvalidArgument("unit subgroups require n > 1");
    std::vector<std::uint64_t> members;
    for (std::uint64_t i = 1; i < n; ++i) {
        if (std::gcd(i, n) == 1) members.push_back(i);
    }
    return UnitSubgroup(n, std::move(members));
}

UnitSubgroup UnitSubgroup::from_generated(std::uint64_t n, std::vector<std::uint64_t> members,
                                          const std::vector<std::uint64_t>& generators) {
    // A set containing 1, closed under right multiplication by the generators and
    // reached from 1 by such products, is exactly the generated subgroup.
    if (!std::is_sorted(members.begin(), members.end()) || members.empty() || members.front() != 1) {
        throw InvalidArgument("generated member list must be sorted and contain 1");
    }
    for (std::uint64_t a : members) {
        for (std::uint64_t g : generators) {
            if (!std::binary_search(members.begin(), members.end(), a * g % n)) {
                throw InvalidArgument("member list is not closed under its generators");
            }
        }
    }
    return UnitSubgroup(n, std::move(members));
}

bool UnitSubgroup::contains(std::uint64_t residue) const {
    return std::binary_search(members_.begin(), members_.end(), residue);
}

MersenneSplit mersenne_factor(std::uint64_t k, unsigned m) {
    if (k <= 1) throw InvalidArgument("mersenne_factor requires k > 1");
    if (m <= 1 || nt::is_prime(m)) {
        throw HypothesisError("mersenne_factor requires a composite exponent, got " + std::to_string(m));
    }
    using U128 = unsigned __int128;
    const auto power = [k](unsigned e) {
        U128 acc = 1;
        for (unsigned i = 0; i < e; ++i) {
            if (acc > ~U128{0} / k) throw InvalidArgument("k^m - 1 does not fit in 128 bits");
            acc *= k;
        }
        return acc;
    };
    const auto r = static_cast<unsigned>(nt::smallest_prime_factor(m));
    const unsigned s = m / r;
    MersenneSplit out{};
    out.value = power(m) - 1;
    out.factor = power(r) - 1;
    out.cofactor = 0;
    for (unsigned i = 1; i <= s; ++i) out.cofactor += power(r * (s - i));
    out.r = r;
    out.s = s;
    return out;
}

std::string to_decimal(unsigned __int128 value) {
    if (value == 0) return "0";
    std::string digits;
    while (value > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    return {digits.rbegin(), digits.rend()};
}

namespace {

struct Candidate {
    std::vector<std::uint64_t> members;  // sorted
    std::vector<std::uint64_t> generators;
};

// Closure of `generators`, abandoned as soon as an element i ≠ 1 with i − 1
// not a unit appears; every overgroup then fails the property as well.
std::optional<Candidate> difference_unit_closure(std::uint64_t n, const std::vector<std::uint64_t>& generators,
                                                 const std::vector<bool>& is_unit) {
    std::vector<bool> seen(n, false);
    std::vector<std::uint64_t> members{1};
    seen[1] = true;
    for (std::size_t k = 0; k < members.size(); ++k) {
        for (std::uint64_t g : generators) {
            const std::uint64_t c = members[k] * g % n;
            if (seen[c]) continue;
            if (c != 1 && !is_unit[c - 1]) return std::nullopt;
            seen[c] = true;
            members.push_back(c);
        }
    }
    std::sort(members.begin(), members.end());
    return Candidate{std::move(members), generators};
}

}  // namespace

std::vector<UnitSubgroup> find_difference_unit_subgroups(std::uint64_t n, std::size_t max_count) {
    if (n < 2 || n > (std::uint64_t{1} << 16)) {
        throw InvalidArgument("find_difference_unit_subgroups requires 1 < n <= 65536, got " + std::to_string(n));
    }
    std::vector<bool> is_unit(n, false);
    std::vector<std::uint64_t> units;
    for (std::uint64_t i = 1; i < n; ++i) {
        if (std::gcd(i, n) == 1) {
            is_unit[i] = true;
            units.push_back(i);
        }
    }

    std::vector<UnitSubgroup> out;
    if (units.size() == 1) {
        if (max_count > 0) out.push_back(UnitSubgroup::from_members(n, {1}));
        return out;
    }

    std::set<std::vector<std::uint64_t>> found;
    std::vector<Candidate> candidates;
    const auto record = [&](std::optional<Candidate> c) {
        if (c && c->members.size() > 1 && found.insert(c->members).second) candidates.push_back(std::move(*c));
    };

    // Cyclic subgroups: ⟨g⟩ = ⟨g^k⟩ whenever gcd(k, ord g) = 1, so each is closed once.
    std::vector<bool> done(n, false);
    for (std::uint64_t g : units) {
        if (g == 1 || done[g]) continue;
        std::vector<std::uint64_t> powers{1};
        for (std::uint64_t x = g; x != 1; x = x * g % n) powers.push_back(x);
        const std::uint64_t order = powers.size();
        for (std::uint64_t k = 1; k < order; ++k) {
            if (std::gcd(k, order) == 1) done[powers[k]] = true;
        }
        record(difference_unit_closure(n, {g}, is_unit));
    }

    const bool exhaustive = units.size() <= 24;
    std::size_t begin = 0;
    do {
        const std::size_t end = candidates.size();
        for (std::size_t i = 0; i < end; ++i) {
            for (std::size_t j = std::max(i + 1, begin); j < end; ++j) {
                if (std::includes(candidates[i].members.begin(), candidates[i].members.end(),
                                  candidates[j].members.begin(), candidates[j].members.end()) ||
                    std::includes(candidates[j].members.begin(), candidates[j].members.end(),
                                  candidates[i].members.begin(), candidates[i].members.end())) {
                    continue;
                }
                std::vector<std::uint64_t> gens = candidates[i].generators;
                gens.insert(gens.end(), candidates[j].generators.begin(), candidates[j].generators.end());
                record(difference_unit_closure(n, gens, is_unit));
            }
        }
        if (begin == 0 && !exhaustive) break;
        begin = end;
    } while (begin < candidates.size() && exhaustive);

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.members.size() != b.members.size() ? a.members.size() < b.members.size() : a.members < b.members;
    });
    for (auto& c : candidates) {
        if (out.size() >= max_count) break;
        out.push_back(UnitSubgroup::from_generated(n, std::move(c.members), c.generators));
    }
    return out;
}

}  // namespace pnfield
