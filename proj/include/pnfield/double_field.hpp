#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pnfield/field.hpp"

namespace pnfield {

enum class RingKind { field_ring, double_field };

std::string to_string(RingKind kind);

/// GF(p^m) with the second product γ^i × γ^j = γ^{ij} on GF(p^m)*.
///
/// (GF(p^m)*, ·, ×) is a commutative ring isomorphic to (Z_n, +, ·) with
/// n = p^m − 1 through log_gamma. Its ×-identity is γ and 1 = γ^0 is absorbing.
class FieldRing {
public:
    explicit FieldRing(FieldSpec base);

    const FieldSpec& base() const noexcept { return base_; }
    /// Modulus of the exponent ring, p^m − 1.
    std::uint32_t n() const noexcept { return base_.unit_count(); }
    bool is_double_field() const noexcept { return double_field_; }
    RingKind classify() const noexcept { return double_field_ ? RingKind::double_field : RingKind::field_ring; }
    Element star_identity() const noexcept { return base_.gamma(); }

    /// exp_gamma(log a · log b mod n). Zero operands throw DomainError.
    Element star_mul(Element a, Element b) const;

    /// ×-inverse γ^{1/i} of a = γ^i. Throws StarZeroDivisor, carrying a
    /// witness j ≠ 0 with i·j ≡ 0 mod n, when gcd(i, n) ≠ 1.
    Element star_inv(Element a) const;

    bool is_star_unit(Element a) const;

    /// {γ^i : gcd(i, n) = 1}, listed by increasing exponent i.
    std::vector<Element> units() const;

private:
    std::uint32_t log_nonzero(Element a) const;

    FieldSpec base_;
    bool double_field_;
};

/// A subgroup of the unit group U(Z_n), stored as sorted residues.
class UnitSubgroup {
public:
    /// Validates that `members` are units of Z_n closed under multiplication.
    /// Throws InvalidArgument otherwise.
    static UnitSubgroup from_members(std::uint64_t n, std::vector<std::uint64_t> members);

    /// The subgroup generated by `generators`.
    static UnitSubgroup generated(std::uint64_t n, const std::vector<std::uint64_t>& generators);

    /// All of U(Z_n).
    static UnitSubgroup full(std::uint64_t n);

    std::uint64_t n() const noexcept { return n_; }
    const std::vector<std::uint64_t>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool contains(std::uint64_t residue) const;

    /// Every i ≠ 1 in the subgroup has i − 1 invertible modulo n.
    bool difference_unit() const noexcept { return difference_unit_; }

    friend bool operator==(const UnitSubgroup& a, const UnitSubgroup& b) noexcept {
        return a.n_ == b.n_ && a.members_ == b.members_;
    }

private:
    UnitSubgroup(std::uint64_t n, std::vector<std::uint64_t> members);

    friend std::vector<UnitSubgroup> find_difference_unit_subgroups(std::uint64_t, std::size_t);
    static UnitSubgroup from_generated(std::uint64_t n, std::vector<std::uint64_t> members,
                                       const std::vector<std::uint64_t>& generators);

    std::uint64_t n_;
    std::vector<std::uint64_t> members_;
    bool difference_unit_;
};

/// k^m − 1 = factor · cofactor with factor = k^r − 1 and
/// cofactor = Σ_{i=1..s} k^{r(s−i)}, where r is the smallest prime factor of m
/// and s = m / r.
struct MersenneSplit {
    unsigned __int128 value;
    unsigned __int128 factor;
    unsigned __int128 cofactor;
    unsigned r;
    unsigned s;
};

/// Throws HypothesisError when m ≤ 1 or m is prime, InvalidArgument when
/// k ≤ 1 or k^m − 1 overflows 128 bits.
MersenneSplit mersenne_factor(std::uint64_t k, unsigned m);

std::string to_decimal(unsigned __int128 value);

/// Enumerates subgroups of U(Z_n) in which every i ≠ 1 has i − 1 ∈ U(Z_n).
///
/// Candidates are the cyclic subgroups ⟨g⟩ and their joins; when |U(Z_n)| ≤ 24
/// joins are iterated to a fixpoint, which yields every such subgroup. The
/// trivial subgroup is only reported when it is all of U(Z_n) (n = 2).
/// Results are sorted by size, then lexicographically, and truncated to max_count.
/// Requires 1 < n ≤ 2^16.
std::vector<UnitSubgroup> find_difference_unit_subgroups(std::uint64_t n, std::size_t max_count);

}  // namespace pnfield
