#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pnfield {

/// Element of GF(p^m) in polynomial-basis packing: the base-p digits of the
/// encoding are the coefficients c_0, c_1, ... of the representing polynomial.
/// For p = 2 this is the usual bitmask convention.
using Element = std::uint32_t;

/// A concrete finite field GF(p^m) with a fixed modulus and primitive element γ.
///
/// Instances are immutable; copies share the underlying exp/log tables, so a
/// FieldSpec can be passed by value and read concurrently from any thread.
class FieldSpec {
public:
    /// Largest supported field order; keeps the full log table in memory.
    static constexpr std::uint64_t max_order = std::uint64_t{1} << 26;

    /// Builds GF(p^m). Without an explicit modulus the monic irreducible
    /// polynomial of degree m with the smallest encoding Σ c_i p^i is used.
    /// γ is always the primitive element with the smallest encoding.
    ///
    /// Throws InvalidArgument when p is not prime, m = 0, p^m exceeds
    /// max_order, or the supplied modulus is not monic of degree m or is reducible.
    static FieldSpec build(std::uint32_t p, std::uint32_t m,
                           std::optional<std::uint64_t> modulus = std::nullopt);

    /// Parses the textual tuple `p m modulus gamma` and rebuilds the field.
    /// Throws ParseError if the tuple is malformed or gamma is not the
    /// canonical primitive element for that modulus.
    static FieldSpec from_description(std::string_view text);

    /// `p m modulus gamma` in decimal.
    std::string description() const;

    std::uint32_t p() const noexcept;
    std::uint32_t m() const noexcept;
    std::uint32_t order() const noexcept;
    /// p^m − 1, the order of GF(p^m)* and the modulus of the exponent ring.
    std::uint32_t unit_count() const noexcept;
    std::uint64_t modulus() const noexcept;
    Element gamma() const noexcept;

    /// exp_table()[i] = γ^i for 0 ≤ i < p^m − 1.
    std::span<const Element> exp_table() const noexcept;
    /// log_table()[a] = i with γ^i = a, for a ≠ 0. Entry 0 is unused.
    std::span<const std::uint32_t> log_table() const noexcept;

    bool contains(Element a) const noexcept { return a < order(); }

    Element add(Element a, Element b) const;
    Element sub(Element a, Element b) const;
    Element neg(Element a) const;
    Element mul(Element a, Element b) const;
    Element inv(Element a) const;
    Element div(Element a, Element b) const;
    /// a^k with the convention 0^0 = 1.
    Element pow(Element a, std::uint64_t k) const;

    /// γ^i for a residue i in [0, p^m − 1).
    Element exp_gamma(std::uint64_t i) const;
    /// Discrete logarithm to base γ of a nonzero element.
    std::uint32_t log_gamma(Element a) const;

    /// a^(p^r) for 0 ≤ r < m.
    Element frobenius(std::uint32_t r, Element a) const;

    /// Base-p digits of a, least significant first, length m.
    std::vector<std::uint32_t> digits(Element a) const;
    Element from_digits(std::span<const std::uint32_t> digits) const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept;

private:
    struct Tables;
    explicit FieldSpec(std::shared_ptr<const Tables> tables) : tables_(std::move(tables)) {}

    void check(Element a) const;
    [[noreturn]] void out_of_range(Element a) const;

    std::shared_ptr<const Tables> tables_;
};

}  // namespace pnfield
