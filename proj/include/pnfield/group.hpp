#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pnfield/double_field.hpp"
#include "pnfield/field.hpp"

namespace pnfield {

/// Position of an element inside a group or carrier enumeration.
using Index = std::uint32_t;
/// External name of an element: a field encoding, a residue, or a vector index.
using Label = std::uint32_t;

/// A finite group with elements numbered 0 .. order()−1.
///
/// Small abstract groups carry an explicit Cayley table. Groups derived from a
/// field compute their product from the field instead, so GF(2^13) and its
/// unit group never need a 2^26-entry table.
class FiniteGroup {
public:
    enum class Kind { table, cyclic, elementary_abelian, field_multiplicative, star_units };

    /// `table` is row-major, table[a * order + b] = a·b. Validates the Latin
    /// square property, identity, inverses and associativity (exhaustive up
    /// to order 256, 2^16 sampled triples above). Labels default to indices.
    static FiniteGroup from_cayley_table(std::vector<Index> table, std::string name,
                                         std::vector<Label> labels = {});

    /// (Z_n, +).
    static FiniteGroup cyclic(std::uint32_t n);
    /// (Z_p)^k with base-p digit packing; index = label.
    static FiniteGroup elementary_abelian(std::uint32_t p, std::uint32_t k);
    /// (GF(p^m), +). Index and label are the element encoding.
    static FiniteGroup field_additive(const FieldSpec& field);
    /// (GF(p^m)*, ·). Index = encoding − 1, so index order is encoding order.
    static FiniteGroup field_multiplicative(const FieldSpec& field);
    /// (γ^G, ×, γ) for a subgroup G of U(Z_{p^m−1}); indices follow the sorted
    /// residues of G, labels are the encodings γ^g.
    static FiniteGroup star_units(const FieldRing& ring, const UnitSubgroup& subgroup);

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t order() const noexcept { return order_; }
    Index identity() const noexcept { return identity_; }

    Index op(Index a, Index b) const;
    Index inverse(Index a) const;
    /// Right quotient a · b^{-1}.
    Index quotient(Index a, Index b) const;

    Label label(Index a) const;
    std::optional<Index> index_of(Label label) const;

    /// G* = G \ {identity}, in index order.
    std::vector<Index> non_identity() const;

    /// Residue of γ^G element `a` (star_units only).
    std::uint64_t residue(Index a) const;

    /// Materialized Cayley table, row-major. Intended for checks on small groups.
    std::vector<Index> cayley_table() const;

private:
    FiniteGroup() = default;
    void check(Index a) const {
        if (a >= order_) [[unlikely]] out_of_range(a);
    }
    [[noreturn]] void out_of_range(Index a) const;
    Index chunked(const std::vector<std::uint16_t>& table, Index a, Index b) const;

    Kind kind_ = Kind::table;
    std::string name_;
    std::size_t order_ = 0;
    Index identity_ = 0;

    std::vector<Index> table_;
    std::vector<Index> inverse_;
    std::vector<Label> labels_;
    std::unordered_map<Label, Index> label_index_;

    std::uint32_t p_ = 0;
    std::vector<std::uint32_t> powers_;
    // Odd p: indices are processed in chunks of base-p digits worth at most
    // 128 values, with digit-wise sum and difference tables per chunk.
    std::uint32_t chunk_ = 0;
    std::uint32_t chunk_count_ = 0;
    std::uint64_t chunk_magic_ = 0;
    std::vector<std::uint16_t> chunk_add_;
    std::vector<std::uint16_t> chunk_sub_;

    std::optional<FieldSpec> field_;
    std::uint64_t ring_n_ = 0;
    std::vector<std::uint64_t> residues_;
    std::vector<Index> residue_index_;
};

}  // namespace pnfield
