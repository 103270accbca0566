#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pnfield/action.hpp"
#include "pnfield/group.hpp"

namespace pnfield {

/// A total function given as a lookup table: table[x] is a codomain index.
class SBox {
public:
    /// Throws InvalidArgument if an entry is ≥ codomain_size.
    static SBox from_table(std::vector<Index> table, std::size_t codomain_size);

    /// Re-expresses a function written on labels for analysis: the result maps
    /// carrier index x of `action` to the target-group index of
    /// values[action.carrier_label(x)]. For a field S-box `values` is the table
    /// over element encodings, and restriction to GF(p^m)* happens
    /// automatically when the carrier excludes 0.
    /// Throws ValueOutsideGroup when some value is not an element of `target`.
    static SBox bind(std::span<const Label> values, const ActionSpec& action, const FiniteGroup& target);

    std::size_t domain_size() const noexcept { return table_.size(); }
    std::size_t codomain_size() const noexcept { return codomain_size_; }
    Index operator[](std::size_t x) const { return table_[x]; }
    std::span<const Index> table() const noexcept { return table_; }
    bool is_permutation() const;

    friend bool operator==(const SBox&, const SBox&) = default;

private:
    SBox(std::vector<Index> table, std::size_t codomain_size)
        : table_(std::move(table)), codomain_size_(codomain_size) {}

    std::vector<Index> table_;
    std::size_t codomain_size_;
};

}  // namespace pnfield
