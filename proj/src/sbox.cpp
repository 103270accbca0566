#include "pnfield/sbox.hpp"

#include "pnfield/error.hpp"

namespace pnfield {

SBox SBox::from_table(std::vector<Index> table, std::size_t codomain_size) {
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (table[x] >= codomain_size) {
            throw InvalidArgument("S-box entry " + std::to_string(table[x]) + " at position " + std::to_string(x) +
                                  " is outside a codomain of size " + std::to_string(codomain_size));
        }
    }
    return SBox(std::move(table), codomain_size);
}

SBox SBox::bind(std::span<const Label> values, const ActionSpec& action, const FiniteGroup& target) {
    std::vector<Index> table(action.carrier_size());
    for (std::size_t x = 0; x < table.size(); ++x) {
        const Label at = action.carrier_label(static_cast<Index>(x));
        if (at >= values.size()) {
            throw InvalidArgument("S-box of length " + std::to_string(values.size()) + " is undefined at carrier element " +
                                  std::to_string(at));
        }
        const auto idx = target.index_of(values[at]);
        if (!idx) {
            throw ValueOutsideGroup("value " + std::to_string(values[at]) + " at " + std::to_string(at) +
                                    " is not an element of the target group " + target.name());
        }
        table[x] = *idx;
    }
    return SBox(std::move(table), target.order());
}

bool SBox::is_permutation() const {
    if (table_.size() != codomain_size_) return false;
    std::vector<char> seen(codomain_size_);
    for (Index v : table_) {
        if (seen[v]++) return false;
    }
    return true;
}

}  // namespace pnfield
