#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pnfield/field.hpp"
#include "pnfield/group.hpp"

namespace pnfield {

/// Text interchange format for lookup tables:
///
///     # pnfield-sbox v1 p=<p> m=<m> modulus=<int> gamma=<int> n=<length>
///     <n whitespace-separated decimal entries>
///
/// Further lines starting with `#` are comments. Tables over V(p, m, d) have
/// length (p^m)^d. When the entries range over a set other than GF(p^m), the
/// header carries a trailing `codomain=<size>` key.
struct SBoxFile {
    FieldSpec field;
    std::vector<Label> table;
    std::size_t codomain_size;

    /// d with table.size() = (p^m)^d.
    std::uint32_t dimension() const;
};

std::string format_sbox_file(const FieldSpec& field, std::span<const Label> table, std::size_t codomain_size);

/// Throws ParseError on any deviation from the format.
SBoxFile parse_sbox_file(std::string_view text);

}  // namespace pnfield
