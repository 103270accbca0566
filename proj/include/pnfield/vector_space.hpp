#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pnfield/field.hpp"
#include "pnfield/group.hpp"

namespace pnfield {

/// V(p, m, d): d-tuples over GF(p^m).
///
/// Vectors are indexed lexicographically by their tuple of element encodings,
/// first component most significant: index = Σ_k v_k · (p^m)^(d−1−k). The
/// coordinate expansion over GF(p) lists the m base-p digits of v_1, then of
/// v_2, and so on. Every base-p digit of the index is one coordinate, so vector
/// addition is digit-wise addition mod p on indices.
class VectorSpaceSpec {
public:
    VectorSpaceSpec(FieldSpec base, std::uint32_t d);

    const FieldSpec& base() const noexcept { return base_; }
    std::uint32_t d() const noexcept { return d_; }
    /// Dimension over GF(p), m·d.
    std::uint32_t prime_dimension() const noexcept { return base_.m() * d_; }
    std::uint32_t size() const noexcept { return size_; }

    std::vector<Element> components(Index v) const;
    Index from_components(std::span<const Element> components) const;

    std::vector<std::uint32_t> coordinates(Index v) const;
    Index from_coordinates(std::span<const std::uint32_t> coordinates) const;

    Index add(Index u, Index v) const;
    Index scale(Element alpha, Index v) const;

    /// (V, +) as a group; index and label are the vector index.
    FiniteGroup additive_group() const;

private:
    void check(Index v) const {
        if (v >= size_) [[unlikely]] out_of_range(v);
    }
    [[noreturn]] void out_of_range(Index v) const;

    FieldSpec base_;
    std::uint32_t d_;
    std::uint32_t size_;
};

}  // namespace pnfield
