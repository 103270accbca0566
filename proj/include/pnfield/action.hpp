#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pnfield/double_field.hpp"
#include "pnfield/field.hpp"
#include "pnfield/group.hpp"
#include "pnfield/vector_space.hpp"

namespace pnfield {

/// A group action φ: G → S(X) on a finite carrier X = {0, …, |X|−1}.
///
/// Permutations are stored as explicit arrays when |G|·|X| ≤ materialize_limit;
/// larger actions keep the generating rule and produce rows on demand. Both
/// paths give identical results.
class ActionSpec {
public:
    /// g.x as carrier indices.
    using Rule = std::function<Index(Index g, Index x)>;

    static constexpr std::size_t materialize_limit = std::size_t{1} << 24;

    /// Validates that every row is a bijection, the identity acts trivially
    /// and φ(g·h) = φ(g) ∘ φ(h) for all pairs.
    static ActionSpec from_permutations(FiniteGroup group, std::vector<std::vector<Index>> perms,
                                        std::vector<Label> carrier_labels, std::string name);

    /// Trusted construction used by the built-in actions.
    static ActionSpec from_rule(FiniteGroup group, std::vector<Label> carrier_labels, Rule rule, std::string name);

    const FiniteGroup& group() const noexcept { return group_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t carrier_size() const noexcept { return labels_.size(); }
    std::span<const Label> carrier_labels() const noexcept { return labels_; }
    Label carrier_label(Index x) const { return labels_.at(x); }
    std::optional<Index> carrier_index(Label label) const;

    Index apply(Index g, Index x) const;

    /// φ(g) as an array over carrier indices. Returns a view of the stored
    /// table, or fills and returns `scratch` for rule-backed actions.
    std::span<const Index> permutation(Index g, std::vector<Index>& scratch) const;

    /// φ is one-to-one.
    bool is_faithful() const;
    /// For every (x, y) exactly one g with g.x = y.
    bool is_regular() const;
    /// Exhaustive check of the action axioms over all |G|² pairs.
    bool satisfies_action_axioms() const;

private:
    ActionSpec() = default;

    FiniteGroup group_ = FiniteGroup::cyclic(1);
    std::string name_;
    std::vector<Label> labels_;
    Label label_offset_ = 0;
    bool contiguous_labels_ = true;
    std::unordered_map<Label, Index> label_index_;
    std::vector<Index> table_;
    Rule rule_;
};

/// GF(p^m)* acting on GF(p^m) by a.x = a·x. Carrier index = encoding.
ActionSpec action_mul_translation(const FieldSpec& field);

/// (GF(p^m), +) acting on itself by a.x = a + x; XOR for p = 2.
ActionSpec action_add_translation(const FieldSpec& field);

/// GF(p^m)* acting on V(p, m, d) by componentwise scalar multiplication.
ActionSpec action_scalar(const VectorSpaceSpec& space);

/// γ^G acting on GF(p^m)* by γ^i.γ^j = γ^{ij}. Carrier index = encoding − 1.
ActionSpec action_star(const FieldRing& ring, const UnitSubgroup& subgroup);

/// A group acting on itself by left translation g.x = g·x.
ActionSpec action_left_translation(const FiniteGroup& group);

}  // namespace pnfield
