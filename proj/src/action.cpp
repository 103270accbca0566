#include "pnfield/action.hpp"

#include <algorithm>
#include <numeric>

#include "pnfield/error.hpp"

namespace pnfield {

namespace {

void index_labels(const std::vector<Label>& labels, Label& offset, bool& contiguous,
                  std::unordered_map<Label, Index>& map) {
    offset = labels.empty() ? 0 : labels.front();
    contiguous = true;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != offset + i) {
            contiguous = false;
            break;
        }
    }
    if (!contiguous) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!map.emplace(labels[i], static_cast<Index>(i)).second) {
                throw InvalidArgument("duplicate carrier label");
            }
        }
    }
}

std::uint64_t hash_row(std::span<const Index> row) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Index v : row) {
        h ^= v;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

ActionSpec ActionSpec::from_permutations(FiniteGroup group, std::vector<std::vector<Index>> perms,
                                         std::vector<Label> carrier_labels, std::string name) {
    const std::size_t n = carrier_labels.size();
    if (n == 0) throw InvalidArgument("action carrier must be non-empty");
    if (perms.size() != group.order()) throw InvalidArgument("one permutation per group element is required");
    ActionSpec a;
    a.group_ = std::move(group);
    a.name_ = std::move(name);
    a.labels_ = std::move(carrier_labels);
    index_labels(a.labels_, a.label_offset_, a.contiguous_labels_, a.label_index_);
    a.table_.reserve(perms.size() * n);
    std::vector<char> seen(n);
    for (const auto& row : perms) {
        if (row.size() != n) throw InvalidArgument("permutation length must equal the carrier size");
        std::fill(seen.begin(), seen.end(), 0);
        for (Index v : row) {
            if (v >= n || seen[v]++) throw InvalidArgument("action row is not a permutation of the carrier");
        }
        a.table_.insert(a.table_.end(), row.begin(), row.end());
    }
    if (!a.satisfies_action_axioms()) {
        throw InvalidArgument("permutations do not define a group action (homomorphism law fails)");
    }
    return a;
}

ActionSpec ActionSpec::from_rule(FiniteGroup group, std::vector<Label> carrier_labels, Rule rule, std::string name) {
    if (carrier_labels.empty()) throw InvalidArgument("action carrier must be non-empty");
    ActionSpec a;
    a.group_ = std::move(group);
    a.name_ = std::move(name);
    a.labels_ = std::move(carrier_labels);
    index_labels(a.labels_, a.label_offset_, a.contiguous_labels_, a.label_index_);
    const std::size_t n = a.labels_.size();
    if (a.group_.order() * n <= materialize_limit) {
        a.table_.resize(a.group_.order() * n);
        for (std::size_t g = 0; g < a.group_.order(); ++g) {
            for (std::size_t x = 0; x < n; ++x) {
                a.table_[g * n + x] = rule(static_cast<Index>(g), static_cast<Index>(x));
            }
        }
    } else {
        a.rule_ = std::move(rule);
    }
    return a;
}

std::optional<Index> ActionSpec::carrier_index(Label label) const {
    if (contiguous_labels_) {
        if (label < label_offset_ || label - label_offset_ >= labels_.size()) return std::nullopt;
        return label - label_offset_;
    }
    const auto it = label_index_.find(label);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

Index ActionSpec::apply(Index g, Index x) const {
    if (g >= group_.order() || x >= labels_.size()) throw InvalidArgument("action index out of range");
    if (!table_.empty()) return table_[static_cast<std::size_t>(g) * labels_.size() + x];
    return rule_(g, x);
}

std::span<const Index> ActionSpec::permutation(Index g, std::vector<Index>& scratch) const {
    if (g >= group_.order()) throw InvalidArgument("group index out of range");
    const std::size_t n = labels_.size();
    if (!table_.empty()) return std::span<const Index>(table_).subspan(static_cast<std::size_t>(g) * n, n);
    scratch.resize(n);
    for (std::size_t x = 0; x < n; ++x) scratch[x] = rule_(g, static_cast<Index>(x));
    return scratch;
}

bool ActionSpec::is_faithful() const {
    const std::size_t order = group_.order();
    std::vector<std::pair<std::uint64_t, Index>> hashes(order);
    std::vector<Index> scratch;
    for (std::size_t g = 0; g < order; ++g) {
        hashes[g] = {hash_row(permutation(static_cast<Index>(g), scratch)), static_cast<Index>(g)};
    }
    std::sort(hashes.begin(), hashes.end());
    std::vector<Index> other;
    for (std::size_t k = 1; k < order; ++k) {
        if (hashes[k].first != hashes[k - 1].first) continue;
        const auto a = permutation(hashes[k - 1].second, scratch);
        std::vector<Index> row_a(a.begin(), a.end());
        const auto b = permutation(hashes[k].second, other);
        if (std::equal(row_a.begin(), row_a.end(), b.begin(), b.end())) return false;
    }
    return true;
}

bool ActionSpec::is_regular() const {
    const std::size_t n = labels_.size();
    if (group_.order() != n) return false;
    std::vector<char> seen(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t g = 0; g < n; ++g) {
            if (seen[apply(static_cast<Index>(g), static_cast<Index>(x))]++) return false;
        }
    }
    return true;
}

bool ActionSpec::satisfies_action_axioms() const {
    const std::size_t n = labels_.size();
    const std::size_t order = group_.order();
    std::vector<Index> s1, s2, s3;
    const auto e = permutation(group_.identity(), s1);
    for (std::size_t x = 0; x < n; ++x) {
        if (e[x] != x) return false;
    }
    std::vector<char> seen(n);
    for (std::size_t g = 0; g < order; ++g) {
        const auto pg = permutation(static_cast<Index>(g), s1);
        std::fill(seen.begin(), seen.end(), 0);
        for (Index v : pg) {
            if (v >= n || seen[v]++) return false;
        }
        for (std::size_t h = 0; h < order; ++h) {
            const auto ph = permutation(static_cast<Index>(h), s2);
            const auto pgh = permutation(group_.op(static_cast<Index>(g), static_cast<Index>(h)), s3);
            for (std::size_t x = 0; x < n; ++x) {
                if (pgh[x] != pg[ph[x]]) return false;
            }
        }
    }
    return true;
}

ActionSpec action_mul_translation(const FieldSpec& field) {
    std::vector<Label> labels(field.order());
    std::iota(labels.begin(), labels.end(), Label{0});
    return ActionSpec::from_rule(
        FiniteGroup::field_multiplicative(field), std::move(labels),
        [field](Index g, Index x) { return field.mul(g + 1, x); }, "mult");
}

ActionSpec action_add_translation(const FieldSpec& field) {
    std::vector<Label> labels(field.order());
    std::iota(labels.begin(), labels.end(), Label{0});
    return ActionSpec::from_rule(
        FiniteGroup::field_additive(field), std::move(labels),
        [field](Index g, Index x) { return field.add(g, x); }, field.p() == 2 ? "xor" : "add");
}

ActionSpec action_scalar(const VectorSpaceSpec& space) {
    std::vector<Label> labels(space.size());
    std::iota(labels.begin(), labels.end(), Label{0});
    return ActionSpec::from_rule(
        FiniteGroup::field_multiplicative(space.base()), std::move(labels),
        [space](Index g, Index x) { return space.scale(g + 1, x); }, "scalar");
}

ActionSpec action_star(const FieldRing& ring, const UnitSubgroup& subgroup) {
    const FieldSpec& field = ring.base();
    std::vector<Label> labels(field.unit_count());
    std::iota(labels.begin(), labels.end(), Label{1});
    FiniteGroup group = FiniteGroup::star_units(ring, subgroup);
    const std::vector<std::uint64_t> residues = subgroup.members();
    const std::uint64_t n = ring.n();
    return ActionSpec::from_rule(
        std::move(group), std::move(labels),
        [field, residues, n](Index g, Index x) {
            const std::uint64_t j = field.log_gamma(x + 1);
            return field.exp_gamma(residues[g] * j % n) - 1;
        },
        "star");
}

ActionSpec action_left_translation(const FiniteGroup& group) {
    std::vector<Label> labels(group.order());
    for (std::size_t a = 0; a < group.order(); ++a) labels[a] = group.label(static_cast<Index>(a));
    return ActionSpec::from_rule(
        group, std::move(labels), [group](Index g, Index x) { return group.op(g, x); }, "translation");
}

}  // namespace pnfield
