#include "pnfield/group.hpp"

#include <numeric>

#include "pnfield/error.hpp"
#include "pnfield/number_theory.hpp"
#include "pnfield/rng.hpp"

namespace pnfield {

namespace {

constexpr Index kNone = UINT32_MAX;

}  // namespace

FiniteGroup FiniteGroup::from_cayley_table(std::vector<Index> table, std::string name, std::vector<Label> labels) {
    std::size_t n = 0;
    while (n * n < table.size()) ++n;
    if (n == 0 || n * n != table.size()) throw InvalidArgument("Cayley table must be a non-empty square");
    for (Index v : table) {
        if (v >= n) throw InvalidArgument("Cayley table entry out of range");
    }
    // Latin square.
    std::vector<char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            if (seen[table[a * n + b]]++) throw InvalidArgument("Cayley table row is not a permutation");
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t b = 0; b < n; ++b) {
            if (seen[table[b * n + a]]++) throw InvalidArgument("Cayley table column is not a permutation");
        }
    }
    Index identity = kNone;
    for (std::size_t e = 0; e < n && identity == kNone; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = table[e * n + a] == a && table[a * n + e] == a;
        if (ok) identity = static_cast<Index>(e);
    }
    if (identity == kNone) throw InvalidArgument("Cayley table has no identity element");

    const auto mul = [&](std::size_t a, std::size_t b) { return table[a * n + b]; };
    const auto associative = [&](std::size_t a, std::size_t b, std::size_t c) {
        return mul(mul(a, b), c) == mul(a, mul(b, c));
    };
    if (n <= 256) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (!associative(a, b, c)) throw InvalidArgument("Cayley table is not associative");
    } else {
        SplitMix64 rng(0x5eed);
        for (int t = 0; t < (1 << 16); ++t) {
            if (!associative(rng.below(n), rng.below(n), rng.below(n))) {
                throw InvalidArgument("Cayley table is not associative");
            }
        }
    }

    FiniteGroup g;
    g.kind_ = Kind::table;
    g.name_ = std::move(name);
    g.order_ = n;
    g.identity_ = identity;
    g.inverse_.assign(n, kNone);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (mul(a, b) == identity) g.inverse_[a] = static_cast<Index>(b);
        }
    }
    if (labels.empty()) {
        labels.resize(n);
        std::iota(labels.begin(), labels.end(), Label{0});
    }
    if (labels.size() != n) throw InvalidArgument("label count must equal the group order");
    for (std::size_t a = 0; a < n; ++a) {
        if (!g.label_index_.emplace(labels[a], static_cast<Index>(a)).second) {
            throw InvalidArgument("duplicate group label");
        }
    }
    g.labels_ = std::move(labels);
    g.table_ = std::move(table);
    return g;
}

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
    if (n == 0) throw InvalidArgument("cyclic group order must be positive");
    FiniteGroup g;
    g.kind_ = Kind::cyclic;
    g.name_ = "Z_" + std::to_string(n);
    g.order_ = n;
    g.identity_ = 0;
    return g;
}

FiniteGroup FiniteGroup::elementary_abelian(std::uint32_t p, std::uint32_t k) {
    if (!nt::is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    const auto order = nt::checked_pow(p, k);
    if (!order || *order > UINT32_MAX) throw InvalidArgument("elementary abelian group too large");
    FiniteGroup g;
    g.kind_ = Kind::elementary_abelian;
    g.name_ = "(Z_" + std::to_string(p) + ")^" + std::to_string(k);
    g.order_ = *order;
    g.identity_ = 0;
    g.p_ = p;
    g.powers_.resize(k + 1);
    g.powers_[0] = 1;
    for (std::uint32_t i = 1; i <= k; ++i) g.powers_[i] = g.powers_[i - 1] * p;
    if (p != 2 && p <= 128 && k > 0) {
        std::uint32_t digits = 1;
        while (digits < k && g.powers_[digits + 1] <= 128) ++digits;
        const std::uint32_t P = g.powers_[digits];
        g.chunk_ = P;
        g.chunk_magic_ = UINT64_MAX / P + 1;
        g.chunk_count_ = (k + digits - 1) / digits;
        g.chunk_add_.resize(std::size_t{P} * P);
        g.chunk_sub_.resize(std::size_t{P} * P);
        for (std::uint32_t a = 0; a < P; ++a) {
            for (std::uint32_t b = 0; b < P; ++b) {
                std::uint32_t sum = 0, diff = 0, x = a, y = b;
                for (std::uint32_t i = 0; i < digits; ++i) {
                    sum += (x % p + y % p) % p * g.powers_[i];
                    diff += (x % p + p - y % p) % p * g.powers_[i];
                    x /= p;
                    y /= p;
                }
                g.chunk_add_[std::size_t{a} * P + b] = static_cast<std::uint16_t>(sum);
                g.chunk_sub_[std::size_t{a} * P + b] = static_cast<std::uint16_t>(diff);
            }
        }
    }
    return g;
}

FiniteGroup FiniteGroup::field_additive(const FieldSpec& field) {
    FiniteGroup g = elementary_abelian(field.p(), field.m());
    g.name_ = "(GF(" + std::to_string(field.p()) + "^" + std::to_string(field.m()) + "),+)";
    return g;
}

FiniteGroup FiniteGroup::field_multiplicative(const FieldSpec& field) {
    FiniteGroup g;
    g.kind_ = Kind::field_multiplicative;
    g.name_ = "(GF(" + std::to_string(field.p()) + "^" + std::to_string(field.m()) + ")*,.)";
    g.order_ = field.unit_count();
    g.identity_ = 0;
    g.field_ = field;
    return g;
}

FiniteGroup FiniteGroup::star_units(const FieldRing& ring, const UnitSubgroup& subgroup) {
    if (subgroup.n() != ring.n()) {
        throw InvalidArgument("subgroup of U(Z_" + std::to_string(subgroup.n()) + ") does not match ring modulus " +
                              std::to_string(ring.n()));
    }
    FiniteGroup g;
    g.kind_ = Kind::star_units;
    g.name_ = "(gamma^G,x,gamma)";
    g.order_ = subgroup.size();
    g.field_ = ring.base();
    g.ring_n_ = ring.n();
    g.residues_ = subgroup.members();
    g.residue_index_.assign(ring.n(), kNone);
    for (std::size_t k = 0; k < g.residues_.size(); ++k) g.residue_index_[g.residues_[k]] = static_cast<Index>(k);
    g.identity_ = g.residue_index_[1 % ring.n()];
    return g;
}

[[noreturn]] void FiniteGroup::out_of_range(Index a) const {
    throw InvalidArgument("group index " + std::to_string(a) + " out of range for " + name_);
}

Index FiniteGroup::chunked(const std::vector<std::uint16_t>& t, Index a, Index b) const {
    if (t.empty()) {  // p > 128
        const bool add = &t == &chunk_add_;
        Index out = 0;
        for (std::size_t i = 0; i + 1 < powers_.size(); ++i) {
            out += (add ? (a % p_ + b % p_) % p_ : (a % p_ + p_ - b % p_) % p_) * powers_[i];
            a /= p_;
            b /= p_;
        }
        return out;
    }
    if (chunk_count_ == 1) return t[std::size_t{a} * chunk_ + b];
    // a / chunk_ as a high multiply, exact for 32-bit a.
    const auto div = [this](Index v) {
        return static_cast<Index>((static_cast<unsigned __int128>(chunk_magic_) * v) >> 64);
    };
    Index out = 0;
    Index place = 1;
    for (std::uint32_t i = 0; i < chunk_count_; ++i) {
        const Index qa = div(a), qb = div(b);
        out += t[std::size_t{a - qa * chunk_} * chunk_ + (b - qb * chunk_)] * place;
        a = qa;
        b = qb;
        place *= chunk_;
    }
    return out;
}

Index FiniteGroup::op(Index a, Index b) const {
    check(a);
    check(b);
    switch (kind_) {
        case Kind::table:
            return table_[static_cast<std::size_t>(a) * order_ + b];
        case Kind::cyclic: {
            const std::uint64_t s = std::uint64_t{a} + b;
            return static_cast<Index>(s >= order_ ? s - order_ : s);
        }
        case Kind::elementary_abelian: {
            if (p_ == 2) return a ^ b;
            return chunked(chunk_add_, a, b);
        }
        case Kind::field_multiplicative:
            return field_->mul(a + 1, b + 1) - 1;
        case Kind::star_units:
            return residue_index_[residues_[a] * residues_[b] % ring_n_];
    }
    return kNone;
}

Index FiniteGroup::inverse(Index a) const {
    check(a);
    switch (kind_) {
        case Kind::table:
            return inverse_[a];
        case Kind::cyclic:
            return a == 0 ? 0 : static_cast<Index>(order_ - a);
        case Kind::elementary_abelian: {
            if (p_ == 2) return a;
            return chunked(chunk_sub_, 0, a);
        }
        case Kind::field_multiplicative:
            return field_->inv(a + 1) - 1;
        case Kind::star_units:
            return residue_index_[*nt::mod_inverse(residues_[a], ring_n_)];
    }
    return kNone;
}

Index FiniteGroup::quotient(Index a, Index b) const {
    switch (kind_) {
        case Kind::elementary_abelian:
            check(a);
            check(b);
            if (p_ == 2) return a ^ b;
            return chunked(chunk_sub_, a, b);
        case Kind::field_multiplicative:
            return field_->div(a + 1, b + 1) - 1;
        default:
            break;
    }
    return op(a, inverse(b));
}

Label FiniteGroup::label(Index a) const {
    check(a);
    switch (kind_) {
        case Kind::table:
            return labels_[a];
        case Kind::field_multiplicative:
            return a + 1;
        case Kind::star_units:
            return field_->exp_gamma(residues_[a]);
        default:
            return a;
    }
}

std::optional<Index> FiniteGroup::index_of(Label label) const {
    switch (kind_) {
        case Kind::table: {
            const auto it = label_index_.find(label);
            if (it == label_index_.end()) return std::nullopt;
            return it->second;
        }
        case Kind::field_multiplicative:
            if (label == 0 || label > order_) return std::nullopt;
            return label - 1;
        case Kind::star_units: {
            if (label == 0 || !field_->contains(label)) return std::nullopt;
            const Index k = residue_index_[field_->log_gamma(label)];
            if (k == kNone) return std::nullopt;
            return k;
        }
        default:
            if (label >= order_) return std::nullopt;
            return label;
    }
}

std::vector<Index> FiniteGroup::non_identity() const {
    std::vector<Index> out;
    out.reserve(order_ - 1);
    for (std::size_t a = 0; a < order_; ++a) {
        if (a != identity_) out.push_back(static_cast<Index>(a));
    }
    return out;
}

std::uint64_t FiniteGroup::residue(Index a) const {
    check(a);
    if (kind_ != Kind::star_units) throw InvalidArgument("residue() is only defined for star unit groups");
    return residues_[a];
}

std::vector<Index> FiniteGroup::cayley_table() const {
    std::vector<Index> out(order_ * order_);
    for (std::size_t a = 0; a < order_; ++a) {
        for (std::size_t b = 0; b < order_; ++b) {
            out[a * order_ + b] = op(static_cast<Index>(a), static_cast<Index>(b));
        }
    }
    return out;
}

}  // namespace pnfield
