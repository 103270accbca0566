#include "pnfield/constructions.hpp"

#include <algorithm>

#include "pnfield/error.hpp"
#include "pnfield/number_theory.hpp"
#include "pnfield/rng.hpp"

namespace pnfield {

SBox frobenius_sbox(const FieldSpec& field, std::uint32_t r) {
    if (r >= field.m()) {
        throw InvalidArgument("Frobenius power " + std::to_string(r) + " must lie in [0, " + std::to_string(field.m()) +
                              ")");
    }
    std::vector<Index> table(field.order());
    for (Element x = 0; x < field.order(); ++x) table[x] = field.frobenius(r, x);
    return SBox::from_table(std::move(table), field.order());
}

SBox power_map_sbox(const FieldSpec& field, std::uint64_t k) {
    if (k == 0) throw InvalidArgument("power map exponent must be at least 1");
    std::vector<Index> table(field.order());
    for (Element x = 0; x < field.order(); ++x) table[x] = field.pow(x, k);
    return SBox::from_table(std::move(table), field.order());
}

std::uint32_t rank_mod_p(std::vector<std::uint32_t> a, std::size_t rows, std::size_t cols, std::uint32_t p) {
    std::uint32_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
        const std::uint64_t inv = *nt::mod_inverse(a[rank * cols + col], p);
        for (std::size_t j = 0; j < cols; ++j) a[rank * cols + j] = static_cast<std::uint32_t>(a[rank * cols + j] * inv % p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i * cols + col] == 0) continue;
            const std::uint64_t factor = a[i * cols + col];
            for (std::size_t j = 0; j < cols; ++j) {
                a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + (p - factor) * a[rank * cols + j]) % p);
            }
        }
        ++rank;
    }
    return rank;
}

AdditiveMap::AdditiveMap(VectorSpaceSpec source, VectorSpaceSpec target, std::vector<std::uint32_t> matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)), rank_(0) {
    const std::uint32_t p = source_.base().p();
    if (target_.base().p() != p) throw InvalidArgument("additive maps need source and target of equal characteristic");
    if (matrix_.size() != rows() * cols()) throw InvalidArgument("matrix must have (n*e) x (m*d) entries");
    for (std::uint32_t c : matrix_) {
        if (c >= p) throw InvalidArgument("matrix entry outside GF(p)");
    }
    rank_ = rank_mod_p(matrix_, rows(), cols(), p);
}

AdditiveMap AdditiveMap::identity(const VectorSpaceSpec& space) {
    const std::size_t n = space.prime_dimension();
    std::vector<std::uint32_t> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    return AdditiveMap(space, space, std::move(m));
}

std::uint64_t AdditiveMap::kernel_size() const {
    return *nt::checked_pow(source_.base().p(), static_cast<unsigned>(cols() - rank_));
}

Index AdditiveMap::apply(Index v) const {
    const std::uint32_t p = source_.base().p();
    const auto x = source_.coordinates(v);
    std::vector<std::uint32_t> y(rows(), 0);
    for (std::size_t i = 0; i < rows(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols(); ++j) acc += std::uint64_t{matrix_[i * cols() + j]} * x[j];
        y[i] = static_cast<std::uint32_t>(acc % p);
    }
    return target_.from_coordinates(y);
}

SBox AdditiveMap::as_sbox() const {
    std::vector<Index> table(source_.size());
    for (Index v = 0; v < source_.size(); ++v) table[v] = apply(v);
    SplitMix64 rng(0xadd171e);
    for (int t = 0; t < 100; ++t) {
        const auto u = static_cast<Index>(rng.below(source_.size()));
        const auto v = static_cast<Index>(rng.below(source_.size()));
        if (table[source_.add(u, v)] != target_.add(table[u], table[v])) {
            throw Error("additive map failed the additivity spot check");
        }
    }
    return SBox::from_table(std::move(table), target_.size());
}

AdditiveMap random_additive_epimorphism(const VectorSpaceSpec& source, const VectorSpaceSpec& target,
                                        std::uint64_t seed) {
    const std::uint32_t p = source.base().p();
    if (target.base().p() != p) throw InvalidArgument("source and target must share the characteristic p");
    const std::size_t cols = source.prime_dimension();
    const std::size_t rows = target.prime_dimension();
    if (cols < rows) {
        throw InvalidArgument("no epimorphism exists: m*d = " + std::to_string(cols) + " < n*e = " +
                              std::to_string(rows));
    }
    SplitMix64 rng(seed);
    std::vector<std::uint32_t> matrix(rows * cols);
    while (true) {
        for (auto& c : matrix) c = static_cast<std::uint32_t>(rng.below(p));
        if (rank_mod_p(matrix, rows, cols, p) == rows) return AdditiveMap(source, target, matrix);
    }
}

Theorem2Setting theorem2_setting(const FieldSpec& field, const UnitSubgroup& subgroup, std::uint32_t r,
                                 const AnalysisOptions& options) {
    if (field.p() != 2 || field.m() <= 1) {
        throw HypothesisError("the subgroup construction needs GF(2^m) with m > 1");
    }
    const FieldRing ring(field);
    if (subgroup.n() != ring.n()) {
        throw HypothesisError("G must be a subgroup of U(Z_" + std::to_string(ring.n()) + ")");
    }
    if (!subgroup.difference_unit()) {
        for (std::uint64_t i : subgroup.members()) {
            if (i != 1 && !nt::mod_inverse(i - 1, ring.n())) {
                throw HypothesisError("G lacks the difference-unit property: " + std::to_string(i) + " - 1 = " +
                                      std::to_string(i - 1) + " is not invertible modulo " + std::to_string(ring.n()));
            }
        }
    }
    SBox lambda = frobenius_sbox(field, r);
    const ActionSpec mult = action_mul_translation(field);
    const FiniteGroup additive = FiniteGroup::field_additive(field);
    PnVerdict part1 = is_perfect_nonlinear(SBox::bind(lambda.table(), mult, additive), mult, additive, options);

    ActionSpec star = action_star(ring, subgroup);
    const FiniteGroup units = FiniteGroup::field_multiplicative(field);
    PnVerdict part2 = is_perfect_nonlinear(SBox::bind(lambda.table(), star, units), star, units, options);
    return Theorem2Setting{std::move(lambda), std::move(star), std::move(part1), std::move(part2)};
}

}  // namespace pnfield
