#pragma once

#include <cstdint>
#include <vector>

#include "pnfield/action.hpp"
#include "pnfield/analyzer.hpp"
#include "pnfield/double_field.hpp"
#include "pnfield/field.hpp"
#include "pnfield/sbox.hpp"
#include "pnfield/vector_space.hpp"

namespace pnfield {

/// x ↦ x^(p^r) over encodings. Always a permutation fixing 0 and 1.
SBox frobenius_sbox(const FieldSpec& field, std::uint32_t r);

/// x ↦ x^k with 0 ↦ 0; k ≥ 1. A permutation iff gcd(k, p^m − 1) = 1.
SBox power_map_sbox(const FieldSpec& field, std::uint64_t k);

/// A GF(p)-linear map V(p, m, d) → V(p, n, e) acting on coordinate expansions.
class AdditiveMap {
public:
    /// `matrix` is row-major with n·e rows and m·d columns, entries in [0, p).
    AdditiveMap(VectorSpaceSpec source, VectorSpaceSpec target, std::vector<std::uint32_t> matrix);

    static AdditiveMap identity(const VectorSpaceSpec& space);

    const VectorSpaceSpec& source() const noexcept { return source_; }
    const VectorSpaceSpec& target() const noexcept { return target_; }
    std::size_t rows() const noexcept { return target_.prime_dimension(); }
    std::size_t cols() const noexcept { return source_.prime_dimension(); }
    const std::vector<std::uint32_t>& matrix() const noexcept { return matrix_; }
    std::uint32_t rank() const noexcept { return rank_; }
    bool is_surjective() const noexcept { return rank_ == rows(); }
    /// p^(md − rank).
    std::uint64_t kernel_size() const;

    Index apply(Index v) const;

    /// table[i] = target index of λ(source carrier i). Additivity is spot
    /// checked on 100 seeded pairs; a failure throws Error.
    SBox as_sbox() const;

private:
    VectorSpaceSpec source_;
    VectorSpaceSpec target_;
    std::vector<std::uint32_t> matrix_;
    std::uint32_t rank_;
};

/// Rank of a row-major matrix over GF(p).
std::uint32_t rank_mod_p(std::vector<std::uint32_t> matrix, std::size_t rows, std::size_t cols, std::uint32_t p);

/// Samples uniform (n·e)×(m·d) matrices over GF(p) from SplitMix64(seed),
/// entries drawn row by row, and rejects until one has full rank n·e.
/// Requires a common characteristic and m·d ≥ n·e; throws InvalidArgument otherwise.
AdditiveMap random_additive_epimorphism(const VectorSpaceSpec& source, const VectorSpaceSpec& target,
                                        std::uint64_t seed);

struct Theorem2Setting {
    SBox sbox;  // Frobenius^r over encodings
    ActionSpec star_action;
    /// GF(2^m)* acting by multiplication on GF(2^m), H = (GF(2^m), +).
    PnVerdict part1;
    /// γ^G acting by × on GF(2^m)*, H = (GF(2^m)*, ·).
    PnVerdict part2;

    bool holds() const noexcept { return part1.pn && part2.pn; }
};

/// Builds λ = Frobenius^r on GF(2^m), the star action of γ^G and runs both
/// perfect-nonlinearity checks. Throws HypothesisError unless p = 2, m > 1,
/// and every i ∈ G \ {1} has i − 1 invertible modulo 2^m − 1.
Theorem2Setting theorem2_setting(const FieldSpec& field, const UnitSubgroup& subgroup, std::uint32_t r,
                                 const AnalysisOptions& options = {});

}  // namespace pnfield
