#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnfield/action.hpp"
#include "pnfield/double_field.hpp"
#include "pnfield/group.hpp"
#include "pnfield/sbox.hpp"

namespace pnfield {

using Count = std::uint16_t;

/// N(α, β) = |{x : d_α f(x) = β}| for every α ∈ G* (rows, group index order)
/// and every β ∈ H (columns, H index order).
struct SpectrumTable {
    std::vector<Index> alphas;
    std::size_t beta_count = 0;
    std::size_t domain_size = 0;
    std::vector<Count> counts;
    /// |X| / |H| when |H| divides |X|.
    std::optional<std::size_t> target_ratio;

    std::span<const Count> row(std::size_t i) const {
        return std::span<const Count>(counts).subspan(i * beta_count, beta_count);
    }
    Count at(std::size_t row_index, Index beta) const { return counts[row_index * beta_count + beta]; }
};

enum class PnReason { none, divisibility, unbalanced };

/// First entry, in (α, β) index order, that differs from |X|/|H|.
struct Violation {
    Index alpha;
    Index beta;
    Label alpha_label;
    Label beta_label;
    std::size_t count;
    std::size_t expected;
};

struct PnVerdict {
    bool pn = false;
    PnReason reason = PnReason::none;
    std::optional<Violation> violation;
    /// Largest N(α, β); 0 when G* is empty.
    std::size_t uniformity = 0;
    std::size_t rows = 0;
    std::optional<SpectrumTable> spectrum;

    /// Human-readable explanation, empty when pn is true.
    std::string reason_text(std::size_t domain_size, std::size_t target_order) const;
};

struct AnalysisOptions {
    /// 0 selects default_worker_count().
    unsigned workers = 0;
    /// When false, rows are checked and discarded; no 16-bit limit on |X| applies.
    bool keep_spectrum = true;
};

/// x ↦ f(α.x) · f(x)^{-1} in H, as H indices over the carrier.
/// Throws InvalidArgument for α = identity or mismatched sizes.
std::vector<Index> derivative(const SBox& f, const ActionSpec& action, const FiniteGroup& target, Index alpha);

/// Carrier indices x with d_α f(x) = β.
std::vector<Index> derivative_fiber(const SBox& f, const ActionSpec& action, const FiniteGroup& target,
                                    Index alpha, Index beta);

/// Full derivative spectrum. Rows are computed independently, possibly in
/// parallel; the result does not depend on the worker count. Requires |X| < 2^16.
SpectrumTable spectrum(const SBox& f, const ActionSpec& action, const FiniteGroup& target, unsigned workers = 0);

/// f is G-perfect nonlinear iff every N(α, β) equals |X|/|H| exactly. When |H|
/// does not divide |X| the verdict is false with reason `divisibility`.
PnVerdict is_perfect_nonlinear(const SBox& f, const ActionSpec& action, const FiniteGroup& target,
                               const AnalysisOptions& options = {});

std::size_t differential_uniformity(const SBox& f, const ActionSpec& action, const FiniteGroup& target,
                                    unsigned workers = 0);

/// Classical APN test on a field S-box given over encodings: XOR translation
/// action, additive target of the same size, uniformity ≤ 2.
bool is_apn(std::span<const Element> table, const FieldSpec& field);

enum class DoublyPnVerdict { holds, fails, inapplicable };

std::string to_string(DoublyPnVerdict verdict);

/// Codomain structure used for the first condition of double perfect nonlinearity.
enum class Part1Target {
    /// G = (GF(2^q)*, ·) on GF(2^q), H = (GF(2^q), +).
    additive,
    /// Comparison mode: G = (GF(2^q)*, ·) on GF(2^q)*, H = (GF(2^q)*, ·).
    multiplicative,
};

struct DoublyPnResult {
    DoublyPnVerdict verdict = DoublyPnVerdict::inapplicable;
    std::string detail;
    std::optional<PnVerdict> part1;
    std::optional<PnVerdict> part2;
};

/// Doubly perfect nonlinear test for a table over GF(2^q) encodings:
/// (1) PN for GF(2^q)* acting by multiplication, (2) the restriction f* is
/// PN for (GF(2^q)**, ×, γ) acting by star multiplication on GF(2^q)* with
/// H = (GF(2^q)*, ·). Inapplicable unless p = 2 and 2^q − 1 is prime.
/// Throws InvalidArgument when f maps a nonzero element to 0.
DoublyPnResult is_doubly_pn(std::span<const Element> table, const FieldRing& ring,
                            Part1Target part1_target = Part1Target::additive, const AnalysisOptions& options = {});

/// |h^{-1}(β)| for every β in the image of a map h: G → H, indexed by H.
struct FiberProfile {
    std::size_t kernel_size = 0;
    std::vector<std::size_t> fiber_sizes;  // 0 outside the image
    std::size_t image_size = 0;

    /// Every nonempty fiber has exactly kernel_size elements.
    bool fibers_match_kernel() const;
};

/// Exhaustive check h(a·b) = h(a)·h(b).
bool is_homomorphism(const FiniteGroup& source, const FiniteGroup& target, std::span<const Index> map);

FiberProfile homomorphism_fibers(const FiniteGroup& source, const FiniteGroup& target, std::span<const Index> map);

}  // namespace pnfield
