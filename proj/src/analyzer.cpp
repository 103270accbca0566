#include "pnfield/analyzer.hpp"

#include <algorithm>

#include "pnfield/error.hpp"
#include "pnfield/number_theory.hpp"
#include "pnfield/parallel.hpp"

namespace pnfield {

namespace {

void validate(const SBox& f, const ActionSpec& action, const FiniteGroup& target) {
    if (f.domain_size() != action.carrier_size()) {
        throw InvalidArgument("S-box has " + std::to_string(f.domain_size()) + " entries but the action carrier has " +
                              std::to_string(action.carrier_size()) + " elements");
    }
    if (f.codomain_size() > target.order()) {
        for (Index v : f.table()) {
            if (v >= target.order()) {
                throw ValueOutsideGroup("S-box value index " + std::to_string(v) + " is outside " + target.name());
            }
        }
    }
}

// counts[β] += 1 for β = d_α f(x), over every x.
void accumulate_row(const SBox& f, std::span<const Index> perm, const FiniteGroup& target,
                    std::vector<std::uint32_t>& counts) {
    std::fill(counts.begin(), counts.end(), 0);
    const auto table = f.table();
    for (std::size_t x = 0; x < table.size(); ++x) {
        ++counts[target.quotient(table[perm[x]], table[x])];
    }
}

struct RowStat {
    std::size_t max = 0;
    bool violated = false;
    Index beta = 0;
    std::size_t count = 0;
};

struct Scratch {
    std::vector<Index> perm;
    std::vector<std::uint32_t> counts;
};

}  // namespace

std::string PnVerdict::reason_text(std::size_t domain_size, std::size_t target_order) const {
    switch (reason) {
        case PnReason::none:
            return "";
        case PnReason::divisibility:
            return "divisibility: |H| = " + std::to_string(target_order) + " does not divide |X| = " +
                   std::to_string(domain_size);
        case PnReason::unbalanced:
            return "unbalanced derivative: alpha=" + std::to_string(violation->alpha_label) +
                   " beta=" + std::to_string(violation->beta_label) + " count=" + std::to_string(violation->count) +
                   " expected=" + std::to_string(violation->expected);
    }
    return "";
}

std::vector<Index> derivative(const SBox& f, const ActionSpec& action, const FiniteGroup& target, Index alpha) {
    validate(f, action, target);
    if (alpha >= action.group().order()) throw InvalidArgument("direction index out of range");
    if (alpha == action.group().identity()) {
        throw InvalidArgument("derivative direction must not be the group identity");
    }
    std::vector<Index> scratch;
    const auto perm = action.permutation(alpha, scratch);
    std::vector<Index> out(f.domain_size());
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = target.quotient(f[perm[x]], f[x]);
    return out;
}

std::vector<Index> derivative_fiber(const SBox& f, const ActionSpec& action, const FiniteGroup& target, Index alpha,
                                    Index beta) {
    const auto d = derivative(f, action, target, alpha);
    std::vector<Index> out;
    for (std::size_t x = 0; x < d.size(); ++x) {
        if (d[x] == beta) out.push_back(static_cast<Index>(x));
    }
    return out;
}

PnVerdict is_perfect_nonlinear(const SBox& f, const ActionSpec& action, const FiniteGroup& target,
                               const AnalysisOptions& options) {
    validate(f, action, target);
    const std::size_t domain = f.domain_size();
    const std::size_t betas = target.order();
    if (options.keep_spectrum && domain >= (std::size_t{1} << 16)) {
        throw InvalidArgument("spectrum tables use 16-bit counters; |X| must be below 65536");
    }
    const std::vector<Index> alphas = action.group().non_identity();
    const std::optional<std::size_t> ratio =
        domain % betas == 0 ? std::optional<std::size_t>(domain / betas) : std::nullopt;

    SpectrumTable table;
    if (options.keep_spectrum) {
        table.alphas = alphas;
        table.beta_count = betas;
        table.domain_size = domain;
        table.target_ratio = ratio;
        table.counts.assign(alphas.size() * betas, 0);
    }

    const unsigned workers = effective_workers(alphas.size(), options.workers);
    std::vector<Scratch> scratch(workers);
    std::vector<RowStat> stats(alphas.size());
    parallel_for(alphas.size(), workers, [&](unsigned w, std::size_t i) {
        Scratch& s = scratch[w];
        s.counts.resize(betas);
        const auto perm = action.permutation(alphas[i], s.perm);
        accumulate_row(f, perm, target, s.counts);
        RowStat& st = stats[i];
        for (std::size_t b = 0; b < betas; ++b) {
            const std::uint32_t c = s.counts[b];
            st.max = std::max<std::size_t>(st.max, c);
            if (!st.violated && ratio && c != *ratio) {
                st.violated = true;
                st.beta = static_cast<Index>(b);
                st.count = c;
            }
        }
        if (options.keep_spectrum) {
            std::transform(s.counts.begin(), s.counts.end(), table.counts.begin() + static_cast<std::ptrdiff_t>(i * betas),
                           [](std::uint32_t c) { return static_cast<Count>(c); });
        }
    });

    PnVerdict verdict;
    verdict.rows = alphas.size();
    for (std::size_t i = 0; i < stats.size(); ++i) {
        verdict.uniformity = std::max(verdict.uniformity, stats[i].max);
        if (stats[i].violated && !verdict.violation) {
            verdict.violation = Violation{alphas[i],
                                          stats[i].beta,
                                          action.group().label(alphas[i]),
                                          target.label(stats[i].beta),
                                          stats[i].count,
                                          *ratio};
        }
    }
    if (!ratio) {
        verdict.pn = false;
        verdict.reason = PnReason::divisibility;
    } else if (verdict.violation) {
        verdict.pn = false;
        verdict.reason = PnReason::unbalanced;
    } else {
        verdict.pn = true;
    }
    if (options.keep_spectrum) verdict.spectrum = std::move(table);
    return verdict;
}

SpectrumTable spectrum(const SBox& f, const ActionSpec& action, const FiniteGroup& target, unsigned workers) {
    return std::move(*is_perfect_nonlinear(f, action, target, {workers, true}).spectrum);
}

std::size_t differential_uniformity(const SBox& f, const ActionSpec& action, const FiniteGroup& target,
                                    unsigned workers) {
    return is_perfect_nonlinear(f, action, target, {workers, false}).uniformity;
}

bool is_apn(std::span<const Element> table, const FieldSpec& field) {
    const ActionSpec xor_action = action_add_translation(field);
    const FiniteGroup additive = FiniteGroup::field_additive(field);
    const SBox f = SBox::bind(table, xor_action, additive);
    return differential_uniformity(f, xor_action, additive) <= 2;
}

std::string to_string(DoublyPnVerdict verdict) {
    switch (verdict) {
        case DoublyPnVerdict::holds:
            return "true";
        case DoublyPnVerdict::fails:
            return "false";
        case DoublyPnVerdict::inapplicable:
            return "inapplicable";
    }
    return "";
}

DoublyPnResult is_doubly_pn(std::span<const Element> table, const FieldRing& ring, Part1Target part1_target,
                            const AnalysisOptions& options) {
    const FieldSpec& field = ring.base();
    DoublyPnResult result;
    if (field.p() != 2) {
        result.detail = "characteristic " + std::to_string(field.p()) + " is not 2";
        return result;
    }
    if (!ring.is_double_field()) {
        result.detail = std::to_string(ring.n()) + " is not prime";
        return result;
    }
    if (table.size() != field.order()) {
        throw InvalidArgument("S-box must have " + std::to_string(field.order()) + " entries");
    }
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (!field.contains(table[x])) throw InvalidArgument("S-box entry outside the field");
        if (x != 0 && table[x] == 0) {
            throw InvalidArgument("doubly perfect nonlinearity requires f(x) != 0 for x != 0, but f(" +
                                  std::to_string(x) + ") = 0");
        }
    }

    const FiniteGroup units = FiniteGroup::field_multiplicative(field);
    if (part1_target == Part1Target::additive) {
        const ActionSpec mult = action_mul_translation(field);
        const FiniteGroup additive = FiniteGroup::field_additive(field);
        result.part1 = is_perfect_nonlinear(SBox::bind(table, mult, additive), mult, additive, options);
    } else {
        const ActionSpec mult = action_left_translation(units);
        result.part1 = is_perfect_nonlinear(SBox::bind(table, mult, units), mult, units, options);
    }

    const ActionSpec star = action_star(ring, UnitSubgroup::full(ring.n()));
    result.part2 = is_perfect_nonlinear(SBox::bind(table, star, units), star, units, options);

    const bool holds = result.part1->pn && result.part2->pn;
    result.verdict = holds ? DoublyPnVerdict::holds : DoublyPnVerdict::fails;
    if (!result.part1->pn) {
        result.detail = "part 1: " + result.part1->reason_text(field.order(), field.order());
    } else if (!result.part2->pn) {
        result.detail = "part 2: " + result.part2->reason_text(field.unit_count(), field.unit_count());
    }
    return result;
}

bool FiberProfile::fibers_match_kernel() const {
    return std::all_of(fiber_sizes.begin(), fiber_sizes.end(),
                       [this](std::size_t s) { return s == 0 || s == kernel_size; });
}

bool is_homomorphism(const FiniteGroup& source, const FiniteGroup& target, std::span<const Index> map) {
    if (map.size() != source.order()) return false;
    for (Index v : map) {
        if (v >= target.order()) return false;
    }
    for (std::size_t a = 0; a < source.order(); ++a) {
        for (std::size_t b = 0; b < source.order(); ++b) {
            const Index ab = source.op(static_cast<Index>(a), static_cast<Index>(b));
            if (map[ab] != target.op(map[a], map[b])) return false;
        }
    }
    return true;
}

FiberProfile homomorphism_fibers(const FiniteGroup& source, const FiniteGroup& target, std::span<const Index> map) {
    if (map.size() != source.order()) throw InvalidArgument("map must have one entry per source element");
    FiberProfile profile;
    profile.fiber_sizes.assign(target.order(), 0);
    for (Index v : map) {
        if (v >= target.order()) throw InvalidArgument("map value outside the target group");
        ++profile.fiber_sizes[v];
    }
    profile.kernel_size = profile.fiber_sizes[target.identity()];
    profile.image_size = static_cast<std::size_t>(
        std::count_if(profile.fiber_sizes.begin(), profile.fiber_sizes.end(), [](std::size_t s) { return s > 0; }));
    return profile;
}

}  // namespace pnfield
