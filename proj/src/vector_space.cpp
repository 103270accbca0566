#include "pnfield/vector_space.hpp"

#include "pnfield/error.hpp"
#include "pnfield/number_theory.hpp"

namespace pnfield {

VectorSpaceSpec::VectorSpaceSpec(FieldSpec base, std::uint32_t d) : base_(std::move(base)), d_(d), size_(0) {
    if (d == 0) throw InvalidArgument("vector space dimension must be at least 1");
    const auto size = nt::checked_pow(base_.order(), d);
    if (!size || *size > UINT32_MAX) throw InvalidArgument("vector space too large");
    size_ = static_cast<std::uint32_t>(*size);
}

[[noreturn]] void VectorSpaceSpec::out_of_range(Index v) const {
    throw InvalidArgument("vector index " + std::to_string(v) + " out of range");
}

std::vector<Element> VectorSpaceSpec::components(Index v) const {
    check(v);
    std::vector<Element> out(d_);
    for (std::size_t k = d_; k-- > 0;) {
        out[k] = v % base_.order();
        v /= base_.order();
    }
    return out;
}

Index VectorSpaceSpec::from_components(std::span<const Element> components) const {
    if (components.size() != d_) throw InvalidArgument("component count must equal the dimension");
    Index v = 0;
    for (Element c : components) {
        if (!base_.contains(c)) throw InvalidArgument("component outside the base field");
        v = v * base_.order() + c;
    }
    return v;
}

std::vector<std::uint32_t> VectorSpaceSpec::coordinates(Index v) const {
    std::vector<std::uint32_t> out;
    out.reserve(prime_dimension());
    for (Element c : components(v)) {
        const auto digits = base_.digits(c);
        out.insert(out.end(), digits.begin(), digits.end());
    }
    return out;
}

Index VectorSpaceSpec::from_coordinates(std::span<const std::uint32_t> coordinates) const {
    if (coordinates.size() != prime_dimension()) throw InvalidArgument("coordinate count must equal m*d");
    std::vector<Element> comps(d_);
    for (std::uint32_t k = 0; k < d_; ++k) comps[k] = base_.from_digits(coordinates.subspan(k * base_.m(), base_.m()));
    return from_components(comps);
}

Index VectorSpaceSpec::add(Index u, Index v) const {
    check(u);
    check(v);
    if (base_.p() == 2) return u ^ v;
    const auto a = components(u);
    const auto b = components(v);
    std::vector<Element> c(d_);
    for (std::uint32_t k = 0; k < d_; ++k) c[k] = base_.add(a[k], b[k]);
    return from_components(c);
}

Index VectorSpaceSpec::scale(Element alpha, Index v) const {
    check(v);
    if (d_ == 1) return base_.mul(alpha, v);
    const std::uint32_t q = base_.order();
    Index out = 0;
    Index place = 1;
    for (std::uint32_t k = 0; k < d_; ++k) {
        out += base_.mul(alpha, v % q) * place;
        v /= q;
        place *= q;
    }
    return out;
}

FiniteGroup VectorSpaceSpec::additive_group() const {
    return FiniteGroup::elementary_abelian(base_.p(), prime_dimension());
}

}  // namespace pnfield
