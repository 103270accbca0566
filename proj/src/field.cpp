#include "pnfield/field.hpp"

#include <algorithm>
#include <sstream>

#include "pnfield/error.hpp"
#include "pnfield/number_theory.hpp"

namespace pnfield {

struct FieldSpec::Tables {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::uint32_t order = 0;
    std::uint64_t modulus = 0;
    Element gamma = 0;
    std::vector<std::uint32_t> powers;  // p^0 .. p^m
    std::vector<Element> exp;
    std::vector<std::uint32_t> log;
};

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, lowest degree first

Poly to_poly(std::uint64_t enc, std::uint32_t p, std::size_t len) {
    Poly out(len, 0);
    for (std::size_t i = 0; i < len && enc > 0; ++i) {
        out[i] = static_cast<std::uint32_t>(enc % p);
        enc /= p;
    }
    return out;
}

std::uint64_t from_poly(const Poly& c, std::uint32_t p) {
    std::uint64_t enc = 0;
    for (std::size_t i = c.size(); i-- > 0;) enc = enc * p + c[i];
    return enc;
}

// True iff `divisor` (monic, degree d) divides `dividend` (degree n ≥ d) over GF(p).
bool divides(Poly dividend, const Poly& divisor, std::uint32_t p) {
    const std::size_t d = divisor.size() - 1;
    for (std::size_t k = dividend.size(); k-- > d;) {
        const std::uint32_t c = dividend[k];
        if (c == 0) continue;
        for (std::size_t t = 0; t <= d; ++t) {
            dividend[k - d + t] = static_cast<std::uint32_t>(
                (dividend[k - d + t] + std::uint64_t{p - c} * divisor[t]) % p);
        }
    }
    return std::all_of(dividend.begin(), dividend.begin() + static_cast<std::ptrdiff_t>(d),
                       [](std::uint32_t c) { return c == 0; });
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t m = f.size() - 1;
    for (std::size_t d = 1; d <= m / 2; ++d) {
        const std::uint64_t count = *nt::checked_pow(p, static_cast<unsigned>(d));
        for (std::uint64_t low = 0; low < count; ++low) {
            Poly g = to_poly(low, p, d + 1);
            g[d] = 1;
            if (divides(f, g, p)) return false;
        }
    }
    return true;
}

// Arithmetic in GF(p)[x]/(modulus) on digit vectors of length m.
class PolyRing {
public:
    PolyRing(std::uint32_t p, Poly modulus) : p_(p), mod_(std::move(modulus)), m_(mod_.size() - 1) {}

    void mul_by_x(Poly& a) const {
        const std::uint32_t top = a[m_ - 1];
        for (std::size_t i = m_ - 1; i > 0; --i) a[i] = a[i - 1];
        a[0] = 0;
        if (top != 0) {
            for (std::size_t i = 0; i < m_; ++i) a[i] = mac(a[i], p_ - top, mod_[i]);
        }
    }

    Poly mul(const Poly& a, const Poly& b) const {
        Poly acc(m_, 0);
        Poly shifted = a;
        for (std::size_t j = 0; j < m_; ++j) {
            if (b[j] != 0) {
                for (std::size_t i = 0; i < m_; ++i) acc[i] = mac(acc[i], b[j], shifted[i]);
            }
            if (j + 1 < m_) mul_by_x(shifted);
        }
        return acc;
    }

    // Multiplication by a fixed element whose highest nonzero digit is at `degree`.
    void mul_into(const Poly& a, const Poly& b, std::size_t degree, Poly& acc, Poly& scratch) const {
        std::fill(acc.begin(), acc.end(), 0);
        scratch = a;
        for (std::size_t j = 0; j <= degree; ++j) {
            if (b[j] != 0) {
                for (std::size_t i = 0; i < m_; ++i) acc[i] = mac(acc[i], b[j], scratch[i]);
            }
            if (j < degree) mul_by_x(scratch);
        }
    }

    Poly pow(Poly base, std::uint64_t e) const {
        Poly result(m_, 0);
        result[0] = 1;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    bool is_one(const Poly& a) const {
        if (a[0] != 1) return false;
        return std::all_of(a.begin() + 1, a.end(), [](std::uint32_t c) { return c == 0; });
    }

private:
    // (acc + x*y) mod p without 32-bit overflow
    std::uint32_t mac(std::uint32_t acc, std::uint32_t x, std::uint32_t y) const {
        return static_cast<std::uint32_t>((acc + std::uint64_t{x} * y) % p_);
    }

    std::uint32_t p_;
    Poly mod_;
    std::size_t m_;
};

}  // namespace

FieldSpec FieldSpec::build(std::uint32_t p, std::uint32_t m, std::optional<std::uint64_t> modulus) {
    if (!nt::is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (m == 0) throw InvalidArgument("field degree must be at least 1");
    const auto order = nt::checked_pow(p, m);
    if (!order || *order > max_order) {
        throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(m) +
                              " exceeds the supported maximum 2^26");
    }
    const std::uint64_t q = *order;

    Poly mod_poly;
    if (modulus) {
        if (*modulus < q || *modulus >= 2 * q) {
            throw InvalidArgument("modulus " + std::to_string(*modulus) + " is not monic of degree " +
                                  std::to_string(m));
        }
        mod_poly = to_poly(*modulus, p, m + 1);
        if (!is_irreducible(mod_poly, p)) {
            throw InvalidArgument("modulus " + std::to_string(*modulus) + " is reducible over GF(" +
                                  std::to_string(p) + ")");
        }
    } else {
        for (std::uint64_t enc = q; enc < 2 * q; ++enc) {
            Poly candidate = to_poly(enc, p, m + 1);
            if (is_irreducible(candidate, p)) {
                mod_poly = std::move(candidate);
                break;
            }
        }
    }

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->m = m;
    t->order = static_cast<std::uint32_t>(q);
    t->modulus = from_poly(mod_poly, p);
    t->powers.resize(m + 1);
    t->powers[0] = 1;
    for (std::uint32_t i = 1; i <= m; ++i) t->powers[i] = t->powers[i - 1] * p;

    const PolyRing ring(p, mod_poly);
    const std::uint64_t n = q - 1;
    const auto prime_factors = nt::factorize(n);
    Poly gamma_poly;
    for (std::uint64_t g = 1; g < q; ++g) {
        Poly cand = to_poly(g, p, m);
        const bool primitive = std::none_of(prime_factors.begin(), prime_factors.end(), [&](const auto& f) {
            return ring.is_one(ring.pow(cand, n / f.first));
        });
        if (primitive) {
            t->gamma = static_cast<Element>(g);
            gamma_poly = std::move(cand);
            break;
        }
    }

    std::size_t degree = m - 1;
    while (degree > 0 && gamma_poly[degree] == 0) --degree;
    t->exp.resize(n);
    t->log.assign(q, 0);
    Poly current(m, 0), next(m, 0), scratch(m, 0);
    current[0] = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto enc = static_cast<Element>(from_poly(current, p));
        t->exp[i] = enc;
        t->log[enc] = static_cast<std::uint32_t>(i);
        ring.mul_into(current, gamma_poly, degree, next, scratch);
        std::swap(current, next);
    }
    return FieldSpec(std::move(t));
}

FieldSpec FieldSpec::from_description(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::uint64_t p = 0, m = 0, modulus = 0, gamma = 0;
    if (!(in >> p >> m >> modulus >> gamma)) {
        throw ParseError("field description must be `p m modulus gamma`");
    }
    std::string rest;
    if (in >> rest) throw ParseError("trailing text in field description: " + rest);
    if (p > UINT32_MAX || m > 64) throw ParseError("field parameters out of range");
    FieldSpec field = [&] {
        try {
            return build(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m), modulus);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what());
        }
    }();
    if (field.gamma() != gamma) {
        throw ParseError("gamma " + std::to_string(gamma) + " is not the canonical primitive element " +
                         std::to_string(field.gamma()) + " for this modulus");
    }
    return field;
}

std::string FieldSpec::description() const {
    return std::to_string(p()) + " " + std::to_string(m()) + " " + std::to_string(modulus()) + " " +
           std::to_string(gamma());
}

std::uint32_t FieldSpec::p() const noexcept { return tables_->p; }
std::uint32_t FieldSpec::m() const noexcept { return tables_->m; }
std::uint32_t FieldSpec::order() const noexcept { return tables_->order; }
std::uint32_t FieldSpec::unit_count() const noexcept { return tables_->order - 1; }
std::uint64_t FieldSpec::modulus() const noexcept { return tables_->modulus; }
Element FieldSpec::gamma() const noexcept { return tables_->gamma; }
std::span<const Element> FieldSpec::exp_table() const noexcept { return tables_->exp; }
std::span<const std::uint32_t> FieldSpec::log_table() const noexcept { return tables_->log; }

[[noreturn]] void FieldSpec::out_of_range(Element a) const {
    throw InvalidArgument("encoding " + std::to_string(a) + " is outside GF(" + std::to_string(p()) + "^" +
                          std::to_string(m()) + ")");
}

inline void FieldSpec::check(Element a) const {
    if (a >= tables_->order) [[unlikely]] out_of_range(a);
}

Element FieldSpec::add(Element a, Element b) const {
    check(a);
    check(b);
    const std::uint32_t pp = tables_->p;
    if (pp == 2) return a ^ b;
    Element out = 0;
    for (std::uint32_t i = 0; i < tables_->m; ++i) {
        out += ((a % pp + b % pp) % pp) * tables_->powers[i];
        a /= pp;
        b /= pp;
    }
    return out;
}

Element FieldSpec::neg(Element a) const {
    check(a);
    const std::uint32_t pp = tables_->p;
    if (pp == 2) return a;
    Element out = 0;
    for (std::uint32_t i = 0; i < tables_->m; ++i) {
        out += ((pp - a % pp) % pp) * tables_->powers[i];
        a /= pp;
    }
    return out;
}

Element FieldSpec::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FieldSpec::mul(Element a, Element b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) return 0;
    const std::uint32_t n = unit_count();
    std::uint32_t e = tables_->log[a] + tables_->log[b];
    if (e >= n) e -= n;
    return tables_->exp[e];
}

Element FieldSpec::inv(Element a) const {
    check(a);
    if (a == 0) throw DomainError("inverse of zero");
    const std::uint32_t l = tables_->log[a];
    return tables_->exp[l == 0 ? 0 : unit_count() - l];
}

Element FieldSpec::div(Element a, Element b) const {
    check(b);
    if (b == 0) throw DomainError("division by zero");
    return mul(a, inv(b));
}

Element FieldSpec::pow(Element a, std::uint64_t k) const {
    check(a);
    if (a == 0) return k == 0 ? 1 : 0;
    const std::uint64_t n = unit_count();
    const auto e = static_cast<unsigned __int128>(tables_->log[a]) * (k % n) % n;
    return tables_->exp[static_cast<std::size_t>(e)];
}

Element FieldSpec::exp_gamma(std::uint64_t i) const {
    if (i >= unit_count()) {
        throw InvalidArgument("exponent " + std::to_string(i) + " is not a residue in [0, " +
                              std::to_string(unit_count()) + ")");
    }
    return tables_->exp[i];
}

std::uint32_t FieldSpec::log_gamma(Element a) const {
    check(a);
    if (a == 0) throw DomainError("logarithm of zero");
    return tables_->log[a];
}

Element FieldSpec::frobenius(std::uint32_t r, Element a) const {
    if (r >= tables_->m) {
        throw InvalidArgument("Frobenius power " + std::to_string(r) + " must lie in [0, " +
                              std::to_string(tables_->m) + ")");
    }
    check(a);
    if (a == 0) return 0;
    const std::uint64_t n = unit_count();
    const std::uint64_t e = nt::pow_mod(tables_->p, r, n);
    return tables_->exp[(static_cast<std::uint64_t>(tables_->log[a]) * e) % n];
}

std::vector<std::uint32_t> FieldSpec::digits(Element a) const {
    check(a);
    std::vector<std::uint32_t> out(tables_->m);
    for (auto& d : out) {
        d = a % tables_->p;
        a /= tables_->p;
    }
    return out;
}

Element FieldSpec::from_digits(std::span<const std::uint32_t> digits) const {
    if (digits.size() != tables_->m) throw InvalidArgument("digit vector must have length m");
    Element out = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] >= tables_->p) throw InvalidArgument("digit out of range");
        out = out * tables_->p + digits[i];
    }
    return out;
}

bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.tables_ == b.tables_ || (a.p() == b.p() && a.m() == b.m() && a.modulus() == b.modulus() &&
                                      a.gamma() == b.gamma());
}

}  // namespace pnfield
