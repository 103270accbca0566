#include "pnfield/number_theory.hpp"

#include <numeric>

namespace pnfield::nt {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return d;
    }
    return n;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    while (n > 1) {
        const std::uint64_t q = smallest_prime_factor(n);
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    return out;
}

std::uint64_t totient(std::uint64_t n) {
    std::uint64_t result = n;
    for (const auto& [q, e] : factorize(n)) {
        result = result / q * (q - 1);
    }
    return result;
}

std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t n) {
    if (n == 0) return std::nullopt;
    if (n == 1) return 0;
    std::int64_t old_r = static_cast<std::int64_t>(a % n), r = static_cast<std::int64_t>(n);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) return std::nullopt;
    const auto nn = static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(((old_s % nn) + nn) % nn);
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
        result *= base;
    }
    return result;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 1) return 0;
    unsigned __int128 result = 1;
    unsigned __int128 b = base % mod;
    while (exp > 0) {
        if (exp & 1) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

}  // namespace pnfield::nt
