#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pnfield::nt {

/// Trial-division primality test.
bool is_prime(std::uint64_t n);

/// Smallest prime factor of n ≥ 2.
std::uint64_t smallest_prime_factor(std::uint64_t n);

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

std::uint64_t totient(std::uint64_t n);

/// Inverse of a modulo n, if gcd(a, n) = 1.
std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t n);

/// base^exp, or nullopt when the result does not fit in 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

}  // namespace pnfield::nt
