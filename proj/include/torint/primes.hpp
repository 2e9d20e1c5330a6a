// Prime sieve helpers.
#pragma once

#include <cstdint>
#include <vector>

namespace torint {

std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

bool is_prime(std::uint64_t n);

}  // namespace torint
