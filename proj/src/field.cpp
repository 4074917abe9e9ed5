#include "tatespace/field.hpp"

#include "tatespace/errors.hpp"

#include <string>

namespace tatespace {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

FieldSpec::FieldSpec(std::uint64_t p) : p_(static_cast<std::uint32_t>(p))
{
    if (p >= (1ULL << 31) || !is_prime(p))
        throw PreconditionError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
}

Residue FieldSpec::inv(Residue a) const
{
    if (a == 0)
        throw PreconditionError("inverse of zero in GF(" + std::to_string(p_) + ")");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
        if (e & 1)
            result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

}  // namespace tatespace
