#pragma once

#include <cstdint>

namespace tatespace {

using Residue = std::uint32_t;

/// The prime field GF(p). Residues are stored in [0, p).
class FieldSpec {
public:
    /// Throws PreconditionError unless p is a prime below 2^31.
    explicit FieldSpec(std::uint64_t p);

    std::uint32_t p() const { return p_; }

    Residue reduce(std::int64_t v) const
    {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue add(Residue a, Residue b) const
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const
    {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    /// Multiplicative inverse; a must be nonzero.
    Residue inv(Residue a) const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace tatespace
