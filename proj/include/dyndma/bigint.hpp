#ifndef DYNDMA_BIGINT_HPP
#define DYNDMA_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dyndma {

// Minimal arbitrary-precision unsigned integer, base 1e9 limbs. Supports the
// handful of operations the configuration-count arithmetic needs.
class BigUint {
public:
    BigUint() : limbs_{0} {}
    BigUint(std::uint64_t value);

    BigUint& operator*=(std::uint32_t m);
    BigUint& operator/=(std::uint32_t d); // exact or truncating division
    BigUint operator*(const BigUint& other) const;

    bool operator==(const BigUint& other) const { return limbs_ == other.limbs_; }
    bool operator!=(const BigUint& other) const { return !(*this == other); }
    bool operator<(const BigUint& other) const;

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
    std::string str() const;

    // Value as uint64 when it fits; throws Error otherwise.
    std::uint64_t to_u64() const;

private:
    void trim();
    std::vector<std::uint32_t> limbs_; // little-endian, base 1e9
};

} // namespace dyndma

#endif
