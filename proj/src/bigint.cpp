#include "dyndma/bigint.hpp"

#include "dyndma/errors.hpp"

namespace dyndma {

namespace {
constexpr std::uint64_t kBase = 1000000000ull;
}

BigUint::BigUint(std::uint64_t value) {
    if (value == 0) {
        limbs_ = {0};
        return;
    }
    while (value > 0) {
        limbs_.push_back(static_cast<std::uint32_t>(value % kBase));
        value /= kBase;
    }
}

void BigUint::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator*=(std::uint32_t m) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
        limb = static_cast<std::uint32_t>(cur % kBase);
        carry = cur / kBase;
    }
    while (carry > 0) {
        limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
        carry /= kBase;
    }
    trim();
    return *this;
}

BigUint& BigUint::operator/=(std::uint32_t d) {
    if (d == 0) throw Error("BigUint: division by zero");
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        std::uint64_t cur = rem * kBase + limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& other) const {
    std::vector<std::uint64_t> acc(limbs_.size() + other.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
            std::uint64_t cur =
                acc[i + j] + static_cast<std::uint64_t>(limbs_[i]) * other.limbs_[j] + carry;
            acc[i + j] = cur % kBase;
            carry = cur / kBase;
        }
        std::size_t k = i + other.limbs_.size();
        while (carry > 0) {
            std::uint64_t cur = acc[k] + carry;
            acc[k] = cur % kBase;
            carry = cur / kBase;
            ++k;
        }
    }
    BigUint out;
    out.limbs_.assign(acc.begin(), acc.end());
    out.trim();
    return out;
}

bool BigUint::operator<(const BigUint& other) const {
    if (limbs_.size() != other.limbs_.size()) return limbs_.size() < other.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i];
    return false;
}

std::string BigUint::str() const {
    std::string out = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs_[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

std::uint64_t BigUint::to_u64() const {
    std::uint64_t value = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (value > (UINT64_MAX - limbs_[i]) / kBase)
            throw Error("BigUint: value does not fit in 64 bits");
        value = value * kBase + limbs_[i];
    }
    return value;
}

} // namespace dyndma
