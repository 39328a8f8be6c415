#include "sfv/rng.hpp"

#include "sfv/hash.hpp"

namespace sfv {

namespace {

void push_be64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
    for (int i = 7; i >= 0; --i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t take_be64(const Sha256Digest& d) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace

std::uint64_t Rng::uniform_below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

Rng Rng::derive(std::string_view label) const {
    std::vector<std::uint8_t> buf;
    push_be64(buf, seed_);
    buf.insert(buf.end(), label.begin(), label.end());
    return Rng(take_be64(sha256(buf)));
}

Rng Rng::derive(std::string_view label, std::uint64_t index) const {
    std::vector<std::uint8_t> buf;
    push_be64(buf, seed_);
    buf.insert(buf.end(), label.begin(), label.end());
    push_be64(buf, index);
    return Rng(take_be64(sha256(buf)));
}

}  // namespace sfv
