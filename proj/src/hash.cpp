#include "sfv/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace sfv {

Sha256Digest sha256(const std::uint8_t* data, std::size_t len) {
    Sha256Digest out{};
    unsigned int outlen = 0;
    if (EVP_Digest(data, len, out.data(), &outlen, EVP_sha256(), nullptr) != 1 ||
        outlen != out.size()) {
        throw std::runtime_error("sha256: digest computation failed");
    }
    return out;
}

Sha256Digest sha256(const std::vector<std::uint8_t>& data) {
    return sha256(data.data(), data.size());
}

std::string hex_encode(const Sha256Digest& d) {
    static const char* hex = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (auto b : d) {
        s.push_back(hex[b >> 4]);
        s.push_back(hex[b & 0xf]);
    }
    return s;
}

}  // namespace sfv
