#pragma once

// little-endian binary helpers shared by the trace formats

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace treesub::binio {

static_assert(std::endian::native == std::endian::little,
              "trace files are written in host order, which must be little-endian");

inline void put_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
inline void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }

inline std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v;
    if (!is.read(reinterpret_cast<char*>(&v), 8)) throw std::runtime_error("trace file: truncated");
    return v;
}

inline double get_f64(std::istream& is) {
    double v;
    if (!is.read(reinterpret_cast<char*>(&v), 8)) throw std::runtime_error("trace file: truncated");
    return v;
}

inline void put_array(std::ostream& os, const std::vector<double>& a) {
    os.write(reinterpret_cast<const char*>(a.data()), static_cast<std::streamsize>(a.size() * 8));
}

inline void get_array(std::istream& is, std::vector<double>& a, size_t n) {
    a.resize(n);
    if (!is.read(reinterpret_cast<char*>(a.data()), static_cast<std::streamsize>(n * 8))) {
        throw std::runtime_error("trace file: truncated");
    }
}

// one bit per step, LSB first
inline void put_bits(std::ostream& os, const std::vector<std::uint8_t>& bits) {
    put_u64(os, bits.size());
    std::vector<std::uint8_t> packed((bits.size() + 7) / 8, 0);
    for (size_t k = 0; k < bits.size(); ++k) {
        if (bits[k]) packed[k / 8] |= static_cast<std::uint8_t>(1u << (k % 8));
    }
    os.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
}

inline std::vector<std::uint8_t> get_bits(std::istream& is) {
    size_t steps = get_u64(is);
    std::vector<std::uint8_t> packed((steps + 7) / 8);
    if (!is.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size()))) {
        throw std::runtime_error("trace file: truncated");
    }
    std::vector<std::uint8_t> bits(steps);
    for (size_t k = 0; k < steps; ++k) bits[k] = (packed[k / 8] >> (k % 8)) & 1u;
    return bits;
}

}  // namespace treesub::binio
