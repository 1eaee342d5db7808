#pragma once

#include <cstdint>

namespace treesub {

// Counter-based generator. Output k of stream (seed, stream) is a pure
// function of (seed, stream, k), so streams can be handed to independent
// workers and replayed in any order.
class CounterRng {
public:
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64() { return mix(key_ + (counter_++) * kGolden); }

    // uniform on the open interval (0, 1)
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal();       // ziggurat
    double exponential();  // rate 1, ziggurat

    // child stream, independent of this one
    CounterRng split(std::uint64_t sub) const;

    std::uint64_t counter() const { return counter_; }
    void set_counter(std::uint64_t c) { counter_ = c; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// 64 fair coin flips at a time, used for lattice lifetime steps
class BitSource {
public:
    explicit BitSource(CounterRng& rng) : rng_(rng) {}
    bool next() {
        if (left_ == 0) {
            word_ = rng_.next_u64();
            left_ = 64;
        }
        bool b = word_ & 1ULL;
        word_ >>= 1;
        --left_;
        return b;
    }

private:
    CounterRng& rng_;
    std::uint64_t word_ = 0;
    int left_ = 0;
};

}  // namespace treesub
