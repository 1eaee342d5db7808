#include "treesub/rng.hpp"

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace treesub {

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    key_ = mix(mix(seed ^ 0x6a09e667f3bcc908ULL) + stream * kGolden + 0x3c6ef372fe94f82bULL);
}

double CounterRng::normal() { return boost::random::normal_distribution<double>()(*this); }

double CounterRng::exponential() {
    return boost::random::exponential_distribution<double>()(*this);
}

CounterRng CounterRng::split(std::uint64_t sub) const {
    return CounterRng(mix(seed_ + 0xa54ff53a5f1d36f1ULL) ^ mix(stream_ + 1), sub);
}

}  // namespace treesub
