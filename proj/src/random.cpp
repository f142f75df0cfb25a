// SPDX-License-Identifier: Apache-2.0

#include "irsperf/random.hpp"

namespace irsperf {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t substream) noexcept
{
    // Mix the three counters through independent splitmix rounds before
    // expanding to the 256-bit state.
    std::uint64_t st = seed;
    std::uint64_t key = splitmix64(st);
    st = key ^ (trial * 0xd1b54a32d192ed03ULL);
    key = splitmix64(st);
    st = key ^ (substream * 0x8cb92ba72f3d8dd7ULL + 0x632be59bd9b4e019ULL);
    for (auto& w : s_) w = splitmix64(st);
}

RandomStream::result_type RandomStream::operator()() noexcept
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

}  // namespace irsperf
