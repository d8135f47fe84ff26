#include "unifit/random.hpp"

#include "unifit/sample.hpp"

namespace unifit {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index)
    : engine_(seeded_engine(seed, purpose, index)) {}

double RandomStream::normal() { return -normal_quantile(open_uniform()); }

}  // namespace unifit
