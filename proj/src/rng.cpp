#include "qpiston/rng.hpp"

namespace qpiston::rng {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t key = mix64(seed + 0x9e3779b97f4a7c15ULL) ^ mix64(~stream * 0xd1342543de82ef95ULL);
  for (auto& word : s_) {
    key += 0x9e3779b97f4a7c15ULL;
    word = mix64(key);
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ (index + 0x632be59bd9b4e019ULL));
}

}  // namespace qpiston::rng
