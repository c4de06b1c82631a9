#include "fakerev/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <string_view>
#include <vector>

namespace fakerev {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FAKEREV_WORKERS")) {
    std::string_view text(env);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
  }
  return omp_get_max_threads();
}

std::mt19937_64 derive_engine(std::uint64_t root_seed, std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (path.size() + 1));
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(root_seed);
  for (auto v : path) push(v);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace fakerev
