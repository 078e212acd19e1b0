#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace alae {

// Induced-sorting suffix array. `text` must end with a unique 0 that is
// smaller than every other symbol; all symbols lie in [0, alphabet_size).
std::vector<std::int32_t> build_suffix_array(std::span<const std::int32_t> text, std::int32_t alphabet_size);

}  // namespace alae
