#pragma once

#include <array>

namespace csst {

namespace detail {

template <typename Visit>
void word_map_dfs(std::vector<Letter>& letters, const PlanarSimilarity& map, std::size_t remaining,
                  const std::array<PlanarSimilarity, 3>& gens, Visit& visit) {
  if (remaining == 0) {
    visit(FiniteWord(letters), map);
    return;
  }
  for (int k = 1; k <= 3; ++k) {
    letters.push_back(static_cast<Letter>(k));
    word_map_dfs(letters, compose(map, gens[static_cast<std::size_t>(k - 1)]), remaining - 1, gens, visit);
    letters.pop_back();
  }
}

}  // namespace detail

template <typename Visit>
void for_each_word_map(std::size_t n, Visit&& visit) {
  const std::array<PlanarSimilarity, 3> gens{generator(1), generator(2), generator(3)};
  std::vector<Letter> letters;
  letters.reserve(n);
  detail::word_map_dfs(letters, identity_map(), n, gens, visit);
}

}  // namespace csst
