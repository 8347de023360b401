#pragma once

#include <utility>
#include <vector>

namespace eurqm {

/// A simple r-regular spanning subgraph of the complete graph on n
/// measurements: one way of summing pairwise bounds so that every
/// measurement appears exactly r times. Indices are 0-based, each edge has
/// first < second, and edges are sorted.
struct PairCover {
    int n = 0;
    int degree = 0;
    std::vector<std::pair<int, int>> edges;
};

inline constexpr int kDefaultMaxCoverSize = 6;

/// Every r-regular spanning subgraph of K_n for all r >= 1, ordered by degree
/// then lexicographically by edge list. n = 2, 3, 4 give 1, 1 and 7 covers.
/// Throws std::invalid_argument for n < 2 or n > max_n.
std::vector<PairCover> enumerate_pair_covers(int n, int max_n = kDefaultMaxCoverSize);

/// True when `cover` is a simple regular spanning subgraph of K_n.
bool is_valid_cover(const PairCover& cover);

}  // namespace eurqm
