#include "eurqm/covers.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

namespace eurqm {

std::vector<PairCover> enumerate_pair_covers(int n, int max_n) {
    if (n < 2) throw std::invalid_argument("enumerate_pair_covers: need at least two measurements");
    if (n > max_n) {
        throw std::invalid_argument("enumerate_pair_covers: n = " + std::to_string(n) + " exceeds the cap of " +
                                    std::to_string(max_n) + "; raise the cover cap explicitly");
    }
    std::vector<std::pair<int, int>> all_edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
    }
    const int m = static_cast<int>(all_edges.size());
    if (m >= 63) throw std::invalid_argument("enumerate_pair_covers: too many edges");

    std::vector<PairCover> covers;
    std::vector<int> degree(n);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::fill(degree.begin(), degree.end(), 0);
        for (int e = 0; e < m; ++e) {
            if (mask >> e & 1) {
                ++degree[all_edges[e].first];
                ++degree[all_edges[e].second];
            }
        }
        if (std::adjacent_find(degree.begin(), degree.end(), std::not_equal_to<>()) != degree.end()) continue;
        PairCover c{n, degree.front(), {}};
        for (int e = 0; e < m; ++e) {
            if (mask >> e & 1) c.edges.push_back(all_edges[e]);
        }
        covers.push_back(std::move(c));
    }
    std::sort(covers.begin(), covers.end(), [](const PairCover& a, const PairCover& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.edges < b.edges;
    });
    return covers;
}

bool is_valid_cover(const PairCover& cover) {
    if (cover.n < 2 || cover.degree < 1 || cover.edges.empty()) return false;
    std::vector<int> degree(cover.n, 0);
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : cover.edges) {
        if (i < 0 || j >= cover.n || i >= j) return false;
        if (!seen.insert({i, j}).second) return false;
        ++degree[i];
        ++degree[j];
    }
    return std::all_of(degree.begin(), degree.end(), [&](int d) { return d == cover.degree; });
}

}  // namespace eurqm
