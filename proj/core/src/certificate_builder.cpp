#include "gdrate/certificate_builder.hpp"

#include <algorithm>

namespace gdrate {

std::vector<IndexPair> interpolation_index_set(int N) {
  if (N < 1) throw std::invalid_argument("interpolation_index_set: N must be >= 1");
  std::vector<IndexPair> set;
  for (int k = 0; k <= N - 1; ++k) {
    set.push_back({k, k + 1});
    set.push_back({k + 1, k});
    set.push_back({N, k});  // coincides with (k+1, k) at k = N-1
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  set.push_back({N, kStarIndex});
  return set;
}

}  // namespace gdrate
