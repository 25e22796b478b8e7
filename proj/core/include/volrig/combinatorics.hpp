#pragma once

#include <functional>
#include <vector>

namespace volrig {

/// Visit all k-element subsets of {0, ..., m-1} in lexicographic order.
inline void for_each_subset(int m, int k,
                            const std::function<void(const std::vector<int>&)>& visit) {
  if (k < 0 || k > m) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// All k-element subsets of {0, ..., m-1}, lexicographic.
inline std::vector<std::vector<int>> subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  for_each_subset(m, k, [&](const std::vector<int>& s) { out.push_back(s); });
  return out;
}

inline long long binomial(int m, int k) {
  if (k < 0 || k > m) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (m - i) / (i + 1);
  return r;
}

}  // namespace volrig
