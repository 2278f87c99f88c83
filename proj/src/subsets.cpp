#include "tpflow/subsets.hpp"

#include <stdexcept>

namespace tpflow {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

std::vector<Subset> k_subsets(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  out.reserve(static_cast<size_t>(binomial(n, k)));
  Subset s(k);
  for (int i = 0; i < k; ++i) s[i] = i + 1;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  if (k == 0) out.assign(1, Subset{});
  return out;
}

long long subset_rank(int n, const Subset& s) {
  const int k = static_cast<int>(s.size());
  long long rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < s[i]; ++v) rank += binomial(n - v, k - i - 1);
    prev = s[i];
  }
  return rank;
}

Subset subset_unrank(int n, int k, long long rank) {
  Subset s;
  s.reserve(k);
  int v = 1;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const long long c = binomial(n - v, k - i - 1);
      if (rank < c) break;
      rank -= c;
      ++v;
    }
    s.push_back(v);
    ++v;
  }
  return s;
}

std::string subset_key(const Subset& s) {
  std::string key;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(s[i]);
  }
  return key;
}

Subset subset_from_key(int n, const std::string& key) {
  Subset s;
  size_t pos = 0;
  while (pos < key.size()) {
    size_t next = key.find(',', pos);
    if (next == std::string::npos) next = key.size();
    const std::string tok = key.substr(pos, next - pos);
    try {
      size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      s.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad subset key \"" + key + "\": token \"" + tok + "\"");
    }
    pos = next + 1;
  }
  if (s.empty()) throw std::invalid_argument("bad subset key \"" + key + "\": empty");
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > n)
      throw std::invalid_argument("bad subset key \"" + key + "\": label out of range");
    if (i > 0 && s[i] <= s[i - 1])
      throw std::invalid_argument("bad subset key \"" + key + "\": labels must be strictly increasing");
  }
  return s;
}

}  // namespace tpflow
