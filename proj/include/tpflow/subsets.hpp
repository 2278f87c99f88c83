#pragma once

#include <string>
#include <vector>

namespace tpflow {

/// Sorted k-element subset of [n] = {1, ..., n}, the index type for Plücker
/// coordinates and the big electrical vectors. Lexicographic rank doubles as
/// the storage offset.
using Subset = std::vector<int>;

long long binomial(int n, int k);

/// All k-subsets of [n] in lexicographic order.
std::vector<Subset> k_subsets(int n, int k);

long long subset_rank(int n, const Subset& s);
Subset subset_unrank(int n, int k, long long rank);

std::string subset_key(const Subset& s);  // "1,3,4"

/// Parses "1,3,4". Rejects unsorted, repeated, or out-of-range labels with a
/// message naming the key.
Subset subset_from_key(int n, const std::string& key);

}  // namespace tpflow
