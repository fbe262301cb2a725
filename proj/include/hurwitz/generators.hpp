#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hurwitz/core.hpp"

namespace hurwitz {

/// Datum Pi(k) for a triple (a,b,c) with positive chi:
/// ((a(k-d-1), a^(n/a-(k-d-1))), (b^(n/b)), (c^(n/c)), extras...), n = n(a,b,c) k / 2,
/// where d is the total defect of the extras. Throws std::invalid_argument
/// when a precondition fails.
BranchDatum gen_prop_family(int a, int b, int c, int k, const std::vector<Partition>& extras = {});

/// Named series. Parameters by name:
///   iz0  {k, l}  ((2^k),(2^k),(l,2k-l)),         l != k
///   iz   {s}     ((2^l),(3^k),(5^m,s)), n = 6(s+5), s not divisible by 5
///   such {l}     ((2^(3l+3)),(3^(2l+2)),(5^(l+1),1,l)), l even
///   thd  {k}     ((2^k),(2^(k-2),1,3),(k,k)),     k >= 2
///   wbd  {k}     ((2^k,k+3),(3^(k+1)),(3^(k+1))), k = 1 mod 4, genus 1
///   koro {k}     ((2^(3k+6)),(3^(2k+4)),(3,9,6^k)), k odd, genus 1
BranchDatum gen_series(const std::string& name, const std::vector<int>& params);

/// Names accepted by gen_series.
std::vector<std::string> series_names();

inline constexpr int kUnboundedQ = std::numeric_limits<int>::max();

/// Streams every canonical datum of degree n and genus g with at most q_max
/// partitions, ascending in q and then lexicographic in the canonical
/// partition list. Stops early when visit returns false.
void enumerate_data(int n, int g, int q_max, const std::function<bool(const BranchDatum&)>& visit);
std::vector<BranchDatum> enumerate_data(int n, int g, int q_max = kUnboundedQ);

/// All partitions of n except (1^n), in canonical (descending) order.
std::vector<Partition> nontrivial_partitions(int n);

}  // namespace hurwitz
