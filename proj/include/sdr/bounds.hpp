#pragma once

#include <string>
#include <vector>

#include "sdr/rational.hpp"

namespace sdr {

struct BoundReport {
  std::string formula_name;
  Rat exact_exponent;          // exponent of k before rounding
  BigInt integer_upper_bound;  // valid upper bound after ceiling the exponent
};

BigInt binomial(long long n, long long k);

// C(n+k-1, k-1) * n * k^ceil(t(k-1)^3 n^4 / (2 k^3)).
BoundReport bound_M(long long n, long long k, long long t);

// bound_M with t = 1.
BoundReport bound_N(long long n, long long k);

// m(n-m)+1, the line-count threshold forcing an SDR of size n.
long long few_lines_threshold(long long n, long long m);

struct IntersectionCountBound {
  BigInt exact;  // t * sum_{i<j} n_i(n-n_i) n_j(n-n_j)
  Rat jensen;    // t (k-1)^3 n^4 / (2 k^3); exact <= jensen always
};

IntersectionCountBound intersection_count_bound(const std::vector<long long>& composition,
                                                long long t);

}  // namespace sdr
