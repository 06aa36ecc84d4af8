#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <vector>

#include "sdr/bounds.hpp"
#include "sdr/errors.hpp"

using namespace sdr;

TEST_CASE("binomial against a Pascal triangle") {
  const int N = 40;
  std::vector<std::vector<BigInt>> pascal(N + 1);
  for (int n = 0; n <= N; ++n) {
    pascal[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k)
      pascal[static_cast<size_t>(n)][static_cast<size_t>(k)] =
          pascal[static_cast<size_t>(n - 1)][static_cast<size_t>(k - 1)] +
          pascal[static_cast<size_t>(n - 1)][static_cast<size_t>(k)];
  }
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(binomial(n, k) == pascal[static_cast<size_t>(n)][static_cast<size_t>(k)]);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
}

TEST_CASE("fixed bound values") {
  CHECK(bound_M(2, 2, 1).integer_upper_bound == 12);
  CHECK(bound_M(2, 2, 2).integer_upper_bound == 24);
  CHECK(bound_M(2, 2, 1).exact_exponent == Rat(1));
  for (long long n = 1; n <= 6; ++n) {
    BoundReport rep = bound_N(n, 1);
    CHECK(rep.integer_upper_bound == n);  // k = 1: no crossings, exponent 0
    CHECK(rep.formula_name == "N(n,k)");
  }
  CHECK(bound_N(2, 2).integer_upper_bound == 12);
  CHECK(few_lines_threshold(5, 2) == 7);
  CHECK(few_lines_threshold(2, 1) == 2);
  CHECK_THROWS_AS(few_lines_threshold(3, 3), PreconditionError);
  CHECK_THROWS_AS(bound_M(0, 2, 1), PreconditionError);
}

TEST_CASE("bound_M is monotone in each argument") {
  for (long long n = 1; n <= 6; ++n)
    for (long long k = 1; k <= 4; ++k)
      for (long long t = 1; t <= 3; ++t) {
        BigInt here = bound_M(n, k, t).integer_upper_bound;
        CHECK(bound_M(n + 1, k, t).integer_upper_bound >= here);
        CHECK(bound_M(n, k + 1, t).integer_upper_bound >= here);
        CHECK(bound_M(n, k, t + 1).integer_upper_bound >= here);
      }
}

namespace {

void for_each_composition(long long n, long long k, std::vector<long long>& acc,
                          const std::function<void(const std::vector<long long>&)>& fn) {
  if (static_cast<long long>(acc.size()) == k - 1) {
    long long used = 0;
    for (long long v : acc) used += v;
    acc.push_back(n - used);
    fn(acc);
    acc.pop_back();
    return;
  }
  long long used = 0;
  for (long long v : acc) used += v;
  for (long long v = 0; v <= n - used; ++v) {
    acc.push_back(v);
    for_each_composition(n, k, acc, fn);
    acc.pop_back();
  }
}

}  // namespace

TEST_CASE("exact crossing count never exceeds the Jensen bound") {
  for (long long n = 1; n <= 8; ++n)
    for (long long k = 1; k <= 4; ++k)
      for (long long t = 1; t <= 3; ++t) {
        std::vector<long long> acc;
        for_each_composition(n, k, acc, [&](const std::vector<long long>& comp) {
          IntersectionCountBound b = intersection_count_bound(comp, t);
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(t);
          REQUIRE(Rat(b.exact) <= b.jensen);
        });
      }
}

TEST_CASE("jensen bound is tight at balanced compositions") {
  // k parts of n/k each: the convexity argument holds with equality
  for (long long k = 1; k <= 4; ++k) {
    long long n = 4 * k;
    std::vector<long long> comp(static_cast<size_t>(k), n / k);
    IntersectionCountBound b = intersection_count_bound(comp, 2);
    CHECK(Rat(b.exact) == b.jensen);
  }
}
