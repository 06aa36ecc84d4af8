#include "sdr/bounds.hpp"

#include "sdr/errors.hpp"

namespace sdr {

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace {

BigInt ceil_rational(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (q * denominator(r) < numerator(r)) ++q;
  return q;
}

BigInt pow_big(long long base, const BigInt& exp) {
  BigInt r = 1, b = base, e = exp;
  while (e > 0) {
    if ((e & 1) != 0) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace

BoundReport bound_M(long long n, long long k, long long t) {
  if (n < 1 || k < 1 || t < 1) throw PreconditionError("bound_M needs n, k, t >= 1");
  BoundReport rep;
  rep.formula_name = "M(n,k,t)";
  rep.exact_exponent = Rat(BigInt(t) * BigInt(k - 1) * (k - 1) * (k - 1) * BigInt(n) * n * n * n,
                           2 * BigInt(k) * k * k);
  BigInt e = ceil_rational(rep.exact_exponent);
  rep.integer_upper_bound = binomial(n + k - 1, k - 1) * n * pow_big(k, e);
  return rep;
}

BoundReport bound_N(long long n, long long k) {
  BoundReport rep = bound_M(n, k, 1);
  rep.formula_name = "N(n,k)";
  return rep;
}

long long few_lines_threshold(long long n, long long m) {
  if (m < 1 || m >= n) throw PreconditionError("few_lines_threshold needs 1 <= m < n");
  return m * (n - m) + 1;
}

IntersectionCountBound intersection_count_bound(const std::vector<long long>& composition,
                                                long long t) {
  long long k = static_cast<long long>(composition.size());
  if (k < 1 || t < 1) throw PreconditionError("composition must be nonempty and t >= 1");
  long long n = 0;
  for (long long c : composition) {
    if (c < 0) throw PreconditionError("composition entries must be nonnegative");
    n += c;
  }
  IntersectionCountBound out;
  BigInt sum = 0;
  for (size_t i = 0; i < composition.size(); ++i)
    for (size_t j = i + 1; j < composition.size(); ++j)
      sum += BigInt(composition[i]) * (n - composition[i]) * composition[j] *
             (n - composition[j]);
  out.exact = BigInt(t) * sum;
  out.jensen = Rat(BigInt(t) * BigInt(k - 1) * (k - 1) * (k - 1) * BigInt(n) * n * n * n,
                   2 * BigInt(k) * k * k);
  return out;
}

}  // namespace sdr
