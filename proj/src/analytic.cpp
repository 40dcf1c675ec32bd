#include "cmrun/analytic.hpp"

#include "cmrun/patterns.hpp"

#include <algorithm>
#include <cmath>

namespace cmrun {

namespace {

bool effectively_principal(const RealCharacter& chi) {
  // kronecker kind collapses to the principal character for q in {1, 2}
  return chi.kind == CharacterKind::principal || chi.modulus <= 2;
}

struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

LValue l_value(const RealCharacter& chi, double tol) {
  if (tol <= 0) throw std::invalid_argument("l_value: tolerance must be positive");
  if (effectively_principal(chi))
    throw std::invalid_argument("l_value: principal character diverges at s = 1");
  u64 q = chi.modulus;
  u64 terms = static_cast<u64>(std::ceil(static_cast<double>(q) / tol));
  if (terms > 5'000'000'000ull)
    throw std::invalid_argument("l_value: tolerance too small for direct summation");
  std::vector<int> period(q);
  for (u64 r = 0; r < q; ++r) period[r] = chi.eval(r == 0 ? q : r);
  Kahan acc;
  for (u64 n = terms; n >= 1; --n) {
    int s = period[n % q];
    if (s != 0) acc.add(s / static_cast<double>(n));
  }
  return {acc.sum, static_cast<double>(q) / static_cast<double>(terms)};
}

LogMeanReport log_mean_report(const ModifiedCharacter& chi, u64 Q, double l_tol) {
  if (Q < 10) throw std::invalid_argument("log_mean_report: Q must be >= 10");
  if (effectively_principal(chi.base()))
    throw std::invalid_argument("log_mean_report: base character must be non-principal");
  LogMeanReport rep;
  rep.q = chi.modulus();
  rep.eta = chi.eta();
  rep.Q = Q;

  auto vals = sign_table(CMFunction(chi), Q);
  Kahan acc;
  for (u64 n = Q; n >= 1; --n) acc.add(vals[n] / static_cast<double>(n));
  double log_q_big = std::log(static_cast<double>(Q));
  rep.lhs = acc.sum / log_q_big;

  double euler = 1.0;
  for (const auto& [p, s] : chi.eta()) euler *= 1.0 - s / static_cast<double>(p);
  rep.rhs = euler * l_value(chi.base(), l_tol).value / log_q_big;
  rep.diff = std::abs(rep.lhs - rep.rhs);
  rep.bound_scale = static_cast<double>(rep.q) * std::pow(static_cast<double>(Q), -0.125);
  return rep;
}

double principal_mean(const ModifiedCharacter& chi) {
  if (chi.base().kind != CharacterKind::principal)
    throw std::invalid_argument("principal_mean: base character must be principal");
  double mean = 1.0;
  for (const auto& [p, s] : chi.eta())
    mean *= (1.0 - 1.0 / static_cast<double>(p)) / (1.0 - s / static_cast<double>(p));
  return mean;
}

DigitDecomposition digits_base_q(u64 k, u64 q) {
  if (k == 0) throw std::invalid_argument("digits_base_q: k must be positive");
  if (q < 2) throw std::invalid_argument("digits_base_q: base must be >= 2");
  DigitDecomposition dec;
  dec.k = k;
  dec.q = q;
  u64 level = k;
  while (level > 0) {
    dec.levels.push_back(level);
    dec.digits.push_back(static_cast<u32>(level % q));
    level /= q;
  }
  return dec;
}

int s_prime(u64 q, u32 l) {
  if (!is_prime(q) || q % 2 == 0)
    throw std::invalid_argument("s_prime: q must be an odd prime");
  if (l >= q) throw std::invalid_argument("s_prime: l must satisfy 0 <= l < q");
  RealCharacter chi{q, CharacterKind::kronecker};
  int best = 0;
  bool first = true;
  for (u64 n = q - l; n <= q; ++n) {
    int sum = 0;
    for (u32 m = 0; m <= l; ++m) sum += chi.eval(n + m);
    if (first || sum > best) best = sum;
    first = false;
  }
  return best;
}

i64 delta_prime_twice(u64 q, u32 l) { return static_cast<i64>(l) - s_prime(q, l); }

DigitBound digit_lower_bound(u64 q, u64 k, u64 search_bound) {
  if (!is_prime(q) || q % 2 == 0)
    throw std::invalid_argument("digit_lower_bound: q must be an odd prime");
  if (q >= k)
    throw std::invalid_argument("digit_lower_bound: requires q < k");

  DigitBound out;
  out.q = q;
  out.k = k;
  out.decomposition = digits_base_q(k, q);
  const auto& digits = out.decomposition.digits;
  const auto& levels = out.decomposition.levels;
  std::size_t nu = digits.size() - 1;

  i64 complete_rows_twice = 0;  // (q-1) * sum_{i>=1} k_i, counted twice-over-two
  for (std::size_t i = 1; i <= nu; ++i)
    complete_rows_twice += static_cast<i64>(q - 1) * static_cast<i64>(levels[i]);

  i64 digit_sum = 0;
  for (u32 a : digits) digit_sum += a;
  i64 s_prime_sum = 0;
  for (std::size_t i = 0; i < nu; ++i) s_prime_sum += s_prime(q, digits[i]);

  i64 s_last;
  if (q == 3) {
    // S_3(1) = 1 and S_3(2) = 2 exactly: the window {1} and, for either eta
    // sign, an explicit ++ window ({3,4} for eta = +1, {9,10} for eta = -1)
    // meet the trivial cap S_3(l) <= l.
    s_last = digits[nu];
    out.certified = true;
    i64 floor_log = static_cast<i64>(nu);
    out.closed_form_twice = static_cast<i64>(k) - (floor_log + 2);
  } else {
    // Scanned estimate of S_q(a_nu); a finite scan only bounds the true
    // maximum from below, so the chain value is not certified here. Take the
    // larger estimate across both eta signs to stay on the safe side.
    u32 last = digits[nu];
    s_last = -static_cast<i64>(last);
    for (int sign : {-1, +1}) {
      ModifiedCharacter chi({q, CharacterKind::kronecker}, {{q, sign}});
      DeltaEstimate est = min_minus_window(chi, last, std::max<u64>(search_bound, last));
      i64 s_est = static_cast<i64>(last) - 2 * static_cast<i64>(est.value);
      s_last = std::max(s_last, s_est);
    }
    out.certified = false;
  }

  out.chain_twice = complete_rows_twice + (digit_sum - s_prime_sum - s_last);
  return out;
}

}  // namespace cmrun
