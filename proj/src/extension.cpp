#include "cmrun/extension.hpp"

#include <algorithm>
#include <optional>

namespace cmrun {

namespace {

constexpr int kRetryCap = 64;

std::vector<u32> minus_offsets(const std::vector<std::int8_t>& vals, u64 n, u32 k) {
  std::vector<u32> offsets;
  for (u32 a = 1; a <= k; ++a)
    if (vals[n + a] == -1) offsets.push_back(a);
  return offsets;
}

bool window_all_plus(const CMFunction& f, u64 witness, u32 k) {
  for (u32 a = 1; a <= k; ++a)
    if (f.eval(witness + a) != 1) return false;
  return true;
}

}  // namespace

std::vector<u64> select_primes(u32 k, u64 q, u32 r) {
  std::vector<u64> out;
  u64 candidate = k;
  while (out.size() < r) {
    ++candidate;
    if (is_prime(candidate) && q % candidate != 0) out.push_back(candidate);
  }
  return out;
}

CrtPlan build_crt(u64 n, const std::vector<u32>& offsets, const std::vector<u64>& primes,
                  u64 q, u32 k) {
  if (offsets.size() != primes.size())
    throw std::invalid_argument("build_crt: one prime per -1 offset required");
  if (q < 2) throw std::invalid_argument("build_crt: modulus must be >= 2");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (primes[i] <= k || q % primes[i] == 0)
      throw std::invalid_argument("build_crt: primes must exceed k and be coprime to q");
    if (offsets[i] == 0 || offsets[i] > k)
      throw std::invalid_argument("build_crt: offsets must lie in 1..k");
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      if (primes[i] == primes[j])
        throw std::invalid_argument("build_crt: primes must be distinct");
  }

  CrtPlan plan;
  plan.beta = 2;
  u64 q_power = checked_mul(q, q);
  while (q_power <= n + k) {
    q_power = checked_mul(q_power, q);
    ++plan.beta;
  }
  plan.system.push_back({n % q_power, q_power});
  u64 modulus = q_power;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    u64 p2 = checked_mul(primes[i], primes[i]);
    plan.system.push_back({(primes[i] - offsets[i]) % p2, p2});
    try {
      modulus = checked_mul(modulus, p2);
    } catch (const std::overflow_error&) {
      throw std::overflow_error(
          "build_crt: combined modulus exceeds 2^63; retry with a smaller search_bound or fewer modified primes");
    }
  }
  return plan;
}

ExtensionResult extend(const ModifiedCharacter& chi, u32 k, u64 search_bound) {
  if (k == 0) throw std::invalid_argument("extend: k must be positive");
  DeltaEstimate est = min_minus_window(chi, k, search_bound);
  u32 r = est.value;
  u64 q = chi.modulus();
  std::vector<u64> primes = select_primes(k, q, r);
  CMFunction f(chi, primes);
  CMFunction base_only(chi);

  auto vals = sign_table(base_only, search_bound + k);

  std::optional<ExtensionPlan> best;
  std::optional<ExtensionPlan> first_failed;

  i64 sum = 0;
  for (u32 a = 1; a <= k; ++a) sum += vals[a];
  i64 target_sum = static_cast<i64>(k) - 2 * static_cast<i64>(r);
  for (u64 n = 0; n <= search_bound; ++n) {
    if (n > 0) sum += vals[n + k] - vals[n];
    if (sum != target_sum) continue;
    if (best && n >= best->witness) break;

    ExtensionPlan plan;
    plan.chi = chi;
    plan.k = k;
    plan.offsets = minus_offsets(vals, n, k);
    plan.primes = primes;
    if (q >= 2) {
      CrtPlan crt = build_crt(n, plan.offsets, primes, q, k);
      plan.beta = crt.beta;
      plan.crt = std::move(crt.system);
    } else {
      // modulus 1: the character is identically +1, no congruence needed
      plan.beta = 0;
      plan.crt = {};
    }
    CrtSolution sol = q >= 2 ? crt_solve(plan.crt) : CrtSolution{n, 1};
    plan.crt_modulus = sol.modulus;

    if (best && sol.residue >= best->witness) continue;

    bool found = false;
    u64 candidate = sol.residue;
    for (int t = 0; t < kRetryCap; ++t) {
      if (candidate >= kValueLimit - k) break;
      if (best && candidate >= best->witness) break;
      if (window_all_plus(f, candidate, k)) {
        found = true;
        break;
      }
      if (candidate > kValueLimit - sol.modulus) break;
      candidate += sol.modulus;
    }
    plan.witness = candidate;
    plan.verified = found;
    if (found) {
      plan.base_window = sign_pattern(base_only, n, k);
      best = std::move(plan);
    } else if (!first_failed && !best) {
      plan.base_window = sign_pattern(base_only, n, k);
      first_failed = std::move(plan);
    }
  }

  if (!best) {
    if (first_failed)
      throw ExtensionError("extend: retry cap exhausted without a verified window", *first_failed);
    throw std::runtime_error("extend: no base window found within search_bound");
  }
  return {std::move(f), best->witness, *best};
}

u32 jset_size(const CMFunction& f, u32 k) {
  u32 count = 0;
  for (u64 p : f.flips())
    if (p > k && f.modulus() % p != 0) ++count;
  return count;
}

}  // namespace cmrun
