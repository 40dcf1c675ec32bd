#pragma once

#include "cmrun/patterns.hpp"

namespace cmrun {

/// Everything needed to re-verify an extension independently: the base
/// window, its -1 offsets J, the chosen modified primes, the congruence
/// system and the verified witness.
struct ExtensionPlan {
  ModifiedCharacter chi;
  u32 k = 0;
  WindowReport base_window;
  std::vector<u32> offsets;  // J, 1-based positions of -1 in the base window
  std::vector<u64> primes;   // P_r, one per offset
  u32 beta = 0;              // q-part congruence uses modulus q^beta
  CongruenceSystem crt;
  u64 crt_modulus = 1;
  u64 witness = 0;  // n', window {n'+1, ..., n'+k}
  bool verified = false;
};

struct ExtensionResult {
  CMFunction f;
  u64 witness = 0;
  ExtensionPlan plan;
};

struct ExtensionError : std::runtime_error {
  ExtensionError(const std::string& what, ExtensionPlan plan_)
      : std::runtime_error(what), plan(std::move(plan_)) {}
  ExtensionPlan plan;
};

/// The r smallest primes p with p > k and p not dividing q, increasing.
std::vector<u64> select_primes(u32 k, u64 q, u32 r);

struct CrtPlan {
  CongruenceSystem system;
  u32 beta = 0;
};

/// Congruence system for moving a base window at n to a window where each
/// -1 position carries its own prime to the first power:
///   n' = n (mod q^beta),  n' + a_j = p_j (mod p_j^2)  for a_j in J.
/// The second family forces valuation(n' + a_j, p_j) = 1, an odd valuation,
/// so flipping p_j turns that position positive. beta is the least exponent
/// >= 2 with q^beta > n + k, which keeps q-part valuations and the
/// coprime-to-q cofactors mod q unchanged across the window.
CrtPlan build_crt(u64 n, const std::vector<u32>& offsets, const std::vector<u64>& primes,
                  u64 q, u32 k);

/// Full pipeline: find the scanned window with the fewest -1 values, pick
/// that many primes above k, solve the congruences and return the verified
/// all-+1 window. Every base window tying the minimum is considered and the
/// least verified witness n' wins; candidates are pruned once their CRT
/// solution can no longer beat the current best, so the scan stays cheap.
/// A solution failing direct verification is advanced by the CRT modulus and
/// re-checked, up to 64 steps.
ExtensionResult extend(const ModifiedCharacter& chi, u32 k, u64 search_bound);

/// |{p in flips : p > k, p does not divide the modulus}|.
u32 jset_size(const CMFunction& f, u32 k);

}  // namespace cmrun
