#include "cmrun/patterns.hpp"

#include <algorithm>
#include <thread>

namespace cmrun {

namespace {

constexpr u64 kScanLimit = 100'000'000;

WindowReport report_from_table(const std::vector<std::int8_t>& vals, u64 n, u32 k) {
  WindowReport w;
  w.start = n;
  w.k = k;
  w.pattern.reserve(k);
  i64 sum = 0;
  for (u32 a = 1; a <= k; ++a) {
    int s = vals[n + a];
    w.pattern.push_back(s);
    sum += s;
  }
  w.window_sum = sum;
  w.minus_count = static_cast<u32>((k - sum) / 2);
  return w;
}

struct ChunkBest {
  i64 best_sum;
  u64 best_n;
};

// Best window (max sum, then least n) with start in [lo, hi].
ChunkBest scan_chunk(const std::vector<std::int8_t>& vals, u32 k, u64 lo, u64 hi) {
  i64 sum = 0;
  for (u32 a = 1; a <= k; ++a) sum += vals[lo + a];
  ChunkBest best{sum, lo};
  for (u64 n = lo + 1; n <= hi; ++n) {
    sum += vals[n + k] - vals[n];
    if (sum > best.best_sum) best = {sum, n};
  }
  return best;
}

}  // namespace

u64 default_search_bound(u64 q) {
  u64 bound = 1'000'000;
  if (q < 100'000) bound = std::max(bound, q * q * q);
  return std::min(bound, kScanLimit - 64);
}

std::vector<std::int8_t> sign_table(const CMFunction& f, u64 limit) {
  if (limit < 1) throw std::invalid_argument("sign_table: limit must be positive");
  if (limit > kScanLimit)
    throw std::invalid_argument("sign_table: limit above 1e8 is unsupported");
  std::vector<std::int8_t> vals(limit + 1, 1);
  vals[0] = 0;
  for (u64 p : primes_upto(limit)) {
    if (f.eval_at_prime(p) == 1) continue;
    // one flip pass per prime power keeps the table exact at every valuation
    for (u64 pe = p;;) {
      for (u64 m = pe; m <= limit; m += pe) vals[m] = static_cast<std::int8_t>(-vals[m]);
      if (pe > limit / p) break;
      pe *= p;
    }
  }
  return vals;
}

WindowReport sign_pattern(const CMFunction& f, u64 n, u32 k) {
  if (k == 0) throw std::invalid_argument("sign_pattern: k must be positive");
  if (n >= kValueLimit - k)
    throw std::overflow_error("sign_pattern: window exceeds the 2^63 value limit");
  WindowReport w;
  w.start = n;
  w.k = k;
  w.pattern.reserve(k);
  i64 sum = 0;
  for (u32 a = 1; a <= k; ++a) {
    int s = f.eval(n + a);
    w.pattern.push_back(s);
    sum += s;
  }
  w.window_sum = sum;
  w.minus_count = static_cast<u32>((k - sum) / 2);
  return w;
}

RunResult longest_run(const CMFunction& f, u64 limit) {
  if (limit < 2) throw std::invalid_argument("longest_run: limit must be >= 2");
  auto vals = sign_table(f, limit);
  RunResult best{0, 0};
  u64 run_start = 0;
  u32 run_len = 0;
  for (u64 n = 1; n <= limit; ++n) {
    if (vals[n] == 1) {
      if (run_len == 0) run_start = n;
      ++run_len;
      if (run_len > best.length) best = {run_len, run_start - 1};
    } else {
      run_len = 0;
    }
  }
  return best;
}

DeltaEstimate min_minus_window(const ModifiedCharacter& chi, u32 k, u64 search_bound,
                               unsigned jobs) {
  if (k == 0) throw std::invalid_argument("min_minus_window: k must be positive");
  if (search_bound < k)
    throw std::invalid_argument("min_minus_window: search_bound must be >= k");
  CMFunction f(chi);
  auto vals = sign_table(f, search_bound + k);

  jobs = std::clamp<unsigned>(jobs, 1, 256);
  u64 total = search_bound + 1;
  if (jobs > total) jobs = static_cast<unsigned>(total);
  std::vector<ChunkBest> parts(jobs);
  if (jobs == 1) {
    parts[0] = scan_chunk(vals, k, 0, search_bound);
  } else {
    std::vector<std::thread> workers;
    u64 chunk = total / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      u64 lo = j * chunk;
      u64 hi = (j + 1 == jobs) ? search_bound : (j + 1) * chunk - 1;
      workers.emplace_back([&, j, lo, hi] { parts[j] = scan_chunk(vals, k, lo, hi); });
    }
    for (auto& t : workers) t.join();
  }
  ChunkBest best = parts[0];
  for (unsigned j = 1; j < jobs; ++j) {
    if (parts[j].best_sum > best.best_sum ||
        (parts[j].best_sum == best.best_sum && parts[j].best_n < best.best_n))
      best = parts[j];
  }

  DeltaEstimate est;
  est.q = chi.modulus();
  est.k = k;
  est.search_bound = search_bound;
  est.best_window = report_from_table(vals, best.best_n, k);
  est.value = est.best_window.minus_count;
  return est;
}

}  // namespace cmrun
