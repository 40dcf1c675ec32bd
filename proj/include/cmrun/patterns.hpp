#pragma once

#include "cmrun/characters.hpp"

#include <cstdint>
#include <vector>

namespace cmrun {

/// Sign pattern of f on the window {n+1, ..., n+k} together with the derived
/// counts. Always satisfies k - 2 * minus_count == window_sum.
struct WindowReport {
  u64 start = 0;  // window is {start+1, ..., start+k}
  u32 k = 0;
  std::vector<int> pattern;  // entries in {-1, +1}
  u32 minus_count = 0;
  i64 window_sum = 0;
};

struct RunResult {
  u32 length = 0;
  u64 witness = 0;  // least n with {n+1, ..., n+length} all +1
};

/// Upper-bound estimate of delta_q(k): the scan covers only n in
/// [0, search_bound], so `value` bounds the true minimum from above.
struct DeltaEstimate {
  u64 q = 0;
  u32 k = 0;
  WindowReport best_window;
  u64 search_bound = 0;
  u32 value = 0;  // = best_window.minus_count
};

/// Values f(1), ..., f(limit) as one table (index 0 unused). Built with one
/// pass per prime whose value is -1, so a full table at 1e7 costs tens of
/// milliseconds. limit is capped at 1e8.
std::vector<std::int8_t> sign_table(const CMFunction& f, u64 limit);

/// Exact evaluation of f on {n+1, ..., n+k}.
WindowReport sign_pattern(const CMFunction& f, u64 n, u32 k);

/// Longest all-+1 run inside [1, limit] with its least witness. This is a
/// lower bound on the function's true length.
RunResult longest_run(const CMFunction& f, u64 limit);

/// Scans n in [0, search_bound] for the length-k window with the fewest -1
/// values of the modified character; ties resolve to the least n. With
/// jobs > 1 the range is partitioned and merged by (min minus_count, min n),
/// which reproduces the serial result exactly.
DeltaEstimate min_minus_window(const ModifiedCharacter& chi, u32 k, u64 search_bound,
                               unsigned jobs = 1);

/// Default scan bound: max(1e6, q^3), saturating at the sign_table cap.
u64 default_search_bound(u64 q);

}  // namespace cmrun
