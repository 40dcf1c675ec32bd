#pragma once

#include "cmrun/patterns.hpp"

#include <string>

namespace cmrun {

struct CatalogEntry {
  std::string name;
  CMFunction f;
  u32 claimed_length = 0;
  std::string source;
};

/// The two functions of length exactly 2: the Kronecker character mod 3 with
/// either sign at 3 (Schur's classification).
std::vector<CatalogEntry> schur_functions();

/// The thirteen functions of length exactly 3 (Hudson's list): Kronecker
/// characters mod q in {5, 7, 11, 13, 53} and mod 4 with either sign at the
/// modulus prime, plus the principal character mod 2 with -1 at 2.
std::vector<CatalogEntry> hudson_functions();

/// A length-4 function for each prime p0 = 2 (mod 5): the Kronecker
/// character mod 5 with +1 at 5 and the value at p0 flipped. Distinct p0
/// give distinct functions, so the family is infinite.
CatalogEntry length4_family(u64 p0);

/// No function has length 1: for every choice of f(2), f(5), one of the
/// pairs (1,2), (4,5), (9,10) is (+1,+1). Checked by exhausting all four
/// sign assignments.
bool no_length1_check();

struct LengthCheck {
  std::string name;
  u64 modulus = 0;
  u32 claimed = 0;
  u32 observed = 0;
  u64 witness = 0;
  bool pass = false;
};

struct VerifyReport {
  u64 limit = 0;
  std::vector<LengthCheck> rows;
  bool all_pass = false;
};

/// Scans [1, limit] for each entry: a run of the claimed length must appear,
/// and no longer run may appear. The absence of a longer run is evidence
/// bounded by the scan limit, not a proof; limit is stamped on the report.
VerifyReport verify_known_lengths(const std::vector<CatalogEntry>& entries, u64 limit,
                                  unsigned jobs = 1);

/// 2 Schur + 13 Hudson + length4_family(p0): the 16 entries checked by the
/// command line verifier.
std::vector<CatalogEntry> default_catalog(u64 p0 = 7);

}  // namespace cmrun
