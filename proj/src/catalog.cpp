#include "cmrun/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace cmrun {

std::vector<CatalogEntry> schur_functions() {
  std::vector<CatalogEntry> out;
  for (int i = 1; i <= 2; ++i) {
    int sign = i % 2 == 0 ? 1 : -1;
    ModifiedCharacter chi({3, CharacterKind::kronecker}, {{3, sign}});
    out.push_back({"schur_f" + std::to_string(i), CMFunction(chi), 2,
                   "Schur's classification of the length-2 functions"});
  }
  return out;
}

std::vector<CatalogEntry> hudson_functions() {
  std::vector<CatalogEntry> out;
  for (u64 q : {5ull, 7ull, 11ull, 13ull, 53ull}) {
    for (int i = 1; i <= 2; ++i) {
      int sign = i % 2 == 0 ? 1 : -1;
      ModifiedCharacter chi({q, CharacterKind::kronecker}, {{q, sign}});
      out.push_back({"hudson_f_" + std::to_string(q) + "_" + std::to_string(i),
                     CMFunction(chi), 3, "Hudson's length-3 list"});
    }
  }
  for (int i = 1; i <= 2; ++i) {
    int sign = i % 2 == 0 ? 1 : -1;
    ModifiedCharacter chi({4, CharacterKind::kronecker}, {{2, sign}});
    out.push_back({"hudson_f_4_" + std::to_string(i), CMFunction(chi), 3,
                   "Hudson's length-3 list"});
  }
  ModifiedCharacter g({2, CharacterKind::principal}, {{2, -1}});
  out.push_back({"hudson_g", CMFunction(g), 3, "Hudson's length-3 list"});
  return out;
}

CatalogEntry length4_family(u64 p0) {
  if (!is_prime(p0))
    throw std::invalid_argument("length4_family: p0 must be prime");
  if (p0 % 5 != 2)
    throw std::invalid_argument("length4_family: p0 must be 2 mod 5");
  ModifiedCharacter chi({5, CharacterKind::kronecker}, {{5, 1}});
  return {"length4_p" + std::to_string(p0), CMFunction(chi, {p0}), 4,
          "mod-5 family with one flipped prime"};
}

bool no_length1_check() {
  for (int f2 : {-1, 1}) {
    for (int f5 : {-1, 1}) {
      // f(1) = f(4) = f(9) = +1 for any completely multiplicative f
      bool pair12 = f2 == 1;
      bool pair45 = f5 == 1;
      bool pair910 = f2 * f5 == 1;
      if (!pair12 && !pair45 && !pair910) return false;
    }
  }
  return true;
}

VerifyReport verify_known_lengths(const std::vector<CatalogEntry>& entries, u64 limit,
                                  unsigned jobs) {
  if (limit < 1000)
    throw std::invalid_argument("verify_known_lengths: limit must be >= 1000");
  VerifyReport report;
  report.limit = limit;
  report.rows.resize(entries.size());

  auto check_one = [&](std::size_t i) {
    RunResult run = longest_run(entries[i].f, limit);
    LengthCheck row;
    row.name = entries[i].name;
    row.modulus = entries[i].f.modulus();
    row.claimed = entries[i].claimed_length;
    row.observed = run.length;
    row.witness = run.witness;
    row.pass = run.length == entries[i].claimed_length;
    report.rows[i] = std::move(row);
  };

  jobs = std::clamp<unsigned>(jobs, 1, 64);
  if (jobs <= 1 || entries.size() <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) check_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned j = 0; j < jobs; ++j) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1))
          check_one(i);
      });
    }
    for (auto& t : workers) t.join();
  }

  report.all_pass = true;
  for (const auto& row : report.rows) report.all_pass = report.all_pass && row.pass;
  return report;
}

std::vector<CatalogEntry> default_catalog(u64 p0) {
  std::vector<CatalogEntry> out = schur_functions();
  for (auto& e : hudson_functions()) out.push_back(std::move(e));
  out.push_back(length4_family(p0));
  return out;
}

}  // namespace cmrun
