#include "cmrun/cli.hpp"

#include "cmrun/analytic.hpp"
#include "cmrun/catalog.hpp"
#include "cmrun/extension.hpp"
#include "cmrun/spec_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cmrun::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt_half(i64 twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  std::ostringstream os;
  os << (twice / 2.0);
  return os.str();
}

std::string eta_text(const std::map<u64, int>& eta) {
  std::string out;
  for (const auto& [p, s] : eta) {
    if (!out.empty()) out += ';';
    out += std::to_string(p) + "=" + (s > 0 ? "+1" : "-1");
  }
  return out;
}

std::string join_u64(const std::vector<u64>& xs, char sep = ';') {
  std::string out;
  for (u64 x : xs) {
    if (!out.empty()) out += sep;
    out += std::to_string(x);
  }
  return out;
}

std::string pattern_text(const std::vector<int>& pattern) {
  std::string out;
  for (int s : pattern) {
    if (!out.empty()) out += ' ';
    out += s > 0 ? '+' : '-';
  }
  return out;
}

struct FunctionOpts {
  u64 q = 0;
  std::string kind = "kronecker";
  std::vector<std::string> eta;
  std::vector<u64> flips;
  std::string spec_path;
};

void add_function_opts(CLI::App* cmd, FunctionOpts& o, bool with_flips) {
  cmd->add_option("--q", o.q, "modulus of the base character");
  cmd->add_option("--kind", o.kind, "character kind: kronecker (default) or principal")
      ->check(CLI::IsMember({"kronecker", "principal"}));
  cmd->add_option("--eta", o.eta, "sign at a prime dividing q, as p=+1 or p=-1 (repeatable)");
  if (with_flips)
    cmd->add_option("--flip", o.flips, "flipped prime (repeatable)");
  cmd->add_option("--spec", o.spec_path, "function-spec file; supersedes inline flags");
}

CMFunction resolve_function(const FunctionOpts& o) {
  if (!o.spec_path.empty()) {
    std::ifstream in(o.spec_path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + o.spec_path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_function_spec(text.str());
  }
  if (o.q == 0) throw std::invalid_argument("either --q or --spec is required");
  std::map<u64, int> eta;
  for (const std::string& item : o.eta) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--eta expects p=+1 or p=-1, got: " + item);
    u64 p = 0;
    int s = 0;
    try {
      p = std::stoull(item.substr(0, eq));
      s = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("--eta expects p=+1 or p=-1, got: " + item);
    }
    if (s != 1 && s != -1)
      throw std::invalid_argument("--eta sign must be +1 or -1, got: " + item);
    eta[p] = s;
  }
  CharacterKind kind =
      o.kind == "principal" ? CharacterKind::principal : CharacterKind::kronecker;
  return CMFunction(ModifiedCharacter({o.q, kind}, std::move(eta)), o.flips);
}

ModifiedCharacter resolve_character(const FunctionOpts& o) {
  CMFunction f = resolve_function(o);
  if (!f.flips().empty())
    throw std::invalid_argument("this command operates on a modified character; remove flips");
  return f.chi();
}

struct KeyValueTable {
  std::vector<std::pair<std::string, std::string>> rows;
  void add(const std::string& k, const std::string& v) { rows.emplace_back(k, v); }
  void print(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows)
      out << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  }
};

void print_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << "\n";
}

ordered_json spec_json(const CMFunction& f) {
  return ordered_json::parse(serialize_function_spec(f));
}

// ---- delta ----------------------------------------------------------------

int cmd_delta(const FunctionOpts& fo, u32 k, u64 bound, unsigned jobs,
              const std::string& format, std::ostream& out) {
  ModifiedCharacter chi = resolve_character(fo);
  u64 effective = bound ? bound : default_search_bound(chi.modulus());
  DeltaEstimate est = min_minus_window(chi, k, effective, jobs);

  if (format == "json") {
    ordered_json doc;
    doc["q"] = est.q;
    doc["kind"] = chi.base().kind == CharacterKind::principal ? "principal" : "kronecker";
    ordered_json eta = ordered_json::object();
    for (const auto& [p, s] : chi.eta()) eta[std::to_string(p)] = s;
    doc["eta"] = std::move(eta);
    doc["k"] = est.k;
    doc["search_bound"] = est.search_bound;
    doc["value"] = est.value;
    doc["witness"] = est.best_window.start;
    doc["window_sum"] = est.best_window.window_sum;
    doc["minus_count"] = est.best_window.minus_count;
    doc["pattern"] = est.best_window.pattern;
    out << doc.dump(2) << "\n";
  } else if (format == "csv") {
    print_csv_row(out, {"q", "kind", "eta", "k", "search_bound", "value", "witness",
                        "window_sum"});
    print_csv_row(out, {std::to_string(est.q),
                        chi.base().kind == CharacterKind::principal ? "principal" : "kronecker",
                        eta_text(chi.eta()), std::to_string(est.k),
                        std::to_string(est.search_bound), std::to_string(est.value),
                        std::to_string(est.best_window.start),
                        std::to_string(est.best_window.window_sum)});
  } else {
    KeyValueTable t;
    t.add("q", std::to_string(est.q));
    t.add("eta", eta_text(chi.eta()));
    t.add("k", std::to_string(est.k));
    t.add("search_bound", std::to_string(est.search_bound));
    t.add("value", std::to_string(est.value));
    t.add("witness", std::to_string(est.best_window.start));
    t.add("pattern", pattern_text(est.best_window.pattern));
    t.add("window_sum", std::to_string(est.best_window.window_sum));
    t.print(out);
  }
  return 0;
}

// ---- extend ---------------------------------------------------------------

int cmd_extend(const FunctionOpts& fo, u32 k, u64 bound, const std::string& format,
               const std::string& out_path, std::ostream& out) {
  ModifiedCharacter chi = resolve_character(fo);
  u64 effective = bound ? bound : default_search_bound(chi.modulus());
  ExtensionResult res = extend(chi, k, effective);
  std::string cert = serialize_certificate(res.plan);

  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot write certificate file: " + out_path);
    f << cert;
  }

  if (format == "json") {
    out << cert;
  } else if (format == "csv") {
    print_csv_row(out, {"q", "eta", "k", "search_bound", "base_window_start", "offsets_J",
                        "primes", "beta", "crt_modulus", "witness"});
    std::vector<u64> offs(res.plan.offsets.begin(), res.plan.offsets.end());
    print_csv_row(out, {std::to_string(chi.modulus()), eta_text(chi.eta()),
                        std::to_string(k), std::to_string(effective),
                        std::to_string(res.plan.base_window.start), join_u64(offs),
                        join_u64(res.plan.primes), std::to_string(res.plan.beta),
                        std::to_string(res.plan.crt_modulus), std::to_string(res.witness)});
  } else {
    KeyValueTable t;
    t.add("q", std::to_string(chi.modulus()));
    t.add("eta", eta_text(chi.eta()));
    t.add("k", std::to_string(k));
    t.add("base_window_start", std::to_string(res.plan.base_window.start));
    t.add("base_pattern", pattern_text(res.plan.base_window.pattern));
    std::vector<u64> offs(res.plan.offsets.begin(), res.plan.offsets.end());
    t.add("offsets_J", offs.empty() ? "(none)" : join_u64(offs, ' '));
    t.add("primes", res.plan.primes.empty() ? "(none)" : join_u64(res.plan.primes, ' '));
    t.add("beta", std::to_string(res.plan.beta));
    t.add("crt_modulus", std::to_string(res.plan.crt_modulus));
    t.add("witness", std::to_string(res.witness));
    t.add("window", "{" + std::to_string(res.witness + 1) + ", ..., " +
                        std::to_string(res.witness + k) + "}");
    t.add("verified", res.plan.verified ? "yes" : "no");
    t.print(out);
  }
  return res.plan.verified ? 0 : 1;
}

// ---- scan -----------------------------------------------------------------

int cmd_scan(const FunctionOpts& fo, u64 limit, const std::string& format,
             std::ostream& out) {
  CMFunction f = resolve_function(fo);
  RunResult run = longest_run(f, limit);
  if (format == "json") {
    ordered_json doc;
    doc["spec"] = spec_json(f);
    doc["limit"] = limit;
    doc["length"] = run.length;
    doc["witness"] = run.witness;
    out << doc.dump(2) << "\n";
  } else if (format == "csv") {
    print_csv_row(out, {"modulus", "limit", "length", "witness"});
    print_csv_row(out, {std::to_string(f.modulus()), std::to_string(limit),
                        std::to_string(run.length), std::to_string(run.witness)});
  } else {
    KeyValueTable t;
    t.add("modulus", std::to_string(f.modulus()));
    t.add("flips", f.flips().empty() ? "(none)" : join_u64(f.flips(), ' '));
    t.add("limit", std::to_string(limit));
    t.add("length", std::to_string(run.length));
    t.add("witness", std::to_string(run.witness));
    t.add("window", "{" + std::to_string(run.witness + 1) + ", ..., " +
                        std::to_string(run.witness + run.length) + "}");
    t.add("note", "longest run found within [1, limit]; a longer run may exist beyond it");
    t.print(out);
  }
  return 0;
}

// ---- lmean ----------------------------------------------------------------

int cmd_lmean(const FunctionOpts& fo, std::vector<u64> qs, double tol,
              const std::string& format, std::ostream& out) {
  ModifiedCharacter chi = resolve_character(fo);
  if (qs.empty()) qs = {10'000, 100'000, 1'000'000, 10'000'000};
  std::vector<LogMeanReport> reports;
  for (u64 Q : qs) reports.push_back(log_mean_report(chi, Q, tol));

  if (format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& r : reports) {
      ordered_json doc;
      doc["q"] = r.q;
      doc["eta"] = eta_text(r.eta);
      doc["Q"] = r.Q;
      doc["lhs"] = r.lhs;
      doc["rhs"] = r.rhs;
      doc["diff"] = r.diff;
      doc["bound_scale"] = r.bound_scale;
      doc["ratio"] = r.diff / r.bound_scale;
      rows.push_back(std::move(doc));
    }
    out << rows.dump(2) << "\n";
  } else {
    print_csv_row(out, {"q", "eta", "Q", "lhs", "rhs", "diff", "bound_scale", "ratio"});
    for (const auto& r : reports)
      print_csv_row(out, {std::to_string(r.q), eta_text(r.eta), std::to_string(r.Q),
                          fmt_real(r.lhs), fmt_real(r.rhs), fmt_real(r.diff),
                          fmt_real(r.bound_scale), fmt_real(r.diff / r.bound_scale)});
  }
  return 0;
}

// ---- lower-bound ----------------------------------------------------------

int cmd_lower_bound(u64 q, u64 k, u64 bound, const std::string& format,
                    std::ostream& out) {
  DigitBound b = digit_lower_bound(q, k, bound ? bound : 1'000'000);
  if (format == "json") {
    ordered_json doc;
    doc["q"] = b.q;
    doc["k"] = b.k;
    doc["digits"] = b.decomposition.digits;
    doc["levels"] = b.decomposition.levels;
    doc["chain_twice"] = b.chain_twice;
    doc["chain"] = fmt_half(b.chain_twice);
    if (b.closed_form_twice) {
      doc["closed_form_twice"] = *b.closed_form_twice;
      doc["closed_form"] = fmt_half(*b.closed_form_twice);
    }
    doc["certified"] = b.certified;
    out << doc.dump(2) << "\n";
  } else if (format == "csv") {
    print_csv_row(out, {"q", "k", "chain", "closed_form", "certified"});
    print_csv_row(out, {std::to_string(b.q), std::to_string(b.k), fmt_half(b.chain_twice),
                        b.closed_form_twice ? fmt_half(*b.closed_form_twice) : "",
                        b.certified ? "yes" : "no"});
  } else {
    KeyValueTable t;
    t.add("q", std::to_string(b.q));
    t.add("k", std::to_string(b.k));
    std::vector<u64> dg(b.decomposition.digits.begin(), b.decomposition.digits.end());
    t.add("digits", join_u64(dg, ' '));
    t.add("levels", join_u64(b.decomposition.levels, ' '));
    t.add("chain_bound", fmt_half(b.chain_twice));
    if (b.closed_form_twice) t.add("closed_form", fmt_half(*b.closed_form_twice));
    t.add("certified", b.certified ? "yes" : "no (last-level term is a scanned estimate)");
    t.print(out);
  }
  return 0;
}

// ---- verify-catalog -------------------------------------------------------

int cmd_verify_catalog(u64 limit, u64 p0, unsigned jobs, const std::string& format,
                       std::ostream& out) {
  VerifyReport report = verify_known_lengths(default_catalog(p0), limit, jobs);
  if (format == "json") {
    ordered_json doc;
    doc["limit"] = report.limit;
    doc["note"] = "run lengths are verified by scan; absence of a longer run is "
                  "evidence bounded by the scan limit";
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
      rows.push_back(ordered_json{{"name", r.name},
                                  {"modulus", r.modulus},
                                  {"claimed", r.claimed},
                                  {"observed", r.observed},
                                  {"witness", r.witness},
                                  {"pass", r.pass}});
    }
    doc["rows"] = std::move(rows);
    doc["all_pass"] = report.all_pass;
    out << doc.dump(2) << "\n";
  } else if (format == "csv") {
    print_csv_row(out, {"name", "modulus", "claimed", "observed", "witness", "pass"});
    for (const auto& r : report.rows)
      print_csv_row(out, {r.name, std::to_string(r.modulus), std::to_string(r.claimed),
                          std::to_string(r.observed), std::to_string(r.witness),
                          r.pass ? "yes" : "no"});
  } else {
    for (const auto& r : report.rows) {
      std::ostringstream line;
      line << (r.pass ? "[pass] " : "[FAIL] ") << r.name << ": claimed " << r.claimed
           << ", observed " << r.observed << " at n=" << r.witness;
      out << line.str() << "\n";
    }
    out << (report.all_pass ? "all entries pass" : "FAILURES present") << " (scan limit "
        << report.limit << "; longer runs beyond the limit are not excluded)\n";
  }
  return report.all_pass ? 0 : 1;
}

// ---- verify-certificate ---------------------------------------------------

int cmd_verify_certificate(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open certificate file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  CertificateCheck check = verify_certificate(text.str());
  if (check.ok) {
    out << "certificate OK: window {" << check.plan.witness + 1 << ", ..., "
        << check.plan.witness + check.plan.k << "} re-verified all +1\n";
    return 0;
  }
  for (const auto& f : check.failures) out << "certificate FAIL: " << f << "\n";
  return 1;
}

// ---- distance -------------------------------------------------------------

int cmd_distance(const std::string& path_a, const std::string& path_b, u64 x,
                 const std::string& format, std::ostream& out) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_function_spec(text.str());
  };
  CMFunction a = load(path_a);
  CMFunction b = load(path_b);
  double d = pretentious_distance(a, b, x);
  if (format == "json") {
    ordered_json doc;
    doc["spec_a"] = spec_json(a);
    doc["spec_b"] = spec_json(b);
    doc["x"] = x;
    doc["distance"] = d;
    out << doc.dump(2) << "\n";
  } else if (format == "csv") {
    print_csv_row(out, {"x", "distance"});
    print_csv_row(out, {std::to_string(x), fmt_real(d)});
  } else {
    KeyValueTable t;
    t.add("x", std::to_string(x));
    t.add("distance", fmt_real(d));
    t.print(out);
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"construction and analysis of +/-1 completely multiplicative functions "
               "with long runs of +1"};
  app.require_subcommand(1);
  std::string format = "table";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  FunctionOpts fo_delta, fo_extend, fo_scan, fo_lmean;
  u32 k_delta = 0, k_extend = 0;
  u64 bound_delta = 0, bound_extend = 0;
  unsigned jobs_delta = 1, jobs_catalog = 1;
  u64 scan_limit = 10'000'000;
  std::vector<u64> lmean_qs;
  double lmean_tol = 1e-7;
  u64 lb_q = 0, lb_k = 0, lb_bound = 0;
  u64 cat_limit = 10'000'000, cat_p0 = 7;
  std::string cert_path, extend_out;
  std::string dist_a, dist_b;
  u64 dist_x = 100'000;

  auto* delta = app.add_subcommand("delta", "fewest -1 values in a length-k window (upper bound on delta_q(k))");
  add_function_opts(delta, fo_delta, false);
  delta->add_option("--k", k_delta, "window length")->required();
  delta->add_option("--bound", bound_delta, "scan bound (default max(1e6, q^3))");
  delta->add_option("--jobs", jobs_delta, "parallel scan partitions");

  auto* ext = app.add_subcommand("extend", "construct a function with an all-+1 window of length k");
  add_function_opts(ext, fo_extend, false);
  ext->add_option("--k", k_extend, "target run length")->required();
  ext->add_option("--bound", bound_extend, "scan bound (default max(1e6, q^3))");
  ext->add_option("--out", extend_out, "also write the certificate to this file");

  auto* scan = app.add_subcommand("scan", "longest all-+1 run of a function within a limit");
  add_function_opts(scan, fo_scan, true);
  scan->add_option("--limit", scan_limit, "scan limit (default 1e7)");

  auto* lmean = app.add_subcommand("lmean", "logarithmic mean vs Euler-factor limit sweep");
  add_function_opts(lmean, fo_lmean, false);
  lmean->add_option("--Q", lmean_qs, "sweep point (repeatable; default 1e4 1e5 1e6 1e7)");
  lmean->add_option("--tol", lmean_tol, "L(1, chi) truncation tolerance");

  auto* lb = app.add_subcommand("lower-bound", "digit-recursion lower bound on delta_q(k)");
  lb->add_option("--q", lb_q, "odd prime base")->required();
  lb->add_option("--k", lb_k, "window length, must exceed q")->required();
  lb->add_option("--bound", lb_bound, "scan bound for the last-level estimate (non-3 bases)");

  auto* vc = app.add_subcommand("verify-catalog", "check the known length-2/3/4 functions by scan");
  vc->add_option("--limit", cat_limit, "scan limit (default 1e7)");
  vc->add_option("--p0", cat_p0, "family prime for the length-4 entry (default 7)");
  vc->add_option("--jobs", jobs_catalog, "entries verified in parallel");

  auto* vcert = app.add_subcommand("verify-certificate", "re-verify an extension certificate");
  vcert->add_option("cert", cert_path, "certificate file")->required();

  auto* dist = app.add_subcommand("distance", "pretentious distance of two function specs");
  dist->add_option("spec_a", dist_a, "first function-spec file")->required();
  dist->add_option("spec_b", dist_b, "second function-spec file")->required();
  dist->add_option("--x", dist_x, "prime cutoff (default 1e5)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (delta->parsed()) return cmd_delta(fo_delta, k_delta, bound_delta, jobs_delta, format, out);
    if (ext->parsed()) return cmd_extend(fo_extend, k_extend, bound_extend, format, extend_out, out);
    if (scan->parsed()) return cmd_scan(fo_scan, scan_limit, format, out);
    if (lmean->parsed()) return cmd_lmean(fo_lmean, lmean_qs, lmean_tol, format, out);
    if (lb->parsed()) return cmd_lower_bound(lb_q, lb_k, lb_bound, format, out);
    if (vc->parsed()) return cmd_verify_catalog(cat_limit, cat_p0, jobs_catalog, format, out);
    if (vcert->parsed()) return cmd_verify_certificate(cert_path, out);
    if (dist->parsed()) return cmd_distance(dist_a, dist_b, dist_x, format, out);
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand given\n";
  return 2;
}

}  // namespace cmrun::cli
