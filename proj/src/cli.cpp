#include "lpfact/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpfact/density.hpp"
#include "lpfact/error.hpp"
#include "lpfact/factor.hpp"
#include "lpfact/hits_csv.hpp"
#include "lpfact/instances.hpp"
#include "lpfact/intervals.hpp"
#include "lpfact/primes.hpp"
#include "lpfact/sieve.hpp"

namespace lpfact::cli {

namespace {

using json = nlohmann::ordered_json;

/// A malformed flag value; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_threads() {
  if (const char* env = std::getenv("LPFACT_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return 1;
}

u64 parse_u64(std::string_view text, const std::string& flag) {
  u64 v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw UsageError(flag + ": expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

std::pair<u64, u64> parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(flag + ": expected lo:hi, got '" + text + "'");
  return {parse_u64(std::string_view(text).substr(0, colon), flag),
          parse_u64(std::string_view(text).substr(colon + 1), flag)};
}

std::vector<Poly> parse_polys(const std::vector<std::string>& specs) {
  std::vector<Poly> out;
  for (const auto& s : specs) {
    try {
      out.push_back(Poly::parse(s));
    } catch (const std::exception& e) {
      throw UsageError("--f: " + std::string(e.what()));
    }
  }
  return out;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-")
    out << content;
  else
    write_file_atomic(path, content);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

HitStore load_store(const std::string& path) {
  if (path.empty()) throw UsageError("--hits is required");
  return HitStore::from_records(read_hits_csv(std::filesystem::path(path)));
}

u64 max_prime(const HitStore& store) {
  u64 best = 2;
  for (const auto& r : store.records()) best = std::max(best, r.p);
  return best;
}

json interval_json(const Interval& iv) { return json::array({iv.left, iv.right}); }

// ---------------------------------------------------------------------------
// sieve

struct SieveArgs {
  std::vector<std::string> f{"1"};
  u64 pmin = 2;
  u64 pmax = 0;
  std::string window;
  std::string ord = "auto";
  unsigned ord_cap = kDefaultOrdCap;
  unsigned threads = 1;
  std::string out = "hits.csv";
};

int cmd_sieve(const SieveArgs& a, std::ostream& out, std::ostream& err) {
  const auto polys = parse_polys(a.f);
  if (a.pmax < a.pmin) throw UsageError("--pmax: must be >= --pmin");
  if (a.threads == 0) throw UsageError("--threads: must be >= 1");
  SieveConfig cfg;
  cfg.prime_lo = a.pmin;
  cfg.prime_hi = a.pmax;
  cfg.threads = a.threads;
  cfg.ord_cap = a.ord_cap;
  cfg.ord = a.ord == "on" ? OrdMode::On : a.ord == "off" ? OrdMode::Off : OrdMode::Auto;
  if (!a.window.empty()) {
    const auto [lo, hi] = parse_range(a.window, "--window");
    cfg.window = HalfOpen{lo, hi};
  }

  std::vector<HitRecord> all;
  std::vector<u64> scanned;
  u64 modmuls = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    cfg.f = polys[i];
    cfg.f_id = static_cast<std::uint32_t>(i);
    HitStore part = run_sieve(cfg);
    all.insert(all.end(), part.records().begin(), part.records().end());
    scanned = part.scanned_primes();
    modmuls += part.stats().modmuls;
  }
  const HitStore store(std::move(all), std::move(scanned));
  emit(a.out, hits_csv_string(store.records()), out);
  err << "sieve: primes=" << store.scanned_primes().size() << " hits=" << store.records().size()
      << " max_hits_per_prime=" << store.stats().max_hits_per_prime << " modmuls=" << modmuls << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// exact

struct ExactArgs {
  std::string f = "1";
  u64 nmax = 25;
  u64 effort = kDefaultEffort;
  unsigned threads = 1;
  std::string out = "factors.csv";
  std::string hits;
  unsigned f_id = 0;
  std::optional<u64> pmax;
  std::optional<u64> pmin;
};

int cmd_exact(const ExactArgs& a, std::ostream& out, std::ostream& err) {
  const Poly f = parse_polys({a.f}).front();
  if (a.nmax < 1) throw UsageError("--nmax: must be >= 1");
  if (a.threads == 0) throw UsageError("--threads: must be >= 1");

  // Independent per-n factorizations; results land in n order.
  std::vector<std::optional<Factorization>> results(a.nmax);
  std::atomic<u64> next{1};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    try {
      for (u64 n = next++; n <= a.nmax; n = next++) {
        try {
          results[n - 1] = factor_small(n, f, a.effort);
        } catch (const ValueNotAboveOne&) {
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < std::min<u64>(a.threads, a.nmax); ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  std::ostringstream csv;
  csv << "n,value_digits,factors,status,P\n";
  for (u64 n = 1; n <= a.nmax; ++n) {
    const auto& fz = results[n - 1];
    if (!fz) {
      csv << n << ",,,not_above_one,\n";
      continue;
    }
    const auto big = largest_prime(*fz);
    const bool probable = !fz->factors.empty() && fz->factors.back().probable;
    csv << n << ',' << fz->value.get_str().size() << ',' << fz->factors_string() << ','
        << (fz->complete ? "complete" : "partial") << ',' << (fz->complete ? "" : ">=") << big.value.get_str()
        << (probable ? "?" : "") << '\n';
  }
  emit(a.out, csv.str(), out);

  if (!a.hits.empty()) {
    const HitStore store = load_store(a.hits).select_f(a.f_id);
    const BoundTable table = BoundTable::build(store, a.nmax, a.pmax, a.pmin);
    const auto rep = cross_check(table, f, a.nmax, a.effort, &store);
    u64 companions_ok = 0;
    for (const auto& c : rep.companions) companions_ok += c.companion_is_hit;
    err << "cross_check: checked=" << rep.checked << " equalities=" << rep.equalities << " skipped=" << rep.skipped
        << " companions=" << companions_ok << "/" << rep.companions.size() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// density

struct DensityArgs {
  std::string hits;
  unsigned f_id = 0;
  std::optional<double> lambda;
  double eps0 = 0.005;
  std::string range;
  std::optional<u64> pmax;
  std::optional<u64> audit_x;
  std::string out = "-";
};

int cmd_density(const DensityArgs& a, std::ostream& out, std::ostream&) {
  if (!(a.eps0 > 0.0 && a.eps0 < 0.01)) throw UsageError("--eps0: must lie in (0, 0.01)");
  const double lambda = a.lambda.value_or(target_lambda(a.eps0));
  if (!(lambda > 1.0)) throw UsageError("--lambda: must exceed 1");
  if (a.range.empty()) throw UsageError("--range is required");
  const auto [lo, hi] = parse_range(a.range, "--range");
  if (lo < 1 || lo > hi) throw UsageError("--range: need 1 <= lo <= hi");

  const HitStore store = load_store(a.hits).select_f(a.f_id);
  const BoundTable table = BoundTable::build(store, hi, a.pmax);
  const DensityReport rep = density_above(table, lambda, lo, hi);

  json j;
  j["lambda"] = rep.lambda;
  j["eps0"] = a.eps0;
  j["range"] = json::array({rep.n_lo, rep.n_hi});
  j["p_max"] = table.p_max();
  j["count_above"] = rep.count_above;
  j["density"] = rep.density;
  j["caveat"] = rep.caveat;
  if (a.audit_x) {
    const AuditReport ar = audit_logZ(AuditConfig::make(*a.audit_x, a.eps0));
    json au;
    au["x"] = ar.x;
    au["eps0"] = ar.eps0;
    au["lambda"] = ar.lambda;
    au["primes_used"] = ar.primes_used;
    au["window_sum"] = ar.window_sum;
    au["window_sum_bracket"] = json::array({ar.window_sum_lo, ar.window_sum_hi});
    au["split_sum"] = ar.split_sum;
    au["asymptotic_sum"] = ar.asymptotic_sum;
    au["upper_coefficient"] = ar.upper_coefficient;
    au["lower_coefficient"] = ar.lower_coefficient;
    au["asymptotic_coefficient"] = ar.asymptotic_coefficient;
    au["ratio"] = ar.ratio;
    au["relative_deviation"] = ar.relative_deviation;
    j["audit"] = au;
  }
  emit(a.out, dump(j), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string mode;
  std::string hits;
  std::vector<std::string> f{"1"};
  unsigned f_id = 0;
  u64 seed = 1;
  u64 instances = 100;
  u64 max_len = 2000;
  std::optional<u64> n0;
  double eps0 = 0.005;
  u64 t_min = 16;
  double c0 = 1.0;
  std::string out = "-";
};

json verify_lemma4(const VerifyArgs& a, const HitStore& store, const Poly& f, u64& failures) {
  json verdicts = json::array();
  if (store.empty()) return verdicts;
  const u64 n0 = resolve_n0(f, a.n0);
  const PrimeOracle oracle(1, max_prime(store));
  const auto insts = sample_lemma4(store, f, n0, a.instances, a.seed, a.max_len, oracle);
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const auto& in = insts[i];
    json v;
    v["mode"] = "lemma4";
    v["instance"] = i;
    json d;
    d["p"] = in.p;
    d["I1"] = interval_json(in.first);
    d["I2"] = interval_json(in.second);
    d["ords"] = in.ords;
    d["x"] = in.x;
    d["c1"] = in.c1;
    try {
      const auto rep = lemma4_exact_check(f, in, oracle);
      v["holds"] = true;
      d["v"] = rep.v;
      d["D"] = rep.D.get_str();
      d["bound2"] = to_string(rep.bound2);
    } catch (const DivisibilityFailed& e) {
      v["holds"] = false;
      d["failure"] = e.what();
      ++failures;
    }
    v["details"] = d;
    verdicts.push_back(v);
  }
  return verdicts;
}

json verify_cor6(const VerifyArgs& a, const HitStore& store, const Poly& f, u64& failures) {
  json verdicts = json::array();
  std::vector<u64> ps;
  for (const auto& [p, c] : store.hits_per_prime())
    if (c >= 2) ps.push_back(p);
  if (ps.empty()) return verdicts;
  SeededRng rng(a.seed);
  rng.shuffle(ps);
  if (ps.size() > a.instances) ps.resize(a.instances);
  const PrimeOracle oracle(1, max_prime(store));
  const unsigned c1 = GrowthExponent::for_poly(f).c1;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const u64 p = ps[i];
    std::vector<u64> pts;
    for (const auto& h : store.hits_of(p)) pts.push_back(h.n);
    const auto fam = IntervalFamily::build(pts);
    const GoodnessParams params{static_cast<double>(p), fam.t(), c1};
    const auto rep = check_cor6(fam, params, oracle, a.c0);
    json v;
    v["mode"] = "cor6";
    v["instance"] = i;
    v["holds"] = rep.holds;
    json d;
    d["p"] = p;
    d["t"] = rep.t;
    d["count_not_good"] = rep.count_not_good;
    d["bound"] = rep.bound;
    d["binding"] = rep.binding;
    d["t_in_range"] = rep.t_in_range;
    d["interior_bound"] = rep.interior_bound;
    d["within_interior_bound"] = rep.within_interior_bound;
    v["details"] = d;
    if (!rep.holds) ++failures;
    verdicts.push_back(v);
  }
  return verdicts;
}

json verify_lemma7(const VerifyArgs& a, const HitStore& store, const Poly& f, u64& failures) {
  json verdicts = json::array();
  if (store.empty()) return verdicts;
  Lemma7Options opts;
  opts.eps0 = a.eps0;
  opts.t_min = a.t_min;
  opts.c1 = GrowthExponent::for_poly(f).c1;
  const auto insts = sample_lemma7(store, f, a.instances, a.seed, opts);
  const PrimeOracle oracle(1, max_prime(store));
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const auto tr = lemma7_margin(insts[i], oracle);
    json v;
    v["mode"] = "lemma7";
    v["instance"] = i;
    v["holds"] = tr.structural_ok();
    v["margin"] = tr.margin;
    json d;
    d["p"] = tr.p;
    d["J"] = json::array({insts[i].J.lo, insts[i].J.hi});
    d["t"] = tr.t;
    d["t1"] = tr.t1;
    d["t2"] = tr.t2;
    d["t3"] = tr.t3;
    d["selection_size"] = tr.selection_size;
    d["nominal_k_range_empty"] = tr.nominal_k_range_empty;
    d["gamma_ascending"] = to_string(tr.gamma_ascending);
    d["sum_gamma_within_J"] = to_string(tr.sum_gamma_within_J);
    d["gamma_t2"] = to_string(tr.gamma_t2);
    d["selection_bound"] = to_string(tr.selection_bound);
    d["selection_checks"] = tr.selection_checks;
    d["lhs"] = tr.lhs;
    d["rhs_main"] = tr.rhs_main;
    d["label"] = tr.label;
    v["details"] = d;
    if (!tr.structural_ok()) ++failures;
    verdicts.push_back(v);
  }
  return verdicts;
}

json verify_symmetry(const VerifyArgs& a, const HitStore& all, const std::vector<Poly>& polys, u64& failures) {
  json verdicts = json::array();
  std::optional<std::uint32_t> plus, minus;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].is_constant(1) && !plus) plus = static_cast<std::uint32_t>(i);
    if (polys[i].is_constant(-1) && !minus) minus = static_cast<std::uint32_t>(i);
  }
  (void)a;
  if (!plus) throw UsageError("--f: symmetry mode needs the polynomial 1 in the --f list");
  const HitStore ps = all.select_f(*plus);
  std::optional<HitStore> ms;
  if (minus) ms = all.select_f(*minus);
  const auto rep = wilson_symmetry(ps, ms ? &*ms : nullptr);
  for (std::size_t i = 0; i < rep.cases.size(); ++i) {
    const auto& c = rep.cases[i];
    json v;
    v["mode"] = "symmetry";
    v["instance"] = i;
    v["holds"] = c.holds;
    v["details"] = {{"p", c.p}, {"n", c.n}, {"companion", c.companion}, {"against", c.cross ? "f=-1" : "f=1"}};
    verdicts.push_back(v);
  }
  failures += rep.failures;
  return verdicts;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto polys = parse_polys(a.f);
  if (a.f_id >= polys.size()) throw UsageError("--f-id: no polynomial with index " + std::to_string(a.f_id));
  if (!(a.eps0 > 0.0 && a.eps0 < 0.01)) throw UsageError("--eps0: must lie in (0, 0.01)");
  const HitStore all = load_store(a.hits);
  for (const auto& r : all.records())
    if (r.f_id >= polys.size())
      throw UsageError("--f: hits file uses f" + std::to_string(r.f_id) + " but only " +
                       std::to_string(polys.size()) + " polynomial(s) were given");
  const HitStore store = all.select_f(a.f_id);
  const Poly& f = polys[a.f_id];

  u64 failures = 0;
  json verdicts;
  if (a.mode == "lemma4")
    verdicts = verify_lemma4(a, store, f, failures);
  else if (a.mode == "cor6")
    verdicts = verify_cor6(a, store, f, failures);
  else if (a.mode == "lemma7")
    verdicts = verify_lemma7(a, store, f, failures);
  else
    verdicts = verify_symmetry(a, all, polys, failures);

  json j;
  j["mode"] = a.mode;
  j["seed"] = a.seed;
  j["f"] = f.to_string();
  j["instances"] = verdicts.size();
  j["failures"] = failures;
  j["verdicts"] = verdicts;
  emit(a.out, dump(j), out);
  err << "verify " << a.mode << ": instances=" << verdicts.size() << " failures=" << failures << " seed=" << a.seed
      << "\n";
  if (failures > 0) {
    for (const auto& v : verdicts)
      if (!v["holds"].get<bool>()) {
        err << "counterexample: " << v.dump() << "\n";
        break;
      }
    return kExitInvariant;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gaps, constants

int cmd_gaps(const std::vector<u64>& ys, const std::string& path, std::ostream& out) {
  std::ostringstream csv;
  csv << "y,sum,ratio_23_18\n";
  csv.precision(17);
  for (const u64 y : ys) {
    const auto g = heath_brown_sum(y);
    csv << y << ',' << g.sum.get_str() << ',' << g.ratio_23_18 << '\n';
  }
  emit(path, csv.str(), out);
  return kExitOk;
}

int cmd_constants(double eps0, const std::string& path, std::ostream& out) {
  if (!(eps0 > 0.0 && eps0 < 0.01)) throw UsageError("--eps0: must lie in (0, 0.01)");
  json j;
  for (const auto& [name, value] : paper_constants().named()) j[name] = value;
  j["eps0"] = eps0;
  j["lambda(eps0)"] = lambda_of_eps(eps0);
  j["1+9log2-100eps0"] = target_lambda(eps0);
  emit(path, dump(j), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Largest prime factors of n! + f(n): sieve, exact oracles and checkers", "lpfact"};
  app.require_subcommand(1, 1);
  const unsigned threads = default_threads();

  SieveArgs sa;
  sa.threads = threads;
  auto* sieve = app.add_subcommand("sieve", "Find all hits (p, n): n < p and p | n! + f(n), for primes in a range");
  sieve->add_option("--f", sa.f, "Polynomial f as constant-first coefficients \"c0,c1,...\"; repeat for several f")
      ->capture_default_str();
  sieve->add_option("--pmin", sa.pmin, "Smallest prime p to scan")->capture_default_str();
  sieve->add_option("--pmax", sa.pmax, "Largest prime p to scan")->required();
  sieve->add_option("--window", sa.window, "Restrict n to the half-open window [lo, hi) as lo:hi (the set N_p cut to J)");
  sieve->add_option("--ord", sa.ord, "Record exact ord_p(n! + f(n)): on, off (ord >= 1), auto (on for p <= 1e6)")
      ->check(CLI::IsMember({"on", "off", "auto"}))
      ->capture_default_str();
  sieve->add_option("--ord-cap", sa.ord_cap, "Largest exponent e tried when lifting to p^e")->capture_default_str();
  sieve->add_option("--threads", sa.threads, "Worker threads (default from LPFACT_THREADS)")->capture_default_str();
  sieve->add_option("--out", sa.out, "Output hits.csv (p,n,ord,f_id); '-' for stdout")->capture_default_str();

  ExactArgs ea;
  ea.threads = threads;
  auto* exact = app.add_subcommand("exact", "Factor n! + f(n) exactly for small n; ground truth for P(n! + f(n))");
  exact->add_option("--f", ea.f, "Polynomial f as constant-first coefficients")->capture_default_str();
  exact->add_option("--nmax", ea.nmax, "Factor n = 1..nmax")->capture_default_str();
  exact->add_option("--effort", ea.effort, "Pollard-Brent iteration budget per composite")->capture_default_str();
  exact->add_option("--threads", ea.threads, "Worker threads (default from LPFACT_THREADS)")->capture_default_str();
  exact->add_option("--out", ea.out, "Output factors.csv (n,value_digits,factors,status,P); '-' for stdout")
      ->capture_default_str();
  exact->add_option("--hits", ea.hits, "Cross-check the bound L(n) <= P(n! + f(n)) against this hits.csv");
  exact->add_option("--f-id", ea.f_id, "Which f_id of the hits file matches --f")->capture_default_str();
  exact->add_option("--pmax", ea.pmax, "Prime bound of the sieve behind --hits (default: largest hit prime)");
  exact->add_option("--pmin", ea.pmin, "Smallest prime of the sieve behind --hits (default: smallest hit prime)");

  DensityArgs da;
  auto* density = app.add_subcommand("density", "Certified lower bound on the density of B(lambda) = {n : P(n! + f(n)) > lambda n}");
  density->add_option("--hits", da.hits, "Input hits.csv")->required();
  density->add_option("--f-id", da.f_id, "Which f_id to use")->capture_default_str();
  density->add_option("--lambda", da.lambda, "Ratio lambda > 1 (default 1 + 9 log 2 - 100 eps0)");
  density->add_option("--eps0", da.eps0, "Small parameter eps0 in (0, 1/100)")->capture_default_str();
  density->add_option("--range", da.range, "Inclusive n range lo:hi")->required();
  density->add_option("--pmax", da.pmax, "Prime bound of the sieve (default: largest hit prime)");
  density->add_option("--audit", da.audit_x, "Also audit the window sum over primes p <= lambda x at this x");
  density->add_option("--out", da.out, "Output report.json; '-' for stdout")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Exact checks on instances drawn from hits");
  verify->add_option("--mode", va.mode,
                     "lemma4 (divisibility chain and bounds on D = p^min ord), cor6 (count of non-good intervals), "
                     "lemma7 (cascade trace and margin), symmetry (n -> p-1-n reflection of hits)")
      ->check(CLI::IsMember({"lemma4", "cor6", "lemma7", "symmetry"}))
      ->required();
  verify->add_option("--hits", va.hits, "Input hits.csv")->required();
  verify->add_option("--f", va.f, "Polynomials behind f0, f1, ... of the hits file")->capture_default_str();
  verify->add_option("--f-id", va.f_id, "Which f_id to check (lemma4, cor6, lemma7)")->capture_default_str();
  verify->add_option("--seed", va.seed, "Seed for instance selection")->capture_default_str();
  verify->add_option("--instances", va.instances, "Number of instances")->capture_default_str();
  verify->add_option("--max-len", va.max_len, "Longest interval used by lemma4 instances")->capture_default_str();
  verify->add_option("--n0", va.n0, "Threshold n0 of f (default: 2 for f = 1, 3 for f = -1)");
  verify->add_option("--eps0", va.eps0, "eps0 in (0, 1/100); J starts at eps0 x")->capture_default_str();
  verify->add_option("--t-min", va.t_min, "Scaled-down lower bound on the number of points t")->capture_default_str();
  verify->add_option("--c0", va.c0, "Coefficient c0 in the range condition t <= c0 x^(2/3)")->capture_default_str();
  verify->add_option("--out", va.out, "Output verdicts JSON; '-' for stdout")->capture_default_str();

  std::vector<u64> gap_ys;
  std::string gaps_out = "-";
  auto* gaps = app.add_subcommand("gaps", "Sum of squared prime gaps (p_{k+1} - p_k)^2 over p_k <= y, and its ratio to y^(23/18)");
  gaps->add_option("--y", gap_ys, "Bound y; repeat or comma-separate for several")->required()->delimiter(',');
  gaps->add_option("--out", gaps_out, "Output CSV (y,sum,ratio_23_18); '-' for stdout")->capture_default_str();

  double const_eps0 = 0.005;
  std::string const_out = "-";
  auto* constants = app.add_subcommand("constants", "Named constants such as 1 + 9 log 2, as JSON");
  constants->add_option("--eps0", const_eps0, "eps0 used for lambda(eps0)")->capture_default_str();
  constants->add_option("--out", const_out, "Output JSON; '-' for stdout")->capture_default_str();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sieve) return cmd_sieve(sa, out, err);
    if (*exact) return cmd_exact(ea, out, err);
    if (*density) return cmd_density(da, out, err);
    if (*verify) return cmd_verify(va, out, err);
    if (*gaps) return cmd_gaps(gap_ys, gaps_out, out);
    return cmd_constants(const_eps0, const_out, out);
  } catch (const InvariantFailure& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace lpfact::cli
