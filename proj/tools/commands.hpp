// Command-line front end. run() is kept separate from main so tests can drive it.
#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpack/ech.hpp"
#include "rpack/io.hpp"
#include "rpack/obstructions.hpp"
#include "rpack/recurrence.hpp"
#include "rpack/reducer.hpp"
#include "rpack/stability.hpp"
#include "rpack/verify.hpp"
#include "rpack/widths.hpp"

namespace rpack::cli {

enum ExitCode { kOk = 0, kDomain = 1, kInternal = 2 };

inline BundleKind parse_bundle(const std::string& s) {
  if (s == "trivial") return BundleKind::Trivial;
  if (s == "twisted") return BundleKind::Twisted;
  throw DomainError("unknown bundle: " + s);
}

inline std::pair<Rational, Rational> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw DomainError("expected two comma-separated numbers: " + s);
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

// "digits=N"
inline int parse_approx(const std::string& s) {
  const std::string key = "digits=";
  if (s.rfind(key, 0) != 0) throw DomainError("--approx expects digits=N");
  int d = 0;
  try {
    d = std::stoi(s.substr(key.size()));
  } catch (const std::exception&) {
    throw DomainError("--approx expects digits=N");
  }
  if (d < 1 || d > 10000) throw DomainError("--approx digits must be in [1, 10000]");
  return d;
}

inline Parity parse_parity(const std::string& s) {
  if (s == "odd") return Parity::Odd;
  if (s == "even") return Parity::Even;
  if (s == "all") return Parity::All;
  throw DomainError("unknown parity: " + s);
}

// "a..b" or a single integer
inline std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw DomainError("expected an integer or a range a..b: " + s);
  }
}

struct Options {
  std::string approx;
  std::string bundle = "trivial";
  int k = 0;
  std::string mu;
  std::string method = "closed";
  std::string denom = "1099511627776";
  bool profile = false;
  std::string parity = "all";
  std::string cls;
  std::size_t maxIter = 0;
  bool noTrace = false;
  std::string shape;
  std::string params;
  std::size_t count = 10;
  std::string ellipsoid;
  std::string polydisk;
  std::size_t prefix = 0;
  int p = 4;
  std::string c;
  std::size_t steps = 10;
  bool table = false;
  bool volumeCurve = false;
  std::string cFrom = "1/4", cTo = "1", cStep = "1/16";
  std::string muFrom, muTo, step = "1/8";
  unsigned threads = 0;
  std::string suite = "all";
  std::string pRange = "4..12";
  std::string kRange = "1..20";
  long nMax = 50;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {
    if (!o.approx.empty()) digits_ = parse_approx(o.approx);
  }

  int reduce() {
    HClass v = HClass::parse(o_.cls);
    ReductionOutcome r = rpack::reduce(v, o_.maxIter ? o_.maxIter : default_max_iter());
    if (o_.noTrace)
      out_ << io::outcome_json(r).dump() << "\n";
    else
      io::write_json_lines(out_, r);
    return kOk;
  }

  int width() {
    BundleKind kind = parse_bundle(o_.bundle);
    if (o_.profile) {
      out_ << io::profile_json(rpack::width(BundleSpec{kind, Rational(1)}, o_.k)).dump(2) << "\n";
      return kOk;
    }
    BundleSpec b = bundle();
    if (o_.method == "closed") {
      scalar(width_at(b, o_.k));
    } else if (o_.method == "bisect") {
      Integer denom = parse_integer(o_.denom);
      Bracket br = width_by_bisection(b, o_.k, denom, o_.maxIter ? o_.maxIter : default_max_iter());
      out_ << io::bracket_json(br, width_at(b, o_.k)).dump() << "\n";
    } else {
      throw DomainError("unknown method: " + o_.method);
    }
    return kOk;
  }

  int packing() {
    scalar(packing_number(bundle(), o_.k));
    return kOk;
  }

  int stability() {
    out_ << rpack::stability(bundle(false), parse_parity(o_.parity)) << "\n";
    return kOk;
  }

  int obstructions() {
    BundleSpec b = bundle();
    out_ << io::obstructions_json(b, o_.k, rpack::obstructions(b, o_.k)).dump() << "\n";
    return kOk;
  }

  int ech_caps() {
    auto [x, y] = parse_pair(o_.params);
    std::vector<Rational> caps;
    if (o_.shape == "ellipsoid")
      caps = ellipsoid_caps(x, y, o_.count);
    else if (o_.shape == "polydisk")
      caps = polydisk_caps(x, y, o_.count);
    else
      throw DomainError("unknown shape: " + o_.shape);
    header({"index", "value"});
    for (std::size_t i = 0; i < caps.size(); ++i) row({std::to_string(i), to_string(caps[i])}, QuadExt(caps[i]));
    return kOk;
  }

  int embed() {
    auto [a, b] = parse_pair(o_.ellipsoid);
    auto [s, t] = parse_pair(o_.polydisk);
    std::optional<std::size_t> prefix;
    if (o_.prefix) prefix = o_.prefix;
    out_ << io::embed_json(embeds_ellipsoid_in_polydisk(a, b, s, t, prefix)).dump() << "\n";
    return kOk;
  }

  int orbit() {
    if (o_.table) {
      SequenceEngine eng(o_.p);
      io::csv_row(out_, {"n", "a", "beta", "gamma", "x"});
      for (long n = 1; n <= static_cast<long>(o_.steps); ++n)
        io::csv_row(out_, {std::to_string(n), to_string(eng.a(n)), to_string(eng.beta(n)), to_string(eng.gamma(n)), to_string(eng.x(n))});
      return kOk;
    }
    if (o_.volumeCurve) {
      // States at the volume constraint mu = p c^2.
      header({"c", "R", "S"});
      Rational lo = parse_rational(o_.cFrom), hi = parse_rational(o_.cTo), st = parse_rational(o_.cStep);
      if (st <= 0) throw DomainError("step must be positive");
      for (Rational c = lo; c <= hi; c += st) {
        OrbitState s = orbit_start(o_.p, Rational(o_.p) * c * c, c);
        io::csv_row(out_, {to_string(c), to_string(s.R), to_string(s.S)});
      }
      return kOk;
    }
    Rational mu = parse_rational(o_.mu), c = parse_rational(o_.c);
    auto trace = orbit_trace(o_.p, orbit_start(o_.p, mu, c), o_.steps);
    header({"n", "R", "S"});
    for (std::size_t n = 0; n < trace.size(); ++n) {
      std::vector<std::string> f{std::to_string(n), to_string(trace[n].R), to_string(trace[n].S)};
      if (digits_) {
        f.push_back(QuadExt(trace[n].R).approx(*digits_));
        f.push_back(QuadExt(trace[n].S).approx(*digits_));
      }
      io::csv_row(out_, f);
    }
    return kOk;
  }

  int sweep() {
    BundleKind kind = parse_bundle(o_.bundle);
    Rational lo = parse_rational(o_.muFrom), hi = parse_rational(o_.muTo), st = parse_rational(o_.step);
    if (st <= 0) throw DomainError("step must be positive");
    std::vector<Rational> mus = verify::grid(lo, hi, st);
    for (const Rational& m : mus) require_domain(BundleSpec{kind, m}, o_.k);
    bool bisect = o_.method == "bisect";
    if (!bisect && o_.method != "closed") throw DomainError("unknown method: " + o_.method);
    Integer denom = parse_integer(o_.denom);
    std::vector<std::vector<std::string>> rows(mus.size());
    std::vector<QuadExt> vals(mus.size());
    verify::parallel_for(mus.size(), threads(), [&](std::size_t i) {
      BundleSpec b{kind, mus[i]};
      vals[i] = width_at(b, o_.k);
      rows[i] = {to_string(mus[i]), vals[i].str()};
      if (bisect) {
        Bracket br = width_by_bisection(b, o_.k, denom);
        rows[i].push_back(to_string(br.lo));
        rows[i].push_back(to_string(br.hi));
      }
    });
    if (bisect)
      header({"mu", "width", "bisectLo", "bisectHi"});
    else
      header({"mu", "width"});
    for (std::size_t i = 0; i < rows.size(); ++i) row(rows[i], vals[i]);
    return kOk;
  }

  int verify() {
    auto [pLo, pHi] = parse_range(o_.pRange);
    auto [kLo, kHi] = parse_range(o_.kRange);
    std::vector<verify::Report> reports;
    const std::string& s = o_.suite;
    bool all = s == "all";
    bool known = all;
    auto want = [&](const char* name) {
      if (s != name) return all;
      known = true;
      return true;
    };
    if (want("identities")) reports.push_back(verify::identities(pLo, pHi, o_.nMax));
    if (want("oracle")) reports.push_back(verify::oracle(kLo, kHi, make_rational(1, 8), Integer(1) << 40, threads()));
    if (want("obstructions")) reports.push_back(verify::obstructions(kLo, kHi, make_rational(1, 8), 50));
    if (want("ech")) reports.push_back(verify::ech(std::max(pLo, 4), std::min(pHi, 8), std::min(o_.nMax, 6L)));
    if (want("small-k")) reports.push_back(verify::small_k(make_rational(1, 24), Rational(8)));
    if (want("piecewise")) reports.push_back(verify::piecewise(kHi, make_rational(1, 16), 20));
    if (want("stability")) reports.push_back(verify::stability_search(verify::stability_mus()));
    if (!known) throw DomainError("unknown suite: " + s);
    bool ok = true;
    for (const auto& r : reports) {
      out_ << r.suite << ": " << (r.ok() ? "PASS" : "FAIL") << " checks=" << r.checks;
      if (r.points) out_ << " points=" << r.points << " under" << r.pointBudgetMs << "ms=" << r.fastPoints;
      out_ << " seconds=" << r.seconds << "\n";
      for (const auto& f : r.failures) out_ << "  " << f << "\n";
      for (const auto& n : r.notes) out_ << "  note: " << n << "\n";
      ok = ok && r.ok();
    }
    return ok ? kOk : kInternal;
  }

 private:
  BundleSpec bundle(bool withK = true) const {
    if (o_.mu.empty()) throw DomainError("--mu is required");
    BundleSpec b{parse_bundle(o_.bundle), parse_rational(o_.mu)};
    if (withK)
      require_domain(b, o_.k);
    else
      b.validate();
    return b;
  }

  unsigned threads() const { return o_.threads ? o_.threads : verify::default_threads(); }

  void scalar(const QuadExt& x) {
    out_ << x.str();
    if (digits_) out_ << " " << x.approx(*digits_);
    out_ << "\n";
  }

  void header(std::vector<std::string> cols) {
    if (digits_) cols.push_back("approx");
    io::csv_row(out_, cols);
  }

  void row(std::vector<std::string> fields, const QuadExt& x) {
    if (digits_) fields.push_back(x.approx(*digits_));
    io::csv_row(out_, fields);
  }

  const Options& o_;
  std::ostream& out_;
  std::optional<int> digits_;
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact ball-packing widths, Cremona reduction and ECH capacity comparisons"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--approx", o.approx, "Add a decimal rendering, e.g. digits=20");

  auto bundleOpts = [&](CLI::App* c, bool needK) {
    c->add_option("--bundle", o.bundle, "trivial | twisted")->check(CLI::IsMember({"trivial", "twisted"}));
    c->add_option("--mu", o.mu, "Rational mu, e.g. 17/16");
    if (needK) c->add_option("--k", o.k, "Number of balls")->required()->check(CLI::PositiveNumber);
  };

  auto* reduce = app.add_subcommand("reduce", "Run the reduction algorithm on a class");
  reduce->add_option("--class", o.cls, "Class literal \"a0; a1, a2, ...\"")->required();
  reduce->add_option("--max-iter", o.maxIter, "Cremona move budget (default from RPACK_MAX_ITER or 1000000)");
  reduce->add_flag("--no-trace", o.noTrace, "Print only the summary record");

  auto* width = app.add_subcommand("width", "Width w_k(mu)");
  bundleOpts(width, true);
  width->add_option("--method", o.method, "closed | bisect")->check(CLI::IsMember({"closed", "bisect"}));
  width->add_option("--denom", o.denom, "Bisection grid denominator");
  width->add_option("--max-iter", o.maxIter, "Cremona move budget per reduction");
  width->add_flag("--profile", o.profile, "Print the piecewise profile as JSON");

  auto* packing = app.add_subcommand("packing", "Packing number p_k(mu)");
  bundleOpts(packing, true);

  auto* stability = app.add_subcommand("stability", "Stability number");
  bundleOpts(stability, false);
  stability->add_option("--parity", o.parity, "odd | even | all")->check(CLI::IsMember({"odd", "even", "all"}));

  auto* obstructions = app.add_subcommand("obstructions", "Obstructing exceptional classes");
  bundleOpts(obstructions, true);

  auto* caps = app.add_subcommand("ech-caps", "ECH capacities as CSV");
  caps->add_option("--shape", o.shape, "ellipsoid | polydisk")->required()->check(CLI::IsMember({"ellipsoid", "polydisk"}));
  caps->add_option("--params", o.params, "a,b")->required();
  caps->add_option("--count", o.count, "Number of entries")->check(CLI::PositiveNumber);

  auto* embed = app.add_subcommand("embed", "Does E(a,b) embed in P(s,t)?");
  embed->add_option("--ellipsoid", o.ellipsoid, "a,b")->required();
  embed->add_option("--polydisk", o.polydisk, "s,t")->required();
  embed->add_option("--prefix", o.prefix, "Capacity prefix length for the generic path");

  auto* orbit = app.add_subcommand("orbit", "Orbit (R_n, S_n) under M as CSV");
  orbit->add_option("--p", o.p, "p >= 4")->check(CLI::Range(4, 1 << 20));
  orbit->add_option("--mu", o.mu, "mu");
  orbit->add_option("--c", o.c, "Ball capacity");
  orbit->add_option("--steps", o.steps, "Number of steps (rows of the table)");
  orbit->add_flag("--table", o.table, "Print the sequence table n, a, beta, gamma, x instead");
  orbit->add_flag("--volume-curve", o.volumeCurve, "Print initial states along mu = p c^2");
  orbit->add_option("--c-from", o.cFrom);
  orbit->add_option("--c-to", o.cTo);
  orbit->add_option("--c-step", o.cStep);

  auto* sweep = app.add_subcommand("sweep", "Width over a mu grid as CSV");
  bundleOpts(sweep, true);
  sweep->add_option("--mu-from", o.muFrom)->required();
  sweep->add_option("--mu-to", o.muTo)->required();
  sweep->add_option("--step", o.step);
  sweep->add_option("--method", o.method, "closed | bisect")->check(CLI::IsMember({"closed", "bisect"}));
  sweep->add_option("--denom", o.denom);
  sweep->add_option("--threads", o.threads);

  auto* verify = app.add_subcommand("verify", "Cross-check suites");
  verify->add_option("--suite", o.suite, "identities | oracle | obstructions | ech | small-k | piecewise | stability | all");
  verify->add_option("--p", o.pRange, "p or p1..p2");
  verify->add_option("--k", o.kRange, "k or k1..k2");
  verify->add_option("--n-max", o.nMax);
  verify->add_option("--threads", o.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kDomain;
  }

  try {
    Runner r(o, out);
    if (*reduce) return r.reduce();
    if (*width) return r.width();
    if (*packing) return r.packing();
    if (*stability) return r.stability();
    if (*obstructions) return r.obstructions();
    if (*caps) return r.ech_caps();
    if (*embed) return r.embed();
    if (*orbit) {
      if (!o.table && !o.volumeCurve && (o.mu.empty() || o.c.empty())) throw DomainError("orbit needs --mu and --c");
      return r.orbit();
    }
    if (*sweep) return r.sweep();
    if (*verify) return r.verify();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace rpack::cli
