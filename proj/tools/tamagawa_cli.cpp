// SPDX-License-Identifier: MIT
/**
 * @file tamagawa_cli.cpp
 * @brief Command-line front end: local spectra, global reports, scans, bounds and oracles.
 */
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "report.hpp"
#include "tamagawa/global_series.hpp"
#include "tamagawa/local_density.hpp"
#include "tamagawa/number_field.hpp"
#include "tamagawa/verify.hpp"

using namespace tamagawa;
using namespace tamagawa::cli;

namespace {

constexpr int kDigits = 12;

struct Clock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

std::string exact(const Rational& x) { return to_fraction_string(x); }

Row interval_row(const std::string& quantity, int64_t m, const Interval& x) {
  Row r;
  r.add("quantity", quantity).add("m", m).add("lo", lo_text(x, kDigits)).add("hi", hi_text(x, kDigits));
  return r;
}

// ---------------------------------------------------------------------------

struct LocalArgs {
  uint64_t p = 0;
  int f = 1, e = 1, c_max = 4;
};

Report cmd_local(const LocalArgs& a) {
  Clock clock;
  PrimeLocalProfile prof = PrimeLocalProfile::make(a.p, a.f, a.e);
  if (a.c_max < 1) throw Error(ErrorCode::InvalidArgument, "--c-max must be >= 1");
  DensitySpectrum sp = delta(prof);
  Report rep;
  rep.command = "local";
  rep.parameters = {{"p", static_cast<int64_t>(a.p)}, {"f", a.f}, {"e", a.e}, {"q", static_cast<int64_t>(prof.q())},
                    {"prime_class", prime_class_name(prof.prime_class())}, {"c_max", a.c_max}};
  auto row = [&](const std::string& quantity, const std::string& c, const Rational& v) {
    Row r;
    r.add("quantity", quantity).add("c", c).add("exact", exact(v)).add("decimal", decimal(v, kDigits));
    rep.add_row(r);
  };
  TruncatedLocalFactor t = local_factor_truncated(sp, a.c_max);
  for (int c = 1; c <= a.c_max; ++c) row("delta", std::to_string(c), t.coeffs[c - 1]);
  row("tail_mass", ">" + std::to_string(a.c_max), t.tail_mass);
  // delta(c) = tail_coefficient * q^{-c} for every c > c_cut.
  row("tail_coefficient", ">" + std::to_string(sp.c_cut), sp.tail);
  row("total", "all", sp.total());
  row("mean", "all", local_mean(sp));
  rep.seconds = clock.seconds();
  return rep;
}

// ---------------------------------------------------------------------------

struct FieldArgs {
  std::string poly;
  int64_t quadratic = 0;
  uint64_t cyclotomic = 0;
  std::string multiquadratic;
  std::string splitting_file;
  int degree = 0;
  std::string label;
  uint64_t B = 10000;
  int m_max = 3;
};

std::vector<uint64_t> parse_list(const std::string& text) {
  std::vector<uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "'" + item + "' is not a positive integer");
    }
  }
  return out;
}

std::shared_ptr<SplittingSource> make_source(const FieldArgs& a) {
  int chosen = (!a.poly.empty()) + (a.quadratic != 0) + (a.cyclotomic != 0) + (!a.multiquadratic.empty());
  OverrideMap overrides;
  if (!a.splitting_file.empty()) overrides = load_override_file(a.splitting_file);
  if (chosen > 1) throw Error(ErrorCode::InvalidArgument, "choose one of --poly, --quadratic, --cyclotomic, --multiquadratic");
  if (chosen == 0) {
    if (a.splitting_file.empty()) return rational_source();
    if (a.degree < 1) throw Error(ErrorCode::InvalidArgument, "--splitting without a field needs --degree");
    return override_source(a.degree, a.label.empty() ? "K" : a.label, overrides, std::nullopt);
  }
  if (!a.poly.empty()) return polynomial_source(NumberFieldSpec::from_poly(parse_int_poly(a.poly), a.label), overrides);
  if (a.quadratic != 0) return polynomial_source(quadratic_field(a.quadratic), overrides);
  if (!overrides.empty()) throw Error(ErrorCode::InvalidArgument, "--splitting combines only with --poly or --quadratic");
  if (a.cyclotomic != 0) return cyclotomic_source(a.cyclotomic);
  return multiquadratic_source(parse_list(a.multiquadratic));
}

Report cmd_field(const FieldArgs& a) {
  Clock clock;
  auto src = make_source(a);
  GlobalReport g = global_report(*src, a.B, a.m_max);
  Report rep;
  rep.command = "field";
  std::string ram, ovr;
  for (uint64_t p : g.ramified) ram += (ram.empty() ? "" : " ") + std::to_string(p);
  for (uint64_t p : g.overridden) ovr += (ovr.empty() ? "" : " ") + std::to_string(p);
  rep.parameters = {{"label", g.label},
                    {"degree", g.degree},
                    {"prime_bound", static_cast<int64_t>(g.prime_bound)},
                    {"m_max", g.m_max},
                    {"primes_used", static_cast<int64_t>(g.primes_used)},
                    {"ramified_primes", ram},
                    {"overridden_primes", ovr}};
  rep.add_row(interval_row("p_trivial", 1, g.p_trivial));
  for (int m = 1; m <= g.m_max; ++m) rep.add_row(interval_row("coefficient", m, g.coefficients[m - 1]));
  rep.add_row(interval_row("average", -1, g.average));
  rep.add_row(interval_row("trivial_tail", 0, g.trivial_tail));
  rep.add_row(interval_row("mean_tail", 0, g.mean_tail));
  rep.seconds = clock.seconds();
  return rep;
}

// ---------------------------------------------------------------------------

bool squarefree(uint64_t n) {
  for (uint64_t k = 2; k * k <= n; ++k)
    if (n % (k * k) == 0) return false;
  return true;
}

std::string behaviour_of_two(int64_t D) {
  Splitting s = factor_prime(quadratic_field(D), 2);
  if (s.size() == 2) return "split";
  return s[0].first == 2 ? "ramified" : "inert";
}

const std::vector<std::string> kScanColumns{"D", "two", "P_lo", "P_hi", "L_lo", "L_hi"};

Row scan_row(int64_t D, uint64_t B) {
  GlobalReport g = global_report(*polynomial_source(quadratic_field(D)), B, 1);
  Row r;
  r.add("D", D).add("two", behaviour_of_two(D));
  r.add("P_lo", lo_text(g.p_trivial, kDigits)).add("P_hi", hi_text(g.p_trivial, kDigits));
  r.add("L_lo", lo_text(g.average, kDigits)).add("L_hi", hi_text(g.average, kDigits));
  return r;
}

int cmd_scan(uint64_t Dmax, uint64_t B, int64_t resume_from, const std::string& checkpoint, Format fmt) {
  Clock clock;
  std::set<int64_t> done;
  if (!checkpoint.empty()) {
    std::ifstream in(checkpoint);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (header) {
        header = false;
        continue;
      }
      if (!line.empty()) done.insert(std::stoll(line.substr(0, line.find(','))));
    }
  }
  std::ofstream ck;
  if (!checkpoint.empty()) {
    bool fresh = done.empty();
    ck.open(checkpoint, std::ios::app);
    if (!ck) throw Error(ErrorCode::InvalidArgument, "cannot write checkpoint " + checkpoint);
    if (fresh) render_csv_header(kScanColumns, ck);
  }
  Report rep;
  rep.command = "scan";
  rep.parameters = {{"quadratic_range", static_cast<int64_t>(Dmax)}, {"prime_bound", static_cast<int64_t>(B)},
                    {"resume_from", resume_from}};
  rep.columns = kScanColumns;
  if (fmt == Format::Csv) render_csv_header(kScanColumns, std::cout);
  for (int64_t D = std::max<int64_t>(2, resume_from); D < static_cast<int64_t>(Dmax); ++D) {
    if (!squarefree(static_cast<uint64_t>(D)) || done.count(D)) continue;
    Row r = scan_row(D, B);
    if (fmt == Format::Csv) {
      render_csv_row(kScanColumns, r, std::cout);
      std::cout.flush();
    } else {
      rep.rows.push_back(r);
    }
    if (ck) {
      render_csv_row(kScanColumns, r, ck);
      ck.flush();
    }
  }
  rep.seconds = clock.seconds();
  if (fmt == Format::Json) render(rep, fmt, std::cout);
  return 0;
}

// ---------------------------------------------------------------------------

Report cmd_bounds(int d, uint64_t B) {
  Clock clock;
  DegreeBounds b = degree_bounds(d, B);
  Report rep;
  rep.command = "bounds";
  rep.parameters = {{"degree", d}, {"prime_bound", static_cast<int64_t>(B)}};
  auto row = [&](const std::string& q, const Interval& x, const std::string& ex) {
    Row r;
    r.add("quantity", q).add("exact", ex).add("lo", lo_text(x, kDigits)).add("hi", hi_text(x, kDigits));
    rep.add_row(r);
  };
  row("p_lo", b.p_lo, "");
  row("p_hi", b.p_hi, "");
  row("l_lo", b.l_lo, "");
  row("l_hi", b.l_hi, "");
  row("bernoulli_2d", Interval(bernoulli(2 * d)), exact(bernoulli(2 * d)));
  row("bernoulli_4d", Interval(bernoulli(4 * d)), exact(bernoulli(4 * d)));
  rep.seconds = clock.seconds();
  return rep;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  uint64_t p = 0;
  int f = 1, e = 1;
  uint64_t samples = 100000;
  int precision = 14;
  uint64_t seed = 1;
  int k = 2;
  int column = -1;
  int c_max = 4;
  uint64_t budget = kDefaultEnumerationBudget;
};

Report cmd_monte_carlo(const VerifyArgs& a) {
  Clock clock;
  PrimeLocalProfile prof = PrimeLocalProfile::make(a.p, a.f, a.e);
  EmpiricalSpectrum s = monte_carlo_delta(prof, a.samples, a.precision, a.seed);
  DensitySpectrum sp = delta(prof);
  Report rep;
  rep.command = "verify monte-carlo";
  rep.parameters = {{"p", static_cast<int64_t>(a.p)}, {"f", a.f},
                    {"e", a.e},
                    {"samples", static_cast<int64_t>(a.samples)},
                    {"precision", a.precision},
                    {"seed", static_cast<int64_t>(a.seed)},
                    {"undecided", static_cast<int64_t>(s.undecided)}};
  for (int c = 1; c <= a.c_max; ++c) {
    WilsonInterval w = s.wilson(c);
    std::ostringstream est, lo, hi, z;
    est.precision(8);
    lo.precision(8);
    hi.precision(8);
    z.precision(4);
    est << s.estimate(c);
    lo << w.lo;
    hi << w.hi;
    z << s.z_score(c, sp.at(c));
    Row r;
    r.add("c", c).add("count", static_cast<int64_t>(s.count(c))).add("estimate", est.str());
    r.add("wilson_lo", lo.str()).add("wilson_hi", hi.str());
    r.add("exact", exact(sp.at(c))).add("exact_decimal", decimal(sp.at(c), 10)).add("z", z.str());
    rep.add_row(r);
  }
  rep.seconds = clock.seconds();
  return rep;
}

Report cmd_enumerate(const VerifyArgs& a) {
  Clock clock;
  PrimeLocalProfile prof = PrimeLocalProfile::make(a.p, a.f, a.e);
  EnumerationResult res;
  Column col;
  std::string family = "short models";
  if (a.column < 0) {
    res = enumerate_first_iteration(prof, a.k, a.budget);
    col = start_column(prof);
  } else {
    auto fams = column_families(prof.prime_class(), prof.e);
    if (a.column >= static_cast<int>(fams.size()))
      throw Error(ErrorCode::InvalidArgument, "--column must be below " + std::to_string(fams.size()));
    res = enumerate_family(prof, fams[a.column], a.k, a.budget);
    col = step_column(prof.q(), fams[a.column]);
    family = fams[a.column].to_string();
  }
  Report rep;
  rep.command = "verify enumerate";
  rep.parameters = {{"p", static_cast<int64_t>(a.p)}, {"f", a.f}, {"e", a.e}, {"k", a.k}, {"family", family},
                    {"total", static_cast<int64_t>(res.total)}, {"undecided", static_cast<int64_t>(res.stuck)}};
  bool all = true;
  for (const auto& c : compare_with_column(res, col, prof.q(), 2 * a.k + 2)) {
    if (c.observed == 0 && c.predicted == 0) continue;
    Row r;
    r.add("outcome", c.key.to_string()).add("observed", static_cast<int64_t>(c.observed));
    r.add("predicted", exact(c.predicted)).add("decidable", c.decidable).add("match", c.matches());
    all = all && c.matches();
    rep.add_row(r);
  }
  rep.parameters.push_back({"all_decidable_match", all});
  rep.seconds = clock.seconds();
  return rep;
}

Report cmd_nonminimal(const VerifyArgs& a) {
  Clock clock;
  PrimeLocalProfile prof = PrimeLocalProfile::make(a.p, a.f, a.e);
  NonminimalCount n = count_nonminimal(prof, a.budget);
  ParametrizationImage img = parametrization_image(prof);
  Value same = std::string("not checked");
  if (n.method == "exhaustive") same = nonminimal_classes(prof, a.budget) == img.image;
  Report rep;
  rep.command = "verify nonminimal";
  rep.parameters = {{"p", static_cast<int64_t>(a.p)}, {"f", a.f}, {"e", a.e}};
  Row r;
  r.add("q", static_cast<int64_t>(prof.q())).add("classes", static_cast<int64_t>(n.count));
  r.add("predicted", static_cast<int64_t>(n.predicted)).add("method", n.method);
  r.add("parametrization_image", static_cast<int64_t>(img.image.size()));
  r.add("parametrization_injective", img.injective()).add("image_equals_classes", same);
  rep.add_row(r);
  rep.seconds = clock.seconds();
  return rep;
}

// ---------------------------------------------------------------------------

Report cmd_families(int multiquadratic, uint64_t cyclotomic_max, uint64_t B) {
  Clock clock;
  Report rep;
  rep.command = "families";
  rep.parameters = {{"prime_bound", static_cast<int64_t>(B)}};
  auto add = [&](const SplittingSource& src) {
    GlobalReport g = global_report(src, B, 1);
    Row r;
    r.add("field", g.label).add("degree", g.degree);
    r.add("P_lo", lo_text(g.p_trivial, kDigits)).add("P_hi", hi_text(g.p_trivial, kDigits));
    r.add("L_lo", lo_text(g.average, kDigits)).add("L_hi", hi_text(g.average, kDigits));
    rep.add_row(r);
  };
  if (multiquadratic > 0) {
    std::vector<uint64_t> gens;
    for (uint64_t p = 3; static_cast<int>(gens.size()) < multiquadratic; p += 2)
      if (p % 8 == 1 && is_prime_u64(p)) {
        gens.push_back(p);
        add(*multiquadratic_source(gens));
      }
  }
  for (uint64_t a : primes_up_to(cyclotomic_max))
    if (a >= 3) add(*cyclotomic_source(a));
  rep.seconds = clock.seconds();
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local and global Tamagawa densities of elliptic curves over number fields"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format: json or csv")->capture_default_str();

  LocalArgs la;
  auto* local = app.add_subcommand("local", "Local density spectrum at one prime ideal");
  local->add_option("--p", la.p, "Residue characteristic")->required();
  local->add_option("--f", la.f, "Inertia degree")->capture_default_str();
  local->add_option("--e", la.e, "Ramification index")->capture_default_str();
  local->add_option("--c-max", la.c_max, "Largest c printed individually")->capture_default_str();

  FieldArgs fa;
  auto* field = app.add_subcommand("field", "P_Tam(K; m) and L_Tam(K; -1) with certified intervals");
  field->add_option("--poly", fa.poly, "Monic irreducible defining polynomial, e.g. \"x^4+5x^2-6x+3\"");
  field->add_option("--quadratic", fa.quadratic, "Q(sqrt D) for squarefree D");
  field->add_option("--cyclotomic", fa.cyclotomic, "Q(zeta_a) for prime a");
  field->add_option("--multiquadratic", fa.multiquadratic, "Comma-separated primes = 1 mod 8");
  field->add_option("--splitting", fa.splitting_file, "Splitting override JSON {\"p\": [[e, f], ...]}");
  field->add_option("--degree", fa.degree, "Field degree when only --splitting is given");
  field->add_option("--label", fa.label, "Display label");
  field->add_option("--prime-bound", fa.B, "Exact local factors for p <= B")->capture_default_str();
  field->add_option("--m-max", fa.m_max, "Number of Dirichlet coefficients")->capture_default_str();

  uint64_t scan_max = 100, scan_B = 10000;
  int64_t resume_from = 2;
  std::string checkpoint;
  auto* scan = app.add_subcommand("scan", "Real quadratic fields Q(sqrt D) for squarefree 2 <= D < Dmax");
  scan->add_option("--quadratic-range", scan_max, "Dmax")->capture_default_str();
  scan->add_option("--prime-bound", scan_B, "Prime bound")->capture_default_str();
  scan->add_option("--resume-from", resume_from, "First D to compute")->capture_default_str();
  scan->add_option("--checkpoint", checkpoint, "CSV file of completed rows; rows already present are skipped");

  int bound_d = 1;
  uint64_t bound_B = 10000;
  auto* bounds = app.add_subcommand("bounds", "Degree-d bounds on P_Tam(K; 1) and L_Tam(K; -1)");
  bounds->add_option("--degree", bound_d, "Degree d")->required();
  bounds->add_option("--prime-bound", bound_B, "Prime bound for the rational field")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Independent oracles");
  verify->require_subcommand(1);
  auto add_profile = [&](CLI::App* c) {
    c->add_option("--p", va.p, "Residue characteristic")->required();
    c->add_option("--f", va.f, "Inertia degree")->capture_default_str();
    c->add_option("--e", va.e, "Ramification index")->capture_default_str();
  };
  auto* mc = verify->add_subcommand("monte-carlo", "Monte Carlo estimate of delta(c)");
  add_profile(mc);
  mc->add_option("--samples", va.samples, "Number of samples")->capture_default_str();
  mc->add_option("--precision", va.precision, "pi-adic sampling precision N")->capture_default_str();
  mc->add_option("--seed", va.seed, "Seed")->capture_default_str();
  mc->add_option("--c-max", va.c_max, "Largest c reported")->capture_default_str();
  auto* en = verify->add_subcommand("enumerate", "Exhaustive first-iteration counts modulo pi^k");
  add_profile(en);
  en->add_option("--k", va.k, "Modulus exponent")->capture_default_str();
  en->add_option("--column", va.column, "Restrict to the i-th tabulated family (0-based); default: short models");
  en->add_option("--budget", va.budget, "Largest number of models enumerated")->capture_default_str();
  auto* nm = verify->add_subcommand("nonminimal", "Non-minimal classes modulo pi^6 above 2 and 3");
  add_profile(nm);
  nm->add_option("--budget", va.budget, "Largest number of classes tested")->capture_default_str();

  int mq = 0;
  uint64_t cyc_max = 0, fam_B = 10000;
  auto* families = app.add_subcommand("families", "Multiquadratic and cyclotomic families");
  families->add_option("--multiquadratic", mq, "Number k of generators sqrt(17), sqrt(41), ...");
  families->add_option("--cyclotomic-primes", cyc_max, "All Q(zeta_a) for primes 3 <= a <= max");
  families->add_option("--prime-bound", fam_B, "Prime bound")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    Format fmt = parse_format(format);
    Report rep;
    if (*local) rep = cmd_local(la);
    else if (*field) rep = cmd_field(fa);
    else if (*scan) return cmd_scan(scan_max, scan_B, resume_from, checkpoint, fmt);
    else if (*bounds) rep = cmd_bounds(bound_d, bound_B);
    else if (*mc) rep = cmd_monte_carlo(va);
    else if (*en) rep = cmd_enumerate(va);
    else if (*nm) rep = cmd_nonminimal(va);
    else if (*families) {
      if (mq <= 0 && cyc_max == 0) throw Error(ErrorCode::InvalidArgument, "give --multiquadratic or --cyclotomic-primes");
      rep = cmd_families(mq, cyc_max, fam_B);
    }
    render(rep, fmt, std::cout);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
