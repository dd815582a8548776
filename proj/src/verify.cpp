// SPDX-License-Identifier: MIT
/**
 * @file verify.cpp
 * @brief Monte Carlo, exhaustive enumeration and non-minimal-model oracles.
 */
#include "tamagawa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "tamagawa/errors.hpp"
#include "tamagawa/markov.hpp"
#include "tamagawa/parallel.hpp"
#include "tamagawa/weierstrass.hpp"

namespace tamagawa {

std::string OutcomeKey::to_string() const {
  if (nonminimal) return "non-minimal";
  return kodaira_label(type, n) + " c=" + std::to_string(c);
}

WilsonInterval wilson_interval(uint64_t k, uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  double nn = static_cast<double>(n);
  double p = static_cast<double>(k) / nn;
  double z2 = z * z;
  double denom = 1 + z2 / nn;
  double center = (p + z2 / (2 * nn)) / denom;
  double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

uint64_t EmpiricalSpectrum::count(int c) const {
  auto it = counts.find(c);
  return it == counts.end() ? 0 : it->second;
}

double EmpiricalSpectrum::estimate(int c) const {
  return samples == 0 ? 0.0 : static_cast<double>(count(c)) / static_cast<double>(samples);
}

WilsonInterval EmpiricalSpectrum::wilson(int c, double z) const { return wilson_interval(count(c), samples, z); }

double EmpiricalSpectrum::z_score(int c, const Rational& exact) const {
  double p = exact.get_d();
  double sd = std::sqrt(p * (1 - p) / static_cast<double>(samples));
  if (sd == 0) return estimate(c) == p ? 0.0 : INFINITY;
  return (estimate(c) - p) / sd;
}

namespace {

constexpr uint64_t kSampleBlock = 1 << 14;
// Ring capacity above the sampled precision, so products with exact constants keep the
// digits they determine.
constexpr int kGuardDigits = 12;

std::mt19937_64 block_rng(uint64_t seed, uint64_t block) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(block),
                    static_cast<uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

bool is_precision_failure(const Error& e) { return e.code() == ErrorCode::InsufficientPrecision; }

LocalRing ring_for(const PrimeLocalProfile& profile, int N) {
  return LocalRing::make(profile.p, profile.f, profile.e, N);
}

/// Ring for sampling at precision N with as many guard digits (up to kGuardDigits) as fit.
LocalRing guarded_ring_for(const PrimeLocalProfile& profile, int N) {
  for (int g = kGuardDigits; g > 0; --g) {
    try {
      return ring_for(profile, N + g);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExceeded) throw;
    }
  }
  return ring_for(profile, N);
}

/// pi^v times a uniform unit (exact class) or a uniform integer (open class), modulo pi^N.
LocalElem sample_in_class(const LocalRing& ring, const ValClass& cls, int N, std::mt19937_64& rng) {
  int v = std::min(cls.value, N);
  int k = N - v;
  if (k <= 0) return ring.zero().truncated(N);
  const FqField& F = ring.field();
  uint64_t q = F.q();
  std::uniform_int_distribution<uint64_t> any(0, q - 1), nonzero(1, q - 1);
  std::vector<FqElem> digits(k);
  for (int i = 0; i < k; ++i) digits[i] = F.element(i == 0 && !cls.at_least ? nonzero(rng) : any(rng));
  return ring.from_digits(digits) * ring.one().make_pi_power(v);
}

WeierstrassModel family_model(const LocalRing& ring, const FamilyClass& family, const LocalElem& a4,
                              const LocalElem& a6, const LocalElem* x, const LocalElem* y) {
  WeierstrassModel m = WeierstrassModel::short_form(a4, a6);
  switch (family.prime_class) {
    case PrimeClass::NotAbove6: break;
    case PrimeClass::Above3: m.a2 = *x; break;
    case PrimeClass::Above2:
      m.a1 = *x;
      m.a3 = *y;
      break;
  }
  (void)ring;
  return m;
}

}  // namespace

EmpiricalSpectrum monte_carlo_delta(const PrimeLocalProfile& profile, uint64_t samples, int N, uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  if (N < 12) throw Error(ErrorCode::InvalidArgument, "Monte Carlo precision must be >= 12");
  LocalRing ring = guarded_ring_for(profile, N);
  uint64_t nblocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<EmpiricalSpectrum> parts(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    std::mt19937_64 rng = block_rng(seed, b);
    uint64_t n = std::min<uint64_t>(kSampleBlock, samples - b * kSampleBlock);
    EmpiricalSpectrum& s = parts[b];
    for (uint64_t i = 0; i < n; ++i) {
      LocalElem a4 = ring.sample_uniform(rng, N);
      LocalElem a6 = ring.sample_uniform(rng, N);
      try {
        ReductionOutcome o = tate_run(WeierstrassModel::short_form(a4, a6));
        s.counts[o.c] += 1;
        s.iterations[o.iterations] += 1;
      } catch (const Error& e) {
        if (!is_precision_failure(e)) throw;
        s.undecided += 1;
      }
      s.samples += 1;
    }
  });
  EmpiricalSpectrum total;
  for (const auto& s : parts) {
    for (auto& [c, k] : s.counts) total.counts[c] += k;
    for (auto& [c, k] : s.iterations) total.iterations[c] += k;
    total.undecided += s.undecided;
    total.samples += s.samples;
  }
  return total;
}

FamilySampleResult monte_carlo_family(const PrimeLocalProfile& profile, const FamilyClass& family, uint64_t samples,
                                      int N, uint64_t seed) {
  if (family.prime_class != profile.prime_class() || family.e != profile.e)
    throw Error(ErrorCode::InconsistentFamily, "family does not belong to this profile");
  LocalRing ring = ring_for(profile, N);
  uint64_t nblocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<FamilySampleResult> parts(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    std::mt19937_64 rng = block_rng(seed, b);
    uint64_t n = std::min<uint64_t>(kSampleBlock, samples - b * kSampleBlock);
    FamilySampleResult& s = parts[b];
    for (uint64_t i = 0; i < n; ++i) {
      LocalElem a4 = ring.sample_uniform(rng);
      LocalElem a6 = ring.sample_uniform(rng);
      LocalElem x = sample_in_class(ring, family.alpha, N, rng);
      LocalElem y = sample_in_class(ring, family.alpha3, N, rng);
      try {
        auto o = tate_first_iteration(family_model(ring, family, a4, a6, &x, &y));
        s.counts[o ? OutcomeKey::of(*o) : OutcomeKey::step11()] += 1;
      } catch (const Error& e) {
        if (!is_precision_failure(e)) throw;
        s.undecided += 1;
      }
      s.samples += 1;
    }
  });
  FamilySampleResult total;
  for (const auto& s : parts) {
    for (auto& [k, c] : s.counts) total.counts[k] += c;
    total.undecided += s.undecided;
    total.samples += s.samples;
  }
  return total;
}

bool EnumerationResult::decidable(const OutcomeKey& key) const {
  if (stuck == 0) return true;
  if (key.nonminimal) return !reachable_union.nonminimal;
  return !reachable_union.contains(key.type, key.n);
}

bool family_representable(const FamilyClass& family, int k) {
  auto ok = [k](const ValClass& v) { return v.at_least ? v.value <= k : v.value < k; };
  switch (family.prime_class) {
    case PrimeClass::NotAbove6: return true;
    case PrimeClass::Above3: return ok(family.alpha);
    case PrimeClass::Above2: return ok(family.alpha) && ok(family.alpha3);
  }
  return false;
}

namespace {

std::vector<LocalElem> class_residues(const LocalRing& ring, const ValClass& cls, int k) {
  std::vector<LocalElem> out;
  ResidueEnumerator it(ring, k);
  LocalElem x;
  while (it.next(x)) {
    Valuation v = x.val();
    bool in = cls.at_least ? (v.exact ? v.value >= cls.value : cls.value <= v.value) : (v.exact && v.value == cls.value);
    if (in) out.push_back(x);
  }
  return out;
}

uint64_t checked_mul(uint64_t a, uint64_t b, uint64_t budget) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  if (r > budget) throw Error(ErrorCode::BudgetExceeded, "enumeration exceeds the budget of " + std::to_string(budget));
  return static_cast<uint64_t>(r);
}

uint64_t ipow_checked(uint64_t q, int k, uint64_t budget) {
  uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = checked_mul(r, q, budget);
  return r;
}

struct EnumPartial {
  std::map<OutcomeKey, uint64_t> counts;
  uint64_t stuck = 0;
  Reachable reach{0, false, 1 << 30, 1 << 30};
};

void merge_reach(Reachable& into, const Reachable& r) {
  into.kinds |= r.kinds;
  into.nonminimal = into.nonminimal || r.nonminimal;
  if (r.kinds & (1u << static_cast<int>(Kodaira::In))) into.min_n_In = std::min(into.min_n_In, r.min_n_In);
  if (r.kinds & (1u << static_cast<int>(Kodaira::Instar)))
    into.min_n_Instar = std::min(into.min_n_Instar, r.min_n_Instar);
}

EnumerationResult run_enumeration(const PrimeLocalProfile& profile, const FamilyClass& family, int k, uint64_t budget,
                                  bool short_models) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  LocalRing ring = ring_for(profile, k);
  uint64_t q = profile.q();
  uint64_t pairs = ipow_checked(q, 2 * k, budget);
  uint64_t qk = ipow_checked(q, k, budget);
  std::vector<LocalElem> xs{ring.zero()}, ys{ring.zero()};
  if (!short_models) {
    if (!family_representable(family, k))
      throw Error(ErrorCode::InconsistentFamily, family.to_string() + " is not representable modulo pi^" + std::to_string(k));
    if (family.prime_class == PrimeClass::Above3) xs = class_residues(ring, family.alpha, k);
    if (family.prime_class == PrimeClass::Above2) {
      xs = class_residues(ring, family.alpha, k);
      ys = class_residues(ring, family.alpha3, k);
    }
  }
  uint64_t fam = checked_mul(xs.size(), ys.size(), budget);
  EnumerationResult res;
  res.k = k;
  res.family_residues = fam;
  res.total = checked_mul(pairs, fam, budget);

  // One task per (family residue, a4) pair; a6 runs inside.
  uint64_t tasks = fam * qk;
  std::vector<EnumPartial> parts(tasks);
  parallel_for(tasks, [&](std::size_t t) {
    uint64_t i4 = t % qk;
    uint64_t f = t / qk;
    const LocalElem& x = xs[f / ys.size()];
    const LocalElem& y = ys[f % ys.size()];
    LocalElem a4 = ring.residue_at(k, i4);
    EnumPartial& part = parts[t];
    for (uint64_t i6 = 0; i6 < qk; ++i6) {
      LocalElem a6 = ring.residue_at(k, i6);
      WeierstrassModel m = family_model(ring, family, a4, a6, &x, &y);
      try {
        auto o = tate_first_iteration(m);
        part.counts[o ? OutcomeKey::of(*o) : OutcomeKey::step11()] += 1;
      } catch (const InsufficientPrecision& e) {
        part.stuck += 1;
        merge_reach(part.reach, e.reachable());
      } catch (const Error& e) {
        if (!is_precision_failure(e)) throw;
        part.stuck += 1;
        merge_reach(part.reach, Reachable::everything());
      }
    }
  });
  res.reachable_union = Reachable{0, false, 1 << 30, 1 << 30};
  for (const auto& p : parts) {
    for (auto& [key, c] : p.counts) res.counts[key] += c;
    res.stuck += p.stuck;
    merge_reach(res.reachable_union, p.reach);
  }
  return res;
}

}  // namespace

EnumerationResult enumerate_first_iteration(const PrimeLocalProfile& profile, int k, uint64_t budget) {
  return run_enumeration(profile, FamilyClass::not_above6(profile.e), k, budget, true);
}

EnumerationResult enumerate_family(const PrimeLocalProfile& profile, const FamilyClass& family, int k,
                                   uint64_t budget) {
  if (family.prime_class != profile.prime_class() || family.e != profile.e)
    throw Error(ErrorCode::InconsistentFamily, "family does not belong to this profile");
  return run_enumeration(profile, family, k, budget, family.prime_class == PrimeClass::NotAbove6);
}

std::vector<OutcomeComparison> compare_with_column(const EnumerationResult& result, const Column& column, uint64_t q,
                                                   int n_max) {
  std::set<OutcomeKey> keys;
  for (auto& [key, c] : result.counts) keys.insert(key);
  keys.insert(OutcomeKey::step11());
  for (const StepEntry& en : column.entries) {
    switch (en.kind) {
      case StepEntry::Kind::Fixed: keys.insert({false, en.type, 0, en.c}); break;
      case StepEntry::Kind::InFamily:
        for (int n = 1; n <= n_max; ++n) {
          keys.insert({false, Kodaira::In, n, n});
          keys.insert({false, Kodaira::In, n, epsilon(n)});
        }
        break;
      case StepEntry::Kind::InstarFamily:
        for (int n = 1; n <= n_max; ++n) keys.insert({false, Kodaira::Instar, n, en.c});
        break;
    }
  }
  Rational total(static_cast<unsigned long>(result.total));
  std::vector<OutcomeComparison> out;
  for (const OutcomeKey& key : keys) {
    OutcomeComparison cmp;
    cmp.key = key;
    auto it = result.counts.find(key);
    cmp.observed = it == result.counts.end() ? 0 : it->second;
    Rational density = key.nonminimal ? column.nonminimal : column_value(column, q, key.type, key.n, key.c);
    cmp.predicted = density * total;
    cmp.decidable = result.decidable(key);
    out.push_back(cmp);
  }
  return out;
}

Column start_column(const PrimeLocalProfile& profile) {
  FamilyChain chain = build_chain(profile.q(), profile.e, profile.prime_class());
  return column_for_node(profile.q(), chain.start);
}

uint64_t residue_index(const LocalElem& x, int k) {
  std::vector<FqElem> d = x.digits();
  uint64_t q = x.field().q();
  uint64_t idx = 0, scale = 1;
  for (int i = 0; i < k; ++i) {
    if (i < static_cast<int>(d.size())) idx += d[i].code * scale;
    scale *= q;
  }
  return idx;
}

namespace {

void require_wild(const PrimeLocalProfile& profile) {
  if (profile.p != 2 && profile.p != 3)
    throw Error(ErrorCode::InvalidArgument, "non-minimal classification applies to primes above 2 and 3");
}

/// The residue as an element known to the full ring capacity (digits beyond k are zero).
LocalElem exact_lift(const LocalElem& x) {
  LocalElem out = x.make_int(0);
  std::vector<FqElem> d = x.digits();
  for (std::size_t i = 0; i < d.size(); ++i) out = out + x.make_lift(d[i]) * x.make_pi_power(static_cast<int>(i));
  return out;
}

/// Non-minimality of one lift; throws when the first pass cannot decide it.
bool lift_nonminimal(const LocalElem& a4, const LocalElem& a6) {
  try {
    return !tate_first_iteration(WeierstrassModel::short_form(a4, a6)).has_value();
  } catch (const InsufficientPrecision& e) {
    if (!e.reachable().nonminimal) return false;
    throw;
  }
}

}  // namespace

std::set<ResiduePair> nonminimal_classes(const PrimeLocalProfile& profile, uint64_t budget) {
  require_wild(profile);
  const int N = 18;
  LocalRing ring = ring_for(profile, N);
  uint64_t q = profile.q();
  uint64_t q6 = ipow_checked(q, 6, budget);
  (void)ipow_checked(q, 12, budget);
  std::vector<std::vector<uint64_t>> found(q6);
  parallel_for(q6, [&](std::size_t i4) {
    std::mt19937_64 rng = block_rng(0x6e6f6e6dULL, i4);
    LocalElem r4 = ring.residue_at(6, i4);
    LocalElem l4 = exact_lift(r4);
    LocalElem h4 = l4 + ring.sample_uniform(rng, N - 6) * ring.one().make_pi_power(6);
    for (uint64_t i6 = 0; i6 < q6; ++i6) {
      LocalElem l6 = exact_lift(ring.residue_at(6, i6));
      LocalElem h6 = l6 + ring.sample_uniform(rng, N - 6) * ring.one().make_pi_power(6);
      bool a = lift_nonminimal(l4.truncated(N), l6.truncated(N));
      bool b = lift_nonminimal(h4, h6);
      if (a != b)
        throw Error(ErrorCode::InvalidArgument, "non-minimality differs between two lifts of one class modulo pi^6");
      if (a) found[i4].push_back(i6);
    }
  });
  std::set<ResiduePair> out;
  for (uint64_t i4 = 0; i4 < q6; ++i4)
    for (uint64_t i6 : found[i4]) out.insert({i4, i6});
  return out;
}

uint64_t predicted_nonminimal_count(const PrimeLocalProfile& profile) {
  require_wild(profile);
  uint64_t q = profile.q();
  int exp = profile.p == 3 ? (profile.e == 1 ? 3 : 4) : (profile.e == 1 ? 4 : profile.e == 2 ? 5 : 6);
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= q;
  return r;
}

std::pair<LocalElem, LocalElem> parametrize_nonminimal(const PrimeLocalProfile& profile,
                                                       const NonminimalParameters& prm) {
  require_wild(profile);
  int e = profile.e;
  const LocalElem& w0 = prm.w;
  auto pi = [&](int k) { return w0.make_pi_power(k); };
  LocalElem w = exact_lift(prm.w);
  LocalElem a4, a6;
  if (profile.p == 3) {
    LocalElem r = exact_lift(prm.r);
    a4 = w0.make_int(-3) * pi(std::max(0, 4 - 2 * e)) * r * r + pi(4) * w;
    a6 = w0.make_int(2) * pi(std::max(0, 6 - 3 * e)) * r * r * r - pi(std::max(4, 6 - e)) * r * w;
  } else {
    LocalElem u = exact_lift(prm.u);
    LocalElem v = exact_lift(prm.v);
    LocalElem v2 = v * v;
    a4 = w0.make_int(2) * pi(std::max(0, 3 - e)) * u * v - w0.make_int(3) * v2 * v2 + pi(4) * w;
    // Shift x -> x - v^2, y -> y + v x + t: the x^2 coefficient -4 v^2 stays divisible by pi^2 for every e.
    a6 = pi(std::max(0, 6 - 2 * e)) * u * u + v2 * v2 * v2 + a4 * v2;
  }
  return {a4.truncated(6), a6.truncated(6)};
}

ParametrizationImage parametrization_image(const PrimeLocalProfile& profile) {
  require_wild(profile);
  LocalRing ring = ring_for(profile, 12);
  uint64_t q = profile.q();
  int e = profile.e;
  auto count = [&](int k) {
    uint64_t r = 1;
    for (int i = 0; i < k; ++i) r *= q;
    return r;
  };
  ParametrizationImage img;
  NonminimalParameters prm;
  prm.r = prm.u = prm.v = ring.zero();
  auto record = [&]() {
    auto [a4, a6] = parametrize_nonminimal(profile, prm);
    img.image.insert({residue_index(a4, 6), residue_index(a6, 6)});
    img.grid_size += 1;
  };
  if (profile.p == 3) {
    int kr = std::min(2, e);
    for (uint64_t ir = 0; ir < count(kr); ++ir)
      for (uint64_t iw = 0; iw < count(2); ++iw) {
        prm.r = ring.residue_at(kr, ir);
        prm.w = ring.residue_at(2, iw);
        record();
      }
  } else {
    int ku = std::min(3, e);
    for (uint64_t iu = 0; iu < count(ku); ++iu)
      for (uint64_t iv = 0; iv < q; ++iv)
        for (uint64_t iw = 0; iw < count(2); ++iw) {
          prm.u = ring.residue_at(ku, iu);
          prm.v = ring.residue_at(1, iv);
          prm.w = ring.residue_at(2, iw);
          record();
        }
  }
  return img;
}

NonminimalCount count_nonminimal(const PrimeLocalProfile& profile, uint64_t budget) {
  NonminimalCount out;
  out.predicted = predicted_nonminimal_count(profile);
  unsigned __int128 q12 = 1;
  for (int i = 0; i < 12; ++i) q12 *= profile.q();
  if (q12 <= budget) {
    out.count = nonminimal_classes(profile, budget).size();
    out.method = "exhaustive";
  } else {
    out.count = parametrization_image(profile).image.size();
    out.method = "parametrization";
  }
  return out;
}

}  // namespace tamagawa
