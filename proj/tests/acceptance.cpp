// Acceptance gate: one line per criterion, exit code = number of failures.
// Tolerances and expected values are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ecsym/arith.hpp"
#include "ecsym/curve.hpp"
#include "ecsym/frobenius.hpp"
#include "ecsym/galois.hpp"
#include "ecsym/isogeny.hpp"
#include "ecsym/pipeline.hpp"
#include "ecsym/records.hpp"
#include "ecsym/reducible.hpp"
#include "ecsym/report.hpp"
#include "ecsym/sieve.hpp"
#include "ecsym/twist_congruence.hpp"
#include "curves.hpp"

using namespace ecsym;
using namespace tcurves;

namespace {

constexpr double kBenchBudgetSeconds = 30.0;
constexpr double kFamilyBudgetSeconds = 120.0;
constexpr u64 kBenchTraceBound = 10000;
constexpr u64 kCmTraceBound = 1000;

int failures = 0;

void report_line(int idx, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
              detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
}

template <typename F>
void run(int idx, const std::string& name, F body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report_line(idx, name, ok, detail);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool good_for(const RationalEC& E, u64 ell) {
  return mpz_fdiv_ui(E.disc().get_mpz_t(), ell) != 0;
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

// ---- criterion 1 -----------------------------------------------------------

bool crit_bench_curve(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  RationalEC E = bench_curve();
  const Int d(-939239);
  RationalEC Ed = quadratic_twist(E, d);

  std::vector<u64> primes = primes_up_to(kBenchTraceBound);
  TraceVector tvE = trace_vector(E, primes);
  int mismatches = 0;
  int compared = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    u64 ell = primes[i];
    if (ell == 7 || !good_for(E, ell) || !good_for(Ed, ell)) continue;
    ++compared;
    i64 diff = tvE.traces[i] - trace_of_frobenius(Ed, ell);
    if (((diff % 7) + 7) % 7 != 0) ++mismatches;
  }
  if (mismatches != 0 || compared < 1200) {
    detail = std::to_string(mismatches) + " trace mismatches mod 7 over " +
             std::to_string(compared) + " primes";
    return false;
  }

  auto w = trace_zero_quadratic(E, 7, tvE);
  if (!w || w->d != d) {
    detail = w ? "dihedral witness returned d = " + w->d.get_str()
               : "no dihedral witness found";
    return false;
  }
  if (w->cartan.kind != CartanKind::NonSplit) {
    detail = "Cartan class is not nonsplit";
    return false;
  }

  auto partners = quadratic_twist_congruences(E, 7, *w);
  if (partners.size() != 1 || partners[0].partner != Ed || partners[0].u != Rat(d)) {
    detail = "partner twist does not match the witness character";
    return false;
  }
  SymplecticType want{SymType::Symplectic, TypeBasis::QuadraticTwist};
  if (!(partners[0].type == want)) {
    detail = "type is " + type_label(partners[0].type.value) + "/" +
             basis_label(partners[0].type.basis);
    return false;
  }

  double dt = seconds_since(t0);
  detail = "d recovered, type Symplectic/QuadraticTwist, " + std::to_string(compared) +
           " primes congruent, " + fmt_seconds(dt);
  return dt < kBenchBudgetSeconds;
}

// ---- criterion 2 -----------------------------------------------------------

struct FamilyClause {
  bool quartic;  // else sextic
  u64 p;
};

bool crit_twist_families(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<FamilyClause> clauses = {{true, 3}, {true, 5}, {false, 5}, {false, 7}};
  const std::vector<int> values = {1, 2, 3, -5};
  Int max_bound = 0;
  int pairs = 0;

  for (const FamilyClause& c : clauses) {
    SymType iso_flip =
        isogeny_criterion(c.quartic ? 2 : 3, c.p).value;  // (2/p) resp. (3/p)
    if (iso_flip != SymType::Antisymplectic) {
      detail = "isogeny sign is not -1 at p = " + std::to_string(c.p);
      return false;
    }
    for (int v : values) {
      RationalEC base = c.quartic ? quartic_twist(v, 1) : sextic_twist(v, 1);
      auto partners = higher_twist_partners(base, c.p);
      if (partners.size() != 3) {
        detail = "expected 3 partners, got " + std::to_string(partners.size());
        return false;
      }
      const SymType expect[3] = {SymType::Symplectic, SymType::Antisymplectic,
                                 SymType::Antisymplectic};
      for (int i = 0; i < 3; ++i) {
        const TwistCongruence& tc = partners[i];
        if (tc.type.value != expect[i] || !tc.side_ok) {
          detail = "slot " + std::to_string(i) + " of value " + std::to_string(v) +
                   " at p = " + std::to_string(c.p) + " typed " + type_label(tc.type.value);
          return false;
        }
        KOCertificate ko = ko_certify(base, tc.partner, c.p);
        if (!ko.certified) {
          detail = "ko refuted value " + std::to_string(v) + " slot " + std::to_string(i) +
                   " at p = " + std::to_string(c.p) + " (witness " +
                   std::to_string(ko.witness) + ")";
          return false;
        }
        if (ko.bound > max_bound) max_bound = ko.bound;
        ++pairs;
      }
      if (partners[1].type.basis != TypeBasis::IsogenyCriterion) {
        detail = "middle slot is not isogeny-based";
        return false;
      }
      // third partner = symplectic partner composed with the isogeny flip
      if (compose(partners[0].type.value, iso_flip) != partners[2].type.value) {
        detail = "composition identity fails at p = " + std::to_string(c.p);
        return false;
      }
    }
  }

  double dt = seconds_since(t0);
  detail = std::to_string(pairs) + " pairs certified, max Sturm bound " +
           max_bound.get_str() + ", " + fmt_seconds(dt);
  return pairs == 48 && dt < kFamilyBudgetSeconds;
}

// ---- criterion 3 -----------------------------------------------------------

bool crit_isogeny_detector(std::string& detail) {
  if (!has_rational_7_isogeny(from_j(21609)) || !has_rational_7_isogeny(from_j(-3375))) {
    detail = "detector misses a known 7-isogenous j";
    return false;
  }

  std::vector<u64> primes = primes_up_to(1500);
  Rng rng(101);
  int tested = 0;
  int detected = 0;
  while (tested < 50) {
    Int A = Int(rng.below(2001)) - 1000;
    Int B = Int(rng.below(2001)) - 1000;
    std::optional<RationalEC> E;
    try {
      E = minimal_model(RationalEC(0, 0, 0, A, B));
    } catch (const std::invalid_argument&) {
      continue;  // singular sample
    }
    if (E->j() == 0 || E->j() == 1728) continue;
    ++tested;
    bool detector = has_rational_7_isogeny(*E);
    if (detector) ++detected;

    TraceVector tv = trace_vector(*E, primes);
    bool witness_found = false;
    for (std::size_t i = 0; i < tv.primes.size() && !witness_found; ++i) {
      if (tv.primes[i] == 7 || tv.kinds[i] != ReductionKind::Good) continue;
      Int disc = Int(tv.traces[i]) * tv.traces[i] - 4 * Int((unsigned long)tv.primes[i]);
      witness_found = legendre(mpz_fdiv_ui(disc.get_mpz_t(), 7), 7) == -1;
    }
    if (witness_found == detector) {
      detail = "witness/detector disagree on y^2 = x^3 + " + A.get_str() + "x + " +
               B.get_str();
      return false;
    }
  }
  detail = "50 random curves, " + std::to_string(detected) +
           " with a 7-isogeny, witness matches detector on all";
  return true;
}

// ---- criterion 4 -----------------------------------------------------------

bool crit_reducible_machinery(std::string& detail) {
  const std::vector<Rat> ts = {Rat(1),  Rat(-1), Rat(2),  Rat(-2),     Rat(3),
                               Rat(-3), Rat(-4), Rat(-6), Rat(1, 2),   Rat(-13, 2)};
  for (const Rat& t : ts) {
    RationalEC E = from_j(fricke_j(t));
    ReducibleDecision self = reducible_congruent(E, E);
    if (!self.congruent || self.swapped) {
      detail = "self congruence fails at t = " + Rat(t).get_str();
      return false;
    }
    auto kernels = rational_kernel_polys(E, 7);
    if (kernels.size() != 1) {
      detail = "kernel count " + std::to_string(kernels.size()) + " at t = " + Rat(t).get_str();
      return false;
    }
    RationalEC partner = isogenous_curve(E, kernels[0]);
    if (align_characters(E, partner) != CharAlign::Swap) {
      detail = "partner characters do not swap at t = " + Rat(t).get_str();
      return false;
    }
  }

  struct Expected {
    u64 p;
    std::size_t subgroups, automorphisms;
  };
  const Expected table[] = {{3, 5, 22}, {5, 15, 252}, {7, 30, 1116}};
  for (const Expected& e : table) {
    BorelOracleReport r = borel_conjugation_oracle(e.p);
    if (r.subgroups != e.subgroups || r.automorphisms != e.automorphisms || !r.all_inner) {
      detail = "Borel oracle at p = " + std::to_string(e.p) + ": " +
               std::to_string(r.subgroups) + " subgroups, " +
               std::to_string(r.automorphisms) + " automorphisms, all_inner " +
               (r.all_inner ? "true" : "false");
      return false;
    }
  }
  detail = "10 parametrized curves align and self-compare, Borel oracle exhaustive for p in {3,5,7}";
  return true;
}

// ---- criterion 5 -----------------------------------------------------------

struct Corpus {
  std::vector<std::pair<std::string, RationalEC>> classes;
  std::vector<std::vector<std::string>> planted;  // sorted member lists
  std::vector<std::string> reps;                  // one label per isogeny class
};

Corpus build_corpus(std::string& detail, bool& ok) {
  Corpus c;
  std::map<std::string, RationalEC> by_label;
  std::set<std::string> used_conductors;
  auto add = [&](const std::string& label, const RationalEC& E) {
    c.classes.push_back({label, E});
    by_label.emplace(label, E);
    used_conductors.insert(conductor(E).value().get_str());
  };

  const std::vector<int> bvals = {1, 2, 3, -5};
  for (std::size_t k = 0; k < bvals.size(); ++k) {
    std::string base = "s" + std::to_string(k);
    RationalEC E = sextic_twist(bvals[k], 1);
    auto partners = higher_twist_partners(E, 7);  // -28/b^2, -27, 756/b^2
    add(base + "a", E);
    add(base + "b", partners[1].partner);
    add(base + "c", partners[0].partner);
    add(base + "d", partners[2].partner);
    std::vector<std::string> bucket = {base + "a", base + "b", base + "c", base + "d"};
    c.planted.push_back(bucket);  // already sorted
    c.reps.push_back(base + "a");
    c.reps.push_back(base + "c");
  }

  add("q1a", quartic_twist(1, 1));
  add("q1b", quartic_twist(1, -4));
  add("q5a", quartic_twist(5, 1));
  add("q5b", quartic_twist(5, -20));
  c.planted.push_back({"q1a", "q1b"});
  c.planted.push_back({"q5a", "q5b"});
  c.reps.push_back("q1a");
  c.reps.push_back("q5a");

  // fillers: pairwise-distinct conductors rule out hidden isogenies
  int made = 0;
  for (int n = 1; made < 40; ++n) {
    RationalEC E = minimal_model(RationalEC(0, 0, 0, Int(n), Int(n) * n + 3));
    std::string cond = conductor(E).value().get_str();
    if (!used_conductors.insert(cond).second) continue;
    std::string label = "f" + std::to_string(n);
    c.classes.push_back({label, E});
    c.reps.push_back(label);
    ++made;
  }

  if (c.classes.size() != 60) {
    detail = "corpus has " + std::to_string(c.classes.size()) + " curves";
    ok = false;
  }
  return c;
}

bool crit_sieve_corpus(std::string& detail) {
  bool ok = true;
  Corpus corpus = build_corpus(detail, ok);
  if (!ok) return false;

  std::map<std::string, RationalEC> by_label;
  u64 max_bad = 1000;
  for (const auto& [label, E] : corpus.classes) {
    by_label.emplace(label, E);
    Factorization f = factorize(abs(E.disc()));
    for (const auto& [q, e] : f.factors) {
      (void)e;
      if (q.fits_ulong_p() && q.get_ui() > max_bad) max_bad = q.get_ui();
    }
  }

  std::vector<u64> window = build_prime_window(max_bad, 50);
  auto buckets = partition(corpus.classes, 7, window);
  std::set<std::vector<std::string>> nontrivial;
  for (const auto& b : buckets)
    if (b.members.size() >= 2) nontrivial.insert(b.members);
  std::set<std::vector<std::string>> expected(corpus.planted.begin(), corpus.planted.end());
  if (nontrivial != expected) {
    detail = "sieve found " + std::to_string(nontrivial.size()) +
             " nontrivial buckets, expected " + std::to_string(expected.size()) +
             " planted ones";
    return false;
  }

  for (const auto& members : corpus.planted) {
    const RationalEC& head = by_label.at(members[0]);
    for (std::size_t i = 1; i < members.size(); ++i) {
      KOCertificate ko = ko_certify(head, by_label.at(members[i]), 7);
      if (!ko.certified) {
        detail = "ko refuted planted pair " + members[0] + " <> " + members[i];
        return false;
      }
    }
  }

  // sweep over 19 <= p <= 97 on isogeny-class representatives
  std::map<std::string, TraceVector> cache;
  for (const std::string& r : corpus.reps)
    cache.emplace(r, trace_vector(by_label.at(r), window));
  int refuted_collisions = 0;
  for (u64 p = 19; p <= 97; ++p) {
    if (!is_prime_u64(p)) continue;
    std::map<u64, std::vector<std::string>> groups;
    for (const std::string& r : corpus.reps)
      groups[hash_curve(cache.at(r), p).value].push_back(r);
    for (const auto& [key, members] : groups) {
      (void)key;
      for (std::size_t i = 1; i < members.size(); ++i) {
        KOCertificate ko = ko_certify(by_label.at(members[0]), by_label.at(members[i]), p);
        if (ko.certified) {
          detail = "certified congruence " + members[0] + " <> " + members[i] + " at p = " +
                   std::to_string(p);
          return false;
        }
        ++refuted_collisions;
      }
    }
  }

  detail = "6 planted buckets certified at p = 7, sweep clean (" +
           std::to_string(refuted_collisions) + " hash collisions, all refuted)";
  return true;
}

// ---- criterion 6 -----------------------------------------------------------

bool crit_cm_table(std::string& detail) {
  struct Row {
    Int D;
    RationalEC E;
  };
  const Row rows[] = {{7, e49a1()},  {8, cm8()},   {11, e121b1()}, {19, cm19()},
                      {43, cm43()},  {67, cm67()}, {163, cm163()}};
  std::vector<u64> small = primes_up_to(kCmTraceBound);
  int checked = 0;

  for (const Row& row : rows) {
    TraceVector tvE = trace_vector(row.E, small);
    TwistCongruence c0 = cm_twist_congruence(row.E, row.D, 5);
    TraceVector tvP = trace_vector(c0.partner, small);
    for (u64 p = 5; p <= 37; ++p) {
      if (!is_prime_u64(p) || row.D % Int(p) == 0) continue;
      TwistCongruence c = cm_twist_congruence(row.E, row.D, p);
      SymType want = kronecker(row.D, Int(p)) == 1 ? SymType::Symplectic
                                                   : SymType::Antisymplectic;
      if (c.type.value != want || c.type.basis != TypeBasis::CMTwist) {
        detail = "D = " + row.D.get_str() + ", p = " + std::to_string(p) + " typed " +
                 type_label(c.type.value);
        return false;
      }
      if (!(c.partner == c0.partner)) {
        detail = "partner drifts with p at D = " + row.D.get_str();
        return false;
      }
      for (std::size_t i = 0; i < small.size(); ++i) {
        u64 ell = small[i];
        if (ell == p || !good_for(row.E, ell) || !good_for(c.partner, ell)) continue;
        i64 diff = tvE.traces[i] - tvP.traces[i];
        if (((diff % (i64)p) + (i64)p) % (i64)p != 0) {
          detail = "trace mismatch at ell = " + std::to_string(ell) + ", D = " +
                   row.D.get_str() + ", p = " + std::to_string(p);
          return false;
        }
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " (D, p) pairs typed by (D/p) and trace-verified";
  return checked == 68;
}

// ---- criterion 7 -----------------------------------------------------------

bool crit_properties(std::string& detail) {
  Rng rng(2026);

  // Hasse bound
  for (int i = 0; i < 15; ++i) {
    Int A = Int(rng.below(400)) - 200;
    Int B = Int(rng.below(400)) - 200;
    std::optional<RationalEC> E;
    try {
      E = RationalEC(0, 0, 0, A, B);
    } catch (const std::invalid_argument&) {
      continue;
    }
    for (u64 ell : build_prime_window(1000, 10)) {
      if (!good_for(*E, ell)) continue;
      i64 a = trace_of_frobenius(*E, ell);
      if (Int(a) * a > 4 * Int((unsigned long)ell)) {
        detail = "Hasse bound violated at ell = " + std::to_string(ell);
        return false;
      }
    }
  }

  // quadratic twist trace relation
  for (const RationalEC& E : {e11a1(), e37a1()}) {
    for (Int d : {Int(-1), Int(2), Int(-3), Int(5)}) {
      RationalEC Ed = quadratic_twist(E, d);
      for (u64 ell : primes_up_to(500)) {
        if (ell == 2 || !good_for(E, ell) || !good_for(Ed, ell)) continue;
        i64 want = kronecker(d, Int((unsigned long)ell)) * trace_of_frobenius(E, ell);
        if (trace_of_frobenius(Ed, ell) != want) {
          detail = "twist trace relation fails at ell = " + std::to_string(ell) +
                   ", d = " + d.get_str();
          return false;
        }
      }
    }
  }

  // c4^3 - c6^2 = 1728 disc and minimal model idempotence
  for (int i = 0; i < 25; ++i) {
    std::array<Int, 5> a;
    for (Int& x : a) x = Int(rng.below(19)) - 9;
    try {
      RationalEC E(a[0], a[1], a[2], a[3], a[4]);
      if (E.c4() * E.c4() * E.c4() - E.c6() * E.c6() != 1728 * E.disc()) {
        detail = "c-invariant identity fails";
        return false;
      }
      RationalEC M = minimal_model(E);
      if (!(minimal_model(M) == M)) {
        detail = "minimal model is not idempotent";
        return false;
      }
    } catch (const std::invalid_argument&) {
      continue;
    }
  }

  // step 4 coloring satisfies every decision on random signed trees
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> labels;
    for (int i = 0; i < 8; ++i) labels.push_back("L" + std::to_string(i));
    std::vector<PairDecision> decisions;
    for (int i = 1; i < 8; ++i) {
      bool sym = rng.below(2) == 0;
      decisions.push_back({labels[rng.below(i)], labels[i],
                           {sym ? SymType::Symplectic : SymType::Antisymplectic,
                            TypeBasis::IsogenyCriterion}});
    }
    CongruenceSet set{7, {"x"}, true, false};
    SymplecticPartition part = step4_partition(set, labels, decisions);
    if (!part.undecided.empty()) {
      detail = "tree coloring left labels undecided";
      return false;
    }
    auto side = [&](const std::string& l) {
      for (std::size_t b = 0; b < part.blocks.size(); ++b)
        for (const std::string& m : part.blocks[b])
          if (m == l) return (int)b;
      return -1;
    };
    for (const PairDecision& d : decisions) {
      bool same = side(d.a) == side(d.b);
      if (same != (d.type.value == SymType::Symplectic)) {
        detail = "coloring violates a decision";
        return false;
      }
    }
  }

  // pipeline output is byte-identical across thread counts
  std::vector<CurveRecord> recs;
  int idx = 0;
  for (const Rat& u : {Rat(1), Rat(-27), Rat(-28), Rat(756)}) {
    RationalEC E = sextic_twist(1, u);
    ++idx;
    recs.push_back(CurveRecord{"t" + std::to_string(idx), conductor(E).value(),
                               std::string(1, char('a' + idx - 1)), 1, E, {}, {}});
  }
  PipelineConfig cfg;
  cfg.p = 7;
  cfg.window_bound = 1000;
  cfg.B = 30;
  std::ostringstream one, four;
  write_sets_tsv(run_pipeline(recs, cfg), one);
  cfg.jobs = 4;
  write_sets_tsv(run_pipeline(recs, cfg), four);
  if (one.str() != four.str()) {
    detail = "sets.tsv differs between jobs = 1 and jobs = 4";
    return false;
  }

  detail = "Hasse, twist traces, c-invariants, minimality, coloring, determinism";
  return true;
}

// ---- criterion 8 -----------------------------------------------------------

bool crit_census_declaration(std::string& detail) {
  std::printf("NOTE  the full-height census over the curve database is declared, not\n"
              "NOTE  reproduced: desk-scale runs cover planted corpora and spot audits\n"
              "NOTE  only, and these criteria certify the machinery, not the census.\n");

  ExternalOracle census_pack("census-results.pack");
  if (census_pack.installed()) {
    detail = "unexpected census oracle pack present";
    return false;
  }

  std::vector<CurveRecord> recs;
  recs.push_back(CurveRecord{"11a1", Int(11), "a", 1, e11a1(), {}, {}});
  recs.push_back(CurveRecord{"37a1", Int(37), "a", 1, e37a1(), {}, {}});
  PipelineConfig cfg;
  cfg.p = 7;
  cfg.window_bound = 1000;
  cfg.B = 20;
  PipelineResult res = run_pipeline(recs, cfg);

  std::ostringstream os;
  write_summary_tsv(res, os);
  const char* keys[] = {"key",        "p",          "classes_scanned", "congruence_sets",
                        "reducible_sets", "irreducible_sets", "two_block_sets",
                        "undecided_curves", "distinct_j", "errors"};
  std::istringstream in(os.str());
  std::string line;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (k >= sizeof keys / sizeof keys[0]) {
      detail = "summary.tsv has extra rows";
      return false;
    }
    std::string key = line.substr(0, line.find('\t'));
    if (key != keys[k]) {
      detail = "summary key " + std::to_string(k) + " is '" + key + "'";
      return false;
    }
    ++k;
  }
  if (k != sizeof keys / sizeof keys[0]) {
    detail = "summary.tsv has only " + std::to_string(k) + " rows";
    return false;
  }
  detail = "declaration printed, summary schema stable, no census pack installed";
  return true;
}

}  // namespace

int main() {
  run(1, "benchmark twist congruence is symplectic", crit_bench_curve);
  run(2, "quartic and sextic twist families certify with stated types", crit_twist_families);
  run(3, "7-isogeny detector agrees with charpoly witnesses", crit_isogeny_detector);
  run(4, "reducible machinery on the parametrized family", crit_reducible_machinery);
  run(5, "planted corpus sieve and 19..97 sweep", crit_sieve_corpus);
  run(6, "CM twist table typed by (D/p)", crit_cm_table);
  run(7, "property suites", crit_properties);
  run(8, "census declaration and report schema", crit_census_declaration);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
