#include "ecsym/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ecsym/galois.hpp"
#include "ecsym/isogeny.hpp"
#include "ecsym/reducible.hpp"

namespace ecsym {

namespace {

std::string invariant_key(const RationalEC& E) {
  RationalEC m = minimal_model(E);
  return m.c4().get_str() + ":" + m.c6().get_str();
}

}  // namespace

ExternalOracle::ExternalOracle(const std::string& pack_path) {
  std::ifstream in(pack_path);
  if (!in) return;  // absent pack: every query stays Undetermined
  installed_ = true;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream iss(line);
    std::string c4a, c6a, c4b, c6b, ps, ty;
    if (!(iss >> c4a >> c6a >> c4b >> c6b >> ps >> ty) || (ty != "S" && ty != "A"))
      throw std::runtime_error(pack_path + ":" + std::to_string(lineno) +
                               ": expected c4 c6 c4' c6' p S|A");
    std::string k1 = c4a + ":" + c6a, k2 = c4b + ":" + c6b;
    if (k2 < k1) std::swap(k1, k2);
    answers_[k1 + "|" + k2 + "|" + ps] =
        ty == "S" ? SymType::Symplectic : SymType::Antisymplectic;
  }
}

SymplecticType ExternalOracle::query(const RationalEC& E, const RationalEC& Ep, u64 p) const {
  if (!installed_) return SymplecticType{};
  std::string k1 = invariant_key(E), k2 = invariant_key(Ep);
  if (k2 < k1) std::swap(k1, k2);
  auto it = answers_.find(k1 + "|" + k2 + "|" + std::to_string(p));
  if (it == answers_.end()) return SymplecticType{};
  return SymplecticType{it->second, TypeBasis::ExternalOracle};
}

SymplecticType external_oracle_hook(const ExternalOracle& oracle, const RationalEC& E,
                                    const RationalEC& Ep, u64 p, SymplecticType internal) {
  SymplecticType ans = oracle.query(E, Ep, p);
  bool oracle_decided =
      ans.value == SymType::Symplectic || ans.value == SymType::Antisymplectic;
  bool internal_decided =
      internal.value == SymType::Symplectic || internal.value == SymType::Antisymplectic;
  if (oracle_decided && internal_decided && ans.value != internal.value)
    throw std::logic_error("external oracle contradicts the internal criterion");
  return ans;
}

SymplecticPartition step4_partition(const CongruenceSet& set,
                                    const std::vector<std::string>& labels,
                                    const std::vector<PairDecision>& pairwise) {
  SymplecticPartition part;
  part.set = set;
  part.decisions = pairwise;
  part.sturm_bound = 0;
  if (labels.empty()) return part;

  std::map<std::string, std::size_t> id;
  std::vector<std::string> order;
  for (const auto& l : labels)
    if (id.emplace(l, order.size()).second) order.push_back(l);

  std::vector<std::vector<std::pair<std::size_t, int>>> adj(order.size());
  for (const auto& d : pairwise) {
    int s = type_sign(d.type.value);
    if (s == 0) continue;  // Undetermined and Both constrain nothing
    auto ia = id.find(d.a), ib = id.find(d.b);
    if (ia == id.end() || ib == id.end())
      throw std::invalid_argument("step4_partition: decision references unknown label");
    adj[ia->second].push_back({ib->second, s});
    adj[ib->second].push_back({ia->second, s});
  }

  std::vector<int> color(order.size(), 0);
  std::vector<std::size_t> queue{0};
  color[0] = 1;
  while (!queue.empty()) {
    std::size_t u = queue.back();
    queue.pop_back();
    for (auto [v, s] : adj[u]) {
      int want = color[u] * s;
      if (color[v] == 0) {
        color[v] = want;
        queue.push_back(v);
      } else if (color[v] != want) {
        throw std::logic_error("step4_partition: inconsistent symplectic 2-coloring");
      }
    }
  }

  std::vector<std::string> plus, minus;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (color[i] > 0)
      plus.push_back(order[i]);
    else if (color[i] < 0)
      minus.push_back(order[i]);
    else
      part.undecided.push_back(order[i]);
  }
  std::sort(plus.begin(), plus.end());
  std::sort(minus.begin(), minus.end());
  std::sort(part.undecided.begin(), part.undecided.end());
  part.blocks.push_back(std::move(plus));
  if (!minus.empty()) part.blocks.push_back(std::move(minus));
  return part;
}

namespace {

struct TypingContext {
  const std::map<std::string, std::vector<const CurveRecord*>>& classes;
  const PipelineConfig& cfg;
  const std::vector<u64>& analysis_primes;
  std::map<std::string, TraceVector>& tv_cache;
  std::vector<std::string>& errors;

  const TraceVector& tv(const CurveRecord* r) {
    auto it = tv_cache.find(r->label);
    if (it == tv_cache.end())
      it = tv_cache
               .emplace(r->label, trace_vector(r->curve, analysis_primes, cfg.jobs))
               .first;
    return it->second;
  }
};

// One-directional attempt: is Ep a typed partner of E by a small isogeny,
// a quadratic twist with dihedral witness, the CM rule, or a higher twist?
SymplecticType typed_partner(const RationalEC& E, const RationalEC& Ep, u64 p,
                             const TraceVector& tvE) {
  RationalEC mEp = minimal_model(Ep);
  for (int d : {2, 3, 5, 7}) {
    if (u64(d) % p == 0) continue;
    for (const auto& k : rational_kernel_polys(E, d))
      if (minimal_model(isogenous_curve(E, k)) == mEp)
        return isogeny_criterion(Int(d), p);
  }
  if (E.j() == Ep.j()) {
    if (auto w = trace_zero_quadratic(E, p, tvE))
      for (const auto& tc : quadratic_twist_congruences(E, p, *w))
        if (minimal_model(tc.partner) == mEp) return tc.type;
  }
  if (auto negD = is_cm(E)) {
    Int D = -*negD;
    if (D % Int(p) != 0 && (D != 3 || p % 9 == 1 || p % 9 == 8)) {
      try {
        auto tc = cm_twist_congruence(E, D, p);
        if (minimal_model(tc.partner) == mEp) return tc.type;
      } catch (const std::exception&) {
      }
    }
  }
  for (const auto& tc : higher_twist_partners(E, p))
    if (tc.side_ok && minimal_model(tc.partner) == mEp) return tc.type;
  return SymplecticType{};
}

SymplecticType decide_cross_pair(TypingContext& ctx, const CurveRecord* A,
                                 const CurveRecord* B, std::vector<std::string>& notes) {
  SymplecticType internal = typed_partner(A->curve, B->curve, ctx.cfg.p, ctx.tv(A));
  if (internal.value == SymType::Undetermined)
    internal = typed_partner(B->curve, A->curve, ctx.cfg.p, ctx.tv(B));
  SymplecticType oracle_ans =
      external_oracle_hook(ctx.cfg.oracle, A->curve, B->curve, ctx.cfg.p, internal);
  if (internal.value != SymType::Undetermined) return internal;
  if (oracle_ans.value != SymType::Undetermined) return oracle_ans;
  notes.push_back(A->label + "<>" + B->label + ": no applicable criterion, type undetermined");
  return internal;
}

void intra_class_edges(TypingContext& ctx, const std::vector<const CurveRecord*>& mem,
                       SymplecticPartition& part) {
  if (mem.size() < 2) return;

  bool matrix_ok = !ctx.cfg.isogeny.empty();
  std::vector<const std::vector<int>*> rows;
  if (matrix_ok)
    for (const CurveRecord* r : mem) {
      auto it = ctx.cfg.isogeny.find(r->label);
      if (it == ctx.cfg.isogeny.end() || it->second.size() != mem.size()) {
        matrix_ok = false;
        break;
      }
      rows.push_back(&it->second);
    }

  if (matrix_ok) {
    for (std::size_t i = 0; i < mem.size(); ++i)
      for (std::size_t j = i + 1; j < mem.size(); ++j) {
        int d = (*rows[i])[j];
        if (d < 1 || u64(d) % ctx.cfg.p == 0) {
          part.notes.push_back(mem[i]->label + "<>" + mem[j]->label + ": isogeny degree " +
                               std::to_string(d) + " outside the criterion");
          continue;
        }
        part.decisions.push_back(
            {mem[i]->label, mem[j]->label, isogeny_criterion(Int(d), ctx.cfg.p)});
      }
    return;
  }

  // internal fallback: degrees 2, 3, 5, 7 via rational kernels
  std::vector<RationalEC> mins;
  mins.reserve(mem.size());
  for (const CurveRecord* r : mem) mins.push_back(minimal_model(r->curve));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t found = 0;
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (int d : {2, 3, 5, 7}) {
      if (u64(d) % ctx.cfg.p == 0) continue;
      for (const auto& k : rational_kernel_polys(mem[i]->curve, d)) {
        RationalEC q = minimal_model(isogenous_curve(mem[i]->curve, k));
        for (std::size_t j = 0; j < mem.size(); ++j) {
          if (j == i || mins[j] != q) continue;
          auto key = std::minmax(i, j);
          if (!seen.insert({key.first, key.second}).second) continue;
          part.decisions.push_back(
              {mem[i]->label, mem[j]->label, isogeny_criterion(Int(d), ctx.cfg.p)});
          ++found;
        }
      }
    }
  if (found + 1 < mem.size())
    part.notes.push_back("class " + mem.front()->class_key() +
                         ": connectivity incomplete (degrees beyond {2,3,5,7} undetected)");
}

SymplecticPartition build_partition(TypingContext& ctx, const CongruenceSet& set) {
  std::vector<std::string> labels;
  SymplecticPartition scratch;  // collects notes and decisions before coloring
  scratch.set = set;

  for (const auto& ck : set.classes) {
    const auto& mem = ctx.classes.at(ck);
    for (const CurveRecord* r : mem) labels.push_back(r->label);
    intra_class_edges(ctx, mem, scratch);
  }

  std::vector<const CurveRecord*> reps;
  reps.reserve(set.classes.size());
  for (const auto& ck : set.classes) reps.push_back(ctx.classes.at(ck).front());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      try {
        SymplecticType ty = decide_cross_pair(ctx, reps[i], reps[j], scratch.notes);
        scratch.decisions.push_back({reps[i]->label, reps[j]->label, ty});
      } catch (const std::exception& e) {
        ctx.errors.push_back(reps[i]->label + "<>" + reps[j]->label + ": " + e.what());
      }
    }

  SymplecticPartition part = step4_partition(set, labels, scratch.decisions);
  part.notes = std::move(scratch.notes);
  return part;
}

}  // namespace

PipelineResult run_pipeline(const std::vector<CurveRecord>& records,
                            const PipelineConfig& cfg) {
  if (!is_prime_u64(cfg.p) || cfg.p < 7)
    throw std::invalid_argument("run_pipeline: p must be a prime >= 7");
  PipelineResult res;
  res.p = cfg.p;
  if (records.empty()) return res;
  if (cfg.audit) audit_conductors(records);

  std::map<std::string, const CurveRecord*> by_label;
  std::map<std::string, std::vector<const CurveRecord*>> classes;
  for (const auto& r : records) {
    if (!by_label.emplace(r.label, &r).second)
      throw std::invalid_argument("run_pipeline: duplicate label " + r.label);
    classes[r.class_key()].push_back(&r);
  }
  for (auto& [k, v] : classes) {
    (void)k;
    std::sort(v.begin(), v.end(), [](const CurveRecord* x, const CurveRecord* y) {
      return x->class_index < y->class_index;
    });
  }
  res.classes_scanned = classes.size();

  // step 1: fingerprint class representatives over a shared good window
  u64 wbound = cfg.window_bound;
  for (const auto& r : records)
    if (r.conductor > Int(wbound)) {
      if (!r.conductor.fits_ulong_p())
        throw std::invalid_argument("run_pipeline: conductor exceeds the sieve window range");
      wbound = r.conductor.get_ui();
    }
  auto window = build_prime_window(wbound, cfg.B);
  std::vector<std::pair<std::string, RationalEC>> reps;
  reps.reserve(classes.size());
  for (const auto& [k, v] : classes) reps.emplace_back(k, v.front()->curve);
  auto buckets = partition(reps, cfg.p, window, cfg.jobs);

  auto analysis_primes = primes_up_to(4000);
  std::map<std::string, TraceVector> tv_cache;
  TypingContext ctx{classes, cfg, analysis_primes, tv_cache, res.errors};

  for (const auto& bucket : buckets) {
    if (bucket.members.size() < 2) continue;

    // step 2: greedy refinement into Kraus-Oesterle certified groups
    struct CertGroup {
      std::vector<std::string> classes;
      Int bound{0};
    };
    std::vector<CertGroup> groups;
    for (const auto& ck : bucket.members) {
      const RationalEC& cand = classes.at(ck).front()->curve;
      bool placed = false;
      for (auto& g : groups) {
        const RationalEC& head = classes.at(g.classes.front()).front()->curve;
        try {
          auto cert = ko_certify(head, cand, cfg.p);
          if (cert.certified) {
            g.classes.push_back(ck);
            if (cert.bound > g.bound) g.bound = cert.bound;
            placed = true;
            break;
          }
        } catch (const std::exception& e) {
          res.errors.push_back(ck + ": certification against " + g.classes.front() +
                               " failed: " + e.what());
        }
      }
      if (!placed) groups.push_back(CertGroup{{ck}, Int(0)});
    }

    for (auto& g : groups) {
      if (g.classes.size() < 2) continue;
      CongruenceSet set;
      set.p = cfg.p;
      set.classes = g.classes;
      set.certified = true;

      // step 3: reducibility of the shared semisimplification
      const CurveRecord* rep0 = classes.at(g.classes.front()).front();
      std::optional<bool> known;
      if (auto it = rep0->known_p_isogeny.find(cfg.p); it != rep0->known_p_isogeny.end())
        known = it->second;
      Reducibility red;
      try {
        red = reducibility(rep0->curve, cfg.p, ctx.tv(rep0), known);
      } catch (const std::exception& e) {
        res.errors.push_back(g.classes.front() + ": reducibility failed: " + e.what());
        continue;
      }
      set.reducible = red.verdict != ReducibilityVerdict::Irreducible;

      if (!set.reducible) {
        // step 4
        SymplecticPartition part = build_partition(ctx, set);
        part.sturm_bound = g.bound;
        if (red.witness_ell != 0)
          part.notes.push_back("irreducible: charpoly witness " +
                               std::to_string(red.witness_ell));
        res.partitions.push_back(std::move(part));
      } else if (cfg.p == 7 && red.exact) {
        // step 5: refine the semisimple congruence into genuine congruence
        std::vector<std::vector<std::string>> sub;
        for (const auto& ck : set.classes) {
          const RationalEC& cand = classes.at(ck).front()->curve;
          bool placed = false;
          for (auto& s : sub) {
            const RationalEC& head = classes.at(s.front()).front()->curve;
            try {
              if (reducible_congruent(head, cand).congruent) {
                s.push_back(ck);
                placed = true;
                break;
              }
            } catch (const std::exception& e) {
              res.errors.push_back(ck + ": reducible comparison with " + s.front() +
                                   " failed: " + e.what());
            }
          }
          if (!placed) sub.push_back({ck});
        }
        for (auto& s : sub) {
          CongruenceSet subset = set;
          subset.classes = s;
          SymplecticPartition part = build_partition(ctx, subset);
          part.sturm_bound = g.bound;
          if (sub.size() > 1)
            part.notes.push_back(
                "semisimplification set split: genuine congruence holds only within this "
                "subset");
          res.partitions.push_back(std::move(part));
        }
      } else {
        // reducible beyond the exact machinery: report, never guess
        SymplecticPartition part;
        part.set = set;
        part.sturm_bound = g.bound;
        for (const auto& ck : set.classes)
          for (const CurveRecord* r : classes.at(ck)) part.undecided.push_back(r->label);
        part.notes.push_back(cfg.p == 7
                                 ? "reducibility known only heuristically"
                                 : "reducible set: genuine congruence test implemented "
                                   "only for p = 7");
        res.partitions.push_back(std::move(part));
      }
    }
  }

  std::set<std::string> js;
  for (const auto& part : res.partitions) {
    auto add = [&](const std::string& label) {
      js.insert(by_label.at(label)->curve.j().get_str());
    };
    for (const auto& block : part.blocks)
      for (const auto& l : block) add(l);
    for (const auto& l : part.undecided) add(l);
  }
  res.distinct_j = js.size();
  return res;
}

FreyMazurReport freymazur_audit(const std::vector<CurveRecord>& records, u64 p_min) {
  FreyMazurReport rep;
  u64 maxp = 0;
  for (const auto& r : records) {
    RationalEC m = minimal_model(r.curve);
    Int ad = m.disc() < 0 ? Int(-m.disc()) : m.disc();
    Factorization f = factorize(ad);
    std::vector<std::pair<Int, u64>> me;
    for (const auto& [q, e] : f.factors) {
      auto rd = tate_local(m, q);
      if (rd.kind != ReductionKind::MultiplicativeSplit &&
          rd.kind != ReductionKind::MultiplicativeNonSplit)
        continue;
      for (u64 pp : primes_up_to(u64(e)))
        if (pp >= p_min && u64(e) % pp == 0) me.push_back({q, pp});
    }
    for (const auto& [q, pp] : me) {
      (void)q;
      if (pp > maxp) maxp = pp;
    }
    rep.exponents[r.label] = std::move(me);
  }
  if (maxp != 0) rep.max_p = maxp;

  // non-isogenous classes sharing a conductor: the trace-difference gcd
  // must fall to <= 17, with the sample bound doubling until it does
  std::map<std::string, std::map<std::string, const CurveRecord*>> by_cond;
  for (const auto& r : records) by_cond[r.conductor.get_str()].emplace(r.class_key(), &r);
  for (const auto& [cond, cls] : by_cond) {
    if (cls.size() < 2) continue;
    Int worst = 0;
    for (auto i = cls.begin(); i != cls.end(); ++i)
      for (auto j = std::next(i); j != cls.end(); ++j) {
        const RationalEC& A = i->second->curve;
        const RationalEC& B = j->second->curve;
        Int bad = minimal_model(A).disc() * minimal_model(B).disc();
        Int g = 0;
        u64 done = 0;
        for (u64 bound = 100;; bound *= 2) {
          for (u64 ell : primes_up_to(bound)) {
            if (ell <= done || bad % Int(ell) == 0) continue;
            Int diff =
                Int(trace_of_frobenius(A, ell)) - Int(trace_of_frobenius(B, ell));
            g = gcd(g, diff);
            if (g != 0 && g <= 17) break;
          }
          done = bound;
          if ((g != 0 && g <= 17) || bound >= 25600) break;
        }
        if (g == 0 || g > 17)
          rep.notes.push_back(i->second->label + "<>" + j->second->label +
                              ": trace gcd did not stabilize <= 17 by B = 25600");
        if (g > worst) worst = g;
      }
    rep.same_conductor_gcds[cond] = worst;
  }
  return rep;
}

}  // namespace ecsym
