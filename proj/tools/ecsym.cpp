#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecsym/pipeline.hpp"
#include "ecsym/report.hpp"

namespace {

ecsym::IngestFormat parse_format(const std::string& f) {
  return f == "csv" ? ecsym::IngestFormat::Csv : ecsym::IngestFormat::AllCurvesText;
}

int run_sieve(const std::vector<ecsym::CurveRecord>& records, ecsym::u64 p,
              ecsym::u64 window_bound, std::size_t B, int jobs) {
  std::map<std::string, std::vector<const ecsym::CurveRecord*>> classes;
  for (const auto& r : records) classes[r.class_key()].push_back(&r);
  ecsym::u64 wb = window_bound;
  for (const auto& r : records)
    if (r.conductor > ecsym::Int(wb)) {
      if (!r.conductor.fits_ulong_p())
        throw std::invalid_argument("conductor exceeds the sieve window range");
      wb = r.conductor.get_ui();
    }
  auto window = ecsym::build_prime_window(wb, B);
  std::vector<std::pair<std::string, ecsym::RationalEC>> reps;
  for (auto& [k, v] : classes) {
    std::sort(v.begin(), v.end(),
              [](const ecsym::CurveRecord* a, const ecsym::CurveRecord* b) {
                return a->class_index < b->class_index;
              });
    reps.emplace_back(k, v.front()->curve);
  }
  auto buckets = ecsym::partition(reps, p, window, jobs);
  std::cout << "key\tmembers\n";
  for (const auto& b : buckets) {
    if (b.members.size() < 2) continue;
    std::cout << b.key << '\t';
    for (std::size_t i = 0; i < b.members.size(); ++i)
      std::cout << (i ? ";" : "") << b.members[i];
    std::cout << '\n';
  }
  return 0;
}

int run_certify(const std::vector<ecsym::CurveRecord>& records,
                const std::vector<std::string>& labels, ecsym::u64 p) {
  const ecsym::CurveRecord* a = nullptr;
  const ecsym::CurveRecord* b = nullptr;
  for (const auto& r : records) {
    if (r.label == labels[0]) a = &r;
    if (r.label == labels[1]) b = &r;
  }
  if (!a || !b)
    throw std::invalid_argument("label not found: " + (a ? labels[1] : labels[0]));
  auto cert = ecsym::ko_certify(a->curve, b->curve, p);
  if (cert.certified)
    std::cout << "certified\tp=" << p << "\tlevel=" << cert.level.get_str()
              << "\tbound=" << cert.bound.get_str() << '\n';
  else
    std::cout << "refuted\tp=" << p << "\twitness=" << cert.witness << '\n';
  return 0;
}

ecsym::PipelineConfig make_config(ecsym::u64 p, ecsym::u64 window_bound, std::size_t B,
                                  int jobs, bool audit, const std::string& oracle_pack,
                                  const std::string& matrix_path) {
  ecsym::PipelineConfig cfg;
  cfg.p = p;
  cfg.window_bound = window_bound;
  cfg.B = B;
  cfg.jobs = jobs;
  cfg.audit = audit;
  if (!oracle_pack.empty()) cfg.oracle = ecsym::ExternalOracle(oracle_pack);
  if (!matrix_path.empty()) cfg.isogeny = ecsym::ingest_isogeny_matrix(matrix_path);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mod-p congruences and symplectic types for elliptic curves over Q"};
  app.require_subcommand(1);
  app.set_config("--config", "", "file with long-option defaults; flags win");

  std::string input, format = "allcurves", oracle_pack, matrix_path;
  std::string out_dir = "ecsym-report";
  unsigned long long p = 7, window_bound = 500000, p_min = 19;
  std::size_t B = 50;
  int jobs = 1;
  bool audit = false;
  std::vector<std::string> labels;

  auto* sieve_cmd = app.add_subcommand("sieve", "fingerprint classes, list hash buckets");
  auto* certify_cmd = app.add_subcommand("certify", "prove or refute one congruence");
  auto* classify_cmd = app.add_subcommand("classify", "full pipeline, TSV on stdout");
  auto* freymazur_cmd = app.add_subcommand("freymazur", "discriminant exponent audit");
  auto* report_cmd = app.add_subcommand("report", "full pipeline, TSV files");

  for (auto* cmd : {sieve_cmd, certify_cmd, classify_cmd, freymazur_cmd, report_cmd}) {
    cmd->add_option("--input", input, "curve database file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--format", format, "allcurves|csv")
        ->check(CLI::IsMember({"allcurves", "csv"}));
  }
  for (auto* cmd : {sieve_cmd, certify_cmd, classify_cmd, report_cmd})
    cmd->add_option("--p", p, "congruence prime")->check(CLI::PositiveNumber);
  for (auto* cmd : {sieve_cmd, classify_cmd, report_cmd}) {
    cmd->add_option("--B", B, "hash window length");
    cmd->add_option("--bound,--window-bound", window_bound,
                    "window primes start above this bound");
    cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  }
  for (auto* cmd : {classify_cmd, report_cmd}) {
    cmd->add_option("--oracle-pack", oracle_pack, "precomputed answers for external pairs");
    cmd->add_option("--matrix", matrix_path, "isogeny degree matrix sidecar");
    cmd->add_flag("--audit", audit, "recompute and verify conductors");
  }
  report_cmd->add_option("--out", out_dir, "report directory");
  certify_cmd->add_option("labels", labels, "two curve labels")->expected(2);
  freymazur_cmd->add_option("--p-min", p_min, "smallest reported prime");

  CLI11_PARSE(app, argc, argv);

  try {
    auto records = ecsym::ingest(input, parse_format(format));
    if (*sieve_cmd) return run_sieve(records, p, window_bound, B, jobs);
    if (*certify_cmd) return run_certify(records, labels, p);
    if (*classify_cmd) {
      auto res = ecsym::run_pipeline(
          records, make_config(p, window_bound, B, jobs, audit, oracle_pack, matrix_path));
      ecsym::write_summary_tsv(res, std::cout);
      std::cout << '\n';
      ecsym::write_sets_tsv(res, std::cout);
      for (const auto& e : res.errors) std::cerr << "warning: " << e << '\n';
      return 0;
    }
    if (*freymazur_cmd) {
      auto rep = ecsym::freymazur_audit(records, p_min);
      ecsym::write_freymazur_tsv(rep, std::cout);
      return 0;
    }
    if (*report_cmd) {
      auto res = ecsym::run_pipeline(
          records, make_config(p, window_bound, B, jobs, audit, oracle_pack, matrix_path));
      ecsym::write_report_files(res, out_dir);
      for (const auto& e : res.errors) std::cerr << "warning: " << e << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
