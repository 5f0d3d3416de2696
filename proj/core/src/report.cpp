#include "ecsym/report.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ecsym {

std::string type_label(SymType t) {
  switch (t) {
    case SymType::Symplectic: return "Symplectic";
    case SymType::Antisymplectic: return "Antisymplectic";
    case SymType::Both: return "Both";
    case SymType::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string basis_label(TypeBasis b) {
  switch (b) {
    case TypeBasis::None: return "None";
    case TypeBasis::IsogenyCriterion: return "IsogenyCriterion";
    case TypeBasis::QuadraticTwist: return "QuadraticTwist";
    case TypeBasis::HigherTwist: return "HigherTwist";
    case TypeBasis::CMTwist: return "CMTwist";
    case TypeBasis::Composition: return "Composition";
    case TypeBasis::ExternalOracle: return "ExternalOracle";
  }
  return "None";
}

namespace {

std::string joined(const std::vector<std::string>& items) {
  if (items.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ';';
    out += items[i];
  }
  return out;
}

}  // namespace

void write_sets_tsv(const PipelineResult& res, std::ostream& out) {
  out << "p\tset\tcertified\treducible\tclasses\tblock1\tblock2\tundecided\t"
         "decisions\tsturm_bound\tnotes\n";
  std::size_t id = 0;
  for (const auto& part : res.partitions) {
    ++id;
    std::vector<std::string> decs;
    for (const auto& d : part.decisions)
      decs.push_back(d.a + "<>" + d.b + "=" + type_label(d.type.value) + "/" +
                     basis_label(d.type.basis));
    out << res.p << '\t' << id << '\t' << (part.set.certified ? 1 : 0) << '\t'
        << (part.set.reducible ? 1 : 0) << '\t' << joined(part.set.classes) << '\t'
        << (part.blocks.empty() ? "-" : joined(part.blocks[0])) << '\t'
        << (part.blocks.size() > 1 ? joined(part.blocks[1]) : "-") << '\t'
        << joined(part.undecided) << '\t' << joined(decs) << '\t'
        << part.sturm_bound.get_str() << '\t' << joined(part.notes) << '\n';
  }
}

void write_summary_tsv(const PipelineResult& res, std::ostream& out) {
  std::size_t reducible = 0, two_block = 0, undecided = 0;
  for (const auto& part : res.partitions) {
    if (part.set.reducible) ++reducible;
    if (part.blocks.size() > 1) ++two_block;
    undecided += part.undecided.size();
  }
  out << "key\tvalue\n";
  out << "p\t" << res.p << '\n';
  out << "classes_scanned\t" << res.classes_scanned << '\n';
  out << "congruence_sets\t" << res.partitions.size() << '\n';
  out << "reducible_sets\t" << reducible << '\n';
  out << "irreducible_sets\t" << res.partitions.size() - reducible << '\n';
  out << "two_block_sets\t" << two_block << '\n';
  out << "undecided_curves\t" << undecided << '\n';
  out << "distinct_j\t" << res.distinct_j << '\n';
  out << "errors\t" << res.errors.size() << '\n';
}

void write_freymazur_tsv(const FreyMazurReport& rep, std::ostream& out) {
  out << "label\tm_e\n";
  for (const auto& [label, pairs] : rep.exponents) {
    std::vector<std::string> cells;
    for (const auto& [q, p] : pairs) cells.push_back(q.get_str() + ":" + std::to_string(p));
    out << label << '\t' << joined(cells) << '\n';
  }
  out << "#max_p\t" << (rep.max_p ? std::to_string(*rep.max_p) : "-") << '\n';
  for (const auto& [cond, g] : rep.same_conductor_gcds)
    out << "#gcd\t" << cond << "=" << g.get_str() << '\n';
  for (const auto& n : rep.notes) out << "#note\t" << n << '\n';
}

void write_report_files(const PipelineResult& res, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream sets(dir + "/sets.tsv");
  std::ofstream summary(dir + "/summary.tsv");
  if (!sets || !summary)
    throw std::runtime_error("cannot open report files under " + dir);
  write_sets_tsv(res, sets);
  write_summary_tsv(res, summary);
}

}  // namespace ecsym
