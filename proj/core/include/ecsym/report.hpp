#pragma once

#include <iosfwd>
#include <string>

#include "ecsym/pipeline.hpp"

namespace ecsym {

std::string type_label(SymType t);
std::string basis_label(TypeBasis b);

// One row per congruence set; list cells joined by ';', '-' when empty.
// Output depends only on the result object, never on wall clock or jobs.
void write_sets_tsv(const PipelineResult& res, std::ostream& out);
void write_summary_tsv(const PipelineResult& res, std::ostream& out);
void write_freymazur_tsv(const FreyMazurReport& rep, std::ostream& out);

// sets.tsv and summary.tsv under dir (created if missing).
void write_report_files(const PipelineResult& res, const std::string& dir);

}  // namespace ecsym
