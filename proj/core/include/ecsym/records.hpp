#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ecsym/curve.hpp"

namespace ecsym {

// One database row: a curve with its class coordinates plus optional
// ingested side data that overrides internal heuristics downstream.
struct CurveRecord {
  std::string label;  // conductor + iso_class + class_index, e.g. "11a3"
  Int conductor;
  std::string iso_class;
  int class_index = 1;
  RationalEC curve;
  std::map<u64, bool> known_p_isogeny;  // p -> has rational p-isogeny
  std::string image_label;

  std::string class_key() const;  // conductor + iso_class
};

enum class IngestFormat { AllCurvesText, Csv };

// Whitespace rows "conductor iso_class class_index a1 a2 a3 a4 a6 [rank
// torsion]", or csv with header label,conductor,iso_class,class_index,
// a1,a2,a3,a4,a6.  Blank lines and # comments skipped; malformed rows and
// singular curves rejected with file:line diagnostics.  File order kept.
std::vector<CurveRecord> ingest(const std::string& path, IngestFormat fmt);
std::vector<CurveRecord> parse_records(std::istream& in, IngestFormat fmt,
                                       const std::string& name);

// Sidecar rows "label d_1 d_2 ... d_k": the label's row of its class
// isogeny-degree matrix, columns in class_index order, 0 on the diagonal.
using IsogenyMatrix = std::map<std::string, std::vector<int>>;
IsogenyMatrix ingest_isogeny_matrix(const std::string& path);

// Recomputes every conductor; a mismatch with the ingested value throws.
void audit_conductors(const std::vector<CurveRecord>& recs);

}  // namespace ecsym
