#ifndef CACTUS_TIETZE_HPP
#define CACTUS_TIETZE_HPP

#include <map>
#include <string>
#include <vector>

#include "cactus/cactus_group.hpp"
#include "cactus/presentation.hpp"
#include "cactus/sections.hpp"

namespace cactus {

// ---------- rewriting traces ----------

// Words in traces name generators by their subset so a trace can be replayed
// against any presentation over the same F.
using TraceWord = std::vector<Subset>;

struct RewriteStep {
  enum class Kind { Apply, Cancel, Insert };
  Kind kind;
  int pos;
  TraceWord from, to;
};

struct DerivationTrace {
  std::string stage;
  TraceWord start;  // relator of the relation being justified
  std::vector<RewriteStep> steps;
  bool justified = true;  // false: removal recorded without a derivation
  std::string note;
};

// Replays a trace against a reference presentation: every Apply must match a
// relation of the reference (in either orientation), every Cancel/Insert an
// R1-shaped relation, and the word must end empty.
bool replay_trace(const Presentation& reference, const DerivationTrace& t,
                  std::string* why = nullptr);

// Human-readable derivation log: one line per rewriting step.
std::string render_trace(const CoxeterMatrix& m, const DerivationTrace& t);

struct PipelineStage {
  std::string name;
  Presentation presentation;
  std::vector<DerivationTrace> traces;  // relations removed or rewritten here
};

struct DerivedPresentation {
  Presentation base;  // generators are exactly Lambda
  std::vector<DerivationTrace> provenance;  // final relations derived from the defining presentation
  std::vector<std::string> warnings;
};

// The four rewriting stages: drop R2 with X outside Lambda; drop the R1 of
// eliminated generators and fold mixed R2 into R2hat_c; rewrite R3 into
// R3a/R3b (dropping pairs entirely outside Lambda); eliminate the generators.
std::vector<PipelineStage> derive_via_steps(const CoxeterMatrix& m, const SectionCandidate& c);

// Direct instantiation of the derived relation families; equals the last
// pipeline stage up to ordering.
DerivedPresentation section_presentation(const CoxeterMatrix& m, const SectionCandidate& c);

// ---------- Z2 * Z2 ----------

// Alternating word over u, v (letters 0 and 1); the empty word is the identity.
struct FreeProductWord {
  std::vector<int> letters;

  static FreeProductWord empty() { return {}; }
  static FreeProductWord letter(int l) { return {{l}}; }
  FreeProductWord times(const FreeProductWord& o) const;
  bool is_identity() const { return letters.empty(); }
  bool operator==(const FreeProductWord& o) const { return letters == o.letters; }
  std::string str() const;
};

struct QuotientAssignment {
  std::map<Subset, FreeProductWord, SubsetLess> images;
  std::vector<Subset> witness;  // the subsets carrying u, v (and vuv if used)
};

// A surjection onto Z2 * Z2 through two chosen generators, validated
// before returning.
QuotientAssignment find_free_product_quotient(const CoxeterMatrix& m);

struct AssignmentReport {
  bool ok = false;
  std::vector<int> failed_relations;
};

AssignmentReport verify_assignment(const Presentation& p, const QuotientAssignment& q);

struct SplittingReport {
  bool ok = false;
  std::string detail;
};

// Certifies the split: two generators map to the two letters, so sending the
// letters back is a section of the quotient.
SplittingReport verify_splitting(const CoxeterMatrix& m, const QuotientAssignment& q);

struct LowerCentralResult {
  int n = 0;
  long long exponent = 0;  // Gamma_n is generated by (uv)^exponent for n >= 2
  bool whole_group = false;
  bool verified = false;
  std::string detail;
};

// Gamma_n of Z2 * Z2 and its brute-force verification in the dihedral
// quotient of order 2^{n+2}.
LowerCentralResult lower_central_z2z2(int n, int max_n = 8);

}  // namespace cactus

#endif
