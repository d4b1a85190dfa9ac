#ifndef SYNCMAT_HARNESS_HPP
#define SYNCMAT_HARNESS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncmat/automaton.hpp"
#include "syncmat/l_matrix.hpp"

namespace syncmat {

/// The n-state cyclic automaton with one merging letter: letter a steps
/// i -> i+1 (n -> 1), letter b sends 1 -> 2 and fixes everything else. Its
/// shortest reset word has length (n-1)^2 and ends on state 2.
Dfa build_cerny(int n);

/// The classical 6-state binary example whose shortest reset word has length
/// 25. States follow the usual 0..5 labelling shifted to 1..6, sink = 1.
Dfa build_kari();

/// The classical 5-state three-letter example whose shortest reset word has
/// length 16. Sink = 1.
Dfa build_roman();

/// One archival line of a reference table: a word and the printed image
/// vector. `actual` is set on lines where the printed vector is a strict
/// superset of the word's image (an annotated substitution). `divergent` is
/// set on lines whose printed vector is inconsistent with the automaton; the
/// corrected (computed) vector is stored and used everywhere downstream,
/// while the printed value is kept for archival fidelity.
struct GoldenLine {
  Word word;
  StateSet printed;
  std::optional<StateSet> actual;
  std::optional<StateSet> divergent;
};

struct GoldenTable {
  std::string id;
  int n = 0;
  State q = 0;
  std::string alphabet;
  Word sync_word;
  std::vector<GoldenLine> lines;
};

/// Line-oriented format:
///   golden <id>
///   n <n>
///   q <q>
///   alphabet <letters>
///   sync <word>
///   line <word> <vector> [actual <vector>] [divergent <vector>]
/// '#' starts a comment.
GoldenTable parse_golden(std::string_view text);
std::string serialize_golden(const GoldenTable& table);

/// Embedded copies of the shipped reference tables (see core/data/golden/).
const GoldenTable& golden_kari();
const GoldenTable& golden_cerny4();
const GoldenTable& golden_roman();

struct ReplayResult {
  int lines = 0;
  int verbatim = 0;          // lines whose printed/annotated value matched
  int divergent = 0;         // lines checked against the corrected value
  std::vector<int> failures; // 1-based indices of mismatching lines
  bool ok() const { return failures.empty(); }
};

/// Replays every line against apply(full, word). Plain lines must match the
/// printed vector, annotated lines the `actual` vector, divergent lines the
/// corrected vector (and the corrected value must differ from the printed
/// one, or the annotation is stale).
ReplayResult replay_golden(const Dfa& dfa, const GoldenTable& table);

/// Golden-table-driven chain: one canonical matrix per table line, built from
/// the printed vector (substituted lines therefore use the printed superset),
/// with divergent lines using the corrected vector. Substitutions are
/// cross-checked for strict containment of the computed image.
ChainReport independent_chain(const Dfa& dfa, const GoldenTable& table);

struct CensusOptions {
  bool require_strongly_connected = true;
  bool require_synchronizing = true;
  bool dedup = false;           // count canonical forms under state x letter perms
  long long budget = 20'000'000;
  int shards = 0;               // 0 = hardware concurrency
};

struct CensusReport {
  int n = 0, k = 0;
  long long total_tables = 0;
  long long examined = 0;
  bool partial = false;          // budget cut the enumeration short
  long long admitted = 0;        // tables passing the filters
  int max_reset_length = 0;
  long long max_witness_code = -1;
  long long extremal_tables = 0;   // reset length == (n-1)^2
  long long canonical_admitted = 0;  // canonical forms among admitted (dedup)
  long long extremal_classes = 0;    // canonical forms among extremal (dedup)
  int quadratic_bound = 0;       // (n-1)^2
  int cubic_bound = 0;           // (n^3 - n)/6
  long long over_quadratic = 0;
  long long over_cubic = 0;
};

/// Exhaustive sweep over all n^(k*n) transition tables (code order), filtered
/// and bounded by the budget; a hit budget flags the report as partial, never
/// silently truncates. Shards are processed concurrently and merged.
CensusReport audit_small_dfas(int n, int k, const CensusOptions& options = {});

/// Decodes a table code as produced by the census (base-n digits, letter-major).
Dfa dfa_from_code(int n, int k, long long code);

struct SuffixRankReport {
  int suffix_count = 0;
  int distinct_count = 0;
  int rank = 0;
  bool full_rank() const { return rank == distinct_count; }
};

/// Exact rank of the family of matrices of all nonempty suffixes of s.
SuffixRankReport right_subword_independence(const Dfa& dfa, const Word& s);

std::string census_to_tsv(const CensusReport& r);
std::string census_to_json(const CensusReport& r);

}  // namespace syncmat

#endif
