#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ripple_zkp/engine.hpp"
#include "ripple_zkp/protocol.hpp"
#include "ripple_zkp/puzzle.hpp"
#include "ripple_zkp/transcript.hpp"

namespace ripple {

/// Statistical thresholds for the zero-knowledge audits.
inline constexpr double kUniformityAlpha = 0.001;
inline constexpr double kMaxTotalVariation = 0.05;
inline constexpr std::size_t kMinPoweredTrials = 1000;

/// How a family's reveals are expected to be distributed.
///  Uniform            one Heart, uniform over the row's columns
///  NoHeart            a uniqueness segment; accepting runs only ever show Clubs
///  PermutationMatrix  room reveals; each column shows E_k(v), v a uniform permutation
///  Degenerate         width-1 rows, nothing to test
enum class FamilyKind { Uniform, NoHeart, PermutationMatrix, Degenerate };

std::string_view to_string(FamilyKind kind);

/// Reveals are grouped by (step label, matrix class, width). Every reveal in an
/// accepting transcript falls into exactly one family.
struct RevealFamily {
  std::string key;
  FamilyKind kind = FamilyKind::Uniform;
  std::size_t domain = 0;  // row width, segment length, or room size
};

/// Raised when a transcript contains an event the audit has no family for.
class AuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Family of a reveal event; nullopt for non-reveal events. Throws AuditError for
/// reveal events of unknown shape.
std::optional<RevealFamily> classify(const Event& event);

struct FamilyHistogram {
  RevealFamily family;
  /// Uniform/Degenerate: bins 0..w-1 are Heart columns, bin w is "not exactly one Heart".
  /// NoHeart: bin 0 is all Clubs, bin i is first Heart at offset i, bin len+1 unused.
  /// PermutationMatrix: bin (column-1)*s + (value-1); bin s*s is a malformed column.
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;  // reveal events seen
};

/// Streams transcripts into per-family histograms and checks that all of them
/// share one event skeleton. Accumulators merge associatively, so trials can be
/// split across threads.
class AuditAccumulator {
 public:
  void add(const Transcript& transcript);
  void merge(const AuditAccumulator& other);

  std::size_t transcripts() const noexcept { return transcripts_; }
  const std::map<std::string, FamilyHistogram>& families() const noexcept { return families_; }
  const std::string& skeleton() const noexcept { return skeleton_; }
  /// First skeleton disagreement seen, if any.
  const std::optional<std::string>& skeleton_mismatch() const noexcept { return mismatch_; }

 private:
  void note_skeleton(const std::string& skeleton);

  std::size_t transcripts_ = 0;
  std::map<std::string, FamilyHistogram> families_;
  std::string skeleton_;
  std::optional<std::string> mismatch_;
};

/// Describes the first differing line of two skeletons, or nullopt if equal.
std::optional<std::string> skeleton_diff(const std::string& a, const std::string& b);

struct FamilyReport {
  RevealFamily family;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> counts;
  double chi_squared = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  std::optional<double> total_variation;  // set by the real-vs-simulated comparison
  bool pass = true;
};

struct AuditReport {
  std::size_t real_transcripts = 0;
  std::size_t simulated_transcripts = 0;
  bool underpowered = false;
  bool skeleton_ok = true;
  std::string skeleton_detail;
  std::vector<FamilyReport> families;
  bool pass = true;

  /// Same line-oriented style as transcripts; stable for a fixed input.
  std::string serialize() const;
};

/// Chi-squared goodness of fit per family against its expected distribution.
/// Passes iff every family has p >= kUniformityAlpha. Under-powered input (fewer than
/// kMinPoweredTrials transcripts) is reported with a warning and only skeleton
/// problems fail it.
AuditReport uniformity_audit(const AuditAccumulator& real);
AuditReport uniformity_audit(std::span<const Transcript> transcripts);

/// Total variation distance per family between real and simulated histograms, plus
/// skeleton identity. Passes iff skeletons match and every TVD <= kMaxTotalVariation.
/// Throws std::invalid_argument when the two sides have different trial counts.
AuditReport indistinguishability_audit(const AuditAccumulator& real,
                                       const AuditAccumulator& simulated);
AuditReport indistinguishability_audit(std::span<const Transcript> real,
                                       std::span<const Transcript> simulated);

/// Both checks in one report; used by the CLI.
AuditReport full_audit(const AuditAccumulator& real, const AuditAccumulator& simulated);

double chi_squared_p_value(double statistic, double degrees_of_freedom);
double total_variation_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// ---------------------------------------------------------------------------
// Simulator

struct SimulatorOptions {
  bool dedupe_directions = false;
  /// Room-phase permutation source. Defaults to a uniform permutation; tests swap
  /// in a biased one to check that the audit notices.
  std::function<std::vector<std::size_t>(std::size_t, RandomSource&)> room_permutation;
};

/// An accepting transcript built from the puzzle shape alone: every Heart position
/// is drawn uniformly, every uniqueness segment shows Clubs, and every room shows a
/// random permutation of E_k(1)..E_k(s). Never sees a solution.
Transcript simulate_transcript(const Puzzle& puzzle, RandomSource& rng,
                               const SimulatorOptions& options = {});

// ---------------------------------------------------------------------------
// Harnesses

/// Independent per-trial seed derived from a base seed (splitmix64).
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t trial);

/// Runs `trials` honest protocol sessions (seeds trial_seed(base, 0, i)) and
/// accumulates their transcripts.
AuditAccumulator collect_real(const Puzzle& puzzle, const Assignment& solution,
                              std::uint64_t base_seed, std::size_t trials,
                              const ProtocolOptions& options = {}, unsigned threads = 0);

/// Same for the simulator (seeds trial_seed(base, 1, i)).
AuditAccumulator collect_simulated(const Puzzle& puzzle, std::uint64_t base_seed,
                                   std::size_t trials, const SimulatorOptions& options = {},
                                   unsigned threads = 0);

struct SoundnessReport {
  std::size_t mutations = 0;           // cells x (k-1) alternatives
  std::size_t expected_rejects = 0;    // committed table fails validate
  std::size_t excluded_valid = 0;      // mutation happens to be another solution
  std::size_t excluded_fixed = 0;      // mutation on a fixed cell, which is placed publicly
  std::size_t runs = 0;
  std::size_t false_accepts = 0;
  std::size_t false_rejects = 0;       // excluded mutations that were rejected anyway
  std::vector<std::string> failures;
  bool pass = true;
};

/// Every single-cell change of `solution` to another value in 1..k, run through the
/// protocol under `seeds_per_mutation` seeds. The expected verdict comes from
/// validate() on the table that actually gets committed.
SoundnessReport soundness_sweep(const Puzzle& puzzle, const Assignment& solution,
                                std::uint64_t base_seed, std::size_t seeds_per_mutation = 1,
                                unsigned threads = 0);

}  // namespace ripple
