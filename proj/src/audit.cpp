#include "ripple_zkp/audit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

namespace ripple {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Uniform: return "uniform";
    case FamilyKind::NoHeart: return "no_heart";
    case FamilyKind::PermutationMatrix: return "permutation";
    case FamilyKind::Degenerate: return "degenerate";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Families

namespace {

const std::set<std::string, std::less<>> kRowSteps = {
    "dist.3",  "dist.6.rearr", "dist.9",         "dist.11.uniq.3", "dist.12.rearr",
    "dist.14", "dist.16.rearr", "uniq.uniq.3",
};
const std::set<std::string, std::less<>> kSegmentSteps = {"dist.11.uniq.4", "uniq.uniq.4"};
const std::set<std::string, std::less<>> kAllSteps = {"room.3"};

// Room matrices are numbered per room ("R7"); they share one class.
std::string matrix_class(const std::string& id) {
  if (id.size() > 1 && id.front() == 'R' &&
      std::all_of(id.begin() + 1, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return "R";
  return id;
}

std::string family_key(const std::string& step, const std::string& matrix, std::size_t width) {
  return step + "|" + matrix_class(matrix) + "|" + std::to_string(width);
}

std::size_t bin_count(const RevealFamily& f) {
  switch (f.kind) {
    case FamilyKind::Uniform:
    case FamilyKind::Degenerate: return f.domain + 1;
    case FamilyKind::NoHeart: return f.domain + 1;
    case FamilyKind::PermutationMatrix: return f.domain * f.domain + 1;
  }
  return 0;
}

}  // namespace

std::optional<RevealFamily> classify(const Event& event) {
  if (const auto* e = std::get_if<RevealRow>(&event)) {
    if (!kRowSteps.contains(e->step)) throw AuditError("unknown row reveal step '" + e->step + "'");
    const std::size_t w = e->faces.size();
    return RevealFamily{family_key(e->step, e->matrix, w),
                        w > 1 ? FamilyKind::Uniform : FamilyKind::Degenerate, w};
  }
  if (const auto* e = std::get_if<RevealSegment>(&event)) {
    if (!kSegmentSteps.contains(e->step))
      throw AuditError("unknown segment reveal step '" + e->step + "'");
    const std::size_t len = e->faces.size();
    return RevealFamily{family_key(e->step, e->matrix, len), FamilyKind::NoHeart, len};
  }
  if (const auto* e = std::get_if<RevealAll>(&event)) {
    if (!kAllSteps.contains(e->step)) throw AuditError("unknown full reveal step '" + e->step + "'");
    return RevealFamily{family_key(e->step, e->matrix, e->cols), FamilyKind::PermutationMatrix,
                        e->cols};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Accumulator

std::optional<std::string> skeleton_diff(const std::string& a, const std::string& b) {
  if (a == b) return std::nullopt;
  std::size_t pos_a = 0;
  std::size_t pos_b = 0;
  for (std::size_t line = 1;; ++line) {
    const auto end_a = std::min(a.find('\n', pos_a), a.size());
    const auto end_b = std::min(b.find('\n', pos_b), b.size());
    const std::string_view la = pos_a < a.size() ? std::string_view(a).substr(pos_a, end_a - pos_a) : "<end>";
    const std::string_view lb = pos_b < b.size() ? std::string_view(b).substr(pos_b, end_b - pos_b) : "<end>";
    if (la != lb)
      return "event " + std::to_string(line) + ": '" + std::string(la) + "' vs '" + std::string(lb) + "'";
    pos_a = end_a + 1;
    pos_b = end_b + 1;
  }
}

void AuditAccumulator::note_skeleton(const std::string& skeleton) {
  if (skeleton_.empty() && transcripts_ == 0) {
    skeleton_ = skeleton;
    return;
  }
  if (!mismatch_) mismatch_ = skeleton_diff(skeleton_, skeleton);
}

void AuditAccumulator::add(const Transcript& transcript) {
  for (const Event& event : transcript.events()) {
    auto family = classify(event);
    if (!family) continue;
    auto [it, inserted] = families_.try_emplace(family->key);
    FamilyHistogram& h = it->second;
    if (inserted) {
      h.family = *family;
      h.counts.assign(bin_count(*family), 0);
    }
    ++h.samples;
    const std::size_t w = family->domain;
    if (const auto* row = std::get_if<RevealRow>(&event)) {
      const auto pos = single_heart(row->faces);
      ++h.counts[pos ? *pos - 1 : w];
    } else if (const auto* seg = std::get_if<RevealSegment>(&event)) {
      const auto first = std::find(seg->faces.begin(), seg->faces.end(), Suit::Heart);
      ++h.counts[first == seg->faces.end() ? 0 : static_cast<std::size_t>(first - seg->faces.begin()) + 1];
    } else if (const auto* all = std::get_if<RevealAll>(&event)) {
      for (std::size_t j = 0; j < all->columns.size(); ++j) {
        const auto v = decode(all->columns[j]);
        if (v && *v >= 1 && *v <= w) ++h.counts[j * w + (*v - 1)];
        else ++h.counts[w * w];
      }
    }
  }
  note_skeleton(transcript.skeleton());
  ++transcripts_;
}

void AuditAccumulator::merge(const AuditAccumulator& other) {
  if (other.transcripts_ == 0) return;
  if (transcripts_ == 0) {
    skeleton_ = other.skeleton_;
  } else if (!mismatch_) {
    mismatch_ = skeleton_diff(skeleton_, other.skeleton_);
  }
  if (!mismatch_ && other.mismatch_) mismatch_ = other.mismatch_;
  for (const auto& [key, h] : other.families_) {
    auto [it, inserted] = families_.try_emplace(key, h);
    if (inserted) continue;
    it->second.samples += h.samples;
    for (std::size_t i = 0; i < h.counts.size(); ++i) it->second.counts[i] += h.counts[i];
  }
  transcripts_ += other.transcripts_;
}

// ---------------------------------------------------------------------------
// Statistics

double chi_squared_p_value(double statistic, double degrees_of_freedom) {
  if (degrees_of_freedom <= 0.0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

double total_variation_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  const std::size_t n = std::max(a.size(), b.size());
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (auto x : a) sum_a += static_cast<double>(x);
  for (auto x : b) sum_b += static_cast<double>(x);
  if (sum_a == 0.0 && sum_b == 0.0) return 0.0;
  if (sum_a == 0.0 || sum_b == 0.0) return 1.0;
  double tvd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pa = i < a.size() ? static_cast<double>(a[i]) / sum_a : 0.0;
    const double pb = i < b.size() ? static_cast<double>(b[i]) / sum_b : 0.0;
    tvd += std::abs(pa - pb);
  }
  return tvd / 2.0;
}

namespace {

// Fills chi_squared, degrees_of_freedom and p_value for one family.
void goodness_of_fit(FamilyReport& r) {
  const auto& f = r.family;
  const auto& counts = r.counts;
  const std::size_t w = f.domain;
  switch (f.kind) {
    case FamilyKind::Degenerate:
      r.p_value = 1.0;
      return;
    case FamilyKind::NoHeart: {
      const std::uint64_t off = r.samples - counts[0];
      r.chi_squared = static_cast<double>(off);
      r.p_value = off == 0 ? 1.0 : 0.0;
      return;
    }
    case FamilyKind::Uniform: {
      if (counts[w] > 0) {
        r.chi_squared = INFINITY;
        r.degrees_of_freedom = static_cast<double>(w - 1);
        r.p_value = 0.0;
        return;
      }
      const double expected = static_cast<double>(r.samples) / static_cast<double>(w);
      double x = 0.0;
      for (std::size_t i = 0; i < w; ++i) {
        const double d = static_cast<double>(counts[i]) - expected;
        x += d * d / expected;
      }
      r.chi_squared = x;
      r.degrees_of_freedom = static_cast<double>(w - 1);
      r.p_value = chi_squared_p_value(x, r.degrees_of_freedom);
      return;
    }
    case FamilyKind::PermutationMatrix: {
      if (counts[w * w] > 0) {
        r.chi_squared = INFINITY;
        r.p_value = 0.0;
        return;
      }
      if (w <= 1) {
        r.p_value = 1.0;
        return;
      }
      // Sums of uniform permutation matrices: (s-1)/s * X follows chi^2 with (s-1)^2 df.
      const double s = static_cast<double>(w);
      const double expected = static_cast<double>(r.samples) / s;
      double x = 0.0;
      for (std::size_t i = 0; i < w * w; ++i) {
        const double d = static_cast<double>(counts[i]) - expected;
        x += d * d / expected;
      }
      r.chi_squared = x * (s - 1.0) / s;
      r.degrees_of_freedom = (s - 1.0) * (s - 1.0);
      r.p_value = chi_squared_p_value(r.chi_squared, r.degrees_of_freedom);
      return;
    }
  }
}

AuditReport build_report(const AuditAccumulator& real, const AuditAccumulator* simulated,
                         bool check_uniformity) {
  AuditReport report;
  report.real_transcripts = real.transcripts();
  report.simulated_transcripts = simulated ? simulated->transcripts() : 0;
  report.underpowered = real.transcripts() < kMinPoweredTrials ||
                        (simulated && simulated->transcripts() < kMinPoweredTrials);

  if (real.skeleton_mismatch()) {
    report.skeleton_ok = false;
    report.skeleton_detail = "real transcripts disagree: " + *real.skeleton_mismatch();
  } else if (simulated && simulated->skeleton_mismatch()) {
    report.skeleton_ok = false;
    report.skeleton_detail = "simulated transcripts disagree: " + *simulated->skeleton_mismatch();
  } else if (simulated) {
    if (auto d = skeleton_diff(real.skeleton(), simulated->skeleton())) {
      report.skeleton_ok = false;
      report.skeleton_detail = "real vs simulated: " + *d;
    }
  }

  std::set<std::string> keys;
  for (const auto& [key, h] : real.families()) keys.insert(key);
  if (simulated)
    for (const auto& [key, h] : simulated->families()) keys.insert(key);

  bool stats_pass = true;
  for (const auto& key : keys) {
    FamilyReport r;
    const auto it = real.families().find(key);
    const FamilyHistogram* sim = nullptr;
    if (simulated) {
      const auto sit = simulated->families().find(key);
      if (sit != simulated->families().end()) sim = &sit->second;
    }
    if (it != real.families().end()) {
      r.family = it->second.family;
      r.samples = it->second.samples;
      r.counts = it->second.counts;
    } else {
      r.family = sim->family;
    }
    if (check_uniformity && it != real.families().end()) {
      goodness_of_fit(r);
      if (r.p_value < kUniformityAlpha) r.pass = false;
    }
    if (simulated) {
      const std::vector<std::uint64_t> none;
      r.total_variation = total_variation_distance(
          it != real.families().end() ? std::span<const std::uint64_t>(it->second.counts) : none,
          sim ? std::span<const std::uint64_t>(sim->counts) : none);
      if (*r.total_variation > kMaxTotalVariation) r.pass = false;
    }
    stats_pass = stats_pass && r.pass;
    report.families.push_back(std::move(r));
  }
  report.pass = report.skeleton_ok && (report.underpowered || stats_pass);
  return report;
}

AuditAccumulator accumulate(std::span<const Transcript> transcripts) {
  AuditAccumulator acc;
  for (const auto& t : transcripts) acc.add(t);
  return acc;
}

std::string format_double(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

AuditReport uniformity_audit(const AuditAccumulator& real) {
  return build_report(real, nullptr, true);
}

AuditReport uniformity_audit(std::span<const Transcript> transcripts) {
  return uniformity_audit(accumulate(transcripts));
}

AuditReport indistinguishability_audit(const AuditAccumulator& real,
                                       const AuditAccumulator& simulated) {
  if (real.transcripts() != simulated.transcripts())
    throw std::invalid_argument("real and simulated sides need equal transcript counts");
  return build_report(real, &simulated, false);
}

AuditReport indistinguishability_audit(std::span<const Transcript> real,
                                       std::span<const Transcript> simulated) {
  return indistinguishability_audit(accumulate(real), accumulate(simulated));
}

AuditReport full_audit(const AuditAccumulator& real, const AuditAccumulator& simulated) {
  if (real.transcripts() != simulated.transcripts())
    throw std::invalid_argument("real and simulated sides need equal transcript counts");
  return build_report(real, &simulated, true);
}

std::string AuditReport::serialize() const {
  std::string out = "ripple-zkp-audit 1\n";
  out += "summary real=" + std::to_string(real_transcripts) +
         " simulated=" + std::to_string(simulated_transcripts) +
         " families=" + std::to_string(families.size()) +
         " underpowered=" + (underpowered ? "yes" : "no") +
         " skeleton=" + (skeleton_ok ? "identical" : "mismatch") +
         " pass=" + (pass ? "yes" : "no") + "\n";
  if (underpowered)
    out += "warning fewer than " + std::to_string(kMinPoweredTrials) +
           " transcripts; family statistics are informational\n";
  if (!skeleton_ok) out += "skeleton_mismatch " + skeleton_detail + "\n";
  for (const auto& f : families) {
    out += "family key=" + f.family.key + " kind=" + std::string(to_string(f.family.kind)) +
           " domain=" + std::to_string(f.family.domain) + " samples=" + std::to_string(f.samples) +
           " chi2=" + format_double(f.chi_squared) + " df=" + format_double(f.degrees_of_freedom) +
           " p=" + format_double(f.p_value);
    if (f.total_variation) out += " tvd=" + format_double(*f.total_variation);
    out += " pass=" + std::string(f.pass ? "yes" : "no") + " counts=";
    for (std::size_t i = 0; i < f.counts.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(f.counts[i]);
    }
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simulator

namespace {

// Mirrors the real distance check event for event, with uniform Heart positions.
void simulate_distance_check(Transcript& t, RandomSource& rng, std::size_t k,
                             const std::string& detail) {
  const std::size_t wide = 2 * k - 1;
  const auto ks = static_cast<long>(k);
  const auto row_reveal = [&](const char* matrix, const char* step, std::size_t row,
                              std::size_t width) {
    const std::size_t j = rng.uniform(width) + 1;
    t.append(RevealRow{matrix, step, row, encode(j, width)});
    return j;
  };
  const auto rearrange = [&](const char* matrix, const char* step, std::size_t width) {
    t.append(ShuffleEvent{matrix, ShuffleKind::PileShift});
    const std::size_t j = row_reveal(matrix, step, 1, width);
    t.append(PublicShift{matrix, -static_cast<long>(j - 1)});
  };

  t.append(SubprotocolMark{"distance", detail, true});
  t.append(ShuffleEvent{"M", ShuffleKind::PileShift});
  const std::size_t j1 = row_reveal("M", "dist.3", 2, k);
  t.append(PublicShift{"M", ks - static_cast<long>(j1)});
  rearrange("M1", "dist.6.rearr", k);

  t.append(ShuffleEvent{"M2", ShuffleKind::PileShift});
  row_reveal("M2", "dist.9", 1, wide);

  t.append(ShuffleEvent{"N", ShuffleKind::PileShift});
  const std::size_t j = row_reveal("N", "dist.11.uniq.3", 2, k);
  t.append(RevealSegment{"N", "dist.11.uniq.4", j, 3, k + 2, Sequence(k, Suit::Club)});
  rearrange("N", "dist.12.rearr", k);

  t.append(ShuffleEvent{"M2", ShuffleKind::PileShift});
  std::size_t j3 = 1;
  if (k == 1) t.append(RevealRow{"M2", "dist.14", 2, Sequence(1, Suit::Club)});
  else j3 = row_reveal("M2", "dist.14", 2, wide);
  t.append(PublicShift{"M2", ks + 1 - static_cast<long>(j3)});
  rearrange("M2", "dist.16.rearr", k);
  t.append(SubprotocolMark{"distance", detail, false});
}

}  // namespace

Transcript simulate_transcript(const Puzzle& puzzle, RandomSource& rng,
                               const SimulatorOptions& options) {
  static constexpr Direction kAll[] = {Direction::Right, Direction::Left, Direction::Up,
                                       Direction::Down};
  Transcript t;
  const auto k = static_cast<std::size_t>(max_room_size(puzzle));
  for (int r = 1; r <= puzzle.rows(); ++r) {
    for (int c = 1; c <= puzzle.cols(); ++c) {
      for (Direction d : kAll) {
        if (options.dedupe_directions && (d == Direction::Left || d == Direction::Up)) continue;
        simulate_distance_check(t, rng, k,
                                std::to_string(r) + "," + std::to_string(c) + ":" +
                                    std::string(to_string(d)));
      }
    }
  }
  for (RoomId room = 0; room < puzzle.room_count(); ++room) {
    const auto s = static_cast<std::size_t>(puzzle.room_size(room));
    const std::string id = "R" + std::to_string(room + 1);
    const std::string detail = id + ":size=" + std::to_string(s);
    t.append(SubprotocolMark{"room", detail, true});
    t.append(ShuffleEvent{id, ShuffleKind::PileScramble});
    const auto perm = options.room_permutation ? options.room_permutation(s, rng)
                                               : rng.permutation(s);
    std::vector<Sequence> columns;
    columns.reserve(s);
    for (std::size_t j = 0; j < s; ++j) columns.push_back(encode(perm[j] + 1, k));
    t.append(RevealAll{id, "room.3", k, s, std::move(columns)});
    t.append(SubprotocolMark{"room", detail, false});
  }
  t.append(VerdictEvent{true, std::string(to_string(RejectReason::None))});
  return t;
}

// ---------------------------------------------------------------------------
// Harnesses

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t trial) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (2 * trial + 1) + (stream << 56);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

unsigned thread_count(unsigned requested, std::size_t work) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

// Runs body(i, acc) for i in [0, trials) over contiguous chunks and merges in order.
template <class Body>
AuditAccumulator parallel_collect(std::size_t trials, unsigned threads, Body body) {
  const unsigned n = thread_count(threads, trials);
  std::vector<AuditAccumulator> parts(n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t lo = trials * w / n;
        const std::size_t hi = trials * (w + 1) / n;
        for (std::size_t i = lo; i < hi; ++i) body(i, parts[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  AuditAccumulator out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

}  // namespace

AuditAccumulator collect_real(const Puzzle& puzzle, const Assignment& solution,
                              std::uint64_t base_seed, std::size_t trials,
                              const ProtocolOptions& options, unsigned threads) {
  const ProverInput prover{solution, Honesty::Honest};
  ProtocolOptions quiet = options;
  quiet.probe = nullptr;
  return parallel_collect(trials, threads, [&](std::size_t i, AuditAccumulator& acc) {
    Session session(trial_seed(base_seed, 0, i));
    session.audit.enabled = false;
    run_protocol(puzzle, prover, session, quiet);
    acc.add(session.transcript);
  });
}

AuditAccumulator collect_simulated(const Puzzle& puzzle, std::uint64_t base_seed,
                                   std::size_t trials, const SimulatorOptions& options,
                                   unsigned threads) {
  return parallel_collect(trials, threads, [&](std::size_t i, AuditAccumulator& acc) {
    RandomSource rng(trial_seed(base_seed, 1, i));
    acc.add(simulate_transcript(puzzle, rng, options));
  });
}

SoundnessReport soundness_sweep(const Puzzle& puzzle, const Assignment& solution,
                                std::uint64_t base_seed, std::size_t seeds_per_mutation,
                                unsigned threads) {
  if (!validate(puzzle, solution).empty())
    throw std::invalid_argument("soundness sweep needs a valid solution to mutate");
  const int k = max_room_size(puzzle);

  struct Mutation {
    Cell cell;
    int value;
    bool expect_accept;
  };
  SoundnessReport report;
  std::vector<Mutation> mutations;
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(puzzle.cell_count()); ++idx) {
    const Cell cell = puzzle.cell_at(idx);
    for (int v = 1; v <= k; ++v) {
      if (v == solution.at(cell)) continue;
      ++report.mutations;
      Assignment mutated = solution;
      mutated.set(cell, v);
      Assignment committed = mutated;
      if (auto f = puzzle.fixed(cell)) committed.set(cell, *f);
      const bool expect_accept = validate(puzzle, committed).empty();
      if (puzzle.fixed(cell)) ++report.excluded_fixed;
      else if (expect_accept) ++report.excluded_valid;
      else ++report.expected_rejects;
      mutations.push_back({cell, v, expect_accept});
    }
  }

  const std::size_t jobs = mutations.size() * seeds_per_mutation;
  const unsigned n = thread_count(threads, jobs);
  std::vector<SoundnessReport> parts(n);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      SoundnessReport& part = parts[w];
      for (std::size_t job = jobs * w / n; job < jobs * (w + 1) / n; ++job) {
        const Mutation& m = mutations[job / seeds_per_mutation];
        Assignment mutated = solution;
        mutated.set(m.cell, m.value);
        Session session(trial_seed(base_seed, 2, job));
        session.audit.enabled = false;
        const Verdict v = run_protocol(puzzle, {mutated, Honesty::Arbitrary}, session);
        ++part.runs;
        if (v.accepted == m.expect_accept) continue;
        (v.accepted ? part.false_accepts : part.false_rejects) += 1;
        part.failures.push_back(to_string(m.cell) + "=" + std::to_string(m.value) + " " +
                                (v.accepted ? "accepted" : "rejected " + v.describe()));
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& p : parts) {
    report.runs += p.runs;
    report.false_accepts += p.false_accepts;
    report.false_rejects += p.false_rejects;
    report.failures.insert(report.failures.end(), p.failures.begin(), p.failures.end());
  }
  report.pass = report.false_accepts == 0 && report.false_rejects == 0;
  return report;
}

}  // namespace ripple
