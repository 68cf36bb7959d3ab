#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asymspec/bracket.hpp"
#include "asymspec/family.hpp"

namespace asymspec {

enum class VerdictKind { AsymptoticEquiv, AsymptoticCommuting, QuasinilpotentEquiv, QuasinilpotentSingle };
enum class VerdictResult { Holds, Fails, Inconclusive };

const char* to_string(VerdictKind k) noexcept;
const char* to_string(VerdictResult r) noexcept;

/// Evidence for one bracket direction.
struct DirectionEvidence {
  BracketSequence sequence;
  RootLimit limit;
};

struct EquivalenceVerdict {
  VerdictKind kind = VerdictKind::AsymptoticEquiv;
  VerdictResult result = VerdictResult::Inconclusive;
  double tol = 0.0;
  /// Norm-trace kinds.
  std::optional<TailEstimate> tail;
  /// Bracket kinds: S-T first, then T-S (a single entry for the one-family test).
  std::vector<DirectionEvidence> directions;
  bool both_directions = false;

  bool holds() const noexcept { return result == VerdictResult::Holds; }
};

/// h -> |S_h - T_h|
std::vector<double> difference_trace(const FamilySpec& sf, const FamilySpec& tf, const HGrid& grid);
/// h -> |S_h T_h - T_h S_h|
std::vector<double> commutator_trace(const FamilySpec& sf, const FamilySpec& tf, const HGrid& grid);

/// Pass tol <= 0 to use the defaults (default_vanish_tol for norm traces,
/// default_root_tol for n-th roots).
EquivalenceVerdict asymptotic_equiv(const FamilySpec& sf, const FamilySpec& tf, const HGrid& grid,
                                    double tol = 0.0);

EquivalenceVerdict asymptotic_commuting(const FamilySpec& sf, const FamilySpec& tf,
                                        const HGrid& grid, double tol = 0.0);

/// Holds iff both bracket directions classify Zero; Fails if either is
/// Positive; otherwise Inconclusive.
EquivalenceVerdict quasinilpotent_equiv(const FamilySpec& sf, const FamilySpec& tf,
                                        const HGrid& grid, unsigned n_max = kDefaultSequenceLength,
                                        double tol = 0.0);

EquivalenceVerdict is_asymptotic_quasinilpotent(const FamilySpec& uf, const HGrid& grid,
                                                unsigned n_max = kDefaultSequenceLength,
                                                double tol = 0.0);

/// {kind, result, evidence_summary, both_directions}
std::string to_json(const EquivalenceVerdict& v);

}  // namespace asymspec
