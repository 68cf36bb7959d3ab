#include "asymspec/equivalence.hpp"

#include "asymspec/error.hpp"
#include "json_util.hpp"

namespace asymspec {

const char* to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::AsymptoticEquiv: return "AsymptoticEquiv";
    case VerdictKind::AsymptoticCommuting: return "AsymptoticCommuting";
    case VerdictKind::QuasinilpotentEquiv: return "QuasinilpotentEquiv";
    case VerdictKind::QuasinilpotentSingle: return "QuasinilpotentSingle";
  }
  return "AsymptoticEquiv";
}

const char* to_string(VerdictResult r) noexcept {
  switch (r) {
    case VerdictResult::Holds: return "Holds";
    case VerdictResult::Fails: return "Fails";
    case VerdictResult::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

void require_same_dim(const FamilySpec& sf, const FamilySpec& tf) {
  if (sf.dim() != tf.dim())
    throw Error(ErrorCode::DimensionMismatch, "families differ in dimension (" +
                                                  std::to_string(sf.dim()) + " vs " +
                                                  std::to_string(tf.dim()) + ")");
}

EquivalenceVerdict trace_verdict(VerdictKind kind, const std::vector<double>& trace,
                                 const HGrid& grid, double tol) {
  EquivalenceVerdict v;
  v.kind = kind;
  v.tol = tol > 0.0 ? tol : default_vanish_tol(trace);
  v.tail = tail_limsup(trace, grid);
  v.both_directions = true;  // |S-T| and |ST-TS| are symmetric in the pair
  if (v.tail->value > v.tol) v.result = VerdictResult::Fails;
  else if (v.tail->trend == Trend::Increasing) v.result = VerdictResult::Inconclusive;
  else v.result = VerdictResult::Holds;
  return v;
}

VerdictResult combine(const std::vector<DirectionEvidence>& dirs) {
  bool all_zero = true;
  for (const auto& d : dirs) {
    if (d.limit.kind == RootLimit::Kind::Positive) return VerdictResult::Fails;
    all_zero = all_zero && d.limit.kind == RootLimit::Kind::Zero;
  }
  return all_zero ? VerdictResult::Holds : VerdictResult::Inconclusive;
}

}  // namespace

std::vector<double> difference_trace(const FamilySpec& sf, const FamilySpec& tf, const HGrid& grid) {
  require_same_dim(sf, tf);
  return scalar_trace([&](double h) { return norm2(sub(family_eval(sf, h), family_eval(tf, h))); },
                      grid);
}

std::vector<double> commutator_trace(const FamilySpec& sf, const FamilySpec& tf, const HGrid& grid) {
  require_same_dim(sf, tf);
  return scalar_trace(
      [&](double h) {
        const ComplexMatrix s = family_eval(sf, h);
        const ComplexMatrix t = family_eval(tf, h);
        return norm2(sub(mul(s, t), mul(t, s)));
      },
      grid);
}

EquivalenceVerdict asymptotic_equiv(const FamilySpec& sf, const FamilySpec& tf, const HGrid& grid,
                                    double tol) {
  return trace_verdict(VerdictKind::AsymptoticEquiv, difference_trace(sf, tf, grid), grid, tol);
}

EquivalenceVerdict asymptotic_commuting(const FamilySpec& sf, const FamilySpec& tf,
                                        const HGrid& grid, double tol) {
  return trace_verdict(VerdictKind::AsymptoticCommuting, commutator_trace(sf, tf, grid), grid, tol);
}

EquivalenceVerdict quasinilpotent_equiv(const FamilySpec& sf, const FamilySpec& tf,
                                        const HGrid& grid, unsigned n_max, double tol) {
  require_same_dim(sf, tf);
  EquivalenceVerdict v;
  v.kind = VerdictKind::QuasinilpotentEquiv;
  v.tol = tol > 0.0 ? tol : default_root_tol(grid, sf.dim());
  for (const auto& [a, b] : {std::pair{&sf, &tf}, std::pair{&tf, &sf}}) {
    BracketSequence seq = bracket_sequence(*a, *b, grid, n_max);
    const RootLimit lim = root_limit(seq, v.tol);
    v.directions.push_back({std::move(seq), lim});
  }
  v.both_directions = true;
  v.result = combine(v.directions);
  return v;
}

EquivalenceVerdict is_asymptotic_quasinilpotent(const FamilySpec& uf, const HGrid& grid,
                                                unsigned n_max, double tol) {
  EquivalenceVerdict v;
  v.kind = VerdictKind::QuasinilpotentSingle;
  v.tol = tol > 0.0 ? tol : default_root_tol(grid, uf.dim());
  BracketSequence seq = power_sequence(uf, grid, n_max);
  const RootLimit lim = root_limit(seq, v.tol);
  v.directions.push_back({std::move(seq), lim});
  v.both_directions = false;
  v.result = combine(v.directions);
  return v;
}

std::string to_json(const EquivalenceVerdict& v) {
  using nlohmann::json;
  json evidence;
  evidence["tol"] = detail::number(v.tol);
  if (v.tail) evidence["trace"] = detail::tail_json(*v.tail);
  if (!v.directions.empty()) {
    static constexpr const char* names[] = {"s_minus_t", "t_minus_s"};
    json dirs = json::object();
    for (std::size_t k = 0; k < v.directions.size(); ++k) {
      const auto& d = v.directions[k];
      const auto tail4 = std::span<const double>(d.sequence.roots).last(
          std::min<std::size_t>(kRootTailLength, d.sequence.roots.size()));
      dirs[v.directions.size() == 1 ? "powers" : names[k]] = {
          {"n_max", d.sequence.n_max},
          {"limit", to_string(d.limit.kind)},
          {"estimate", detail::number(d.limit.estimate)},
          {"last_roots", detail::numbers(tail4)},
      };
    }
    evidence["brackets"] = std::move(dirs);
  }
  json out = {{"kind", to_string(v.kind)},
              {"result", to_string(v.result)},
              {"evidence_summary", std::move(evidence)},
              {"both_directions", v.both_directions}};
  return out.dump(2);
}

}  // namespace asymspec
