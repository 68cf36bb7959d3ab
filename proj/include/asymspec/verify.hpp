#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace asymspec {

struct VerifyCheck {
  enum class Relation { AtMost, AtLeast };

  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::AtMost;
  bool passed = false;
};

struct VerifySuite {
  std::string name;
  std::vector<VerifyCheck> checks;

  bool passed() const noexcept;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<VerifySuite> suites;

  bool passed() const noexcept;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Names of the built-in suites, in run order.
std::vector<std::string> verify_suite_names();

/// Runs every suite, or only `only` when it is non-empty (BadParameter if no
/// suite has that name). Fixtures derive their random matrices from `seed`.
/// An exception inside a suite becomes a failed check rather than escaping.
VerifyReport run_verify(std::uint64_t seed = kDefaultSeed, std::string_view only = {});

/// Byte-stable for a fixed seed: no timings, no addresses.
std::string to_json(const VerifyReport& report);

}  // namespace asymspec
