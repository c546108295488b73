#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "flagrank/algebra/ratfunc.hpp"

namespace flagrank {

struct SampleSpec {
  std::size_t samples = 20;
  std::uint64_t seed = 0;
  /// Upper bound on drawn candidates; 0 means 10 * samples + 20.
  std::size_t budget = 0;

  std::size_t effective_budget() const { return budget ? budget : 10 * samples + 20; }
};

/// Deterministic rational sample points. Candidate 0 is the origin; later
/// candidates have coordinates p/q with |p| <= 5 and 1 <= q <= 4. Draws use
/// raw mt19937_64 output so sequences do not depend on the standard library.
class PointSampler {
 public:
  PointSampler(ChartPtr chart, std::uint64_t seed);

  PointQ next();
  std::size_t drawn() const noexcept { return drawn_; }

 private:
  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  ChartPtr chart_;
  std::mt19937_64 rng_;
  std::size_t drawn_ = 0;
};

struct SampleOutcome {
  std::vector<PointQ> accepted;
  std::vector<std::size_t> indices;  // candidate number of each accepted point
  std::size_t skipped = 0;
};

/// Draws candidates until `spec.samples` of them are accepted by `accept`.
/// `accept` returns false (or throws PoleAtPoint / FrameDegenerateAtPoint)
/// to skip a point. Error(SampleBudgetExhausted) when the budget runs out.
SampleOutcome sample_points(const ChartPtr& chart, const SampleSpec& spec,
                            const std::function<bool(const PointQ&)>& accept);

}  // namespace flagrank
