#include "flagrank/classify/sampler.hpp"

#include "flagrank/errors.hpp"

namespace flagrank {

PointSampler::PointSampler(ChartPtr chart, std::uint64_t seed)
    : chart_(std::move(chart)), rng_(seed) {}

PointQ PointSampler::next() {
  ++drawn_;
  if (drawn_ == 1) return PointQ::origin(chart_);
  std::vector<mpq_class> coords;
  coords.reserve(chart_->dimension());
  for (std::size_t i = 0; i < chart_->dimension(); ++i) {
    long num = static_cast<long>(below(11)) - 5;
    long den = static_cast<long>(below(4)) + 1;
    mpq_class q(num, den);
    q.canonicalize();
    coords.push_back(q);
  }
  return PointQ(chart_, std::move(coords));
}

SampleOutcome sample_points(const ChartPtr& chart, const SampleSpec& spec,
                            const std::function<bool(const PointQ&)>& accept) {
  if (spec.samples == 0) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
  PointSampler sampler(chart, spec.seed);
  SampleOutcome out;
  const std::size_t budget = spec.effective_budget();
  while (out.accepted.size() < spec.samples) {
    if (sampler.drawn() >= budget) {
      throw Error(ErrorKind::SampleBudgetExhausted,
                  "accepted " + std::to_string(out.accepted.size()) + " of " +
                      std::to_string(spec.samples) + " sample points after " +
                      std::to_string(budget) + " candidates");
    }
    PointQ p = sampler.next();
    bool ok = false;
    try {
      ok = accept(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PoleAtPoint && e.kind() != ErrorKind::FrameDegenerateAtPoint) throw;
    }
    if (ok) {
      out.accepted.push_back(std::move(p));
      out.indices.push_back(sampler.drawn() - 1);
    } else {
      ++out.skipped;
    }
  }
  return out;
}

}  // namespace flagrank
