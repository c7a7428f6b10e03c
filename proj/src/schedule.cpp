#include "annealco/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace annealco {

const char* schedule_kind_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Linear: return "linear";
    case ScheduleKind::Concave: return "concave";
    case ScheduleKind::Convex: return "convex";
  }
  throw std::logic_error("schedule_kind_name: unknown kind");
}

ScheduleKind schedule_kind_from_name(const std::string& name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "concave") return ScheduleKind::Concave;
  if (name == "convex") return ScheduleKind::Convex;
  throw std::invalid_argument("unknown schedule kind: " + name);
}

namespace {

double kind_exponent(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Linear: return 1.0;
    case ScheduleKind::Concave: return 0.5;
    case ScheduleKind::Convex: return 3.0;
  }
  throw std::logic_error("kind_exponent: unknown kind");
}

}  // namespace

Schedule::Schedule(ScheduleKind kind, double tau0, double tauK, int steps)
    : kind_(kind), tau0_(tau0), tauK_(tauK), exponent_(kind_exponent(kind)),
      steps_(steps) {
  if (!(tauK > 0.0))
    throw std::invalid_argument("Schedule: final temperature must be > 0");
  if (!(tau0 >= tauK))
    throw std::invalid_argument(
        "Schedule: start temperature must be >= final temperature");
  if (steps < 1) throw std::invalid_argument("Schedule: need at least 1 step");
  alpha_ = (std::pow(tau0_ / tauK_, 1.0 / exponent_) - 1.0) / steps_;
}

double Schedule::temperature(int k) const {
  if (k < 0 || k > steps_)
    throw std::out_of_range("Schedule::temperature: step out of range");
  return temperature_at(static_cast<double>(k));
}

double Schedule::temperature_at(double k) const {
  if (k < 0.0 || k > static_cast<double>(steps_))
    throw std::out_of_range("Schedule::temperature_at: position out of range");
  return tau0_ / std::pow(1.0 + alpha_ * k, exponent_);
}

Schedule resolve_schedule(const ScheduleSpec& spec,
                          const ProblemInstance& inst) {
  double tau0 = spec.tau0;
  if (tau0 < 0.0) tau0 = std::max(lipschitz_bound(inst), spec.tauK);
  return Schedule(spec.kind, tau0, spec.tauK, spec.steps);
}

}  // namespace annealco
