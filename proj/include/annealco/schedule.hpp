#pragma once

#include <string>

#include "annealco/energy.hpp"

namespace annealco {

enum class ScheduleKind { Linear, Concave, Convex };

const char* schedule_kind_name(ScheduleKind k);
ScheduleKind schedule_kind_from_name(const std::string& name);

// Inverse-temperature ramp 1/tau_k = (1 + alpha*k)^p / tau_0 for k = 0..K,
// with alpha chosen so tau_K lands exactly on the requested floor. The
// exponent depends on the kind: p = 1 is linear in inverse temperature,
// p = 1/2 cools aggressively early (concave ramp), p = 3 holds high
// temperatures longer (convex ramp).
class Schedule {
 public:
  Schedule(ScheduleKind kind, double tau0, double tauK, int steps);

  ScheduleKind kind() const { return kind_; }
  int steps() const { return steps_; }  // K; temperature(k) valid for 0..K
  double tau0() const { return tau0_; }
  double tauK() const { return tauK_; }
  double alpha() const { return alpha_; }

  double temperature(int k) const;
  // Fractional positions, for ramps advanced more often than once per
  // temperature stage (e.g. per training batch).
  double temperature_at(double k) const;

 private:
  ScheduleKind kind_;
  double tau0_, tauK_, alpha_, exponent_;
  int steps_;
};

// Declarative schedule choice; tau0 < 0 requests the per-instance automatic
// start temperature (the energy gradient's Lipschitz bound).
struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::Linear;
  double tau0 = -1.0;
  double tauK = 1e-3;
  int steps = 500;
};

Schedule resolve_schedule(const ScheduleSpec& spec,
                          const ProblemInstance& inst);

}  // namespace annealco
