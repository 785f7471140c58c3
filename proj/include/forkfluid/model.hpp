#pragma once

// The N-server fork-join queue under the Bernoulli slot model. One
// arrival stream feeds all servers; queue i evolves by the Lindley
// recursion Q_i(n) = max(Q_i(n-1) + a_n - s_{i,n}, 0). Since a_n and
// s_{i,n} are 1 on all but rare "failure" slots, the increment is zero
// except where a failure hits, which is what the event-driven simulator
// and the sparse FailureSchedule exploit.

#include <cstdint>
#include <optional>
#include <vector>

#include "forkfluid/initcond.hpp"
#include "forkfluid/rng.hpp"

namespace forkfluid::model {

inline constexpr std::int64_t kMaxHorizon = (std::int64_t{1} << 62) - 1;

struct SystemParams {
  double alpha = 1.0;
  double beta = 1.0;
  std::int64_t n_servers = 1;
  double regime_exponent = 1.0;  // c
  double arrival_prob = 0.0;     // p = 1 - alpha/N - beta/N^(1+c)
  double service_prob = 0.0;     // q = 1 - alpha/N

  double arrival_failure_prob() const { return 1.0 - arrival_prob; }
  double service_failure_prob() const { return 1.0 - service_prob; }
  double log_n() const;
  double temporal_scale() const;  // N^(1+2c) * log N
  double spatial_scale() const;   // N^c * log N

  bool operator==(const SystemParams&) const = default;
};

// Validates Assumption-1 style probabilities; throws std::invalid_argument
// when either falls outside (0,1).
SystemParams make_params(double alpha, double beta, std::int64_t n_servers,
                         double regime_exponent = 1.0);

// floor(t * N^(1+2c) * log N); throws when the slot index would overflow.
std::int64_t slot_for_time(const SystemParams& params, double t);

struct SeedInfo {
  std::uint64_t master_seed = 0;
  std::uint32_t rep = 0;
  bool operator==(const SeedInfo&) const = default;
};

// Sparse representation of the Bernoulli indicator streams: the slots
// where a_j = 0 and, per server, where s_{i,j} = 0. Interconvertible
// with dense indicator vectors without loss.
struct FailureSchedule {
  std::int64_t horizon_slots = 0;
  std::vector<std::int64_t> arrival_failure_slots;               // strictly increasing, in [1, horizon]
  std::vector<std::vector<std::int64_t>> service_failure_slots;  // one list per server
  SeedInfo seed;

  bool operator==(const FailureSchedule&) const = default;
};

// Throws if slot lists are not strictly increasing within [1, horizon].
void validate_schedule(const FailureSchedule& schedule);

// i.i.d. Bernoulli failures per slot, sampled by geometric inter-failure
// gaps (skip-ahead); distributionally identical to slot-by-slot sampling.
// Arrival failures come from the handle's arrival substream, server i's
// service failures from its service substream.
FailureSchedule generate_schedule(const SystemParams& params, std::int64_t horizon_slots,
                                  rng::Handle handle);

// Dense<->sparse conversions (mainly for tests and exact enumeration).
FailureSchedule schedule_from_indicators(const std::vector<std::uint8_t>& arrivals,
                                         const std::vector<std::vector<std::uint8_t>>& services);
std::vector<std::uint8_t> arrival_indicators(const FailureSchedule& schedule);
std::vector<std::uint8_t> service_indicators(const FailureSchedule& schedule, std::size_t server);

struct TrajectoryFrame {
  double scaled_time = 0.0;  // t on the Theorem-1 clock
  std::int64_t slot = 0;     // floor(t * N^(1+2c) * log N)
  std::int64_t raw_max_queue = 0;
  double scaled_max_queue = 0.0;  // raw / (N^c * log N)
  std::optional<std::vector<std::int64_t>> per_server_queues;

  bool operator==(const TrajectoryFrame&) const = default;
};

struct SimulationResult {
  std::vector<TrajectoryFrame> frames;
  SystemParams params;
  SeedInfo seed;
  std::vector<std::int64_t> init_snapshot;
  // number of (slot, server) pairs where at least one indicator is zero
  std::uint64_t event_count = 0;

  bool operator==(const SimulationResult&) const = default;
};

// Exact slot-by-slot evolution; the oracle for simulate_events.
SimulationResult simulate_slots(const SystemParams& params, const FailureSchedule& schedule,
                                const std::vector<std::int64_t>& init,
                                const std::vector<std::int64_t>& sample_slots,
                                bool with_per_server = true);

// Processes only failure slots (queues are constant elsewhere); output is
// bit-identical to simulate_slots for the same schedule.
SimulationResult simulate_events(const SystemParams& params, const FailureSchedule& schedule,
                                 const std::vector<std::int64_t>& init,
                                 const std::vector<std::int64_t>& sample_slots,
                                 bool with_per_server = true);

// Samples the initial condition, maps the t-grid onto slots, and runs the
// event-driven dynamics with schedules streamed from the handle's
// substreams (never materialized), chunked over slot windows so that
// desk-scale N and horizons of order N^3 log N stay within memory.
// Equivalent to generate_schedule + simulate_events on the same handle.
SimulationResult simulate_scaled(const SystemParams& params, const std::vector<double>& t_grid,
                                 const initcond::InitialConditionSpec& init_spec,
                                 rng::Handle handle, bool with_per_server = false);

struct DualityReport {
  std::vector<double> pmf_forward;   // exact PMF of max_i Q_i(n), Q(0) = 0
  std::vector<double> pmf_reversed;  // exact PMF of max_i sup_k (A(k) - S_i(k))
  double tv_distance = 0.0;
  std::vector<double> pmf_monte_carlo;  // empty unless reps > 0
  std::int64_t reps = 0;
};

// Exhaustive enumeration of every indicator outcome on n_slots slots
// (refused when n_slots * (N+1) exceeds 24 bits). With reps > 0 a
// Monte-Carlo PMF of the forward recursion is attached.
DualityReport duality_check(const SystemParams& params, std::int64_t n_slots, std::int64_t reps,
                            rng::Handle handle);

}  // namespace forkfluid::model
