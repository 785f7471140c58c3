#include "forkfluid/model.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace forkfluid::model {

double SystemParams::log_n() const { return std::log(static_cast<double>(n_servers)); }

double SystemParams::temporal_scale() const {
  return std::pow(static_cast<double>(n_servers), 1.0 + 2.0 * regime_exponent) * log_n();
}

double SystemParams::spatial_scale() const {
  return std::pow(static_cast<double>(n_servers), regime_exponent) * log_n();
}

SystemParams make_params(double alpha, double beta, std::int64_t n_servers,
                         double regime_exponent) {
  if (!(alpha > 0.0)) throw std::invalid_argument("params: alpha must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("params: beta must be > 0");
  if (n_servers < 1) throw std::invalid_argument("params: n_servers must be >= 1");
  if (!(regime_exponent >= 1.0)) throw std::invalid_argument("params: regime_exponent must be >= 1");
  const double nd = static_cast<double>(n_servers);
  SystemParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.n_servers = n_servers;
  p.regime_exponent = regime_exponent;
  p.arrival_prob = 1.0 - alpha / nd - beta / std::pow(nd, 1.0 + regime_exponent);
  p.service_prob = 1.0 - alpha / nd;
  if (!(p.arrival_prob > 0.0 && p.arrival_prob < 1.0))
    throw std::invalid_argument("params: arrival_prob outside (0,1); need N > alpha + beta/N^c");
  if (!(p.service_prob > 0.0 && p.service_prob < 1.0))
    throw std::invalid_argument("params: service_prob outside (0,1); need N > alpha");
  return p;
}

std::int64_t slot_for_time(const SystemParams& params, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("slot_for_time: t must be >= 0");
  const double s = std::floor(t * params.temporal_scale());
  if (s > static_cast<double>(kMaxHorizon)) throw std::overflow_error("slot_for_time: slot index overflows");
  return static_cast<std::int64_t>(s);
}

void validate_schedule(const FailureSchedule& schedule) {
  if (schedule.horizon_slots < 0 || schedule.horizon_slots > kMaxHorizon)
    throw std::invalid_argument("schedule: horizon out of range");
  auto check = [&](const std::vector<std::int64_t>& slots) {
    std::int64_t prev = 0;
    for (std::int64_t s : slots) {
      if (s <= prev || s > schedule.horizon_slots)
        throw std::invalid_argument("schedule: failure slots must be strictly increasing in [1, horizon]");
      prev = s;
    }
  };
  check(schedule.arrival_failure_slots);
  for (const auto& s : schedule.service_failure_slots) check(s);
}

namespace {

// Appends failure slots in (from, horizon] drawn as geometric gaps.
void fill_failures(rng::Stream& rs, double fail_prob, std::int64_t horizon,
                   std::vector<std::int64_t>& out) {
  std::int64_t pos = 0;
  for (;;) {
    const std::uint64_t gap = rs.geometric(fail_prob);
    if (gap > static_cast<std::uint64_t>(horizon - pos)) return;
    pos += static_cast<std::int64_t>(gap);
    out.push_back(pos);
  }
}

}  // namespace

FailureSchedule generate_schedule(const SystemParams& params, std::int64_t horizon_slots,
                                  rng::Handle handle) {
  if (horizon_slots < 0) throw std::invalid_argument("generate_schedule: negative horizon");
  if (horizon_slots > kMaxHorizon)
    throw std::invalid_argument("generate_schedule: horizon exceeds 2^62-1");
  FailureSchedule s;
  s.horizon_slots = horizon_slots;
  s.seed = SeedInfo{handle.master_seed, handle.rep};
  auto arr = handle.arrivals();
  fill_failures(arr, params.arrival_failure_prob(), horizon_slots, s.arrival_failure_slots);
  s.service_failure_slots.resize(static_cast<std::size_t>(params.n_servers));
  for (std::int64_t i = 0; i < params.n_servers; ++i) {
    auto svc = handle.services(static_cast<std::uint32_t>(i));
    fill_failures(svc, params.service_failure_prob(), horizon_slots,
                  s.service_failure_slots[static_cast<std::size_t>(i)]);
  }
  return s;
}

FailureSchedule schedule_from_indicators(const std::vector<std::uint8_t>& arrivals,
                                         const std::vector<std::vector<std::uint8_t>>& services) {
  FailureSchedule s;
  s.horizon_slots = static_cast<std::int64_t>(arrivals.size());
  for (std::size_t j = 0; j < arrivals.size(); ++j)
    if (arrivals[j] == 0) s.arrival_failure_slots.push_back(static_cast<std::int64_t>(j) + 1);
  s.service_failure_slots.resize(services.size());
  for (std::size_t i = 0; i < services.size(); ++i) {
    if (services[i].size() != arrivals.size())
      throw std::invalid_argument("schedule_from_indicators: stream length mismatch");
    for (std::size_t j = 0; j < services[i].size(); ++j)
      if (services[i][j] == 0)
        s.service_failure_slots[i].push_back(static_cast<std::int64_t>(j) + 1);
  }
  return s;
}

std::vector<std::uint8_t> arrival_indicators(const FailureSchedule& schedule) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(schedule.horizon_slots), 1);
  for (std::int64_t s : schedule.arrival_failure_slots) out[static_cast<std::size_t>(s - 1)] = 0;
  return out;
}

std::vector<std::uint8_t> service_indicators(const FailureSchedule& schedule, std::size_t server) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(schedule.horizon_slots), 1);
  for (std::int64_t s : schedule.service_failure_slots.at(server))
    out[static_cast<std::size_t>(s - 1)] = 0;
  return out;
}

namespace {

void check_sim_inputs(const SystemParams& params, std::int64_t horizon,
                      const std::vector<std::int64_t>& init,
                      const std::vector<std::int64_t>& sample_slots) {
  if (static_cast<std::int64_t>(init.size()) != params.n_servers)
    throw std::invalid_argument("simulate: init length does not match n_servers");
  for (std::int64_t v : init)
    if (v < 0) throw std::invalid_argument("simulate: negative initial queue length");
  std::int64_t prev = -1;
  for (std::int64_t s : sample_slots) {
    if (s < prev) throw std::invalid_argument("simulate: sample_slots must be sorted");
    if (s < 0 || s > horizon) throw std::invalid_argument("simulate: sample slot outside horizon");
    prev = s;
  }
}

// Walks one server through the merged failure slots, recording the queue
// value at each sample slot (value after every failure with slot <= sample).
template <class Record>
void walk_merged(std::span<const std::int64_t> afails, std::span<const std::int64_t> sfails,
                 std::span<const std::int64_t> samples, std::int64_t& q, std::uint64_t& events,
                 Record&& record) {
  std::size_t ai = 0, si = 0, k = 0;
  while (ai < afails.size() || si < sfails.size()) {
    std::int64_t slot;
    std::int64_t inc;
    const bool ha = ai < afails.size();
    const bool hs = si < sfails.size();
    if (ha && (!hs || afails[ai] < sfails[si])) {
      slot = afails[ai++];
      inc = -1;  // a=0, s=1
    } else if (hs && (!ha || sfails[si] < afails[ai])) {
      slot = sfails[si++];
      inc = +1;  // a=1, s=0
    } else {
      slot = afails[ai];
      ++ai;
      ++si;
      inc = 0;  // both indicators zero
    }
    while (k < samples.size() && samples[k] < slot) record(k++, q);
    q += inc;
    if (q < 0) q = 0;
    ++events;
  }
  while (k < samples.size()) record(k++, q);
}

std::vector<TrajectoryFrame> build_frames(const SystemParams& params,
                                          const std::vector<std::int64_t>& sample_slots,
                                          const std::vector<std::int64_t>& raw_max,
                                          std::vector<std::vector<std::int64_t>>* per_server) {
  std::vector<TrajectoryFrame> frames(sample_slots.size());
  const double tscale = params.temporal_scale();
  const double sscale = params.spatial_scale();
  for (std::size_t k = 0; k < sample_slots.size(); ++k) {
    frames[k].slot = sample_slots[k];
    frames[k].scaled_time = static_cast<double>(sample_slots[k]) / tscale;
    frames[k].raw_max_queue = raw_max[k];
    frames[k].scaled_max_queue = static_cast<double>(raw_max[k]) / sscale;
    if (per_server) frames[k].per_server_queues = std::move((*per_server)[k]);
  }
  return frames;
}

}  // namespace

SimulationResult simulate_slots(const SystemParams& params, const FailureSchedule& schedule,
                                const std::vector<std::int64_t>& init,
                                const std::vector<std::int64_t>& sample_slots,
                                bool with_per_server) {
  validate_schedule(schedule);
  check_sim_inputs(params, schedule.horizon_slots, init, sample_slots);
  if (static_cast<std::int64_t>(schedule.service_failure_slots.size()) != params.n_servers)
    throw std::invalid_argument("simulate: schedule server count does not match n_servers");

  const std::size_t n = static_cast<std::size_t>(params.n_servers);
  std::vector<std::int64_t> qs = init;
  std::vector<std::size_t> sptr(n, 0);
  std::size_t aptr = 0;
  std::uint64_t events = 0;

  std::vector<std::int64_t> raw_max(sample_slots.size(), 0);
  std::vector<std::vector<std::int64_t>> per_server;
  if (with_per_server) per_server.resize(sample_slots.size());

  std::size_t k = 0;
  auto record = [&](std::size_t frame) {
    raw_max[frame] = *std::max_element(qs.begin(), qs.end());
    if (with_per_server) per_server[frame] = qs;
  };
  while (k < sample_slots.size() && sample_slots[k] < 1) record(k++);

  for (std::int64_t slot = 1; slot <= schedule.horizon_slots; ++slot) {
    std::int64_t a = 1;
    if (aptr < schedule.arrival_failure_slots.size() &&
        schedule.arrival_failure_slots[aptr] == slot) {
      a = 0;
      ++aptr;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t s = 1;
      const auto& fails = schedule.service_failure_slots[i];
      if (sptr[i] < fails.size() && fails[sptr[i]] == slot) {
        s = 0;
        ++sptr[i];
      }
      if (a == 0 || s == 0) {
        qs[i] = std::max<std::int64_t>(qs[i] + a - s, 0);
        ++events;
      }
    }
    while (k < sample_slots.size() && sample_slots[k] == slot) record(k++);
  }

  SimulationResult res;
  res.params = params;
  res.seed = schedule.seed;
  res.init_snapshot = init;
  res.event_count = events;
  res.frames = build_frames(params, sample_slots, raw_max, with_per_server ? &per_server : nullptr);
  return res;
}

SimulationResult simulate_events(const SystemParams& params, const FailureSchedule& schedule,
                                 const std::vector<std::int64_t>& init,
                                 const std::vector<std::int64_t>& sample_slots,
                                 bool with_per_server) {
  validate_schedule(schedule);
  check_sim_inputs(params, schedule.horizon_slots, init, sample_slots);
  if (static_cast<std::int64_t>(schedule.service_failure_slots.size()) != params.n_servers)
    throw std::invalid_argument("simulate: schedule server count does not match n_servers");

  const std::size_t n = static_cast<std::size_t>(params.n_servers);
  std::uint64_t events = 0;
  std::vector<std::int64_t> raw_max(sample_slots.size(), 0);
  std::vector<std::vector<std::int64_t>> per_server;
  if (with_per_server)
    per_server.assign(sample_slots.size(), std::vector<std::int64_t>(n, 0));

  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t q = init[i];
    walk_merged(schedule.arrival_failure_slots, schedule.service_failure_slots[i], sample_slots,
                q, events, [&](std::size_t frame, std::int64_t value) {
                  raw_max[frame] = std::max(raw_max[frame], value);
                  if (with_per_server) per_server[frame][i] = value;
                });
  }

  SimulationResult res;
  res.params = params;
  res.seed = schedule.seed;
  res.init_snapshot = init;
  res.event_count = events;
  res.frames = build_frames(params, sample_slots, raw_max, with_per_server ? &per_server : nullptr);
  return res;
}

SimulationResult simulate_scaled(const SystemParams& params, const std::vector<double>& t_grid,
                                 const initcond::InitialConditionSpec& init_spec,
                                 rng::Handle handle, bool with_per_server) {
  for (std::size_t k = 0; k + 1 < t_grid.size(); ++k)
    if (t_grid[k] > t_grid[k + 1])
      throw std::invalid_argument("simulate_scaled: t_grid must be sorted");

  std::vector<std::int64_t> sample_slots(t_grid.size());
  for (std::size_t k = 0; k < t_grid.size(); ++k) sample_slots[k] = slot_for_time(params, t_grid[k]);
  const std::int64_t horizon = sample_slots.empty() ? 0 : sample_slots.back();

  auto init_stream = handle.init();
  std::vector<std::int64_t> init = initcond::sample_initial(init_spec, params.n_servers, init_stream);

  const std::size_t n = static_cast<std::size_t>(params.n_servers);
  const double fa = params.arrival_failure_prob();
  const double fs = params.service_failure_prob();

  std::vector<std::int64_t> qs = init;
  std::uint64_t events = 0;
  std::vector<std::int64_t> raw_max(sample_slots.size(), 0);
  std::vector<std::vector<std::int64_t>> per_server;
  if (with_per_server)
    per_server.assign(sample_slots.size(), std::vector<std::int64_t>(n, 0));

  // Pending service-failure slot per server; streams persist across windows.
  std::vector<rng::Stream> svc_streams;
  svc_streams.reserve(n);
  std::vector<std::int64_t> svc_next(n);
  for (std::size_t i = 0; i < n; ++i) {
    svc_streams.push_back(handle.services(static_cast<std::uint32_t>(i)));
    const std::uint64_t gap = svc_streams[i].geometric(fs);
    svc_next[i] = (gap > static_cast<std::uint64_t>(horizon)) ? horizon + 1
                                                              : static_cast<std::int64_t>(gap);
  }
  auto arr_stream = handle.arrivals();
  std::int64_t arr_next;
  {
    const std::uint64_t gap = arr_stream.geometric(fa);
    arr_next = (gap > static_cast<std::uint64_t>(horizon)) ? horizon + 1
                                                           : static_cast<std::int64_t>(gap);
  }

  std::size_t k0 = 0;
  auto record = [&](std::size_t frame, std::size_t server, std::int64_t value) {
    raw_max[frame] = std::max(raw_max[frame], value);
    if (with_per_server) per_server[frame][server] = value;
  };
  // Samples at slot 0 report the initial state.
  while (k0 < sample_slots.size() && sample_slots[k0] < 1) {
    for (std::size_t i = 0; i < n; ++i) record(k0, i, qs[i]);
    ++k0;
  }

  constexpr std::int64_t kWindow = std::int64_t{1} << 24;
  std::vector<std::int64_t> arr_window;
  std::vector<std::int64_t> svc_window;
  for (std::int64_t lo = 1; lo <= horizon; lo += kWindow) {
    const std::int64_t hi = std::min(horizon, lo + kWindow - 1);
    arr_window.clear();
    while (arr_next <= hi) {
      arr_window.push_back(arr_next);
      const std::uint64_t gap = arr_stream.geometric(fa);
      arr_next = (gap > static_cast<std::uint64_t>(horizon - arr_next))
                     ? horizon + 1
                     : arr_next + static_cast<std::int64_t>(gap);
    }
    std::size_t k1 = k0;
    while (k1 < sample_slots.size() && sample_slots[k1] <= hi) ++k1;
    const std::span<const std::int64_t> samples(sample_slots.data() + k0, k1 - k0);

    for (std::size_t i = 0; i < n; ++i) {
      svc_window.clear();
      while (svc_next[i] <= hi) {
        svc_window.push_back(svc_next[i]);
        const std::uint64_t gap = svc_streams[i].geometric(fs);
        svc_next[i] = (gap > static_cast<std::uint64_t>(horizon - svc_next[i]))
                          ? horizon + 1
                          : svc_next[i] + static_cast<std::int64_t>(gap);
      }
      walk_merged(arr_window, svc_window, samples, qs[i], events,
                  [&](std::size_t frame, std::int64_t value) { record(k0 + frame, i, value); });
    }
    k0 = k1;
  }

  SimulationResult res;
  res.params = params;
  res.seed = SeedInfo{handle.master_seed, handle.rep};
  res.init_snapshot = std::move(init);
  res.event_count = events;
  res.frames = build_frames(params, sample_slots, raw_max,
                            with_per_server ? &per_server : nullptr);
  for (std::size_t k = 0; k < t_grid.size(); ++k) res.frames[k].scaled_time = t_grid[k];
  return res;
}

DualityReport duality_check(const SystemParams& params, std::int64_t n_slots, std::int64_t reps,
                            rng::Handle handle) {
  if (n_slots < 0) throw std::invalid_argument("duality_check: negative n_slots");
  const std::int64_t n_srv = params.n_servers;
  const std::int64_t bits = n_slots * (n_srv + 1);
  if (bits > 24)
    throw std::invalid_argument("duality_check: exact enumeration budget exceeded (n*(N+1) > 24 bits)");

  const std::size_t nvals = static_cast<std::size_t>(n_slots) + 1;
  DualityReport rep;
  rep.pmf_forward.assign(nvals, 0.0);
  rep.pmf_reversed.assign(nvals, 0.0);

  const double p = params.arrival_prob;
  const double q = params.service_prob;
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // First n_slots bits: arrival indicators; then n_slots per server.
    double prob = 1.0;
    std::int64_t fwd_val = 0;
    std::int64_t rev_val = 0;
    for (std::int64_t j = 0; j < n_slots; ++j)
      prob *= ((mask >> j) & 1) ? p : (1.0 - p);

    for (std::int64_t i = 0; i < n_srv; ++i) {
      const std::uint64_t sbits = mask >> (n_slots * (i + 1));
      std::int64_t qlen = 0;       // forward Lindley from 0
      std::int64_t walk = 0;       // A(k) - S_i(k)
      std::int64_t sup_walk = 0;   // sup over 0<=k<=n
      for (std::int64_t j = 0; j < n_slots; ++j) {
        const std::int64_t a = (mask >> j) & 1;
        const std::int64_t s = (sbits >> j) & 1;
        prob *= s ? q : (1.0 - q);
        qlen = std::max<std::int64_t>(qlen + a - s, 0);
        walk += a - s;
        sup_walk = std::max(sup_walk, walk);
      }
      fwd_val = std::max(fwd_val, qlen);
      rev_val = std::max(rev_val, sup_walk);
    }
    rep.pmf_forward[static_cast<std::size_t>(fwd_val)] += prob;
    rep.pmf_reversed[static_cast<std::size_t>(rev_val)] += prob;
  }

  double tv = 0.0;
  for (std::size_t v = 0; v < nvals; ++v)
    tv += std::abs(rep.pmf_forward[v] - rep.pmf_reversed[v]);
  rep.tv_distance = 0.5 * tv;

  if (reps > 0) {
    rep.reps = reps;
    rep.pmf_monte_carlo.assign(nvals, 0.0);
    const std::vector<std::int64_t> init(static_cast<std::size_t>(n_srv), 0);
    const std::vector<std::int64_t> samples{n_slots};
    for (std::int64_t r = 0; r < reps; ++r) {
      const auto schedule =
          generate_schedule(params, n_slots, handle.for_rep(static_cast<std::uint32_t>(r)));
      const auto res = simulate_events(params, schedule, init, samples, false);
      rep.pmf_monte_carlo[static_cast<std::size_t>(res.frames[0].raw_max_queue)] += 1.0;
    }
    for (auto& v : rep.pmf_monte_carlo) v /= static_cast<double>(reps);
  }
  return rep;
}

}  // namespace forkfluid::model
