#pragma once

// Explicit Heun (SSP-RK2) time stepping with a stability-limited step.

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "nsac/core.hpp"
#include "nsac/operators.hpp"

namespace nsac {

enum class StepLimit { diffusion, acoustic, reaction };

const char* to_string(StepLimit limit);

struct StableStep {
  double dt;
  StepLimit limit;
};

/// cfl * min over cells of the diffusion, acoustic and reaction limits:
///   dx^2 / (2 (nu/v + kappa_tilde theta^beta/(c_v v) + eps/v)),
///   dx / c  with c = sqrt(gamma R theta)/v,
///   eps / (1 + |3 phi^2 - 1| v / eps).
StableStep stable_dt(const FlowState& state, const SimParams& params);

/// Replaces the far-field ghost fill and adds source terms to the right-hand
/// side; used by manufactured-solution studies. Either member may be empty.
struct Forcing {
  std::function<void(FlowState&)> fill_ghosts;
  std::function<void(const FlowState&, Rhs&)> add_source;
};

struct StepControl {
  double dt_last = 0.0;
  double dt_next = 0.0;
  StepLimit limit_kind = StepLimit::diffusion;
  std::size_t step_count = 0;
};

/// One Heun step of size dt:
///   s* = s + dt F(s),   s_new = (s + s* + dt F(s*)) / 2,
/// ghosts refreshed before each evaluation of F. Throws PositivityError if the
/// right-hand side sees, or the step produces, v or theta at the floor.
FlowState heun_step(const FlowState& state, const SimParams& params, const BoundaryConfig& bc, double dt,
                    const Forcing* forcing = nullptr);

/// Heun step with dt from stable_dt, optionally capped by `dt_cap`. Updates
/// `control` with the step taken and the proposal for the next one.
FlowState step(const FlowState& state, const SimParams& params, const BoundaryConfig& bc, StepControl& control,
               std::optional<double> dt_cap = std::nullopt, const Forcing* forcing = nullptr);

struct RunOptions {
  double t_final = 1.0;
  /// Observe every k-th accepted step (0 disables the step cadence).
  std::size_t observe_every_steps = 1;
  /// Additionally observe the first step that crosses each multiple of this
  /// interval (0 disables).
  double observe_every_time = 0.0;
  std::size_t max_steps = 50'000'000;
};

using Observer = std::function<void(const FlowState&, const StepControl&)>;

/// The last accepted state and the failure that stopped a run.
class RunAborted : public Error {
 public:
  RunAborted(const std::string& cause, FlowState last_good, StepControl control, std::optional<int> cell,
             std::string field);

  const FlowState& last_good() const { return last_good_; }
  const StepControl& control() const { return control_; }
  /// Offending cell and field when the cause was a positivity violation.
  std::optional<int> cell() const { return cell_; }
  const std::string& field() const { return field_; }

 private:
  FlowState last_good_;
  StepControl control_;
  std::optional<int> cell_;
  std::string field_;
};

/// Steps from `initial` to exactly `options.t_final`. The observer sees the
/// initial state, every state matching the cadence, and the final state.
/// Any step error is rethrown as RunAborted.
FlowState run(const FlowState& initial, const SimParams& params, const BoundaryConfig& bc, const RunOptions& options,
              const Observer& observer = {}, const Forcing* forcing = nullptr, StepControl* control_out = nullptr);

/// Bounded single-consumer queue feeding an observer on a worker thread.
/// `push` blocks only while the queue is full; the destructor drains it.
template <class Item>
class AsyncSink {
 public:
  AsyncSink(std::function<void(Item&&)> consume, std::size_t capacity)
      : consume_(std::move(consume)), capacity_(capacity == 0 ? 1 : capacity), worker_([this] { drain(); }) {}

  AsyncSink(const AsyncSink&) = delete;
  AsyncSink& operator=(const AsyncSink&) = delete;

  ~AsyncSink() {
    try {
      close();
    } catch (...) {
    }
  }

  void push(Item item) {
    std::unique_lock lock(mutex_);
    not_full_.wait(lock, [&] { return queue_.size() < capacity_; });
    queue_.push_back(std::move(item));
    not_empty_.notify_one();
  }

  /// Waits for every queued item to be consumed and joins the worker.
  /// Rethrows the first exception raised by the consumer.
  void close() {
    {
      std::lock_guard lock(mutex_);
      if (closed_) return;
      closed_ = true;
    }
    not_empty_.notify_one();
    if (worker_.joinable()) worker_.join();
    if (failure_) std::rethrow_exception(failure_);
  }

 private:
  void drain() {
    for (;;) {
      std::unique_lock lock(mutex_);
      not_empty_.wait(lock, [&] { return closed_ || !queue_.empty(); });
      if (queue_.empty()) return;
      Item item = std::move(queue_.front());
      queue_.pop_front();
      not_full_.notify_one();
      lock.unlock();
      if (failure_) continue;
      try {
        consume_(std::move(item));
      } catch (...) {
        failure_ = std::current_exception();
      }
    }
  }

  std::function<void(Item&&)> consume_;
  std::size_t capacity_;
  std::mutex mutex_;
  std::condition_variable not_full_;
  std::condition_variable not_empty_;
  std::deque<Item> queue_;
  bool closed_ = false;
  std::exception_ptr failure_;
  std::thread worker_;
};

}  // namespace nsac
