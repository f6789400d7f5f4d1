#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "mend/validate/validate.hpp"

namespace mend::validate {

namespace {

enum class Admission { Yes, No, Wait };

class Sequencer {
 public:
  Sequencer(const lang::Ast& ast, const std::vector<suggest::Repair>& repairs, const baseline::Baseline& base,
            const BatchOptions& options, const std::function<void(std::size_t, const ValidationResult&)>& emit)
      : ast_(ast), repairs_(repairs), base_(base), opts_(options), emit_(emit), results_(repairs.size()) {
    limits_.cancel = &cancel_;
    limits_.step_counter = &counter_;
    limits_.step_limit = std::max(opts_.caps.max_steps, opts_.likely_caps.max_steps) + base.plan.budget;
  }

  BatchStats run() {
    unsigned n = opts_.threads ? opts_.threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, repairs_.size())));
    std::vector<std::thread> workers;
    workers.reserve(n);
    for (unsigned i = 0; i < n; ++i) workers.emplace_back([this] { work(); });
    for (auto& w : workers) w.join();
    return stats_;
  }

 private:
  // Whether repair `i` is validated under the sequential reading, decided
  // from committed results alone when possible.
  Admission admit(std::size_t i) const {
    const BatchCaps& tight = opts_.likely_caps;
    const BatchCaps& loose = opts_.caps;
    const BatchCaps& now = stats_.likely ? tight : loose;
    if (committed_ == i) {
      return i < now.max_repairs && stats_.steps < now.max_steps ? Admission::Yes : Admission::No;
    }
    // Runs in flight can only add steps and can only make a likely repair
    // appear.
    if (i >= now.max_repairs || stats_.steps >= now.max_steps) return Admission::No;
    const std::int64_t upper = stats_.steps + in_flight_budget_;
    if (i < std::min(tight.max_repairs, loose.max_repairs) && upper < std::min(tight.max_steps, loose.max_steps)) {
      return Admission::Yes;
    }
    return Admission::Wait;
  }

  bool external_cancel() const { return opts_.cancel && opts_.cancel->load(std::memory_order_relaxed); }

  void work() {
    std::unique_lock lock(mu_);
    while (true) {
      if (stopped_ || next_ >= repairs_.size()) return;
      if (external_cancel()) {
        stop(true);
        return;
      }
      const std::size_t i = next_;
      Admission a = admit(i);
      if (a == Admission::No) {
        stop(false);
        return;
      }
      if (a == Admission::Wait) {
        cv_.wait(lock);
        continue;
      }
      ++next_;
      in_flight_budget_ += base_.plan.budget;
      lock.unlock();
      ValidationResult r = validate_repair(ast_, repairs_[i], base_, limits_);
      lock.lock();
      in_flight_budget_ -= base_.plan.budget;
      if (r.match.rep_outcome == interp::OutcomeKind::Cancelled && r.applied) {
        stop(true);
      } else {
        results_[i] = std::move(r);
      }
      commit();
      cv_.notify_all();
    }
  }

  void stop(bool cancelled) {
    stopped_ = true;
    if (cancelled) {
      stats_.cancelled = true;
      cancel_.store(true);
    }
    cv_.notify_all();
  }

  void commit() {
    while (committed_ < results_.size() && results_[committed_]) {
      const ValidationResult& r = *results_[committed_];
      stats_.steps += r.cost;
      ++stats_.validated;
      if (r.score >= opts_.likely_threshold) stats_.likely = true;
      emit_(committed_, r);
      ++committed_;
    }
  }

  const lang::Ast& ast_;
  const std::vector<suggest::Repair>& repairs_;
  const baseline::Baseline& base_;
  const BatchOptions& opts_;
  const std::function<void(std::size_t, const ValidationResult&)>& emit_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<std::optional<ValidationResult>> results_;
  std::size_t next_ = 0;
  std::size_t committed_ = 0;
  std::int64_t in_flight_budget_ = 0;
  bool stopped_ = false;
  BatchStats stats_;
  std::atomic<bool> cancel_{false};
  std::atomic<std::int64_t> counter_{0};
  RunLimits limits_;
};

}  // namespace

BatchStats validate_batch(const lang::Ast& ast, const std::vector<suggest::Repair>& repairs,
                          const baseline::Baseline& base, const BatchOptions& options,
                          const std::function<void(std::size_t, const ValidationResult&)>& emit) {
  if (repairs.empty()) return {};
  Sequencer seq(ast, repairs, base, options, emit);
  return seq.run();
}

}  // namespace mend::validate
