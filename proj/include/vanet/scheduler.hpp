#ifndef VANET_SCHEDULER_HPP
#define VANET_SCHEDULER_HPP

#include "vanet/common.hpp"

#include <functional>
#include <optional>
#include <queue>
#include <vector>

namespace vanet {

enum class EventKind {
  Timer,
  PacketArrival,
  TraceUpdate,
  TrafficGeneration,
};

struct Event
{
  SimTime time{};
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::Timer;
  std::function<void()> action;
};

/**
 * Time-ordered event queue. Events at equal times leave in insertion order;
 * popping advances the clock, which never moves backwards.
 */
class Scheduler
{
public:
  SimTime
  now() const
  {
    return m_now;
  }

  /// Throws ContractError if @p at precedes the current clock.
  void
  schedule(SimTime at, EventKind kind, std::function<void()> action);

  /// Empty when the queue is exhausted.
  std::optional<Event>
  nextEvent();

  std::optional<SimTime>
  peekTime() const;

  std::size_t
  pending() const
  {
    return m_queue.size();
  }

private:
  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const
    {
      if (a.time != b.time)
        return a.time > b.time;
      return a.sequence > b.sequence;
    }
  };

  SimTime m_now{0};
  std::uint64_t m_nextSequence = 0;
  std::priority_queue<Event, std::vector<Event>, Later> m_queue;
};

} // namespace vanet

#endif // VANET_SCHEDULER_HPP
