#include "vanet/scheduler.hpp"

namespace vanet {

void
Scheduler::schedule(SimTime at, EventKind kind, std::function<void()> action)
{
  if (at < m_now)
    throw ContractError("cannot schedule an event in the past");
  m_queue.push(Event{at, m_nextSequence++, kind, std::move(action)});
}

std::optional<Event>
Scheduler::nextEvent()
{
  if (m_queue.empty())
    return std::nullopt;
  Event ev = m_queue.top();
  m_queue.pop();
  m_now = ev.time;
  return ev;
}

std::optional<SimTime>
Scheduler::peekTime() const
{
  if (m_queue.empty())
    return std::nullopt;
  return m_queue.top().time;
}

} // namespace vanet
