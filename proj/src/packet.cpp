#include "vanet/packet.hpp"

namespace vanet {

std::string_view
protocolName(ProtocolKind p)
{
  switch (p) {
  case ProtocolKind::Dsdv:
    return "dsdv";
  case ProtocolKind::Dymo:
    return "dymo";
  case ProtocolKind::Olsr:
    return "olsr";
  }
  return "?";
}

std::string_view
className(PacketClass c)
{
  return c == PacketClass::Data ? "data" : "control";
}

namespace {

// IPv4 + UDP headers on every control frame, then the message body.
constexpr std::uint32_t kHeader = 28;

struct SizeOf
{
  std::uint32_t
  operator()(const DataPayload&) const
  {
    return 0;
  }
  std::uint32_t
  operator()(const DsdvUpdate& u) const
  {
    return kHeader + 4 + 12 * static_cast<std::uint32_t>(u.entries.size());
  }
  std::uint32_t
  operator()(const DymoRreq&) const
  {
    return kHeader + 24;
  }
  std::uint32_t
  operator()(const DymoRrep&) const
  {
    return kHeader + 20;
  }
  std::uint32_t
  operator()(const DymoRerr& e) const
  {
    return kHeader + 4 + 8 * static_cast<std::uint32_t>(e.unreachable.size());
  }
  std::uint32_t
  operator()(const OlsrHello& h) const
  {
    return kHeader + 16 + 8 * static_cast<std::uint32_t>(h.neighbors.size());
  }
  std::uint32_t
  operator()(const OlsrTc& t) const
  {
    return kHeader + 16 + 4 * static_cast<std::uint32_t>(t.selectors.size());
  }
};

} // namespace

std::uint32_t
controlSize(const Message& m)
{
  return std::visit(SizeOf{}, m);
}

} // namespace vanet
