#ifndef VANET_PACKET_HPP
#define VANET_PACKET_HPP

#include "vanet/common.hpp"

#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace vanet {

enum class PacketClass {
  Data,
  Control,
};

enum class ProtocolKind {
  Dsdv,
  Dymo,
  Olsr,
};

std::string_view
protocolName(ProtocolKind p);

std::string_view
className(PacketClass c);

/// True when @p a is a later sequence number than @p b (modulo 2^32).
inline bool
seqNewer(std::uint32_t a, std::uint32_t b)
{
  return static_cast<std::int32_t>(a - b) > 0;
}

// DSDV ----------------------------------------------------------------------

inline constexpr std::uint32_t kDsdvInfinity = 0xffffffffu;

struct DsdvAdvert
{
  NodeId destination = 0;
  std::uint32_t metric = 0;
  std::uint32_t seq = 0;
};

struct DsdvUpdate
{
  bool fullDump = false;
  std::vector<DsdvAdvert> entries;
};

// DYMO ----------------------------------------------------------------------

struct DymoRreq
{
  NodeId origin = 0;
  std::uint32_t originSeq = 0;
  NodeId target = 0;
  /// Zero when the origin knows no sequence number for the target.
  std::uint32_t targetSeq = 0;
  std::uint32_t hopCount = 0;
  /// Remaining rebroadcast budget (the expanding-ring TTL).
  std::uint32_t hopLimit = 1;
};

struct DymoRrep
{
  /// Node the reply travels to (the discovery origin).
  NodeId destination = 0;
  /// Node the advertised route leads to (the discovery target).
  NodeId routeTarget = 0;
  std::uint32_t targetSeq = 0;
  std::uint32_t hopCount = 0;
};

struct DymoUnreachable
{
  NodeId destination = 0;
  std::uint32_t seq = 0;
};

struct DymoRerr
{
  std::vector<DymoUnreachable> unreachable;
};

// OLSR ----------------------------------------------------------------------

enum class OlsrLinkCode {
  Asymmetric,
  Symmetric,
  Mpr, ///< symmetric and selected as multipoint relay
};

struct OlsrHelloEntry
{
  NodeId neighbor = 0;
  OlsrLinkCode code = OlsrLinkCode::Asymmetric;
};

struct OlsrHello
{
  std::vector<OlsrHelloEntry> neighbors;
};

struct OlsrTc
{
  NodeId originator = 0;
  std::uint32_t messageSeq = 0;
  std::uint32_t ansn = 0;
  std::uint32_t hopLimit = 255;
  std::vector<NodeId> selectors;
};

// ---------------------------------------------------------------------------

struct DataPayload
{
  std::uint32_t session = 0;
};

using Message =
  std::variant<DataPayload, DsdvUpdate, DymoRreq, DymoRrep, DymoRerr, OlsrHello, OlsrTc>;

struct Packet
{
  std::uint64_t id = 0;
  PacketClass cls = PacketClass::Data;
  ProtocolKind protocol = ProtocolKind::Dsdv;
  /// Data: end-to-end endpoints. Control: transmitter and receiver (or kBroadcast).
  NodeId source = 0;
  NodeId destination = kBroadcast;
  SimTime createdAt{};
  std::optional<SimTime> deliveredAt;
  std::uint32_t ttl = 0;
  std::uint32_t sizeBytes = 0;
  std::shared_ptr<const Message> message;

  template<typename T>
  const T&
  as() const
  {
    return std::get<T>(*message);
  }
};

/// Nominal wire size of a control message.
std::uint32_t
controlSize(const Message& m);

} // namespace vanet

#endif // VANET_PACKET_HPP
