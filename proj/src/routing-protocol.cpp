#include "vanet/routing-protocol.hpp"

#include "vanet/dsdv.hpp"
#include "vanet/dymo.hpp"
#include "vanet/olsr.hpp"

namespace vanet {

std::unique_ptr<RoutingProtocol>
makeProtocol(const ProtocolSetup& setup, Simulator& sim, NodeId self)
{
  switch (setup.kind) {
  case ProtocolKind::Dsdv:
    return std::make_unique<Dsdv>(sim, self, setup.dsdv);
  case ProtocolKind::Dymo:
    return std::make_unique<Dymo>(sim, self, setup.dymo);
  case ProtocolKind::Olsr:
    return std::make_unique<Olsr>(sim, self, setup.olsr);
  }
  throw DomainError("unknown protocol");
}

} // namespace vanet
