#include "vanet/params.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace vanet {

std::string_view
profileName(Profile p)
{
  return p == Profile::Default ? "default" : "mod";
}

void
DsdvParams::validate() const
{
  if (fullDumpInterval <= SimTime::zero() || triggeredMinInterval <= SimTime::zero() ||
      settlingTime <= SimTime::zero())
    throw DomainError("DSDV intervals must be positive");
}

void
DymoParams::validate() const
{
  if (ersInitialTtl < 1 || ersInitialTtl > netDiameter)
    throw DomainError("ERS initial TTL must lie in [1, net diameter]");
  if (rreqWaitTime <= SimTime::zero())
    throw DomainError("RREQ wait time must be positive");
  if (rreqTries < 1)
    throw DomainError("at least one RREQ attempt is required");
  if (ersIncrement < 1)
    throw DomainError("ERS increment must be positive");
  if (routeLifetime <= SimTime::zero())
    throw DomainError("route lifetime must be positive");
}

void
OlsrParams::validate() const
{
  if (helloInterval <= SimTime::zero() || tcInterval <= SimTime::zero())
    throw DomainError("OLSR intervals must be positive");
  if (neighborHoldTime < 3 * helloInterval)
    throw DomainError("neighbor hold time must be at least three Hello intervals");
  if (topologyHoldTime < 3 * tcInterval)
    throw DomainError("topology hold time must be at least three TC intervals");
}

DsdvParams
dsdvProfile(Profile p)
{
  if (p != Profile::Default)
    throw DomainError("DSDV has only the default profile");
  return {};
}

DymoParams
dymoProfile(Profile p)
{
  DymoParams params;
  if (p == Profile::Mod) {
    params.netDiameter = 30;
    params.rreqWaitTime = 600ms;
  }
  return params;
}

OlsrParams
olsrProfile(Profile p)
{
  OlsrParams params;
  if (p == Profile::Mod) {
    params.helloInterval = 1s;
    params.tcInterval = 3s;
  }
  params.neighborHoldTime = 3 * params.helloInterval;
  params.topologyHoldTime = 3 * params.tcInterval;
  return params;
}

ProtocolSetup
ProtocolSetup::make(ProtocolKind kind, Profile profile)
{
  ProtocolSetup setup;
  setup.kind = kind;
  setup.profile = profile;
  switch (kind) {
  case ProtocolKind::Dsdv:
    setup.dsdv = dsdvProfile(profile);
    break;
  case ProtocolKind::Dymo:
    setup.dymo = dymoProfile(profile);
    break;
  case ProtocolKind::Olsr:
    setup.olsr = olsrProfile(profile);
    break;
  }
  return setup;
}

void
ProtocolSetup::validate() const
{
  switch (kind) {
  case ProtocolKind::Dsdv:
    if (profile != Profile::Default)
      throw DomainError("DSDV has only the default profile");
    dsdv.validate();
    break;
  case ProtocolKind::Dymo:
    dymo.validate();
    break;
  case ProtocolKind::Olsr:
    olsr.validate();
    break;
  }
}

std::string
variantLabel(ProtocolKind kind, Profile profile)
{
  std::string name(protocolName(kind));
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return profile == Profile::Mod ? "MOD-" + name : name;
}

} // namespace vanet
