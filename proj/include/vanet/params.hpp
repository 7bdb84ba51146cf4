#ifndef VANET_PARAMS_HPP
#define VANET_PARAMS_HPP

#include "vanet/packet.hpp"

#include <string_view>

namespace vanet {

using namespace std::chrono_literals;

enum class Profile {
  Default,
  Mod,
};

std::string_view
profileName(Profile p);

struct DsdvParams
{
  SimTime fullDumpInterval = 15s;
  SimTime triggeredMinInterval = 1s;
  /// Delay before a worsened metric is advertised.
  SimTime settlingTime = 6s;

  void
  validate() const;
};

struct DymoParams
{
  std::uint32_t netDiameter = 10;
  /// Wait per expanding-ring round before the next, wider ring.
  SimTime rreqWaitTime = 1000ms;
  std::uint32_t rreqTries = 3;
  std::uint32_t ersInitialTtl = 1;
  std::uint32_t ersIncrement = 2;
  SimTime routeLifetime = 5s;
  std::size_t bufferCapacity = 64;

  void
  validate() const;
};

struct OlsrParams
{
  SimTime helloInterval = 2s;
  SimTime tcInterval = 5s;
  SimTime neighborHoldTime = 6s;
  SimTime topologyHoldTime = 15s;

  void
  validate() const;
};

/// DSDV has a single profile; asking for Mod throws DomainError.
DsdvParams
dsdvProfile(Profile p);

DymoParams
dymoProfile(Profile p);

OlsrParams
olsrProfile(Profile p);

struct ProtocolSetup
{
  ProtocolKind kind = ProtocolKind::Dsdv;
  Profile profile = Profile::Default;
  DsdvParams dsdv;
  DymoParams dymo;
  OlsrParams olsr;

  static ProtocolSetup
  make(ProtocolKind kind, Profile profile);

  void
  validate() const;
};

/// "DSDV", "MOD-DYMO", ...
std::string
variantLabel(ProtocolKind kind, Profile profile);

} // namespace vanet

#endif // VANET_PARAMS_HPP
