#include "vanet/common.hpp"

#include <cstdio>

namespace vanet {

std::string
formatSeconds(SimTime t)
{
  auto ns = t.count();
  std::string sign;
  if (ns < 0) {
    sign = "-";
    ns = -ns;
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%lld.%09lld", sign.c_str(),
                static_cast<long long>(ns / 1000000000), static_cast<long long>(ns % 1000000000));
  return buf;
}

} // namespace vanet
