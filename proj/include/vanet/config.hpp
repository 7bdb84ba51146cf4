#ifndef VANET_CONFIG_HPP
#define VANET_CONFIG_HPP

#include "vanet/sweep.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace vanet {

using Settings = std::vector<std::pair<std::string, std::string>>;

/// Flat `key = value` lines; `#` starts a comment. Throws DomainError on junk.
Settings
parseSettings(std::istream& is);

/**
 * Apply settings in order; later keys win. Unknown keys and bad values throw
 * DomainError. An OLSR hold time that is not set explicitly follows its
 * interval at three times its value.
 */
void
applySettings(SweepConfig& cfg, const Settings& settings);

/// Every key applySettings understands.
std::vector<std::string>
knownSettingKeys();

} // namespace vanet

#endif // VANET_CONFIG_HPP
