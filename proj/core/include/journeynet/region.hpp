#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace journeynet {

/// Six-class urban-rural county scheme, most to least urban.
enum class Urbanicity {
  LargeCentralMetro = 1,
  LargeFringeMetro = 2,
  MediumMetro = 3,
  SmallMetro = 4,
  Micropolitan = 5,
  Noncore = 6,
};

inline constexpr std::array<Urbanicity, 6> kAllUrbanicity = {
    Urbanicity::LargeCentralMetro, Urbanicity::LargeFringeMetro, Urbanicity::MediumMetro,
    Urbanicity::SmallMetro,        Urbanicity::Micropolitan,     Urbanicity::Noncore};

/// The four metropolitan classes collapse to urban, the rest to rural.
constexpr bool is_urban(Urbanicity u) noexcept { return static_cast<int>(u) <= 4; }

std::string_view to_string(Urbanicity u) noexcept;
/// Accepts the class code 1-6 or its snake_case name.
std::optional<Urbanicity> parse_urbanicity(std::string_view text);

struct RegionAttributes {
  std::string region_id;
  std::uint64_t population = 0;
  Urbanicity urbanicity = Urbanicity::Noncore;
  /// Category -> population share, e.g. "white" -> 0.71.
  std::map<std::string, double> demographics;
  double employed = 0.0;
  double poverty = 0.0;
};

using AttributeMap = std::map<std::string, RegionAttributes>;

/// region -> window -> estimated coverage fraction.
using CoverageTable = std::map<std::string, std::map<int, double>>;

/// All windows that appear anywhere in the table.
std::set<int> coverage_windows(const CoverageTable& coverage);

/// Minimum coverage of `region` over `windows`; a missing entry counts as 0.
double min_coverage(const CoverageTable& coverage, const std::string& region, const std::set<int>& windows);

/// Regions in `candidates` whose minimum coverage over every window is >= beta.
std::set<std::string> regions_meeting_coverage(const CoverageTable& coverage, const std::set<std::string>& candidates,
                                               double beta);

}  // namespace journeynet
