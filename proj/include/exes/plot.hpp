#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "exes/game.hpp"

namespace exes {

/// Grouped bars with standard-error whiskers: one row of panels per payoff
/// condition, one panel per score (efficiency, fairness, stability), one bar
/// per model. Reads the "conditions" array of a report document.
std::string bars_svg(const nlohmann::json& report);

/// Per-round winner bars (player 1 red, player 2 blue, tie black) above the
/// surprisal trace of the same dyad.
std::string conventions_svg(const std::vector<Category>& outcomes, const std::string& title);

/// Mean adaptive-layer reliance per condition with standard-error bars.
std::string reliance_svg(const nlohmann::json& report);

}  // namespace exes
