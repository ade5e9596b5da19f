#pragma once

#include <string>

#include "plspower/power_core.hpp"

namespace plspower {

// Shortest decimal string that parses back to exactly `value` ("0.5", "0.05").
std::string format_number(double value);

// Target power as a percentage ("80" for 0.80, "82.5" for 0.825).
std::string format_percent(double power);

// "To detect an effect of 0.5 with 80% power at alpha = 0.05 you need at
// least 25 observations."
std::string apriori_message(const APrioriResult& result);

// "With N = 68 and alpha = 0.05 you can detect effects as small as 0.30 with
// 80% power."
std::string sensitivity_message(const SensitivityResult& result);

}  // namespace plspower
