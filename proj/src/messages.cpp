#include "plspower/messages.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace plspower {

std::string format_number(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

std::string format_percent(double power) {
    const double percent = power * 100.0;
    const double whole = std::round(percent);
    if (std::abs(percent - whole) < 1e-9) {
        return std::to_string(static_cast<long long>(whole));
    }
    // 0.825 * 100 is 82.49999999999999; snap to 9 decimals before printing.
    return format_number(std::round(percent * 1e9) / 1e9);
}

std::string apriori_message(const APrioriResult& result) {
    return "To detect an effect of " + format_number(result.mdes) + " with " +
           format_percent(result.spec.power) + "% power at alpha = " +
           format_number(result.spec.alpha) + " you need at least " +
           std::to_string(result.n_required) + " observations.";
}

std::string sensitivity_message(const SensitivityResult& result) {
    return "With N = " + std::to_string(result.n) + " and alpha = " +
           format_number(result.spec.alpha) + " you can detect effects as small as " +
           result.mdes_display + " with " + format_percent(result.spec.power) + "% power.";
}

}  // namespace plspower
