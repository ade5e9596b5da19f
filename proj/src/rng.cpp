#include "plspower/rng.hpp"

#include "plspower/normal.hpp"

namespace plspower::mc {

double NormalStream::uniform() {
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double NormalStream::normal() {
    return normal_quantile(uniform());
}

}  // namespace plspower::mc
