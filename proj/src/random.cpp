#include "smoothci/random.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smoothci {

Rng::Rng(std::uint64_t seed) noexcept
{
  SplitMix64 sm(seed);
  for (auto& word : s_)
    word = sm.next();
}

Rng Rng::from_state(const std::array<std::uint64_t, 4>& state) noexcept
{
  Rng rng;
  rng.s_ = state;
  return rng;
}

std::uint64_t Rng::next_u64() noexcept
{
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Rng::uniform() noexcept
{
  // midpoint of one of 2^53 equal cells: strictly inside (0, 1)
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() noexcept
{
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

MasterSeed parse_seed(std::string_view text)
{
  if (text.empty())
    throw std::invalid_argument("seed: empty value");
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  }
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value, base);
  if (ec == std::errc::result_out_of_range)
    throw std::invalid_argument("seed: value does not fit in 64 bits");
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument("seed: expected decimal or 0x-hex integer");
  return MasterSeed{ value };
}

Rng replicate_seed(MasterSeed master, std::uint64_t index) noexcept
{
  // Two rounds of the finalizer so that neighbouring (master, index) pairs
  // land far apart before the SplitMix64 state expansion.
  const std::uint64_t mixed =
    splitmix64_mix(splitmix64_mix(master.value) ^
                   (index * SplitMix64::golden_gamma + 0x632be59bd9b4e019ULL));
  return Rng(mixed);
}

double draw_innovation(InnovationDist dist, Rng& rng) noexcept
{
  switch (dist) {
    case InnovationDist::StdNormal:
      return rng.normal();
    case InnovationDist::Uniform:
      return rng.uniform() - 0.5;
    case InnovationDist::CenteredChiSq2:
      // chi^2(2) is exponential with mean 2
      return -2.0 * std::log(rng.uniform()) - 2.0;
  }
  return 0.0;
}

double innovation_variance(InnovationDist dist) noexcept
{
  switch (dist) {
    case InnovationDist::StdNormal:
      return 1.0;
    case InnovationDist::Uniform:
      return 1.0 / 12.0;
    case InnovationDist::CenteredChiSq2:
      return 4.0;
  }
  return 0.0;
}

std::string to_string(InnovationDist dist)
{
  switch (dist) {
    case InnovationDist::StdNormal:
      return "normal";
    case InnovationDist::Uniform:
      return "uniform";
    case InnovationDist::CenteredChiSq2:
      return "chisq2";
  }
  return "unknown";
}

InnovationDist parse_innovation(std::string_view name)
{
  if (name == "normal")
    return InnovationDist::StdNormal;
  if (name == "uniform")
    return InnovationDist::Uniform;
  if (name == "chisq2")
    return InnovationDist::CenteredChiSq2;
  throw std::invalid_argument("innovation must be one of normal, uniform, chisq2");
}

}  // namespace smoothci
