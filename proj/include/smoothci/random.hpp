#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace smoothci {

//! SplitMix64 output function. Used to expand seeds and to derive
//! per-replicate streams; also usable as a tiny standalone generator.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
{
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64
{
public:
  static constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept
  {
    state_ += golden_gamma;
    return splitmix64_mix(state_);
  }

private:
  std::uint64_t state_;
};

//! Deterministic generator used everywhere in the library.
//!
//! Algorithm: xoshiro256** 1.0 (Blackman & Vigna), with the 256-bit state
//! filled from four consecutive SplitMix64 outputs of the 64-bit seed.
//! Doubles are built from the top 53 bits. Normal variates use the
//! Box-Muller transform; the second variate of each pair is cached, so the
//! cache is part of the state.
//!
//! Satisfies std::uniform_random_bit_generator. Not thread-safe: one
//! instance per task.
class Rng
{
public:
  using result_type = std::uint64_t;
  static constexpr const char* algorithm = "xoshiro256**/splitmix64";

  explicit Rng(std::uint64_t seed) noexcept;
  static Rng from_state(const std::array<std::uint64_t, 4>& state) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept
  {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next_u64(); }
  std::uint64_t next_u64() noexcept;

  //! Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept;
  //! Standard normal draw.
  double normal() noexcept;

  const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }

  friend bool operator==(const Rng&, const Rng&) = default;

private:
  Rng() = default;
  std::array<std::uint64_t, 4> s_{};
  std::optional<double> spare_normal_;
};

struct MasterSeed
{
  std::uint64_t value = 0;
};

//! Parses a seed given either in decimal or as 0x-prefixed hex.
//! Throws std::invalid_argument on malformed input or overflow.
MasterSeed parse_seed(std::string_view text);

//! Independent-behaving stream for replicate `index` under `master`.
//! Pure function of its arguments.
Rng replicate_seed(MasterSeed master, std::uint64_t index) noexcept;

enum class InnovationDist
{
  StdNormal,
  Uniform,        // U(-0.5, 0.5)
  CenteredChiSq2  // chi^2(2) - 2
};

double draw_innovation(InnovationDist dist, Rng& rng) noexcept;
double innovation_variance(InnovationDist dist) noexcept;

std::string to_string(InnovationDist dist);
InnovationDist parse_innovation(std::string_view name);

}  // namespace smoothci
