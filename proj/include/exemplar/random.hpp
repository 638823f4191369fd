#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace exemplar
{
	/// SplitMix64 output function. Used for seeding and for sub-stream derivation.
	std::uint64_t splitmix64(std::uint64_t &state);

	/// Seed of sub-stream `index` under `master`:
	///   splitmix64 finalizer applied to master + 0x9E3779B97F4A7C15 * (index + 1).
	std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

	/// Seedable xoshiro256** generator. The 256-bit state is filled by four
	/// successive SplitMix64 outputs starting from the seed, so a given seed
	/// yields the same sequence on every platform.
	///
	/// Satisfies UniformRandomBitGenerator, but library code only uses the
	/// draws below so that consumption counts stay documented:
	///   - next_u64: one draw.
	///   - uniform_real: one draw, top 53 bits scaled into [0, 1).
	///   - uniform_index(m): rejection sampling; one draw unless the value
	///     falls below (2^64 mod m), in which case it redraws.
	class RandomStream
	{
	public:
		using result_type = std::uint64_t;

		explicit RandomStream(std::uint64_t seed = 0);

		/// Independent stream for run `index` of a sweep seeded with `master`.
		static RandomStream substream(std::uint64_t master, std::uint64_t index)
		{
			return RandomStream(derive_seed(master, index));
		}

		std::uint64_t next_u64();
		double uniform_real();
		std::uint64_t uniform_index(std::uint64_t m);

		/// Uniform real in [lo, hi).
		double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

		/// Number of 64-bit draws consumed so far.
		std::uint64_t draws() const { return draws_; }

		result_type operator()() { return next_u64(); }
		static constexpr result_type min() { return 0; }
		static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

		bool operator==(const RandomStream &) const = default;

	private:
		std::array<std::uint64_t, 4> state_;
		std::uint64_t draws_ = 0;
	};
} // namespace exemplar
