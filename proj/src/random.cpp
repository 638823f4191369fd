#include <exemplar/random.hpp>

#include <stdexcept>

namespace exemplar
{
	namespace
	{
		constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

		std::uint64_t mix(std::uint64_t z)
		{
			z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
			z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
			return z ^ (z >> 31);
		}

		constexpr std::uint64_t rotl(std::uint64_t x, int k)
		{
			return (x << k) | (x >> (64 - k));
		}
	} // namespace

	std::uint64_t splitmix64(std::uint64_t &state)
	{
		state += kGolden;
		return mix(state);
	}

	std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
	{
		return mix(master + kGolden * (index + 1));
	}

	RandomStream::RandomStream(std::uint64_t seed)
	{
		std::uint64_t s = seed;
		for (auto &word : state_)
			word = splitmix64(s);
	}

	std::uint64_t RandomStream::next_u64()
	{
		++draws_;
		const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
		const std::uint64_t t = state_[1] << 17;
		state_[2] ^= state_[0];
		state_[3] ^= state_[1];
		state_[1] ^= state_[2];
		state_[0] ^= state_[3];
		state_[2] ^= t;
		state_[3] = rotl(state_[3], 45);
		return result;
	}

	double RandomStream::uniform_real()
	{
		return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
	}

	std::uint64_t RandomStream::uniform_index(std::uint64_t m)
	{
		if (m == 0)
			throw std::invalid_argument("uniform_index: empty range");
		// values below 2^64 mod m would over-represent the low residues
		const std::uint64_t threshold = (0 - m) % m;
		for (;;)
		{
			const std::uint64_t r = next_u64();
			if (r >= threshold)
				return r % m;
		}
	}
} // namespace exemplar
