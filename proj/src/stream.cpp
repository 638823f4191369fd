#include <exemplar/errors.hpp>
#include <exemplar/random.hpp>
#include <exemplar/stream.hpp>

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace exemplar
{
	StreamKind parse_stream_kind(std::string_view name)
	{
		if (name == "iid_uniform")
			return StreamKind::IidUniform;
		if (name == "grid_sweep")
			return StreamKind::GridSweep;
		if (name == "random_walk")
			return StreamKind::RandomWalk;
		throw ConfigError("stream", "unknown stream '" + std::string(name) +
										"' (expected iid_uniform, grid_sweep or random_walk)");
	}

	std::string_view to_string(StreamKind kind)
	{
		switch (kind)
		{
		case StreamKind::IidUniform:
			return "iid_uniform";
		case StreamKind::GridSweep:
			return "grid_sweep";
		case StreamKind::RandomWalk:
			return "random_walk";
		}
		return "?";
	}

	void StreamGenerator::validate() const
	{
		if (lower.size() == 0 || lower.size() != upper.size())
			throw ConfigError("lower", "bounds must be nonempty and of equal dimension");
		if (!all_finite(lower) || !all_finite(upper))
			throw ConfigError("lower", "bounds must be finite");
		if (!(upper.array() > lower.array()).all())
			throw ConfigError("upper", "must exceed lower on every axis");
		if (kind == StreamKind::GridSweep && resolution < 2)
			throw ConfigError("resolution", "must be at least 2");
		if (kind == StreamKind::RandomWalk && !(step_scale > 0.0 && std::isfinite(step_scale)))
			throw ConfigError("step_scale", "must be positive and finite");
	}

	std::size_t StreamGenerator::lattice_size() const
	{
		std::size_t total = 1;
		for (Eigen::Index i = 0; i < lower.size(); ++i)
		{
			if (total > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(resolution))
				return std::numeric_limits<std::size_t>::max();
			total *= static_cast<std::size_t>(resolution);
		}
		return total;
	}

	namespace
	{
		constexpr std::size_t kMaxLattice = 50'000'000;

		double reflect(double v, double lo, double hi)
		{
			const double width = hi - lo;
			// fold into [lo, lo + 2*width) then mirror the upper half
			double t = std::fmod(v - lo, 2.0 * width);
			if (t < 0.0)
				t += 2.0 * width;
			return t <= width ? lo + t : lo + 2.0 * width - t;
		}

		Point lattice_point(const StreamGenerator &g, std::size_t index)
		{
			Point p(g.lower.size());
			const auto res = static_cast<std::size_t>(g.resolution);
			for (Eigen::Index axis = 0; axis < p.size(); ++axis)
			{
				const std::size_t k = index % res;
				index /= res;
				p(axis) = g.lower(axis) + (g.upper(axis) - g.lower(axis)) * static_cast<double>(k) /
											  static_cast<double>(res - 1);
			}
			return p;
		}
	} // namespace

	std::vector<Point> generate_stream(const StreamGenerator &generator, std::size_t length)
	{
		if (length == 0)
			throw EmptyStream();
		generator.validate();

		RandomStream rng(generator.seed);
		const Eigen::Index dim = generator.lower.size();
		std::vector<Point> points;
		points.reserve(length);

		switch (generator.kind)
		{
		case StreamKind::IidUniform:
			for (std::size_t n = 0; n < length; ++n)
			{
				Point p(dim);
				for (Eigen::Index i = 0; i < dim; ++i)
					p(i) = rng.uniform_real(generator.lower(i), generator.upper(i));
				points.push_back(std::move(p));
			}
			break;

		case StreamKind::GridSweep:
		{
			const std::size_t total = generator.lattice_size();
			if (length > total)
				throw Error("grid_sweep: requested " + std::to_string(length) + " points but the lattice has only " +
							std::to_string(total));
			if (total > kMaxLattice)
				throw Error("grid_sweep: lattice of " + std::to_string(total) + " points is too large to shuffle");
			std::vector<std::size_t> order(total);
			std::iota(order.begin(), order.end(), std::size_t{0});
			for (std::size_t i = total - 1; i > 0; --i)
				std::swap(order[i], order[rng.uniform_index(i + 1)]);
			for (std::size_t n = 0; n < length; ++n)
				points.push_back(lattice_point(generator, order[n]));
			break;
		}

		case StreamKind::RandomWalk:
		{
			Point p(dim);
			for (Eigen::Index i = 0; i < dim; ++i)
				p(i) = rng.uniform_real(generator.lower(i), generator.upper(i));
			points.push_back(p);
			while (points.size() < length)
			{
				for (Eigen::Index i = 0; i < dim; ++i)
					p(i) = reflect(p(i) + rng.uniform_real(-generator.step_scale, generator.step_scale),
								   generator.lower(i), generator.upper(i));
				points.push_back(p);
			}
			break;
		}
		}
		return points;
	}
} // namespace exemplar
