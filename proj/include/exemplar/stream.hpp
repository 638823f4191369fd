#pragma once

#include <exemplar/metric.hpp>

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace exemplar
{
	enum class StreamKind
	{
		IidUniform,
		GridSweep,
		RandomWalk
	};

	StreamKind parse_stream_kind(std::string_view name);
	std::string_view to_string(StreamKind kind);

	/// Input sequence source over the box [lower, upper].
	///
	///   IidUniform  independent uniform draws in the box.
	///   GridSweep   lattice with `resolution` points per axis (ends included),
	///               visited in a seeded Fisher-Yates order; never repeats.
	///   RandomWalk  uniform start, then per-axis steps uniform in
	///               [-step_scale, step_scale], reflected at the box faces.
	struct StreamGenerator
	{
		StreamKind kind = StreamKind::IidUniform;
		Point lower = Point::Zero(1);
		Point upper = Point::Ones(1);
		int resolution = 16;
		double step_scale = 0.05;
		std::uint64_t seed = 0;

		void validate() const;
		/// Number of distinct lattice points (GridSweep only).
		std::size_t lattice_size() const;
	};

	/// Deterministic in the generator (including its seed). Throws EmptyStream
	/// for length 0 and Error when a GridSweep would need to repeat points.
	std::vector<Point> generate_stream(const StreamGenerator &generator, std::size_t length);
} // namespace exemplar
