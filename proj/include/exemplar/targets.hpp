#pragma once

#include <exemplar/metric.hpp>

#include <functional>
#include <optional>
#include <string>

namespace exemplar
{
	/// The function being learned. Evaluation must be deterministic.
	template <typename In, typename Out>
	struct TargetFunction
	{
		std::function<Out(const In &)> evaluate;
		std::string name;
		std::optional<double> lipschitz_bound;

		Out operator()(const In &x) const { return evaluate(x); }
	};

	/// x -> sin(x[0]). Intended domain [0, 2*pi].
	TargetFunction<Point, double> sine_1d();

	/// x -> -1 below 0.5, +1 from 0.5 on (reads x[0]).
	TargetFunction<Point, double> step_1d();

	/// Label of the grid cell containing x, with `cells` cells per axis over
	/// [lower, upper]. Coordinates outside the box fall into the edge cells.
	TargetFunction<Point, Label> quantized_labeler(int cells = 4, double lower = 0.0, double upper = 1.0);
} // namespace exemplar
