#include <exemplar/metric.hpp>
#include <exemplar/targets.hpp>

#include <algorithm>
#include <cmath>

namespace exemplar
{
	MetricDescriptor<Point> point_metric(std::string_view name)
	{
		if (name == "euclidean")
			return euclidean_metric<Point>();
		if (name == "chebyshev")
			return chebyshev_metric<Point>();
		if (name == "hamming")
			return hamming_metric<Point>();
		if (name == "discrete")
			return discrete_metric<Point>();
		throw ConfigError("metric", "unknown metric '" + std::string(name) + "' (expected euclidean, chebyshev, hamming or discrete)");
	}

	TargetFunction<Point, double> sine_1d()
	{
		return {[](const Point &x) { return std::sin(x(0)); }, "sine_1d", 1.0};
	}

	TargetFunction<Point, double> step_1d()
	{
		return {[](const Point &x) { return x(0) < 0.5 ? -1.0 : 1.0; }, "step_1d", std::nullopt};
	}

	TargetFunction<Point, Label> quantized_labeler(int cells, double lower, double upper)
	{
		if (cells < 1)
			throw ConfigError("cells", "must be at least 1");
		if (!(upper > lower))
			throw ConfigError("upper", "must exceed lower");
		return {[=](const Point &x) {
					Label label = 0;
					Label stride = 1;
					for (Eigen::Index i = 0; i < x.size(); ++i)
					{
						const double t = (x(i) - lower) / (upper - lower) * cells;
						const int cell = std::clamp(static_cast<int>(std::floor(t)), 0, cells - 1);
						label += cell * stride;
						stride *= cells;
					}
					return label;
				},
				"quantized_labeler", std::nullopt};
	}
} // namespace exemplar
