#pragma once

#include <exemplar/learner.hpp>
#include <exemplar/metric.hpp>
#include <exemplar/nn_index.hpp>
#include <exemplar/random.hpp>
#include <exemplar/stats.hpp>
#include <exemplar/stream.hpp>
#include <exemplar/targets.hpp>

#include <cstdint>
#include <functional>
#include <string>

namespace exemplar
{
	struct BranchFrequencies
	{
		std::uint64_t trials = 0;
		std::uint64_t hits = 0;
		double insert_frequency = 0.0;
		double remove_frequency = 0.0;
		double keep_frequency = 0.0;
		/// Mean model-size change over the trials.
		double mean_size_delta = 0.0;
	};

	/// Forces the hit branch `trials` times. Each trial restores the fixed
	/// model {(0, 0), (5, 0.9)} and steps on x = 0.1, y = 0.05 with eps = 0.5,
	/// so the consulted exemplar is always position 0 and always a hit. One
	/// random stream seeded with `seed` serves all trials.
	BranchFrequencies conditional_branch_experiment(double q, std::uint64_t trials, std::uint64_t seed,
													double removal_bias = 0.0);

	/// Forces the miss branch: trial t uses seed derive_seed(seed, t) on the
	/// model {(0, 0)} with x = 1, y = 1, eps = 0.5. `hits` counts any hit
	/// (always 0 on a correct build); `remove_frequency` and `keep_frequency`
	/// must be 0.
	BranchFrequencies miss_branch_experiment(double q, std::uint64_t trials, std::uint64_t seed);

	struct GrowthResult
	{
		std::uint64_t steps = 0;
		double mean_size_delta = 0.0;
		double miss_fraction = 0.0;
		double remove_fraction = 0.0;
		/// 1 - p/q
		double predicted = 0.0;
	};

	/// Drives the update rule with hits drawn as independent Bernoulli(p),
	/// bypassing geometry: hits come from sub-stream 0 of `seed`, the rule's
	/// removal coin from sub-stream 1.
	GrowthResult growth_identity_experiment(double p, double q, std::uint64_t steps, std::uint64_t seed,
											double removal_bias = 0.0);

	struct TheoremOptions
	{
		std::size_t window = 1000;
		double delta = 0.01;
		IndexKind index = IndexKind::VpTree;
	};

	using StepObserver = std::function<void(const StepOutcome &, const WindowStats &)>;

	/// Runs the full learner on f over `steps` stream points. The learner's
	/// random stream is sub-stream 0 of config.seed; the stream generator
	/// uses its own seed. Tail statistics cover the last `window` steps.
	template <typename Out>
	RunReport theorem_experiment(const TargetFunction<Point, Out> &target, const MetricDescriptor<Point> &input_metric,
								 const MetricDescriptor<Out> &output_metric, const LearnerConfig &config,
								 const StreamGenerator &generator, std::uint64_t steps,
								 const TheoremOptions &options = {}, const StepObserver &observer = {})
	{
		config.validate();
		const std::vector<Point> xs = generate_stream(generator, steps);
		Learner<Point, Out> learner(config, input_metric, output_metric, options.index,
									RandomStream::substream(config.seed, 0));
		WindowStats stats(options.window);

		RunReport report;
		report.target = target.name;
		report.input_metric = input_metric.name;
		report.output_metric = output_metric.name;
		report.index = std::string(to_string(options.index));
		report.stream = std::string(to_string(generator.kind));
		report.config = config;
		report.window = options.window;
		report.delta = options.delta;

		for (const Point &x : xs)
		{
			const StepOutcome outcome = learner.observe(x, target(x));
			stats.update(outcome);
			if (observer)
				observer(outcome, stats);
			if (stats.n() % options.window == 0)
				report.series.push_back({stats.n(), stats.model_size(), stats.hit_rate(), stats.mean_size_delta()});
		}

		report.n = stats.n();
		report.final_size = learner.model().size();
		report.tail_hit_rate = stats.hit_rate();
		report.tail_mean_size_delta = stats.mean_size_delta();
		report.stabilized = is_stabilized(report.tail_mean_size_delta, options.delta);
		return report;
	}
} // namespace exemplar
