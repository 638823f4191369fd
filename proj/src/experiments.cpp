#include <exemplar/experiments.hpp>

namespace exemplar
{
	namespace
	{
		using ScalarModel = Model<Point, double>;

		ScalarModel make_model(std::initializer_list<std::pair<double, double>> pairs)
		{
			ScalarModel model;
			for (const auto &[x, y] : pairs)
				model.insert({make_point({x}), y});
			return model;
		}

		BranchFrequencies tally(std::uint64_t trials, std::uint64_t hits, std::uint64_t inserts,
								std::uint64_t removes, std::uint64_t keeps)
		{
			const double n = static_cast<double>(trials);
			BranchFrequencies result;
			result.trials = trials;
			result.hits = hits;
			result.insert_frequency = static_cast<double>(inserts) / n;
			result.remove_frequency = static_cast<double>(removes) / n;
			result.keep_frequency = static_cast<double>(keeps) / n;
			result.mean_size_delta = (static_cast<double>(inserts) - static_cast<double>(removes)) / n;
			return result;
		}
	} // namespace

	BranchFrequencies conditional_branch_experiment(double q, std::uint64_t trials, std::uint64_t seed,
													double removal_bias)
	{
		LearnerConfig config;
		config.epsilon = 0.5;
		config.q = q;
		config.seed = seed;
		config.removal_bias = removal_bias;
		config.validate();
		if (trials == 0)
			throw Error("conditional_branch_experiment: trials must be positive");

		const ScalarModel base = make_model({{0.0, 0.0}, {5.0, 0.9}});
		const Point x = make_point({0.1});
		const auto input = euclidean_metric<Point>();
		const auto output = absolute_metric();
		RandomStream rng(seed);

		std::uint64_t hits = 0, inserts = 0, removes = 0, keeps = 0;
		for (std::uint64_t t = 0; t < trials; ++t)
		{
			ScalarModel model = base;
			const StepOutcome outcome = step(model, x, 0.05, input, output, config, rng);
			hits += outcome.hit ? 1 : 0;
			inserts += outcome.action == Action::Insert ? 1 : 0;
			removes += outcome.action == Action::Remove ? 1 : 0;
			keeps += outcome.action == Action::Keep ? 1 : 0;
		}
		return tally(trials, hits, inserts, removes, keeps);
	}

	BranchFrequencies miss_branch_experiment(double q, std::uint64_t trials, std::uint64_t seed)
	{
		LearnerConfig config;
		config.epsilon = 0.5;
		config.q = q;
		config.validate();
		if (trials == 0)
			throw Error("miss_branch_experiment: trials must be positive");

		const ScalarModel base = make_model({{0.0, 0.0}});
		const Point x = make_point({1.0});
		const auto input = euclidean_metric<Point>();
		const auto output = absolute_metric();

		std::uint64_t hits = 0, inserts = 0, removes = 0, keeps = 0;
		for (std::uint64_t t = 0; t < trials; ++t)
		{
			config.seed = derive_seed(seed, t);
			RandomStream rng(config.seed);
			ScalarModel model = base;
			const StepOutcome outcome = step(model, x, 1.0, input, output, config, rng);
			hits += outcome.hit ? 1 : 0;
			inserts += outcome.action == Action::Insert ? 1 : 0;
			removes += outcome.action == Action::Remove ? 1 : 0;
			keeps += outcome.action == Action::Keep ? 1 : 0;
		}
		return tally(trials, hits, inserts, removes, keeps);
	}

	GrowthResult growth_identity_experiment(double p, double q, std::uint64_t steps, std::uint64_t seed,
											double removal_bias)
	{
		if (!(p >= 0.0 && p <= 1.0))
			throw Error("growth_identity_experiment: p must lie in [0, 1]");
		if (steps == 0)
			throw Error("growth_identity_experiment: steps must be positive");
		LearnerConfig config;
		config.q = q;
		config.seed = seed;
		config.removal_bias = removal_bias;
		config.validate();

		RandomStream oracle = RandomStream::substream(seed, 0);
		RandomStream rule = RandomStream::substream(seed, 1);
		std::uint64_t inserts = 0, removes = 0;
		for (std::uint64_t n = 0; n < steps; ++n)
		{
			const bool hit = oracle.uniform_real() < p;
			const Action action = resolve_action(hit, config, rule);
			inserts += action == Action::Insert ? 1 : 0;
			removes += action == Action::Remove ? 1 : 0;
		}

		const double total = static_cast<double>(steps);
		GrowthResult result;
		result.steps = steps;
		result.miss_fraction = static_cast<double>(inserts) / total;
		result.remove_fraction = static_cast<double>(removes) / total;
		result.mean_size_delta = (static_cast<double>(inserts) - static_cast<double>(removes)) / total;
		result.predicted = 1.0 - p / q;
		return result;
	}
} // namespace exemplar
