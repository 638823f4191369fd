#pragma once

#include <exemplar/errors.hpp>
#include <exemplar/metric.hpp>
#include <exemplar/nn_index.hpp>
#include <exemplar/random.hpp>

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace exemplar
{
	enum class EmptyModelPolicy
	{
		/// A step on an empty model inserts without consulting the rule.
		ForcedInsert
	};

	struct LearnerConfig
	{
		/// Hit threshold, in units of the output metric.
		double epsilon = 0.1;
		/// Target long-run hit probability; 1/2 <= q < 1.
		double q = 0.75;
		/// Relative slack on the nearest-set minimum; 0 means exact ties only.
		double tie_tolerance = 0.0;
		std::uint64_t seed = 0;
		EmptyModelPolicy empty_model_policy = EmptyModelPolicy::ForcedInsert;
		/// Test hook: added to the removal probability. Always 0 outside
		/// mutation tests.
		double removal_bias = 0.0;

		/// Throws ConfigError naming the first offending field.
		void validate() const;

		/// 1/q - 1, the chance a hit deletes the consulted exemplar.
		double removal_probability() const { return 1.0 / q - 1.0 + removal_bias; }
		/// 2 - 1/q, the chance a hit leaves the model unchanged.
		double keep_probability() const { return 2.0 - 1.0 / q; }
	};

	template <typename In, typename Out>
	struct Exemplar
	{
		In input;
		Out output;
	};

	/// The exemplar multiset, kept in insertion order.
	template <typename In, typename Out>
	class Model
	{
	public:
		using value_type = Exemplar<In, Out>;

		std::size_t size() const { return exemplars_.size(); }
		bool empty() const { return exemplars_.empty(); }
		const std::vector<value_type> &exemplars() const { return exemplars_; }
		const value_type &operator[](std::size_t position) const { return exemplars_[position]; }

		/// Total inserts over the model's lifetime.
		std::uint64_t insertion_counter() const { return insertion_counter_; }
		/// Steps applied to this model so far.
		std::uint64_t steps() const { return steps_; }

		void insert(value_type exemplar)
		{
			exemplars_.push_back(std::move(exemplar));
			++insertion_counter_;
		}

		value_type remove(std::size_t position)
		{
			if (position >= exemplars_.size())
				throw PositionOutOfRange(position, exemplars_.size());
			value_type removed = std::move(exemplars_[position]);
			exemplars_.erase(exemplars_.begin() + static_cast<std::ptrdiff_t>(position));
			return removed;
		}

		std::uint64_t advance() { return ++steps_; }

	private:
		std::vector<value_type> exemplars_;
		std::uint64_t insertion_counter_ = 0;
		std::uint64_t steps_ = 0;
	};

	enum class Action
	{
		Insert,
		Remove,
		Keep
	};

	std::string_view to_string(Action action);
	/// Inverse of to_string; throws Error on anything else.
	Action parse_action(std::string_view text);

	struct StepOutcome
	{
		std::uint64_t step_index = 0;
		/// Position of the consulted exemplar; absent on an empty-model step.
		std::optional<std::size_t> sampled_index;
		/// Output-space distance; +inf on an empty-model step.
		double output_distance = std::numeric_limits<double>::infinity();
		bool hit = false;
		Action action = Action::Insert;
		std::size_t model_size_after = 0;
		int size_delta = 0;

		bool operator==(const StepOutcome &) const = default;
	};

	/// Positions of every exemplar whose input is nearest to `x`, ascending.
	/// Linear scan; distances evaluated as metric(stored, x).
	template <typename In, typename Out>
	std::vector<std::size_t> nearest_set(const In &x, const Model<In, Out> &model, const MetricDescriptor<In> &metric,
										 double tie_tolerance)
	{
		if (model.empty())
			throw EmptyModel();
		std::vector<double> distances(model.size());
		double d_min = std::numeric_limits<double>::infinity();
		for (std::size_t i = 0; i < model.size(); ++i)
		{
			distances[i] = metric(model[i].input, x);
			d_min = std::min(d_min, distances[i]);
		}
		std::vector<std::size_t> result;
		for (std::size_t i = 0; i < distances.size(); ++i)
			if (within_tie(distances[i], d_min, tie_tolerance))
				result.push_back(i);
		return result;
	}

	/// Uniform pick via RandomStream::uniform_index: one draw unless rejected.
	template <typename T>
	T sample_uniform(std::span<const T> candidates, RandomStream &rng)
	{
		if (candidates.empty())
			throw EmptyCandidates();
		return candidates[rng.uniform_index(candidates.size())];
	}

	template <typename T>
	T sample_uniform(const std::vector<T> &candidates, RandomStream &rng)
	{
		return sample_uniform(std::span<const T>(candidates), rng);
	}

	/// Randomized prediction: the stored output of a uniformly chosen nearest exemplar.
	template <typename In, typename Out>
	Out predict(const Model<In, Out> &model, const In &x, const MetricDescriptor<In> &metric,
				const LearnerConfig &config, RandomStream &rng)
	{
		const auto positions = nearest_set(x, model, metric, config.tie_tolerance);
		return model[sample_uniform(positions, rng)].output;
	}

	/// What the rule does after the hit test. A miss inserts; a hit draws one
	/// uniform real r and removes when r < 1/q - 1, else keeps.
	Action resolve_action(bool hit, const LearnerConfig &config, RandomStream &rng);

	inline int size_delta(Action action)
	{
		switch (action)
		{
		case Action::Insert:
			return 1;
		case Action::Remove:
			return -1;
		case Action::Keep:
			return 0;
		}
		return 0;
	}

	/// One update of the model on the observation (x, y_true).
	///
	/// `nearest` maps x to the ascending nearest-set positions of the current
	/// model. Randomness is drawn in a fixed order: the tie-break pick first,
	/// then the removal coin (hits only). The exemplar removed on a hit is the
	/// one whose output was compared.
	template <typename In, typename Out, typename NearestFn>
		requires std::invocable<NearestFn &, const In &>
	StepOutcome step(Model<In, Out> &model, const In &x, const Out &y_true, NearestFn &&nearest,
					 const MetricDescriptor<Out> &output_metric, const LearnerConfig &config, RandomStream &rng)
	{
		StepOutcome outcome;
		outcome.step_index = model.advance();

		if (model.empty())
		{
			model.insert({x, y_true});
			outcome.action = Action::Insert;
		}
		else
		{
			const std::vector<std::size_t> positions = nearest(x);
			const std::size_t sampled = sample_uniform(positions, rng);
			outcome.sampled_index = sampled;
			outcome.output_distance = output_metric(model[sampled].output, y_true);
			outcome.hit = outcome.output_distance <= config.epsilon;
			outcome.action = resolve_action(outcome.hit, config, rng);
			if (outcome.action == Action::Insert)
				model.insert({x, y_true});
			else if (outcome.action == Action::Remove)
				model.remove(sampled);
		}

		outcome.size_delta = size_delta(outcome.action);
		outcome.model_size_after = model.size();
		return outcome;
	}

	/// step() with a linear-scan nearest set under `input_metric`.
	template <typename In, typename Out>
	StepOutcome step(Model<In, Out> &model, const In &x, const Out &y_true, const MetricDescriptor<In> &input_metric,
					 const MetricDescriptor<Out> &output_metric, const LearnerConfig &config, RandomStream &rng)
	{
		return step(
			model, x, y_true,
			[&](const In &query) { return nearest_set(query, model, input_metric, config.tie_tolerance); },
			output_metric, config, rng);
	}

	/// Model, index, and random stream kept in lockstep.
	template <typename In, typename Out>
	class Learner
	{
	public:
		Learner(LearnerConfig config, MetricDescriptor<In> input_metric, MetricDescriptor<Out> output_metric,
				IndexKind index_kind = IndexKind::VpTree, std::optional<RandomStream> rng = std::nullopt)
			: config_(config),
			  input_metric_(input_metric),
			  output_metric_(std::move(output_metric)),
			  index_(std::move(input_metric), index_kind),
			  rng_(rng ? *rng : RandomStream(config.seed))
		{
			config_.validate();
		}

		StepOutcome observe(const In &x, const Out &y_true)
		{
			const StepOutcome outcome = step(
				model_, x, y_true, [&](const In &query) { return index_.query_nearest_set(query, config_.tie_tolerance); },
				output_metric_, config_, rng_);
			if (outcome.action == Action::Insert)
				index_.insert(x);
			else if (outcome.action == Action::Remove)
				index_.remove(*outcome.sampled_index);
			return outcome;
		}

		Out predict(const In &x)
		{
			if (model_.empty())
				throw EmptyModel();
			const auto positions = index_.query_nearest_set(x, config_.tie_tolerance);
			return model_[sample_uniform(positions, rng_)].output;
		}

		const Model<In, Out> &model() const { return model_; }
		const LearnerConfig &config() const { return config_; }
		const NearestIndex<In> &index() const { return index_; }
		const RandomStream &rng() const { return rng_; }

	private:
		LearnerConfig config_;
		MetricDescriptor<In> input_metric_;
		MetricDescriptor<Out> output_metric_;
		Model<In, Out> model_;
		NearestIndex<In> index_;
		RandomStream rng_;
	};

	/// Folds step over a stream from an empty model, so the first step
	/// reproduces A_1 = {x_1}. The random stream is seeded with config.seed.
	template <typename In, typename Out>
	std::vector<StepOutcome> run_stream(std::span<const std::pair<In, Out>> stream, const LearnerConfig &config,
										const MetricDescriptor<In> &input_metric,
										const MetricDescriptor<Out> &output_metric)
	{
		if (stream.empty())
			throw EmptyStream();
		config.validate();
		Model<In, Out> model;
		RandomStream rng(config.seed);
		std::vector<StepOutcome> outcomes;
		outcomes.reserve(stream.size());
		for (const auto &[x, y] : stream)
			outcomes.push_back(step(model, x, y, input_metric, output_metric, config, rng));
		return outcomes;
	}

	template <typename In, typename Out>
	std::vector<StepOutcome> run_stream(const std::vector<std::pair<In, Out>> &stream, const LearnerConfig &config,
										const MetricDescriptor<In> &input_metric,
										const MetricDescriptor<Out> &output_metric)
	{
		return run_stream(std::span<const std::pair<In, Out>>(stream), config, input_metric, output_metric);
	}
} // namespace exemplar
