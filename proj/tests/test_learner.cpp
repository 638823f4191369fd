#include <exemplar/learner.hpp>

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace exemplar;

namespace
{
	using RealModel = Model<Point, double>;

	Point p1(double x) { return make_point({x}); }

	RealModel model_of(std::initializer_list<std::pair<double, double>> pairs)
	{
		RealModel m;
		for (const auto &[x, y] : pairs)
			m.insert({p1(x), y});
		return m;
	}

	LearnerConfig config_with(double epsilon, double q, std::uint64_t seed = 1)
	{
		LearnerConfig c;
		c.epsilon = epsilon;
		c.q = q;
		c.seed = seed;
		return c;
	}

	const MetricDescriptor<Point> kInput = euclidean_metric<Point>();
	const MetricDescriptor<double> kOutput = absolute_metric();
} // namespace

TEST_CASE("config validation follows the parameter ranges")
{
	CHECK_NOTHROW(config_with(0.1, 0.5).validate());
	CHECK_NOTHROW(config_with(1e-9, 0.999).validate());
	CHECK_THROWS_AS(config_with(0.0, 0.75).validate(), ConfigError);
	CHECK_THROWS_AS(config_with(-1.0, 0.75).validate(), ConfigError);
	CHECK_THROWS_AS(config_with(0.1, 1.0).validate(), ConfigError);
	CHECK_THROWS_AS(config_with(0.1, 0.49).validate(), ConfigError);
	auto c = config_with(0.1, 0.75);
	c.tie_tolerance = -0.1;
	CHECK_THROWS_AS(c.validate(), ConfigError);
	try
	{
		config_with(0.1, 1.0).validate();
	}
	catch (const ConfigError &e)
	{
		CHECK(e.key() == "q");
		CHECK(std::string(e.what()).find("[1/2, 1)") != std::string::npos);
	}
}

TEST_CASE("removal and keep probabilities partition the hit branch")
{
	for (double q : {0.5, 0.6, 0.75, 0.8, 0.9, 0.99})
	{
		const auto c = config_with(0.1, q);
		CHECK(c.removal_probability() > 0.0);
		CHECK(c.removal_probability() <= 1.0);
		CHECK(c.keep_probability() >= 0.0);
		CHECK(c.keep_probability() < 1.0);
		CHECK(c.removal_probability() + c.keep_probability() == doctest::Approx(1.0).epsilon(1e-15));
	}
	CHECK(config_with(0.1, 0.5).removal_probability() == 1.0);
	CHECK(config_with(0.1, 0.5).keep_probability() == 0.0);
}

TEST_CASE("nearest_set examples")
{
	const auto m = model_of({{0.0, 0}, {1.0, 0}, {3.0, 0}});
	CHECK(nearest_set(p1(2.2), m, kInput, 0.0) == std::vector<std::size_t>{2});
	CHECK(nearest_set(p1(1.0), model_of({{0.0, 0}, {2.0, 0}}), kInput, 0.0) == std::vector<std::size_t>{0, 1});
	CHECK(nearest_set(p1(123.0), model_of({{7.0, 0}}), kInput, 0.0) == std::vector<std::size_t>{0});
	CHECK_THROWS_AS(nearest_set(p1(0.0), RealModel{}, kInput, 0.0), EmptyModel);
}

TEST_CASE("nearest_set with a relative tie tolerance")
{
	// distances 1.0, 1.05, 1.2
	const auto m = model_of({{1.0, 0}, {-1.05, 0}, {1.2 + 0.0, 0}});
	const Point x = p1(0.0);
	CHECK(nearest_set(x, m, kInput, 0.0) == std::vector<std::size_t>{0});
	CHECK(nearest_set(x, m, kInput, 0.1) == std::vector<std::size_t>{0, 1});
	CHECK(nearest_set(x, m, kInput, 0.25) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("sample_uniform")
{
	RandomStream rng(9);
	const std::vector<int> single{42};
	CHECK(sample_uniform(single, rng) == 42);
	CHECK(rng.draws() == 1);

	CHECK_THROWS_AS(sample_uniform(std::vector<int>{}, rng), EmptyCandidates);

	SUBCASE("three candidates are equally likely")
	{
		const std::vector<char> abc{'a', 'b', 'c'};
		RandomStream r(77);
		constexpr std::uint64_t n = 100000;
		std::uint64_t counts[3] = {};
		for (std::uint64_t i = 0; i < n; ++i)
			++counts[sample_uniform(abc, r) - 'a'];
		for (auto c : counts)
		{
			const double f = static_cast<double>(c) / n;
			CHECK(std::abs(f - 1.0 / 3.0) <= test::three_sigma(1.0 / 3.0, n));
			CHECK(std::abs(f - 1.0 / 3.0) <= 0.01);
		}
	}

	SUBCASE("seed 42 regression pin")
	{
		// first xoshiro256** draw for seed 42 is 0x15780B2E0C2EC716, which is 0 mod 3
		const std::vector<char> abc{'a', 'b', 'c'};
		RandomStream r(42);
		CHECK(sample_uniform(abc, r) == 'a');
		CHECK(r.draws() == 1);
	}
}

TEST_CASE("predict")
{
	const auto config = config_with(0.1, 0.75);
	RandomStream rng(3);
	const auto single = model_of({{0.0, 7.0}});
	for (double x : {-5.0, 0.0, 100.0})
		CHECK(predict(single, p1(x), kInput, config, rng) == 7.0);

	CHECK_THROWS_AS(predict(RealModel{}, p1(0.0), kInput, config, rng), EmptyModel);

	const auto tied = model_of({{0.0, 1.0}, {2.0, 5.0}});
	constexpr std::uint64_t n = 100000;
	std::uint64_t ones = 0;
	for (std::uint64_t i = 0; i < n; ++i)
		ones += predict(tied, p1(1.0), kInput, config, rng) == 1.0 ? 1 : 0;
	const double f = static_cast<double>(ones) / n;
	CHECK(std::abs(f - 0.5) <= test::three_sigma(0.5, n));
	CHECK(std::abs(f - 0.5) <= 0.01);
}

TEST_CASE("step: miss inserts")
{
	auto m = model_of({{0.0, 0.0}});
	RandomStream rng(5);
	const auto o = step(m, p1(1.0), 1.0, kInput, kOutput, config_with(0.5, 0.75), rng);
	CHECK(o.step_index == 1);
	CHECK_FALSE(o.hit);
	CHECK(o.output_distance == 1.0);
	CHECK(o.action == Action::Insert);
	CHECK(o.size_delta == 1);
	CHECK(o.model_size_after == 2);
	CHECK(m[1].input == p1(1.0));
	CHECK(m[1].output == 1.0);
	CHECK(m.insertion_counter() == 2);
	// tie-break draw only; no removal coin on a miss
	CHECK(rng.draws() == 1);
}

TEST_CASE("step: q = 1/2 removes the consulted exemplar")
{
	auto m = model_of({{0.0, 0.0}, {5.0, 0.9}});
	RandomStream rng(5);
	const auto o = step(m, p1(0.1), 0.05, kInput, kOutput, config_with(0.5, 0.5), rng);
	CHECK(o.hit);
	CHECK(o.output_distance == 0.05);
	CHECK(o.action == Action::Remove);
	CHECK(o.size_delta == -1);
	CHECK(o.sampled_index == 0u);
	REQUIRE(m.size() == 1);
	CHECK(m[0].input == p1(5.0));
	CHECK(rng.draws() == 2);
}

TEST_CASE("step: empty model is a forced insert")
{
	RealModel m;
	RandomStream rng(5);
	const auto o = step(m, p1(2.0), 3.0, kInput, kOutput, config_with(0.5, 0.75), rng);
	CHECK(o.action == Action::Insert);
	CHECK_FALSE(o.hit);
	CHECK(std::isinf(o.output_distance));
	CHECK_FALSE(o.sampled_index.has_value());
	CHECK(o.model_size_after == 1);
	CHECK(rng.draws() == 0);
}

TEST_CASE("step: hit branch frequencies at q = 0.8")
{
	const auto config = config_with(0.5, 0.8);
	const auto base = model_of({{0.0, 0.0}, {5.0, 0.9}});
	RandomStream rng(2718);
	constexpr std::uint64_t n = 100000;
	std::uint64_t removes = 0, keeps = 0;
	for (std::uint64_t i = 0; i < n; ++i)
	{
		auto m = base;
		const auto o = step(m, p1(0.1), 0.05, kInput, kOutput, config, rng);
		REQUIRE(o.hit);
		removes += o.action == Action::Remove ? 1 : 0;
		keeps += o.action == Action::Keep ? 1 : 0;
	}
	CHECK(removes + keeps == n);
	const double f = static_cast<double>(removes) / n;
	CHECK(std::abs(f - 0.25) <= test::three_sigma(0.25, n));
	CHECK(std::abs(f - 0.25) <= 0.01);
	CHECK(std::abs(static_cast<double>(keeps) / n - 0.75) <= 0.01);
}

TEST_CASE("step invariants over random runs with heavy ties")
{
	// integer inputs and labels force frequent ties and both branches
	RandomStream gen(31);
	for (std::uint64_t seed = 0; seed < 20; ++seed)
	{
		const auto config = config_with(0.5, 0.5 + 0.49 * gen.uniform_real(), seed);
		Model<Point, Label> m;
		RandomStream rng(seed);
		const auto out_metric = discrete_metric<Label>();
		for (int n = 0; n < 2000; ++n)
		{
			const Point x = p1(static_cast<double>(gen.uniform_index(8)));
			const Label y = static_cast<Label>(gen.uniform_index(3));
			const auto before = m.exemplars();
			const auto o = step(m, x, y, chebyshev_metric<Point>(), out_metric, config, rng);

			REQUIRE(o.model_size_after == m.size());
			REQUIRE(static_cast<long>(m.size()) - static_cast<long>(before.size()) == o.size_delta);
			REQUIRE(o.size_delta == size_delta(o.action));
			REQUIRE(o.hit == (o.output_distance <= config.epsilon));
			if (!o.hit)
				REQUIRE(o.action == Action::Insert);
			else
				REQUIRE(o.action != Action::Insert);
			if (o.sampled_index)
			{
				const auto &consulted = before[*o.sampled_index];
				REQUIRE(out_metric(consulted.output, y) == o.output_distance);
				// sampled exemplar is nearest to x
				const auto nearest = nearest_set(x, [&] {
					Model<Point, Label> copy;
					for (const auto &e : before)
						copy.insert(e);
					return copy;
				}(), chebyshev_metric<Point>(), 0.0);
				REQUIRE(std::find(nearest.begin(), nearest.end(), *o.sampled_index) != nearest.end());
				if (o.action == Action::Remove)
				{
					// exactly the consulted position disappeared
					auto expected = before;
					expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(*o.sampled_index));
					REQUIRE(m.size() == expected.size());
					for (std::size_t i = 0; i < expected.size(); ++i)
						REQUIRE((m[i].input == expected[i].input && m[i].output == expected[i].output));
				}
			}
		}
	}
}

TEST_CASE("q = 1/2 never keeps on a hit")
{
	RandomStream gen(4);
	Model<Point, Label> m;
	RandomStream rng(4);
	for (int n = 0; n < 5000; ++n)
	{
		const auto o = step(m, p1(static_cast<double>(gen.uniform_index(5))), static_cast<Label>(gen.uniform_index(2)),
							euclidean_metric<Point>(), discrete_metric<Label>(), config_with(0.5, 0.5), rng);
		REQUIRE(o.action != Action::Keep);
	}
}

TEST_CASE("run_stream")
{
	CHECK_THROWS_AS(run_stream(std::vector<std::pair<Point, double>>{}, config_with(0.1, 0.75), kInput, kOutput),
					EmptyStream);

	SUBCASE("one element reproduces the first model")
	{
		const std::vector<std::pair<Point, double>> s{{p1(0.3), 1.0}};
		const auto out = run_stream(s, config_with(0.1, 0.75), kInput, kOutput);
		REQUIRE(out.size() == 1);
		CHECK(out[0].action == Action::Insert);
		CHECK(out[0].model_size_after == 1);
		CHECK(out[0].step_index == 1);
	}

	SUBCASE("epsilon beyond the output diameter with q = 1/2 alternates")
	{
		// outputs in [-1, 1], eps = 5: every non-empty step hits and removes,
		// so the model empties and the next step is a forced insert
		std::vector<std::pair<Point, double>> s;
		for (double x : {0.1, 0.7, 0.2, 0.9, 0.4})
			s.push_back({p1(x), std::sin(x)});
		const auto out = run_stream(s, config_with(5.0, 0.5), kInput, kOutput);
		const std::vector<Action> actions{Action::Insert, Action::Remove, Action::Insert, Action::Remove, Action::Insert};
		const std::vector<std::size_t> sizes{1, 0, 1, 0, 1};
		REQUIRE(out.size() == 5);
		for (std::size_t i = 0; i < out.size(); ++i)
		{
			CHECK(out[i].step_index == i + 1);
			CHECK(out[i].action == actions[i]);
			CHECK(out[i].model_size_after == sizes[i]);
		}
	}

	SUBCASE("fixed seed and stream give an identical trace")
	{
		RandomStream gen(8);
		std::vector<std::pair<Point, double>> s;
		for (int i = 0; i < 3000; ++i)
		{
			const double x = gen.uniform_real(0.0, 6.28);
			s.push_back({p1(x), std::sin(x)});
		}
		const auto config = config_with(0.05, 0.8, 99);
		CHECK(run_stream(s, config, kInput, kOutput) == run_stream(s, config, kInput, kOutput));
		CHECK(run_stream(s, config, kInput, kOutput) != run_stream(s, config_with(0.05, 0.8, 100), kInput, kOutput));
	}
}

TEST_CASE("trace identity: mean size change = miss rate - remove rate")
{
	RandomStream gen(10);
	std::vector<std::pair<Point, double>> s;
	for (int i = 0; i < 5000; ++i)
	{
		const double x = gen.uniform_real(0.0, 1.0);
		s.push_back({p1(x), x < 0.5 ? 0.0 : 1.0});
	}
	const auto out = run_stream(s, config_with(0.5, 0.7, 3), kInput, kOutput);
	long delta = 0, misses = 0, removes = 0;
	for (const auto &o : out)
	{
		delta += o.size_delta;
		misses += o.hit ? 0 : 1;
		removes += o.action == Action::Remove ? 1 : 0;
	}
	CHECK(delta == misses - removes);
	CHECK(static_cast<std::size_t>(delta) == out.back().model_size_after);
}

TEST_CASE("Learner with either index reproduces the linear-scan step trace")
{
	RandomStream gen(12);
	std::vector<std::pair<Point, double>> s;
	for (int i = 0; i < 4000; ++i)
	{
		// a coarse grid so tie-breaking is exercised
		const Point x = make_point({std::floor(gen.uniform_real(0, 20)) / 4, std::floor(gen.uniform_real(0, 20)) / 4});
		s.push_back({x, std::sin(x(0)) * std::cos(x(1))});
	}
	const auto config = config_with(0.1, 0.85, 5);
	const auto reference = run_stream(s, config, chebyshev_metric<Point>(), kOutput);
	for (auto kind : {IndexKind::LinearScan, IndexKind::VpTree})
	{
		Learner<Point, double> learner(config, chebyshev_metric<Point>(), kOutput, kind);
		for (std::size_t i = 0; i < s.size(); ++i)
			REQUIRE(learner.observe(s[i].first, s[i].second) == reference[i]);
		CHECK(learner.index().size() == learner.model().size());
	}
}

TEST_CASE("Learner::predict")
{
	Learner<Point, double> learner(config_with(0.1, 0.75), kInput, kOutput);
	CHECK_THROWS_AS(learner.predict(p1(0.0)), EmptyModel);
	learner.observe(p1(0.0), 7.0);
	CHECK(learner.predict(p1(3.0)) == 7.0);
	CHECK_THROWS_AS((Learner<Point, double>(config_with(0.1, 1.5), kInput, kOutput)), ConfigError);
}
