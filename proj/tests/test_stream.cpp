#include <exemplar/stream.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace exemplar;

namespace
{
	StreamGenerator generator(StreamKind kind, double lo, double hi, std::uint64_t seed = 1, int dim = 1)
	{
		StreamGenerator g;
		g.kind = kind;
		g.lower = Point::Constant(dim, lo);
		g.upper = Point::Constant(dim, hi);
		g.seed = seed;
		return g;
	}
} // namespace

TEST_CASE("grid sweep is a permutation of the lattice")
{
	auto g = generator(StreamKind::GridSweep, 0.0, 1.0, 3);
	g.resolution = 4;
	const auto points = generate_stream(g, 4);
	std::vector<double> values;
	for (const auto &p : points)
		values.push_back(p(0));
	std::sort(values.begin(), values.end());
	CHECK(values == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0});
}

TEST_CASE("grid sweep never repeats and refuses to overrun the lattice")
{
	auto g = generator(StreamKind::GridSweep, -1.0, 1.0, 5, 2);
	g.resolution = 10;
	const auto points = generate_stream(g, 100);
	std::set<std::pair<double, double>> seen;
	for (const auto &p : points)
		seen.insert({p(0), p(1)});
	CHECK(seen.size() == 100);
	CHECK_THROWS_AS(generate_stream(g, 101), Error);
}

TEST_CASE("iid uniform passes a Kolmogorov-Smirnov test at the 1% level")
{
	const auto points = generate_stream(generator(StreamKind::IidUniform, 0.0, 1.0, 77), 10000);
	std::vector<double> v;
	for (const auto &p : points)
		v.push_back(p(0));
	std::sort(v.begin(), v.end());
	const double n = static_cast<double>(v.size());
	double d = 0.0;
	for (std::size_t i = 0; i < v.size(); ++i)
	{
		d = std::max(d, (static_cast<double>(i) + 1.0) / n - v[i]);
		d = std::max(d, v[i] - static_cast<double>(i) / n);
	}
	// asymptotic 1% critical value 1.628 / sqrt(n)
	CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("streams are deterministic in the seed")
{
	for (auto kind : {StreamKind::IidUniform, StreamKind::GridSweep, StreamKind::RandomWalk})
	{
		auto g = generator(kind, 0.0, 2.0, 42, 2);
		g.resolution = 50;
		CHECK(generate_stream(g, 500) == generate_stream(g, 500));
		auto other = g;
		other.seed = 43;
		CHECK(generate_stream(g, 500) != generate_stream(other, 500));
	}
}

TEST_CASE("random walk stays in the box with bounded steps")
{
	auto g = generator(StreamKind::RandomWalk, 0.0, 1.0, 9, 3);
	g.step_scale = 0.3;
	const auto points = generate_stream(g, 5000);
	std::set<double> distinct;
	for (std::size_t i = 0; i < points.size(); ++i)
	{
		REQUIRE((points[i].array() >= 0.0).all());
		REQUIRE((points[i].array() <= 1.0).all());
		if (i > 0)
			REQUIRE((points[i] - points[i - 1]).cwiseAbs().maxCoeff() <= 0.3 + 1e-12);
		distinct.insert(points[i](0));
	}
	CHECK(distinct.size() == points.size());
}

TEST_CASE("stream errors")
{
	CHECK_THROWS_AS(generate_stream(generator(StreamKind::IidUniform, 0.0, 1.0), 0), EmptyStream);
	CHECK_THROWS_AS(generate_stream(generator(StreamKind::IidUniform, 1.0, 1.0), 5), ConfigError);
	auto g = generator(StreamKind::RandomWalk, 0.0, 1.0);
	g.step_scale = 0.0;
	CHECK_THROWS_AS(generate_stream(g, 5), ConfigError);
	CHECK(parse_stream_kind("grid_sweep") == StreamKind::GridSweep);
	CHECK_THROWS_AS(parse_stream_kind("sobol"), ConfigError);
}
