#pragma once

#include <exemplar/errors.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>

namespace exemplar
{
	template <typename Scalar>
	using PointVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

	/// Real-valued input point.
	using Point = PointVector<double>;
	/// Bit string carrier for the Hamming space.
	using BitString = PointVector<bool>;
	/// Class label for discrete output spaces.
	using Label = int;

	/// A distance function with the metric axioms, plus a stable name.
	template <typename T>
	struct MetricDescriptor
	{
		std::function<double(const T &, const T &)> distance;
		std::string name;

		double operator()(const T &a, const T &b) const { return distance(a, b); }
	};

	template <typename Derived>
	bool all_finite(const Eigen::MatrixBase<Derived> &p)
	{
		return p.allFinite();
	}

	/// Builds a point, rejecting NaN and infinite coordinates.
	inline Point make_point(std::initializer_list<double> coords)
	{
		Point p(static_cast<Eigen::Index>(coords.size()));
		Eigen::Index i = 0;
		for (double c : coords)
			p(i++) = c;
		if (!all_finite(p))
			throw Error("point coordinates must be finite");
		return p;
	}

	namespace detail
	{
		template <typename A, typename B>
		void check_same_size(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b)
		{
			if (a.size() != b.size())
				throw DimensionMismatch(static_cast<long>(a.size()), static_cast<long>(b.size()));
		}
	} // namespace detail

	template <typename A, typename B>
	double euclidean_distance(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b)
	{
		detail::check_same_size(a, b);
		return (a.template cast<double>() - b.template cast<double>()).norm();
	}

	template <typename A, typename B>
	double chebyshev_distance(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b)
	{
		detail::check_same_size(a, b);
		if (a.size() == 0)
			return 0.0;
		return (a.template cast<double>() - b.template cast<double>()).cwiseAbs().maxCoeff();
	}

	/// Number of coordinates that differ. Works on bit strings and on any
	/// dense vector (coordinates compared exactly).
	template <typename A, typename B>
	double hamming_distance(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b)
	{
		detail::check_same_size(a, b);
		return static_cast<double>((a.array() != b.array()).count());
	}

	template <typename A, typename B>
	double discrete_distance(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b)
	{
		return (a.size() == b.size() && a == b) ? 0.0 : 1.0;
	}

	inline double discrete_distance(Label a, Label b) { return a == b ? 0.0 : 1.0; }

	inline double absolute_difference(double a, double b) { return std::abs(a - b); }

	// Descriptors ------------------------------------------------------------

	template <typename V = Point>
	MetricDescriptor<V> euclidean_metric()
	{
		return {[](const V &a, const V &b) { return euclidean_distance(a, b); }, "euclidean"};
	}

	template <typename V = Point>
	MetricDescriptor<V> chebyshev_metric()
	{
		return {[](const V &a, const V &b) { return chebyshev_distance(a, b); }, "chebyshev"};
	}

	template <typename V = BitString>
	MetricDescriptor<V> hamming_metric()
	{
		return {[](const V &a, const V &b) { return hamming_distance(a, b); }, "hamming"};
	}

	template <typename V = Label>
	MetricDescriptor<V> discrete_metric()
	{
		return {[](const V &a, const V &b) { return discrete_distance(a, b); }, "discrete"};
	}

	inline MetricDescriptor<double> absolute_metric()
	{
		return {[](double a, double b) { return absolute_difference(a, b); }, "absolute"};
	}

	/// Input metric over real points by name: euclidean, chebyshev, hamming, discrete.
	MetricDescriptor<Point> point_metric(std::string_view name);
} // namespace exemplar
