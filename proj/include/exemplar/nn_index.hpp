#pragma once

#include <exemplar/errors.hpp>
#include <exemplar/metric.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace exemplar
{
	enum class IndexKind
	{
		LinearScan,
		VpTree
	};

	IndexKind parse_index_kind(std::string_view name);
	std::string_view to_string(IndexKind kind);

	/// True when `d` belongs to the nearest set whose minimum distance is `d_min`.
	/// Every nearest-set routine goes through this so tie sets agree bit for bit.
	inline bool within_tie(double d, double d_min, double tie_tolerance)
	{
		return d <= d_min * (1.0 + tie_tolerance);
	}

	/// Reference backend: evaluates distance(stored, query) for every point.
	template <typename P>
	class LinearScanIndex
	{
	public:
		explicit LinearScanIndex(MetricDescriptor<P> metric) : metric_(std::move(metric)) {}

		std::size_t size() const { return points_.size(); }
		bool empty() const { return points_.empty(); }

		void insert(const P &p) { points_.push_back(p); }

		void remove(std::size_t position)
		{
			if (position >= points_.size())
				throw PositionOutOfRange(position, points_.size());
			points_.erase(points_.begin() + static_cast<std::ptrdiff_t>(position));
		}

		std::vector<std::size_t> query_nearest_set(const P &x, double tie_tolerance) const
		{
			if (points_.empty())
				throw EmptyModel();
			distances_.resize(points_.size());
			double d_min = std::numeric_limits<double>::infinity();
			for (std::size_t i = 0; i < points_.size(); ++i)
			{
				distances_[i] = metric_(points_[i], x);
				d_min = std::min(d_min, distances_[i]);
			}
			evaluations_ = points_.size();
			std::vector<std::size_t> result;
			for (std::size_t i = 0; i < points_.size(); ++i)
				if (within_tie(distances_[i], d_min, tie_tolerance))
					result.push_back(i);
			return result;
		}

		/// Distance evaluations spent by the most recent query.
		std::size_t last_evaluations() const { return evaluations_; }

		const MetricDescriptor<P> &metric() const { return metric_; }

	private:
		MetricDescriptor<P> metric_;
		std::vector<P> points_;
		mutable std::vector<double> distances_;
		mutable std::size_t evaluations_ = 0;
	};

	/// Vantage-point tree over an arbitrary metric with dynamic maintenance.
	///
	/// Points live in slots. Positions (the learner's insertion-ordered view)
	/// map to slots through `order_`. Inserts land in an unindexed pending
	/// list that every query scans; removals tombstone the slot. The tree is
	/// rebuilt from the live points, in position order, when the pending list
	/// outgrows half the live size or when dead slots exceed half the live size.
	///
	/// Queries run one pruned traversal with the running threshold
	/// best * (1 + tie_tolerance) and keep every evaluated point under the
	/// threshold at evaluation time; a final filter against the true minimum
	/// yields exactly the set a linear scan would return. Every live point is
	/// evaluated at most once per query.
	template <typename P>
	class VpTreeIndex
	{
	public:
		explicit VpTreeIndex(MetricDescriptor<P> metric, std::size_t leaf_capacity = 16)
			: metric_(std::move(metric)), leaf_capacity_(std::max<std::size_t>(leaf_capacity, 1))
		{
		}

		std::size_t size() const { return order_.size(); }
		bool empty() const { return order_.empty(); }
		std::size_t leaf_capacity() const { return leaf_capacity_; }

		void insert(const P &p)
		{
			const std::size_t slot = points_.size();
			points_.push_back(p);
			live_.push_back(true);
			position_of_slot_.push_back(order_.size());
			order_.push_back(slot);
			pending_.push_back(slot);
			if (pending_.size() > std::max(leaf_capacity_, size() / 2))
				rebuild();
		}

		void remove(std::size_t position)
		{
			if (position >= order_.size())
				throw PositionOutOfRange(position, order_.size());
			const std::size_t slot = order_[position];
			order_.erase(order_.begin() + static_cast<std::ptrdiff_t>(position));
			for (std::size_t i = position; i < order_.size(); ++i)
				position_of_slot_[order_[i]] = i;
			live_[slot] = false;
			if (auto it = std::find(pending_.begin(), pending_.end(), slot); it != pending_.end())
				pending_.erase(it);
			if (tombstones() > size() / 2)
				rebuild();
		}

		/// Dead slots not yet reclaimed.
		std::size_t tombstones() const { return points_.size() - order_.size(); }
		std::size_t pending() const { return pending_.size(); }
		std::size_t rebuilds() const { return rebuilds_; }

		/// Point stored at a position (insertion order, removals compacted).
		const P &at(std::size_t position) const { return points_.at(order_.at(position)); }

		void rebuild()
		{
			++rebuilds_;
			std::vector<P> compacted;
			compacted.reserve(order_.size());
			for (std::size_t slot : order_)
				compacted.push_back(std::move(points_[slot]));
			points_ = std::move(compacted);
			live_.assign(points_.size(), true);
			order_.resize(points_.size());
			position_of_slot_.resize(points_.size());
			for (std::size_t i = 0; i < points_.size(); ++i)
				order_[i] = position_of_slot_[i] = i;
			pending_.clear();
			nodes_.clear();
			bucket_.clear();
			root_ = -1;
			if (points_.empty())
				return;
			std::vector<std::pair<double, std::size_t>> items(points_.size());
			for (std::size_t i = 0; i < points_.size(); ++i)
				items[i] = {0.0, i};
			root_ = build(items, 0, items.size());
		}

		std::vector<std::size_t> query_nearest_set(const P &x, double tie_tolerance) const
		{
			if (empty())
				throw EmptyModel();
			Query query{x, tie_tolerance, std::numeric_limits<double>::infinity(), 0, {}};
			for (std::size_t slot : pending_)
				visit(query, slot);
			if (root_ >= 0)
				search(query, root_);
			evaluations_ = query.evaluations;

			std::vector<std::size_t> result;
			for (const auto &[d, slot] : query.candidates)
				if (within_tie(d, query.best, tie_tolerance))
					result.push_back(position_of_slot_[slot]);
			std::sort(result.begin(), result.end());
			return result;
		}

		std::size_t last_evaluations() const { return evaluations_; }

		const MetricDescriptor<P> &metric() const { return metric_; }

	private:
		struct Node
		{
			std::size_t vantage = 0;
			double radius = 0.0;
			std::int64_t inside = -1;
			std::int64_t outside = -1;
			// leaf bucket range into bucket_
			std::size_t begin = 0;
			std::size_t end = 0;
			bool leaf = false;
		};

		struct Query
		{
			const P &x;
			double tie_tolerance;
			double best = std::numeric_limits<double>::infinity();
			std::size_t evaluations = 0;
			std::vector<std::pair<double, std::size_t>> candidates;

			double threshold() const { return best * (1.0 + tie_tolerance); }
		};

		std::int64_t build(std::vector<std::pair<double, std::size_t>> &items, std::size_t lo, std::size_t hi)
		{
			const auto index = static_cast<std::int64_t>(nodes_.size());
			nodes_.emplace_back();
			if (hi - lo <= leaf_capacity_)
			{
				Node &leaf = nodes_.back();
				leaf.leaf = true;
				leaf.begin = bucket_.size();
				for (std::size_t i = lo; i < hi; ++i)
					bucket_.push_back(items[i].second);
				leaf.end = bucket_.size();
				return index;
			}

			const std::size_t vantage = items[lo].second;
			for (std::size_t i = lo + 1; i < hi; ++i)
				items[i].first = metric_(points_[vantage], points_[items[i].second]);
			const std::size_t mid = lo + 1 + (hi - lo - 1) / 2;
			const auto first = items.begin();
			std::nth_element(first + static_cast<std::ptrdiff_t>(lo + 1), first + static_cast<std::ptrdiff_t>(mid),
							 first + static_cast<std::ptrdiff_t>(hi));
			const double radius = items[mid].first;

			const std::int64_t inside = build(items, lo + 1, mid);
			const std::int64_t outside = build(items, mid, hi);
			Node &node = nodes_[static_cast<std::size_t>(index)];
			node.vantage = vantage;
			node.radius = radius;
			node.inside = inside;
			node.outside = outside;
			return index;
		}

		double visit(Query &query, std::size_t slot) const
		{
			const double d = metric_(points_[slot], query.x);
			++query.evaluations;
			query.best = std::min(query.best, d);
			if (d <= query.threshold())
				query.candidates.emplace_back(d, slot);
			return d;
		}

		// A subtree is skipped only when its lower bound beats the running
		// threshold by more than floating-point noise in the triangle bound.
		static bool prunable(double lower_bound, double scale, double threshold)
		{
			return lower_bound > threshold + 1e-9 * (scale + threshold);
		}

		void search(Query &query, std::int64_t index) const
		{
			if (index < 0)
				return;
			const Node &node = nodes_[static_cast<std::size_t>(index)];
			if (node.leaf)
			{
				for (std::size_t i = node.begin; i < node.end; ++i)
					if (live_[bucket_[i]])
						visit(query, bucket_[i]);
				return;
			}

			if (!live_[node.vantage])
			{
				// no distance to prune with; evaluating a dead point would
				// cost more than a linear scan
				search(query, node.inside);
				search(query, node.outside);
				return;
			}

			const double dv = visit(query, node.vantage);
			const double scale = dv + node.radius;
			if (dv <= node.radius)
			{
				if (!prunable(dv - node.radius, scale, query.threshold()))
					search(query, node.inside);
				if (!prunable(node.radius - dv, scale, query.threshold()))
					search(query, node.outside);
			}
			else
			{
				if (!prunable(node.radius - dv, scale, query.threshold()))
					search(query, node.outside);
				if (!prunable(dv - node.radius, scale, query.threshold()))
					search(query, node.inside);
			}
		}

		MetricDescriptor<P> metric_;
		std::size_t leaf_capacity_;

		std::vector<P> points_;
		std::vector<bool> live_;
		std::vector<std::size_t> order_;
		std::vector<std::size_t> position_of_slot_;
		std::vector<std::size_t> pending_;

		std::vector<Node> nodes_;
		std::vector<std::size_t> bucket_;
		std::int64_t root_ = -1;
		std::size_t rebuilds_ = 0;
		mutable std::size_t evaluations_ = 0;
	};

	/// Either backend behind one interface.
	template <typename P>
	class NearestIndex
	{
	public:
		NearestIndex(MetricDescriptor<P> metric, IndexKind kind, std::size_t leaf_capacity = 16)
			: backend_(make(std::move(metric), kind, leaf_capacity))
		{
		}

		IndexKind kind() const { return backend_.index() == 0 ? IndexKind::LinearScan : IndexKind::VpTree; }

		std::size_t size() const
		{
			return std::visit([](const auto &b) { return b.size(); }, backend_);
		}
		bool empty() const { return size() == 0; }

		void insert(const P &p)
		{
			std::visit([&](auto &b) { b.insert(p); }, backend_);
		}

		void remove(std::size_t position)
		{
			std::visit([&](auto &b) { b.remove(position); }, backend_);
		}

		std::vector<std::size_t> query_nearest_set(const P &x, double tie_tolerance) const
		{
			return std::visit([&](const auto &b) { return b.query_nearest_set(x, tie_tolerance); }, backend_);
		}

		std::size_t last_evaluations() const
		{
			return std::visit([](const auto &b) { return b.last_evaluations(); }, backend_);
		}

		/// Rebuilds the tree from the live points; no-op for a linear scan.
		void rebuild()
		{
			if (auto *tree = std::get_if<VpTreeIndex<P>>(&backend_))
				tree->rebuild();
		}

	private:
		using Backend = std::variant<LinearScanIndex<P>, VpTreeIndex<P>>;

		static Backend make(MetricDescriptor<P> metric, IndexKind kind, std::size_t leaf_capacity)
		{
			if (kind == IndexKind::LinearScan)
				return LinearScanIndex<P>(std::move(metric));
			return VpTreeIndex<P>(std::move(metric), leaf_capacity);
		}

		Backend backend_;
	};

	/// Index over a fixed, nonempty point set.
	template <typename P>
	NearestIndex<P> build_index(std::span<const P> points, MetricDescriptor<P> metric, IndexKind kind,
								std::size_t leaf_capacity = 16)
	{
		if (points.empty())
			throw EmptyModel();
		NearestIndex<P> index(std::move(metric), kind, leaf_capacity);
		for (const P &p : points)
			index.insert(p);
		index.rebuild();
		return index;
	}
} // namespace exemplar
