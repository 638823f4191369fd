#pragma once

#include <exemplar/learner.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace exemplar
{
	/// Sliding-window estimators of the hit probability and of the expected
	/// change in model size, over the last min(n, window_size) steps.
	class WindowStats
	{
	public:
		explicit WindowStats(std::size_t window_size = 1000);

		void update(const StepOutcome &outcome);

		std::size_t window_size() const { return ring_.size(); }
		/// Steps currently inside the window.
		std::size_t filled() const { return filled_; }
		std::uint64_t n() const { return n_; }
		std::size_t model_size() const { return model_size_; }

		std::size_t hits() const { return filled_ - inserts_; }
		std::size_t inserts() const { return inserts_; }
		std::size_t removes() const { return removes_; }

		double hit_rate() const { return fraction(hits()); }
		double miss_fraction() const { return fraction(inserts_); }
		double remove_fraction() const { return fraction(removes_); }
		/// (inserts - removes) / filled. Equals miss_fraction - remove_fraction.
		double mean_size_delta() const;

	private:
		double fraction(std::size_t count) const;

		std::vector<Action> ring_;
		std::size_t head_ = 0;
		std::size_t filled_ = 0;
		std::size_t inserts_ = 0;
		std::size_t removes_ = 0;
		std::uint64_t n_ = 0;
		std::size_t model_size_ = 0;
	};

	inline WindowStats update_stats(WindowStats stats, const StepOutcome &outcome)
	{
		stats.update(outcome);
		return stats;
	}

	struct WindowSnapshot
	{
		std::uint64_t n = 0;
		std::size_t model_size = 0;
		double hit_rate = 0.0;
		double mean_size_delta = 0.0;

		bool operator==(const WindowSnapshot &) const = default;
	};

	/// Finite-sample surrogate for "the expected size change tends to 0".
	inline bool is_stabilized(double mean_size_delta, double delta)
	{
		return std::abs(mean_size_delta) <= delta;
	}

	/// Outcome of a full learner run.
	struct RunReport
	{
		// config echo
		std::string target;
		std::string input_metric;
		std::string output_metric;
		std::string index;
		std::string stream;
		LearnerConfig config;
		std::size_t window = 1000;
		double delta = 0.01;

		std::uint64_t n = 0;
		std::size_t final_size = 0;
		double tail_hit_rate = 0.0;
		double tail_mean_size_delta = 0.0;
		bool stabilized = false;
		/// One snapshot per completed window.
		std::vector<WindowSnapshot> series;

		bool operator==(const RunReport &) const;
	};

	/// `key: value` lines, one per field, then the series.
	std::string format_report(const RunReport &report);
} // namespace exemplar
