#pragma once

#include <exemplar/learner.hpp>
#include <exemplar/stats.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace exemplar
{
	/// Per-step trace CSV. Floats use 17 significant digits so doubles
	/// round-trip exactly; an infinite distance is written as `inf`; `hit`
	/// is 0 or 1.
	inline constexpr std::string_view kTraceHeader =
		"n,action,model_size,output_distance,hit,window_hit_rate,window_mean_delta";

	/// Sweep summary CSV, one row per run.
	inline constexpr std::string_view kSummaryHeader =
		"q,epsilon,seed,final_size,tail_hit_rate,tail_mean_delta,stabilized";

	std::string format_real(double value);
	/// Strict: the whole text must be a number, or `inf`.
	double parse_real(std::string_view text);

	struct TraceRow
	{
		std::uint64_t n = 0;
		Action action = Action::Insert;
		std::size_t model_size = 0;
		double output_distance = 0.0;
		bool hit = false;
		double window_hit_rate = 0.0;
		double window_mean_delta = 0.0;

		bool operator==(const TraceRow &) const = default;
	};

	TraceRow make_trace_row(const StepOutcome &outcome, const WindowStats &stats);
	std::string format_trace_row(const TraceRow &row);
	/// Throws Error on a malformed row.
	TraceRow parse_trace_row(std::string_view line);

	class TraceWriter
	{
	public:
		/// Writes the header immediately.
		explicit TraceWriter(std::ostream &out);

		void write(const StepOutcome &outcome, const WindowStats &stats);

	private:
		std::ostream &out_;
	};
} // namespace exemplar
