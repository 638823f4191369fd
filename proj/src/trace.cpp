#include <exemplar/trace.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace exemplar
{
	std::string format_real(double value)
	{
		if (std::isinf(value))
			return value > 0 ? "inf" : "-inf";
		char buffer[32];
		const int len = std::snprintf(buffer, sizeof buffer, "%.17g", value);
		return std::string(buffer, static_cast<std::size_t>(len));
	}

	double parse_real(std::string_view text)
	{
		if (text == "inf")
			return std::numeric_limits<double>::infinity();
		if (text == "-inf")
			return -std::numeric_limits<double>::infinity();
		double value = 0.0;
		const char *end = text.data() + text.size();
		const auto [ptr, ec] = std::from_chars(text.data(), end, value);
		if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
			throw Error("malformed number '" + std::string(text) + "'");
		return value;
	}

	namespace
	{
		std::uint64_t parse_unsigned(std::string_view text)
		{
			std::uint64_t value = 0;
			const char *end = text.data() + text.size();
			const auto [ptr, ec] = std::from_chars(text.data(), end, value);
			if (text.empty() || ec != std::errc() || ptr != end)
				throw Error("malformed integer '" + std::string(text) + "'");
			return value;
		}

		std::vector<std::string_view> split(std::string_view line, char sep)
		{
			std::vector<std::string_view> fields;
			std::size_t start = 0;
			for (;;)
			{
				const std::size_t pos = line.find(sep, start);
				fields.push_back(line.substr(start, pos - start));
				if (pos == std::string_view::npos)
					break;
				start = pos + 1;
			}
			return fields;
		}
	} // namespace

	TraceRow make_trace_row(const StepOutcome &outcome, const WindowStats &stats)
	{
		return {outcome.step_index,
				outcome.action,
				outcome.model_size_after,
				outcome.output_distance,
				outcome.hit,
				stats.hit_rate(),
				stats.mean_size_delta()};
	}

	std::string format_trace_row(const TraceRow &row)
	{
		std::string line;
		line += std::to_string(row.n);
		line += ',';
		line += to_string(row.action);
		line += ',';
		line += std::to_string(row.model_size);
		line += ',';
		line += format_real(row.output_distance);
		line += ',';
		line += row.hit ? '1' : '0';
		line += ',';
		line += format_real(row.window_hit_rate);
		line += ',';
		line += format_real(row.window_mean_delta);
		return line;
	}

	TraceRow parse_trace_row(std::string_view line)
	{
		if (!line.empty() && line.back() == '\r')
			line.remove_suffix(1);
		const auto fields = split(line, ',');
		if (fields.size() != 7)
			throw Error("trace row must have 7 fields, got " + std::to_string(fields.size()));
		TraceRow row;
		row.n = parse_unsigned(fields[0]);
		row.action = parse_action(fields[1]);
		row.model_size = parse_unsigned(fields[2]);
		row.output_distance = parse_real(fields[3]);
		if (fields[4] != "0" && fields[4] != "1")
			throw Error("hit must be 0 or 1");
		row.hit = fields[4] == "1";
		row.window_hit_rate = parse_real(fields[5]);
		row.window_mean_delta = parse_real(fields[6]);
		return row;
	}

	TraceWriter::TraceWriter(std::ostream &out) : out_(out)
	{
		out_ << kTraceHeader << '\n';
	}

	void TraceWriter::write(const StepOutcome &outcome, const WindowStats &stats)
	{
		out_ << format_trace_row(make_trace_row(outcome, stats)) << '\n';
	}
} // namespace exemplar
