#include <exemplar/stats.hpp>
#include <exemplar/trace.hpp>

#include <sstream>

namespace exemplar
{
	WindowStats::WindowStats(std::size_t window_size) : ring_(window_size == 0 ? 1 : window_size, Action::Keep) {}

	void WindowStats::update(const StepOutcome &outcome)
	{
		if (filled_ == ring_.size())
		{
			const Action evicted = ring_[head_];
			if (evicted == Action::Insert)
				--inserts_;
			else if (evicted == Action::Remove)
				--removes_;
		}
		else
		{
			++filled_;
		}
		ring_[head_] = outcome.action;
		head_ = (head_ + 1) % ring_.size();
		if (outcome.action == Action::Insert)
			++inserts_;
		else if (outcome.action == Action::Remove)
			++removes_;
		++n_;
		model_size_ = outcome.model_size_after;
	}

	double WindowStats::fraction(std::size_t count) const
	{
		return filled_ == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(filled_);
	}

	double WindowStats::mean_size_delta() const
	{
		if (filled_ == 0)
			return 0.0;
		return (static_cast<double>(inserts_) - static_cast<double>(removes_)) / static_cast<double>(filled_);
	}

	bool RunReport::operator==(const RunReport &o) const
	{
		return target == o.target && input_metric == o.input_metric && output_metric == o.output_metric &&
			   index == o.index && stream == o.stream && config.epsilon == o.config.epsilon && config.q == o.config.q &&
			   config.tie_tolerance == o.config.tie_tolerance && config.seed == o.config.seed && window == o.window &&
			   delta == o.delta && n == o.n && final_size == o.final_size && tail_hit_rate == o.tail_hit_rate &&
			   tail_mean_size_delta == o.tail_mean_size_delta && stabilized == o.stabilized && series == o.series;
	}

	std::string format_report(const RunReport &r)
	{
		std::ostringstream out;
		out << "target: " << r.target << '\n'
			<< "input_metric: " << r.input_metric << '\n'
			<< "output_metric: " << r.output_metric << '\n'
			<< "index: " << r.index << '\n'
			<< "stream: " << r.stream << '\n'
			<< "epsilon: " << format_real(r.config.epsilon) << '\n'
			<< "q: " << format_real(r.config.q) << '\n'
			<< "tie_tolerance: " << format_real(r.config.tie_tolerance) << '\n'
			<< "seed: " << r.config.seed << '\n'
			<< "window: " << r.window << '\n'
			<< "delta: " << format_real(r.delta) << '\n'
			<< "steps: " << r.n << '\n'
			<< "final_size: " << r.final_size << '\n'
			<< "tail_hit_rate: " << format_real(r.tail_hit_rate) << '\n'
			<< "tail_mean_delta: " << format_real(r.tail_mean_size_delta) << '\n'
			<< "stabilized: " << (r.stabilized ? "true" : "false") << '\n'
			<< "series: n,model_size,hit_rate,mean_delta\n";
		for (const auto &s : r.series)
			out << "  " << s.n << ',' << s.model_size << ',' << format_real(s.hit_rate) << ','
				<< format_real(s.mean_size_delta) << '\n';
		return out.str();
	}
} // namespace exemplar
