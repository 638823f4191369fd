#include "cli.hpp"

#include <exemplar/experiments.hpp>
#include <exemplar/trace.hpp>
#include <exemplar/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

namespace exemplar::cli
{
	namespace fs = std::filesystem;

	namespace
	{
		struct KeyInfo
		{
			const char *key;
			const char *help;
		};

		const std::vector<KeyInfo> &key_table()
		{
			static const std::vector<KeyInfo> table = {
				{"target", "target function: sine_1d, step_1d, quantized_labeler"},
				{"metric", "input metric: euclidean, chebyshev, hamming, discrete"},
				{"index", "nearest-set backend: linear, vptree"},
				{"epsilon", "hit threshold (> 0); comma list for sweep"},
				{"q", "target performance in [1/2, 1); comma list for sweep"},
				{"seed", "master seed; comma list for sweep"},
				{"tie_tolerance", "relative tie slack (>= 0)"},
				{"steps", "stream length"},
				{"stream", "input stream: iid_uniform, grid_sweep, random_walk"},
				{"dim", "input dimension"},
				{"lower", "lower box bound on every axis"},
				{"upper", "upper box bound on every axis"},
				{"resolution", "grid_sweep points per axis"},
				{"step_scale", "random_walk step half-width"},
				{"cells", "quantized_labeler cells per axis"},
				{"window", "statistics window in steps"},
				{"delta", "stabilization threshold on the tail mean size change"},
				{"output", "trace file (run) or output directory (sweep)"},
				{"jobs", "parallel runs for sweep (0 = all cores)"},
				{"leaf_capacity", "vptree leaf size"},
				{"trials", "verify: trials per branch check and growth cell"},
				{"test_removal_bias", "test hook: added to the removal probability"},
			};
			return table;
		}

		std::string trim(std::string_view s)
		{
			const auto first = s.find_first_not_of(" \t\r\n");
			if (first == std::string_view::npos)
				return {};
			const auto last = s.find_last_not_of(" \t\r\n");
			return std::string(s.substr(first, last - first + 1));
		}

		std::vector<std::string> split_list(const std::string &key, const std::string &value)
		{
			std::vector<std::string> items;
			std::size_t start = 0;
			for (;;)
			{
				const std::size_t pos = value.find(',', start);
				std::string item = trim(std::string_view(value).substr(start, pos - start));
				if (item.empty())
					throw ConfigError(key, "empty list entry in '" + value + "'");
				items.push_back(std::move(item));
				if (pos == std::string::npos)
					break;
				start = pos + 1;
			}
			return items;
		}

		double to_real(const std::string &key, const std::string &text)
		{
			double value = 0.0;
			const char *end = text.data() + text.size();
			const auto [ptr, ec] = std::from_chars(text.data(), end, value);
			if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value))
				throw ConfigError(key, "malformed number '" + text + "'");
			return value;
		}

		std::uint64_t to_unsigned(const std::string &key, const std::string &text)
		{
			std::uint64_t value = 0;
			const char *end = text.data() + text.size();
			const auto [ptr, ec] = std::from_chars(text.data(), end, value);
			if (text.empty() || ec != std::errc() || ptr != end)
				throw ConfigError(key, "malformed non-negative integer '" + text + "'");
			return value;
		}

		std::uint64_t to_positive(const std::string &key, const std::string &text)
		{
			const std::uint64_t value = to_unsigned(key, text);
			if (value == 0)
				throw ConfigError(key, "must be positive");
			return value;
		}

		int to_int_at_least(const std::string &key, const std::string &text, int minimum)
		{
			const std::uint64_t value = to_unsigned(key, text);
			if (value < static_cast<std::uint64_t>(minimum) || value > 1'000'000)
				throw ConfigError(key, "must be an integer in [" + std::to_string(minimum) + ", 1000000]");
			return static_cast<int>(value);
		}

		std::string subcommand_name(Subcommand s)
		{
			switch (s)
			{
			case Subcommand::Run:
				return "run";
			case Subcommand::Sweep:
				return "sweep";
			case Subcommand::Verify:
				return "verify";
			}
			return "?";
		}

		std::string brief(double v)
		{
			char buffer[32];
			std::snprintf(buffer, sizeof buffer, "%g", v);
			return buffer;
		}

		void apply(CliConfig &c, const std::string &key, const std::string &value)
		{
			const bool multi = c.subcommand == Subcommand::Sweep;
			auto list = [&](auto convert) {
				const auto items = split_list(key, value);
				if (!multi && items.size() != 1)
					throw ConfigError(key, "takes a single value for '" + subcommand_name(c.subcommand) + "'");
				std::vector<decltype(convert(items[0]))> out;
				for (const auto &item : items)
					out.push_back(convert(item));
				return out;
			};

			if (key == "target")
			{
				if (value != "sine_1d" && value != "step_1d" && value != "quantized_labeler")
					throw ConfigError(key, "unknown target '" + value + "' (expected sine_1d, step_1d or quantized_labeler)");
				c.target = value;
			}
			else if (key == "metric")
			{
				point_metric(value);
				c.metric = value;
			}
			else if (key == "index")
				c.index = parse_index_kind(value);
			else if (key == "epsilon")
				c.epsilon = list([&](const std::string &s) {
					const double eps = to_real(key, s);
					if (!(eps > 0.0))
						throw ConfigError(key, "must be positive, epsilon in (0, inf), got " + s);
					return eps;
				});
			else if (key == "q")
				c.q = list([&](const std::string &s) {
					const double q = to_real(key, s);
					if (!(q >= 0.5 && q < 1.0))
						throw ConfigError(key, "must lie in [1/2, 1), got " + s);
					return q;
				});
			else if (key == "seed")
				c.seed = list([&](const std::string &s) { return to_unsigned(key, s); });
			else if (key == "tie_tolerance")
			{
				c.tie_tolerance = to_real(key, value);
				if (c.tie_tolerance < 0.0)
					throw ConfigError(key, "must be non-negative");
			}
			else if (key == "steps")
				c.steps = to_positive(key, value);
			else if (key == "stream")
				c.stream = parse_stream_kind(value);
			else if (key == "dim")
				c.dim = to_int_at_least(key, value, 1);
			else if (key == "lower")
				c.lower = to_real(key, value);
			else if (key == "upper")
				c.upper = to_real(key, value);
			else if (key == "resolution")
				c.resolution = to_int_at_least(key, value, 2);
			else if (key == "step_scale")
			{
				c.step_scale = to_real(key, value);
				if (!(c.step_scale > 0.0))
					throw ConfigError(key, "must be positive");
			}
			else if (key == "cells")
				c.cells = to_int_at_least(key, value, 1);
			else if (key == "window")
				c.window = to_positive(key, value);
			else if (key == "delta")
			{
				c.delta = to_real(key, value);
				if (c.delta < 0.0)
					throw ConfigError(key, "must be non-negative");
			}
			else if (key == "output")
			{
				if (value.empty())
					throw ConfigError(key, "must not be empty");
				c.output = value;
			}
			else if (key == "jobs")
				c.jobs = static_cast<unsigned>(to_int_at_least(key, value, 0));
			else if (key == "leaf_capacity")
				c.leaf_capacity = to_positive(key, value);
			else if (key == "trials")
				c.trials = to_positive(key, value);
			else if (key == "test_removal_bias")
				c.test_removal_bias = to_real(key, value);
			else
				throw ConfigError(key, "unknown key");
		}

		double default_lower(const CliConfig &) { return 0.0; }

		double default_upper(const CliConfig &c)
		{
			return c.target == "sine_1d" ? 2.0 * M_PI : 1.0;
		}

		StreamGenerator make_generator(const CliConfig &c, std::uint64_t seed)
		{
			StreamGenerator g;
			g.kind = c.stream;
			g.lower = Point::Constant(c.dim, c.lower.value_or(default_lower(c)));
			g.upper = Point::Constant(c.dim, c.upper.value_or(default_upper(c)));
			g.resolution = c.resolution;
			g.step_scale = c.step_scale;
			g.seed = derive_seed(seed, 1);
			return g;
		}

		/// One learner run: stream seed is sub-stream 1 of `seed`, learner
		/// randomness sub-stream 0.
		RunReport execute(const CliConfig &c, double q, double epsilon, std::uint64_t seed, const StepObserver &observer)
		{
			LearnerConfig config;
			config.epsilon = epsilon;
			config.q = q;
			config.tie_tolerance = c.tie_tolerance;
			config.seed = seed;
			config.removal_bias = c.test_removal_bias;

			const StreamGenerator generator = make_generator(c, seed);
			const TheoremOptions options{c.window, c.delta, c.index};
			const auto input = point_metric(c.metric);

			if (c.target == "quantized_labeler")
				return theorem_experiment(quantized_labeler(c.cells, generator.lower(0), generator.upper(0)), input,
										  discrete_metric<Label>(), config, generator, c.steps, options, observer);
			const auto target = c.target == "step_1d" ? step_1d() : sine_1d();
			return theorem_experiment(target, input, absolute_metric(), config, generator, c.steps, options, observer);
		}

		std::string trace_name(double q, double epsilon, std::uint64_t seed)
		{
			return "trace_q" + brief(q) + "_eps" + brief(epsilon) + "_seed" + std::to_string(seed) + ".csv";
		}
	} // namespace

	const std::vector<std::string> &known_keys()
	{
		static const std::vector<std::string> keys = [] {
			std::vector<std::string> k;
			for (const auto &info : key_table())
				k.emplace_back(info.key);
			return k;
		}();
		return keys;
	}

	std::map<std::string, std::string> parse_config_file(const std::string &path)
	{
		std::ifstream in(path);
		if (!in)
			throw ConfigError("config", "cannot read '" + path + "'");
		const auto &keys = known_keys();
		std::map<std::string, std::string> values;
		std::string line;
		for (int number = 1; std::getline(in, line); ++number)
		{
			if (const auto hash = line.find('#'); hash != std::string::npos)
				line.erase(hash);
			if (trim(line).empty())
				continue;
			const auto eq = line.find('=');
			if (eq == std::string::npos)
				throw ConfigError("config", path + ":" + std::to_string(number) + ": expected 'key = value'");
			const std::string key = trim(std::string_view(line).substr(0, eq));
			if (std::find(keys.begin(), keys.end(), key) == keys.end())
				throw ConfigError(key, "unknown key (" + path + ":" + std::to_string(number) + ")");
			values[key] = trim(std::string_view(line).substr(eq + 1));
		}
		return values;
	}

	CliConfig parse_config(const std::vector<std::string> &args)
	{
		CLI::App app{"Online exemplar-set learner over metric spaces", "exemplar"};
		app.require_subcommand(1, 1);

		std::map<std::string, std::string> flag_values;
		std::string config_path;
		std::map<std::string, std::vector<std::pair<std::string, CLI::Option *>>> options;
		const std::vector<std::pair<const char *, const char *>> subs = {
			{"run", "run the learner on one configuration and write a trace CSV"},
			{"sweep", "run every combination of q, epsilon and seed lists"},
			{"verify", "check the growth identities and the long-run hit rate"}};
		for (const auto &[name, description] : subs)
		{
			CLI::App *sub = app.add_subcommand(name, description);
			sub->add_option("--config", config_path, "flat key = value file; flags override it");
			for (const auto &info : key_table())
				options[name].emplace_back(info.key, sub->add_option(std::string("--") + info.key,
																	 flag_values[info.key], info.help));
		}

		std::vector<std::string> reversed(args.rbegin(), args.rend());
		if (!reversed.empty())
			reversed.pop_back(); // program name
		try
		{
			app.parse(reversed);
		}
		catch (const CLI::CallForHelp &)
		{
			for (const CLI::App *sub : app.get_subcommands({}))
				if (sub->parsed())
					throw HelpRequested(sub->help());
			throw HelpRequested(app.help());
		}
		catch (const CLI::ParseError &e)
		{
			throw ConfigError("arguments", e.what());
		}

		CliConfig config;
		const CLI::App *chosen = app.get_subcommands().front();
		const std::string name = chosen->get_name();
		config.subcommand = name == "run" ? Subcommand::Run : name == "sweep" ? Subcommand::Sweep : Subcommand::Verify;

		std::map<std::string, std::string> values;
		if (!config_path.empty())
			values = parse_config_file(config_path);
		for (const auto &[key, option] : options[name])
			if (option->count() > 0)
				values[key] = flag_values[key];

		for (const auto &[key, value] : values)
		{
			apply(config, key, value);
			config.explicit_keys.insert(key);
		}
		if (config.lower && config.upper && !(*config.upper > *config.lower))
			throw ConfigError("upper", "must exceed lower");
		return config;
	}

	int cmd_run(const CliConfig &c, std::ostream &out, std::ostream &err)
	{
		const std::string path = c.output.empty() ? "trace.csv" : c.output;
		std::ofstream file(path, std::ios::binary);
		if (!file)
		{
			err << "error: cannot open '" << path << "' for writing\n";
			return kIoError;
		}
		TraceWriter writer(file);
		const RunReport report = execute(c, c.q.front(), c.epsilon.front(), c.seed.front(),
										 [&](const StepOutcome &o, const WindowStats &s) { writer.write(o, s); });
		file.close();
		if (!file)
		{
			err << "error: failed writing '" << path << "'\n";
			return kIoError;
		}
		out << format_report(report);
		return kSuccess;
	}

	int cmd_sweep(const CliConfig &c, std::ostream &out, std::ostream &err)
	{
		const fs::path dir = c.output.empty() ? fs::path("sweep") : fs::path(c.output);
		std::error_code ec;
		fs::create_directories(dir, ec);
		if (ec || !fs::is_directory(dir))
		{
			err << "error: cannot create directory '" << dir.string() << "'\n";
			return kIoError;
		}

		struct Job
		{
			double q;
			double epsilon;
			std::uint64_t seed;
			std::optional<RunReport> report;
			std::string error;
			int code = kSuccess;
		};
		std::vector<Job> jobs;
		for (double q : c.q)
			for (double eps : c.epsilon)
				for (std::uint64_t seed : c.seed)
					jobs.push_back({q, eps, seed, std::nullopt, {}, kSuccess});

		std::atomic<std::size_t> next{0};
		auto worker = [&] {
			for (std::size_t i = next++; i < jobs.size(); i = next++)
			{
				Job &job = jobs[i];
				const fs::path path = dir / trace_name(job.q, job.epsilon, job.seed);
				std::ofstream file(path, std::ios::binary);
				if (!file)
				{
					job.code = kIoError;
					job.error = "cannot open '" + path.string() + "' for writing";
					continue;
				}
				try
				{
					TraceWriter writer(file);
					job.report = execute(c, job.q, job.epsilon, job.seed,
										 [&](const StepOutcome &o, const WindowStats &s) { writer.write(o, s); });
				}
				catch (const Error &e)
				{
					job.code = kConfigError;
					job.error = e.what();
					continue;
				}
				file.close();
				if (!file)
				{
					job.code = kIoError;
					job.error = "failed writing '" + path.string() + "'";
				}
			}
		};

		unsigned threads = c.jobs != 0 ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
		threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
		{
			std::vector<std::jthread> pool;
			for (unsigned t = 1; t < threads; ++t)
				pool.emplace_back(worker);
			worker();
		}

		int code = kSuccess;
		for (const Job &job : jobs)
			if (job.code != kSuccess)
			{
				err << "error: " << job.error << '\n';
				code = std::max(code, job.code);
			}
		if (code != kSuccess)
			return code;

		const fs::path summary_path = dir / "summary.csv";
		std::ofstream summary(summary_path, std::ios::binary);
		summary << kSummaryHeader << '\n';
		for (const Job &job : jobs)
		{
			const RunReport &r = *job.report;
			summary << format_real(job.q) << ',' << format_real(job.epsilon) << ',' << job.seed << ',' << r.final_size
					<< ',' << format_real(r.tail_hit_rate) << ',' << format_real(r.tail_mean_size_delta) << ','
					<< (r.stabilized ? 1 : 0) << '\n';
		}
		summary.close();
		if (!summary)
		{
			err << "error: failed writing '" << summary_path.string() << "'\n";
			return kIoError;
		}
		out << "runs: " << jobs.size() << '\n' << "summary: " << summary_path.string() << '\n';
		return kSuccess;
	}

	int cmd_verify(const CliConfig &c, std::ostream &out, std::ostream &)
	{
		VerifyOptions options;
		options.seed = c.seed.front();
		options.trials = c.trials;
		options.removal_bias = c.test_removal_bias;
		if (c.explicit_keys.count("steps"))
			options.theorem_steps = c.steps;
		if (c.explicit_keys.count("window"))
			options.theorem_window = c.window;

		const auto results = run_verification(options);
		std::size_t passed = 0;
		for (const auto &r : results)
		{
			out << format_check(r) << '\n';
			passed += r.passed ? 1 : 0;
		}
		out << passed << "/" << results.size() << " checks passed\n";
		return passed == results.size() ? kSuccess : kVerificationFailed;
	}

	int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
	{
		CliConfig config;
		try
		{
			config = parse_config(args);
		}
		catch (const HelpRequested &help)
		{
			out << help.what();
			return kSuccess;
		}
		catch (const ConfigError &e)
		{
			err << "error: " << e.what() << '\n';
			return kConfigError;
		}

		try
		{
			switch (config.subcommand)
			{
			case Subcommand::Run:
				return cmd_run(config, out, err);
			case Subcommand::Sweep:
				return cmd_sweep(config, out, err);
			case Subcommand::Verify:
				return cmd_verify(config, out, err);
			}
		}
		catch (const Error &e)
		{
			err << "error: " << e.what() << '\n';
			return kConfigError;
		}
		catch (const std::exception &e)
		{
			err << "error: " << e.what() << '\n';
			return kIoError;
		}
		return kSuccess;
	}
} // namespace exemplar::cli
