#pragma once

#include <exemplar/errors.hpp>
#include <exemplar/nn_index.hpp>
#include <exemplar/stream.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace exemplar::cli
{
	enum class Subcommand
	{
		Run,
		Sweep,
		Verify
	};

	/// Exit codes of the command-line tool.
	enum ExitCode : int
	{
		kSuccess = 0,
		kVerificationFailed = 1,
		kConfigError = 2,
		kIoError = 3
	};

	struct CliConfig
	{
		Subcommand subcommand = Subcommand::Run;

		std::string target = "sine_1d";
		std::string metric = "euclidean";
		IndexKind index = IndexKind::VpTree;
		// lists only for sweep; run and verify take one value each
		std::vector<double> epsilon = {0.05};
		std::vector<double> q = {0.9};
		std::vector<std::uint64_t> seed = {0};
		double tie_tolerance = 0.0;
		std::uint64_t steps = 10000;

		StreamKind stream = StreamKind::IidUniform;
		int dim = 1;
		std::optional<double> lower;
		std::optional<double> upper;
		int resolution = 16;
		double step_scale = 0.05;
		int cells = 4;

		std::size_t window = 1000;
		double delta = 0.01;
		std::string output;
		unsigned jobs = 0;
		std::size_t leaf_capacity = 16;
		std::uint64_t trials = 100000;
		double test_removal_bias = 0.0;

		/// Keys given explicitly (file or flag).
		std::set<std::string> explicit_keys;
	};

	/// Keys accepted on the command line (as --key) and in config files.
	const std::vector<std::string> &known_keys();

	/// Flat `key = value` lines; `#` starts a comment. Unknown keys and
	/// malformed lines throw ConfigError.
	std::map<std::string, std::string> parse_config_file(const std::string &path);

	/// Thrown by parse_config when --help was requested; what() is the help text.
	class HelpRequested : public Error
	{
	public:
		using Error::Error;
	};

	/// args[0] is the program name. Command-line flags override values read
	/// from --config. Throws ConfigError (exit 2) or HelpRequested.
	CliConfig parse_config(const std::vector<std::string> &args);

	int cmd_run(const CliConfig &config, std::ostream &out, std::ostream &err);
	int cmd_sweep(const CliConfig &config, std::ostream &out, std::ostream &err);
	int cmd_verify(const CliConfig &config, std::ostream &out, std::ostream &err);

	/// Parses and dispatches; returns the process exit code.
	int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
} // namespace exemplar::cli
