#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace exemplar
{
	struct CheckResult
	{
		std::string name;
		bool passed = false;
		double measured = 0.0;
		double target = 0.0;
		/// 0 means exact equality was required.
		double tolerance = 0.0;
		std::string note;
	};

	struct VerifyOptions
	{
		std::uint64_t seed = 0;
		/// Forced-hit trials per q and Bernoulli steps per grid cell.
		std::uint64_t trials = 100000;
		std::uint64_t miss_trials = 10000;
		std::uint64_t theorem_steps = 200000;
		std::size_t theorem_window = 50000;
		/// Mutation hook forwarded to every experiment's removal probability.
		double removal_bias = 0.0;
	};

	/// Conditional-branch, miss-branch, growth-identity (one check per
	/// (p, q) cell) and long-run hit-rate checks, in that order.
	std::vector<CheckResult> run_verification(const VerifyOptions &options);

	/// "PASS name measured=... target=... tol=..." style line.
	std::string format_check(const CheckResult &check);
} // namespace exemplar
