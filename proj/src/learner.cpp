#include <exemplar/learner.hpp>

#include <cmath>
#include <cstdio>
#include <string>

namespace exemplar
{
	namespace
	{
		std::string brief(double v)
		{
			char buffer[32];
			std::snprintf(buffer, sizeof buffer, "%g", v);
			return buffer;
		}
	} // namespace

	void LearnerConfig::validate() const
	{
		if (!(epsilon > 0.0) || !std::isfinite(epsilon))
			throw ConfigError("epsilon", "must be positive and finite (epsilon in (0, inf)), got " + brief(epsilon));
		if (!(q >= 0.5 && q < 1.0))
			throw ConfigError("q", "must lie in [1/2, 1), got " + brief(q));
		if (!(tie_tolerance >= 0.0) || !std::isfinite(tie_tolerance))
			throw ConfigError("tie_tolerance", "must be finite and nonnegative, got " + brief(tie_tolerance));
		if (!std::isfinite(removal_bias))
			throw ConfigError("removal_bias", "must be finite");
	}

	Action resolve_action(bool hit, const LearnerConfig &config, RandomStream &rng)
	{
		if (!hit)
			return Action::Insert;
		return rng.uniform_real() < config.removal_probability() ? Action::Remove : Action::Keep;
	}

	std::string_view to_string(Action action)
	{
		switch (action)
		{
		case Action::Insert:
			return "Insert";
		case Action::Remove:
			return "Remove";
		case Action::Keep:
			return "Keep";
		}
		return "?";
	}

	Action parse_action(std::string_view text)
	{
		if (text == "Insert")
			return Action::Insert;
		if (text == "Remove")
			return Action::Remove;
		if (text == "Keep")
			return Action::Keep;
		throw Error("unknown action '" + std::string(text) + "'");
	}

	IndexKind parse_index_kind(std::string_view name)
	{
		if (name == "linear")
			return IndexKind::LinearScan;
		if (name == "vptree")
			return IndexKind::VpTree;
		throw ConfigError("index", "unknown backend '" + std::string(name) + "' (expected linear or vptree)");
	}

	std::string_view to_string(IndexKind kind)
	{
		return kind == IndexKind::LinearScan ? "linear" : "vptree";
	}
} // namespace exemplar
