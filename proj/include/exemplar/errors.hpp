#pragma once

#include <stdexcept>
#include <string>

namespace exemplar
{
	/// Base class of every error raised by the library.
	class Error : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	class EmptyModel : public Error
	{
	public:
		EmptyModel() : Error("model is empty") {}
	};

	class EmptyCandidates : public Error
	{
	public:
		EmptyCandidates() : Error("candidate list is empty") {}
	};

	class EmptyStream : public Error
	{
	public:
		EmptyStream() : Error("stream is empty") {}
	};

	class DimensionMismatch : public Error
	{
	public:
		DimensionMismatch(long lhs, long rhs)
			: Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
	};

	class PositionOutOfRange : public Error
	{
	public:
		PositionOutOfRange(std::size_t position, std::size_t size)
			: Error("position " + std::to_string(position) + " out of range for size " + std::to_string(size)) {}
	};

	/// Invalid configuration. `key()` names the offending setting.
	class ConfigError : public Error
	{
	public:
		ConfigError(std::string key, const std::string &message)
			: Error(key + ": " + message), key_(std::move(key)) {}

		const std::string &key() const { return key_; }

	private:
		std::string key_;
	};
} // namespace exemplar
