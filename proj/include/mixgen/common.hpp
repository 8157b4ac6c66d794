#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace mixgen {

using cplx = std::complex<double>;

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Input,        // malformed or out-of-contract argument
  Dimension,    // operands over different qubit counts
  Capacity,     // problem exceeds an exhaustive-search or memory cap
  Numeric,      // NaN / non-convergence
  Unsupported,  // valid request outside a routine's supported class
  Consistency,  // cross-check between two independent routes failed
  Invariant,    // internal contract violated
  Usage,        // CLI misuse
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Capacity failure that still carries how far the computation got.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t reached)
      : Error(ErrorKind::Capacity, what), reached_(reached) {}
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

const char* to_string(ErrorKind kind);

// Portable random helpers. std::uniform_real_distribution is
// implementation-defined, which would break byte-identical reruns across
// standard libraries, so draws go through these.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic child seed for (seed, stream, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index = 0);

double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
double standard_normal(Rng& rng);
/// Uniform integer in [0, n).
std::size_t uniform_index(Rng& rng, std::size_t n);

}  // namespace mixgen
