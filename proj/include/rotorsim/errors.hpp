#pragma once
#include <stdexcept>
#include <string>

namespace rotorsim {

// Exit codes, also documented in --help and README.
enum ExitCode : int {
  kOk = 0,
  kCliError = 1,           // reserved by CLI11 parse errors
  kConfigError = 2,
  kUnknownMolecule = 3,
  kInvalidBasis = 4,
  kTruncationLeak = 5,
  kNumericalQuality = 6,
  kHDrift = 7,
  kNoWall = 8,
};

struct Error : std::runtime_error {
  Error(ExitCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  ExitCode code;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(kConfigError, m) {}
};
struct UnknownMoleculeError : Error {
  explicit UnknownMoleculeError(const std::string& m) : Error(kUnknownMolecule, m) {}
};
struct InvalidBasisError : Error {
  explicit InvalidBasisError(const std::string& m) : Error(kInvalidBasis, m) {}
};
struct TruncationLeakError : Error {
  TruncationLeakError(const std::string& m, int pulse) : Error(kTruncationLeak, m), pulse_index(pulse) {}
  int pulse_index;
};
struct NumericalQualityError : Error {
  explicit NumericalQualityError(const std::string& m) : Error(kNumericalQuality, m) {}
};
struct HDriftError : Error {
  explicit HDriftError(const std::string& m) : Error(kHDrift, m) {}
};
struct NoWallError : Error {
  explicit NoWallError(const std::string& m) : Error(kNoWall, m) {}
};

}  // namespace rotorsim
