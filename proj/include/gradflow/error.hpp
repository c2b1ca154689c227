#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gradflow {

enum class ErrorCode {
  // labels and profiles
  MalformedLabel,
  SignArity,
  InvalidFamilyIndex,
  MalformedProfile,
  InconsistentProfile,
  NonMorseProfile,
  InvalidEulerCharacteristic,
  // flow files
  MalformedFlow,
  NonAlternatingSaddle,
  BadDartDirection,
  BadPairing,
  Disconnected,
  IsolatedExtremum,
  BadSpecialPolar,
  NonOrientableOrCorrupt,
  GenusMismatch,
  NotRealizable,
  // misc
  NonBijective,
  InconsistentCounts,
  SpecOutOfBounds,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gradflow
