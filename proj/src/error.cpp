#include "gradflow/error.hpp"

namespace gradflow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedLabel: return "MalformedLabel";
    case ErrorCode::SignArity: return "SignArity";
    case ErrorCode::InvalidFamilyIndex: return "InvalidFamilyIndex";
    case ErrorCode::MalformedProfile: return "MalformedProfile";
    case ErrorCode::InconsistentProfile: return "InconsistentProfile";
    case ErrorCode::NonMorseProfile: return "NonMorseProfile";
    case ErrorCode::InvalidEulerCharacteristic: return "InvalidEulerCharacteristic";
    case ErrorCode::MalformedFlow: return "MalformedFlow";
    case ErrorCode::NonAlternatingSaddle: return "NonAlternatingSaddle";
    case ErrorCode::BadDartDirection: return "BadDartDirection";
    case ErrorCode::BadPairing: return "BadPairing";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::IsolatedExtremum: return "IsolatedExtremum";
    case ErrorCode::BadSpecialPolar: return "BadSpecialPolar";
    case ErrorCode::NonOrientableOrCorrupt: return "NonOrientableOrCorrupt";
    case ErrorCode::GenusMismatch: return "GenusMismatch";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::NonBijective: return "NonBijective";
    case ErrorCode::InconsistentCounts: return "InconsistentCounts";
    case ErrorCode::SpecOutOfBounds: return "SpecOutOfBounds";
  }
  return "Unknown";
}

}  // namespace gradflow
