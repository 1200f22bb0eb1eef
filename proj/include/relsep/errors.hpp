#pragma once

#include <stdexcept>
#include <string>

namespace relsep {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlphabetError : Error { using Error::Error; };
struct ContractError : Error { using Error::Error; };
struct SamplingError : Error { using Error::Error; };
struct ModelError : Error { using Error::Error; };
struct HalvingError : Error { using Error::Error; };
struct LookupError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct BudgetError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct CanonicalizationError : Error { using Error::Error; };
struct CoverError : Error { using Error::Error; };
struct SpecError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace relsep
