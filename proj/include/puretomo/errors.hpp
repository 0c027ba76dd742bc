#pragma once

#include <stdexcept>
#include <string>

namespace puretomo {

// Base class for everything this library throws on purpose.  The CLI maps
// these onto stable exit codes, and the python module re-raises them.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- argument / request problems ---------------------------------------
struct BadParams : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct UnknownFamily : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };

// --- shape mismatches ---------------------------------------------------
struct DimensionMismatch : Error { using Error::Error; };
struct MixedDimensions : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// --- invalid data -------------------------------------------------------
struct NotHermitian : Error { using Error::Error; };
struct NotRank1 : Error { using Error::Error; };
struct NotPositiveSemidefinite : Error { using Error::Error; };
struct NotAPovm : Error { using Error::Error; };
struct NegativeWeight : Error { using Error::Error; };
struct NegativeProbability : Error { using Error::Error; };
struct NonRealTrace : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct ZeroOperator : Error { using Error::Error; };
struct EmptySupport : Error { using Error::Error; };

// --- numerical failures -------------------------------------------------
struct NonConvergence : Error { using Error::Error; };
struct SingularOperator : Error { using Error::Error; };
struct SingularGram : Error { using Error::Error; };

// --- data that contradicts itself --------------------------------------
struct InconsistentOutcomes : Error { using Error::Error; };

// --- I/O ----------------------------------------------------------------
struct IoError : Error { using Error::Error; };

}  // namespace puretomo
