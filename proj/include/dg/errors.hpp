#pragma once

#include <stdexcept>
#include <string>

namespace dg {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// input / format errors
struct ParseError : Error { using Error::Error; };
struct InvariantError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// linear algebra
struct ConvergenceError : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct RankExceedsK : Error { using Error::Error; };
struct IntervalEdgePresent : Error { using Error::Error; };

// rigidity
struct TooLarge : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };

// branch-and-prune
struct NotDiscretizable : Error { using Error::Error; };
struct InfeasibleInitialClique : Error { using Error::Error; };
struct DegenerateCenters : Error { using Error::Error; };
struct NotDmdgp : Error { using Error::Error; };
struct DegenerateHyperplane : Error { using Error::Error; };
struct InvalidSeedSolution : Error { using Error::Error; };

// unassigned DGP
struct BadCardinality : Error { using Error::Error; };
struct IncompleteAssignment : Error { using Error::Error; };

// embeddings and reductions
struct TooShort : Error { using Error::Error; };
struct NotAWitness : Error { using Error::Error; };
struct InvalidRealization : Error { using Error::Error; };
struct MetricViolation : Error { using Error::Error; };
struct BadEpsilon : Error { using Error::Error; };

}  // namespace dg
