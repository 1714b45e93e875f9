#include "bhv/error.hpp"

namespace bhv {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidLeafCount: return "InvalidLeafCount";
    case ErrorCode::kSubsetTooSmall: return "SubsetTooSmall";
    case ErrorCode::kLeafOutOfRange: return "LeafOutOfRange";
    case ErrorCode::kLeafCountMismatch: return "LeafCountMismatch";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kIncompatiblePair: return "IncompatiblePair";
    case ErrorCode::kTooManySplits: return "TooManySplits";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kNegativeOrEven: return "NegativeOrEven";
    case ErrorCode::kKOutOfRange: return "KOutOfRange";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kVertexNotFound: return "VertexNotFound";
    case ErrorCode::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::kNonpositiveRadius: return "NonpositiveRadius";
    case ErrorCode::kNonpositiveLength: return "NonpositiveLength";
    case ErrorCode::kEpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::kPOutOfRange: return "POutOfRange";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kDuplicateLeaf: return "DuplicateLeaf";
    case ErrorCode::kDegreeTwoInternal: return "DegreeTwoInternal";
    case ErrorCode::kNegativeLength: return "NegativeLength";
    case ErrorCode::kLabelMapRequired: return "LabelMapRequired";
    case ErrorCode::kInvalidJson: return "InvalidJson";
  }
  return "Unknown";
}

}  // namespace bhv
