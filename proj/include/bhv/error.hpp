#ifndef BHV_ERROR_HPP_
#define BHV_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bhv {

enum class ErrorCode {
  kInvalidLeafCount,
  kSubsetTooSmall,
  kLeafOutOfRange,
  kLeafCountMismatch,
  kInvalidPermutation,
  kIncompatiblePair,
  kTooManySplits,
  kEnumerationTooLarge,
  kNegativeOrEven,
  kKOutOfRange,
  kTooLarge,
  kVertexNotFound,
  kSearchBudgetExceeded,
  kNonpositiveRadius,
  kNonpositiveLength,
  kEpsilonTooLarge,
  kPOutOfRange,
  kSyntaxError,
  kDuplicateLeaf,
  kDegreeTwoInternal,
  kNegativeLength,
  kLabelMapRequired,
  kInvalidJson,
};

const char *ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries a code so that callers (the CLI
// in particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bhv

#endif  // BHV_ERROR_HPP_
