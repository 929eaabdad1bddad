#pragma once

#include <stdexcept>
#include <string>

namespace snc {

// Malformed input: bad schema, dangling references, violated structural
// invariants. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input on which a mathematical precondition fails (e.g. the
// pullback of a bundle is not trivial). The CLI maps this to exit code 1.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace snc
