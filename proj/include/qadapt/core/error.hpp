#pragma once

#include <stdexcept>
#include <string>

namespace qadapt {

// Thrown when caller-supplied data violates a documented precondition
// (shape mismatch, non-Hermitian input, oversize enumeration, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qadapt
