#pragma once

#include <stdexcept>
#include <string>

namespace lamtrans {

enum class ErrorKind {
  UnknownSymbol,
  ArityMismatch,
  ElementOutOfUniverse,
  EmptyUniverse,
  ArityConflict,
  SyntaxError,
  UnboundVariable,
  ResourceLimitExceeded,
  NotLaminar,
  TipUndefined,
  NotInnerNode,
  NotASubtree,
  NotThin,
  IndexOutOfRange,
  FilterRejectedWitness,
  NotATree,
  ContainsLeaf,
  UnknownPredicateName,
  VocabularyMismatch,
  RangeError,
  UsageError,
};

const char* error_kind_name(ErrorKind k);

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(k)) + ": " + msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace lamtrans
