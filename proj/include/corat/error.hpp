#pragma once

#include <stdexcept>
#include <string>

namespace corat {

enum class ErrKind {
  TypeMismatch,    // objects over different rings, or endpoint mismatch
  NonInvertible,   // scalar has no inverse in Z/m
  NotAMorphism,    // matrix violates the order congruence, or a claimed
                   // algebra/coalgebra morphism fails its laws
  TooLarge,        // enumeration would exceed the requested bound
  InfiniteRing,    // enumeration over Q of a nonzero module
  FactorizationFailed, // a map that should factor through a mono/epi does not
  SolveFailed,     // linear system has no solution
  InvalidStructure,    // a (co)algebra / (co)module / entwining failed its laws
                       // where a valid one is required
  CoactionNotUnique,   // recovered coaction is not unique (comparison map has
                       // a kernel on the relevant subobject)
  NotApplicable,   // operation precondition (e.g. rationality) not met
  Parse,           // malformed input file or dangling reference
};

struct Error : std::runtime_error {
  ErrKind kind;
  Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline const char* kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::TypeMismatch: return "TypeMismatch";
    case ErrKind::NonInvertible: return "NonInvertible";
    case ErrKind::NotAMorphism: return "NotAMorphism";
    case ErrKind::TooLarge: return "TooLarge";
    case ErrKind::InfiniteRing: return "InfiniteRing";
    case ErrKind::FactorizationFailed: return "FactorizationFailed";
    case ErrKind::SolveFailed: return "SolveFailed";
    case ErrKind::InvalidStructure: return "InvalidStructure";
    case ErrKind::CoactionNotUnique: return "CoactionNotUnique";
    case ErrKind::NotApplicable: return "NotApplicable";
    case ErrKind::Parse: return "Parse";
  }
  return "Unknown";
};

} // namespace corat
