#pragma once

#include <stdexcept>
#include <string>

namespace satset {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SATSET_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  }

SATSET_DEFINE_ERROR(NotPrimePower);
SATSET_DEFINE_ERROR(DivisionByZero);
SATSET_DEFINE_ERROR(ResourceLimit);
SATSET_DEFINE_ERROR(SamePoint);
SATSET_DEFINE_ERROR(ParseError);
SATSET_DEFINE_ERROR(AlreadySaturating);
SATSET_DEFINE_ERROR(NonPositiveFactor);
SATSET_DEFINE_ERROR(ConditionViolated);
SATSET_DEFINE_ERROR(DomainError);
SATSET_DEFINE_ERROR(BranchInapplicable);
SATSET_DEFINE_ERROR(DuplicatePoint);
SATSET_DEFINE_ERROR(IoError);

#undef SATSET_DEFINE_ERROR

/// Which projective-plane axiom an incidence structure failed.
enum class Axiom { Counts, LineSize, PairUniqueness, PointDegree };

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Counts: return "counts";
    case Axiom::LineSize: return "line size";
    case Axiom::PairUniqueness: return "pair-uniqueness";
    case Axiom::PointDegree: return "point degree";
  }
  return "?";
}

class AxiomViolation : public Error {
 public:
  AxiomViolation(Axiom axiom, const std::string& detail)
      : Error(std::string("AxiomViolation(") + axiom_name(axiom) + "): " + detail), axiom_(axiom) {}

  Axiom axiom() const noexcept { return axiom_; }

 private:
  Axiom axiom_;
};

}  // namespace satset
