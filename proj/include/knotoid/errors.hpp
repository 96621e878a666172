#ifndef KNOTOID_ERRORS_HPP_
#define KNOTOID_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace knotoid {

// All validation failures carry a stable machine-readable id alongside the
// human-readable message; the CLI prints the id on its diagnostic stream.
class Error : public std::runtime_error {
 public:
  Error(std::string id, const std::string& what)
      : std::runtime_error(id + ": " + what), id_(std::move(id)) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

struct MalformedSyntax : Error {
  explicit MalformedSyntax(const std::string& what)
      : Error("MalformedSyntax", what) {}
};

struct InvalidCode : Error {
  explicit InvalidCode(const std::string& what) : Error("InvalidCode", what) {}
};

struct MixedAnnotation : Error {
  explicit MixedAnnotation(const std::string& what)
      : Error("MixedAnnotation", what) {}
};

struct Disconnected : Error {
  explicit Disconnected(const std::string& what)
      : Error("Disconnected", what) {}
};

struct EulerViolation : Error {
  explicit EulerViolation(const std::string& what)
      : Error("EulerViolation", what) {}
};

struct BadDegree : Error {
  explicit BadDegree(const std::string& what) : Error("BadDegree", what) {}
};

struct NotSingleStrand : Error {
  explicit NotSingleStrand(const std::string& what)
      : Error("NotSingleStrand", what) {}
};

struct NoOuterFace : Error {
  explicit NoOuterFace(const std::string& what) : Error("NoOuterFace", what) {}
};

struct InvalidSite : Error {
  explicit InvalidSite(const std::string& what) : Error("InvalidSite", what) {}
};

struct InvalidCutSystem : Error {
  explicit InvalidCutSystem(const std::string& what)
      : Error("InvalidCutSystem", what) {}
};

struct TooLarge : Error {
  explicit TooLarge(const std::string& what) : Error("TooLarge", what) {}
};

}  // namespace knotoid

#endif  // KNOTOID_ERRORS_HPP_
