#ifndef ACTLANG_ERRORS_HPP
#define ACTLANG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace actlang {

// Every failure the library can raise carries one of these tags so callers
// (and the C API) can map it without string matching.
enum class ErrorKind {
  Syntax,          // malformed program text
  Validation,      // well-formed text, ill-formed program
  MalformedBody,   // write-back marking applied to a body without a final return
  Overflow,        // 64-bit arithmetic overflow during evaluation
  DanglingRef,     // attribute used as object/future does not reference one
  NotEnabled,      // step requested on an object that cannot move
  UnknownObject,   // ref is not an allocated object
  UnknownMethod,   // call target is not declared
  UnknownAttribute,// attribute missing from the compiled layout
  ArityMismatch,   // call argument count differs from declaration
  IllFormedIR,     // decompilation hit a parameter slot or stray hole
  Explosion,       // trace enumeration exceeded the requested cap
  Script,          // scheduler script ran dry or picked a disabled object
  Io,              // file could not be read or written
  Usage            // bad argument to a library entry point
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  ErrorKind kind;
};

class SyntaxError : public Error {
public:
  SyntaxError(int line, int col, const std::string& msg)
      : Error(ErrorKind::Syntax,
              "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
        line(line), col(col) {}
  int line;
  int col;
};

// One finding from program validation.
struct Diagnostic {
  enum class Code {
    MissingMain,
    MainHasParams,
    DuplicateMethod,
    DuplicateParam,
    MissingReturn,
    MultipleReturns,
    ReturnNotFinal,
    UnknownMethod,
    ArityMismatch,
    AssignToParam,
    ParamInAttrPosition,
    MarkedReturnInSource
  };
  Code code;
  std::string method;  // enclosing method, empty when program-level
  std::string message;
};

class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<Diagnostic> diags)
      : Error(ErrorKind::Validation, summarize(diags)), diagnostics(std::move(diags)) {}
  std::vector<Diagnostic> diagnostics;

private:
  static std::string summarize(const std::vector<Diagnostic>& ds) {
    if (ds.empty()) return "validation failed";
    std::string s = ds.front().message;
    if (ds.size() > 1) s += " (+" + std::to_string(ds.size() - 1) + " more)";
    return s;
  }
};

}  // namespace actlang

#endif
