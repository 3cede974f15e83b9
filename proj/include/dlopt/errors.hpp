// Copyright (c) 2026 The dlopt developers. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlopt {

// Byte range in an input buffer, used for parse diagnostics.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class DlError : public std::runtime_error {
 public:
  explicit DlError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public DlError {
 public:
  ParseError(const std::string& msg, SourceSpan span)
      : DlError(msg + " (at offset " + std::to_string(span.start) + "-" +
                std::to_string(span.end) + ")"),
        span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

// An inadmissible (capture-incurring) uniform substitution attempt.
class ClashError : public DlError {
 public:
  ClashError(const std::string& symbol, const std::string& variable,
             const std::string& construct)
      : DlError("clash: free variable '" + variable + "' of the replacement for '" +
                symbol + "' is bound by " + construct),
        symbol_(symbol),
        variable_(variable),
        construct_(construct) {}
  const std::string& symbol() const { return symbol_; }
  const std::string& variable() const { return variable_; }
  const std::string& construct() const { return construct_; }

 private:
  std::string symbol_, variable_, construct_;
};

class RenameError : public DlError {
 public:
  using DlError::DlError;
};

class DomainError : public DlError {
 public:
  using DlError::DlError;
};

class ArityError : public DlError {
 public:
  using DlError::DlError;
};

class ShapeError : public DlError {
 public:
  using DlError::DlError;
};

class PathError : public DlError {
 public:
  using DlError::DlError;
};

class OracleError : public DlError {
 public:
  using DlError::DlError;
};

class UnsupportedError : public DlError {
 public:
  using DlError::DlError;
};

class NotApplicableError : public DlError {
 public:
  using DlError::DlError;
};

class CertFormatError : public DlError {
 public:
  using DlError::DlError;
};

}  // namespace dlopt
