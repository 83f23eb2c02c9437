#pragma once

#include <stdexcept>
#include <string>

namespace sb {

enum class ErrCode {
  Usage,
  Parse,
  Domain,
  ActionUndefined,
  NotInImage,
  Unrepresentable,
  Internal,
};

inline const char* err_code_name(ErrCode c) {
  switch (c) {
    case ErrCode::Usage: return "usage";
    case ErrCode::Parse: return "parse";
    case ErrCode::Domain: return "domain";
    case ErrCode::ActionUndefined: return "action-undefined";
    case ErrCode::NotInImage: return "not-in-image";
    case ErrCode::Unrepresentable: return "unrepresentable";
    case ErrCode::Internal: return "internal";
  }
  return "unknown";
}

/// Every error names the operation that raised it and, when sensible, the
/// offending token or symbol.
class Error : public std::runtime_error {
 public:
  Error(ErrCode code, std::string op, std::string message, std::string token = "")
      : std::runtime_error(op + ": " + message + (token.empty() ? "" : " [" + token + "]")),
        code_(code),
        op_(std::move(op)),
        message_(std::move(message)),
        token_(std::move(token)) {}

  ErrCode code() const { return code_; }
  const std::string& op() const { return op_; }
  const std::string& message() const { return message_; }
  const std::string& token() const { return token_; }

 private:
  ErrCode code_;
  std::string op_;
  std::string message_;
  std::string token_;
};

}  // namespace sb
