#pragma once

#include <stdexcept>
#include <string>

namespace dsqr {

// Pipeline stage a failure is attributed to. Carried by every dsqr::Error so
// the CLI can name the failing stage in its diagnostics.
enum class Stage {
  Input,
  FormatSelection,
  FunctionPattern,
  FormatDecode,
  ReedSolomon,
  PayloadParse,
  SystemInfeasible,
  Mismatch,
};

const char* to_string(Stage stage) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Stage stage, const std::string& what)
      : std::runtime_error(what), stage_(stage) {}

  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

}  // namespace dsqr
