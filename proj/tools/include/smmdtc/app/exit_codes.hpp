#pragma once

#include <exception>

namespace smmdtc::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitDimension = 3,
  kExitNumerical = 4,
  kExitIo = 5,
  kExitUnsupported = 6,
  kExitDomain = 7,
};

int exit_code_for(const std::exception& e);

}  // namespace smmdtc::app
