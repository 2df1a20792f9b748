#include "smmdtc/app/exit_codes.hpp"

#include "smmdtc/app/config.hpp"
#include "smmdtc/app/output.hpp"
#include "smmdtc/errors.hpp"

namespace smmdtc::app {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const DimensionError*>(&e)) return kExitDimension;
  if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const UnsupportedConfiguration*>(&e)) return kExitUnsupported;
  if (dynamic_cast<const DomainError*>(&e)) return kExitDomain;
  return kExitOther;
}

}  // namespace smmdtc::app
