#include "axicyl/errors.hpp"

namespace axicyl {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const SolverError*>(&e)) return 3;
  if (dynamic_cast<const FormatError*>(&e)) return 4;
  return 1;
}

}  // namespace axicyl
