#pragma once

#include <string>

#ifndef RXNLAB_FIXTURE_DIR
#error "RXNLAB_FIXTURE_DIR must be defined"
#endif

namespace rxnlab::testing {

inline std::string fixture(const std::string& name) {
  return std::string(RXNLAB_FIXTURE_DIR) + "/" + name;
}

}  // namespace rxnlab::testing
