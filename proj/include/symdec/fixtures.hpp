#pragma once

#include <string>
#include <vector>

#include "symdec/symtensor.hpp"

namespace symdec {

/// Reference tensors with published decomposition results.
struct Fixture {
  std::string name;
  std::string description;
  SymTensor tensor;
  // Length used when reproducing the published run.
  int rank = 0;
};

std::vector<std::string> fixture_names();

/// Throws DomainError for unknown names.
Fixture fixture(const std::string& name);

}  // namespace symdec
