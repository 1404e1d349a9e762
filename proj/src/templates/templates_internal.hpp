#pragma once

#include <vector>

#include "rxnlab/templates.hpp"

namespace rxnlab::detail {

std::vector<TaskTemplate> builtin_templates();

}  // namespace rxnlab::detail
