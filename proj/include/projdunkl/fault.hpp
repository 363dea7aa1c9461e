#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace projdunkl {

/// Deliberate perturbations used to confirm that each verification check can fail.
enum class Fault {
  None,
  PerturbKappa,    // one multiplicity differs between the two sides of an identity
  PerturbRoot,     // one root is moved off its canonical direction
  DropProjection,  // one projection / difference term is omitted
};

std::string to_string(Fault fault);
std::optional<Fault> parse_fault(std::string_view name);

}  // namespace projdunkl
