#include "projdunkl/fault.hpp"

namespace projdunkl {

std::string to_string(Fault fault) {
  switch (fault) {
    case Fault::None: return "none";
    case Fault::PerturbKappa: return "perturb-kappa";
    case Fault::PerturbRoot: return "perturb-root";
    case Fault::DropProjection: return "drop-projection";
  }
  return "none";
}

std::optional<Fault> parse_fault(std::string_view name) {
  for (auto f : {Fault::None, Fault::PerturbKappa, Fault::PerturbRoot, Fault::DropProjection}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

}  // namespace projdunkl
