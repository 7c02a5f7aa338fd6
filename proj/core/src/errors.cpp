#include "wittenlab/errors.hpp"

#include <fmt/format.h>

namespace wittenlab {

RefinementNeeded::RefinementNeeded(double nu_lo, double nu_hi, double jump)
    : Error(fmt::format("phase jump {:.4g} rad on [{:.6g}, {:.6g}] exceeds pi/2; refine the nu-grid",
                        jump, nu_lo, nu_hi)),
      nu_lo_(nu_lo),
      nu_hi_(nu_hi),
      jump_(jump) {}

NearSingular::NearSingular(double nu, double modulus)
    : Error(fmt::format("|det2| = {:.3e} at nu = {:.6g} is below the near-singular threshold",
                        modulus, nu)),
      nu_(nu),
      modulus_(modulus) {}

AssemblyError::AssemblyError(std::size_t row, std::size_t col)
    : Error(fmt::format("non-finite kernel value at matrix entry ({}, {})", row, col)),
      row_(row),
      col_(col) {}

}  // namespace wittenlab
