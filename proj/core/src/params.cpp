#include "torusns/params.hpp"

#include <cmath>
#include <stdexcept>

namespace torusns {

void SolverParams::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (!(3.0 * epsilon < 1.0)) throw std::invalid_argument("3*epsilon must be < 1");
  if (!(beta > 3.0)) throw std::invalid_argument("beta must be > 3");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be > 0");
  if (!(decay_c > 0.0)) throw std::invalid_argument("decay_c must be > 0");
  if (!(fp_tol > 0.0)) throw std::invalid_argument("fp_tol must be > 0");
  if (fp_max_iter < 1) throw std::invalid_argument("fp_max_iter must be >= 1");
  if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
  if (!(eps_div > 0.0)) throw std::invalid_argument("eps_div must be > 0");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

}  // namespace torusns
