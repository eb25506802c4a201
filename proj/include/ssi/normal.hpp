#pragma once

namespace ssi {

// Standard normal CDF, absolute accuracy ~1e-15 (well inside the 1e-12 budget
// used by the bound calculators).
double normal_cdf(double z);

// Standard normal density.
double normal_pdf(double z);

}  // namespace ssi
