#pragma once

#include "simnoise/kernels.hpp"

namespace simnoise::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(SIMNOISE_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(SIMNOISE_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace simnoise::kernels::detail
