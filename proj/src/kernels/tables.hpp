#pragma once

#include "lsv/kernels.hpp"

namespace lsv::kernels::detail {

extern const KernelTable kScalarTable;

#if defined(LSV_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

#if defined(LSV_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif

}  // namespace lsv::kernels::detail
