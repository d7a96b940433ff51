#pragma once

#include <span>

#include "saddlemg/trig_poly.hpp"

namespace saddlemg::fft {

/// out_k = Σ_j in_j e^{2πi jk/n}. `out` may alias `in`.
void forward(std::span<const cplx> in, std::span<cplx> out);

/// out_j = (1/n) Σ_k in_k e^{-2πi jk/n}. `out` may alias `in`.
void inverse(std::span<const cplx> in, std::span<cplx> out);

}  // namespace saddlemg::fft
