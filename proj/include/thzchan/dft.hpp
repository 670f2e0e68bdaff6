// SPDX-License-Identifier: Apache-2.0
//
// thzchan - indoor channel simulator for the 201-209 GHz band
// Copyright (C) 2026 thzchan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef THZCHAN_DFT_HPP
#define THZCHAN_DFT_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "thzchan/common.hpp"

namespace thz {

// Inverse DFT from a uniformly swept transfer function to delay taps:
//
//   h[k] = (1/N) sum_s H[s] exp(+j 2 pi k s / N)
//
// Tap k sits at delay k / (N df); delays beyond 1/df wrap around, which is
// exactly the aliasing behaviour of a frequency-domain sounder.
inline std::vector<std::complex<double>> ctf_to_cir(std::span<const std::complex<double>> ctf)
{
    const std::size_t n = ctf.size();
    if (n == 0)
        throw std::invalid_argument("ctf_to_cir: empty input");

    std::vector<std::complex<double>> tw(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = {std::cos(a), std::sin(a)};
    }

    std::vector<std::complex<double>> cir(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t s = 0; s < n; ++s)
            acc += ctf[s] * tw[(k * s) % n];
        cir[k] = acc / static_cast<double>(n);
    }
    return cir;
}

// Forward counterpart, H[s] = sum_k h[k] exp(-j 2 pi k s / N).
inline std::vector<std::complex<double>> cir_to_ctf(std::span<const std::complex<double>> cir)
{
    const std::size_t n = cir.size();
    if (n == 0)
        throw std::invalid_argument("cir_to_ctf: empty input");

    std::vector<std::complex<double>> tw(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = {std::cos(a), std::sin(a)};
    }

    std::vector<std::complex<double>> ctf(n);
    for (std::size_t s = 0; s < n; ++s)
    {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            acc += cir[k] * tw[(k * s) % n];
        ctf[s] = acc;
    }
    return ctf;
}

} // namespace thz

#endif
