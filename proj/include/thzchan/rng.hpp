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

#ifndef THZCHAN_RNG_HPP
#define THZCHAN_RNG_HPP

#include <cmath>
#include <cstdint>

#include "thzchan/common.hpp"

namespace thz {

// SplitMix64 generator with explicit variate transforms. <random>
// distributions are implementation-defined, so everything random in the
// simulator goes through this class to keep realizations reproducible
// bit-for-bit across platforms for a given seed.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1]; never returns 0 so -log(u) stays finite.
    double uniform() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Box-Muller; one fresh pair of uniforms per call.
    double normal()
    {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    double exponential(double mean) { return -mean * std::log(uniform()); }

    double lognormal(double mu_ln, double sigma_ln) { return std::exp(mu_ln + sigma_ln * normal()); }

    // Knuth's product method; adequate for the small rates used here.
    int poisson(double lambda)
    {
        double limit = std::exp(-lambda);
        double prod = 1.0;
        int k = 0;
        do
        {
            ++k;
            prod *= uniform();
        } while (prod > limit);
        return k - 1;
    }

    // Uniform on {-1.0, +1.0}.
    double sign() { return (next_u64() & 1ULL) ? 1.0 : -1.0; }

    // Decorrelated substream key for (master seed, index) pairs, e.g. one
    // stream per Monte-Carlo drop or per scan direction.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index)
    {
        std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t state_;
};

} // namespace thz

#endif
