// SPDX-License-Identifier: Apache-2.0
//
// rishbf: link-level simulator for RIS-aided angular-based hybrid beamforming
// Copyright (C) 2026 The rishbf authors
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

#ifndef RISHBF_SEEDING_HPP
#define RISHBF_SEEDING_HPP

#include <cstdint>
#include <initializer_list>

namespace rishbf
{

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Order-sensitive hash of a master seed and a list of indices.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts)
{
    std::uint64_t h = mix64(master);
    for (auto p : parts)
        h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

} // namespace rishbf

#endif
