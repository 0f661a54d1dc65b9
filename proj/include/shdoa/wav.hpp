// Copyright 2026 The shdoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "shdoa/stft.hpp"

namespace shdoa {

enum class WavFormat { Pcm16, Pcm24, Float32 };

/// Reads a multichannel RIFF/WAVE file (16/24-bit PCM or 32-bit float).
/// Channel q of the file maps to capsule q of the array geometry.
MultichannelSignal read_wav(const std::string& path);

void write_wav(const std::string& path, const MultichannelSignal& sig,
               WavFormat format = WavFormat::Float32);

}  // namespace shdoa
