// Copyright 2026 The Locsec Authors
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

// JSON channel files:
//
//   {"format": "locsec-channel", "version": 1, "nx": 2, "ny": 2, "nz": 2,
//    "px": [...], "bob": [[P(y=0|x=0), P(y=0|x=1)], ...], "eve": [...]}
//
// Matrices are output-major: row y lists P(y|x) over the inputs x.

#ifndef LOCSEC_CHANNEL_IO_H_
#define LOCSEC_CHANNEL_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "locsec/channels.h"

namespace locsec {

// Full-precision (round-trip) serialization.
std::string channel_to_json(const WiretapChannel& wc);

// Throws ValidationError with line and column on malformed JSON, and naming
// the offending field on schema errors.
WiretapChannel channel_from_json(const std::string& text);

void write_channel_file(const std::string& path, const WiretapChannel& wc);
WiretapChannel read_channel_file(const std::string& path);

}  // namespace locsec

#endif  // LOCSEC_CHANNEL_IO_H_
