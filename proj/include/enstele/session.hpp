// Copyright 2026 The enstele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "enstele/fidelity.hpp"
#include "enstele/protocol.hpp"

namespace enstele {

struct SessionRecord {
    ComplexMatrix bob_state;
    /// Trace of Bob's operator before renormalization.
    double raw_trace = 0.0;
    FidelityReport fidelity;
    int bits_sent = 0;

    bool operator==(const SessionRecord &other) const {
        return bob_state == other.bob_state && raw_trace == other.raw_trace &&
               fidelity.trace_form == other.fidelity.trace_form &&
               fidelity.vector_form == other.fidelity.vector_form && fidelity.agree == other.fidelity.agree &&
               fidelity.note == other.fidelity.note && bits_sent == other.bits_sent;
    }
};

/// assemble -> prepare -> renormalize -> (correct) -> fidelity.
///
/// When Bob acts after a Bell preparation he applies correction_unitary(i);
/// after an arbitrary tensor he applies the inverse of its transformation
/// matrix. A TwoBits message must name the Bell preparation actually used,
/// otherwise ProtocolError.
SessionRecord run_session(const CoefficientVector &c, const Preparation &prep, const ClassicalMessage &message,
                          bool bob_acts);

}  // namespace enstele
