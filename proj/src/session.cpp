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

#include "enstele/session.hpp"

namespace enstele {

SessionRecord run_session(const CoefficientVector &c, const Preparation &prep, const ClassicalMessage &message,
                          bool bob_acts) {
    if (const auto *two = std::get_if<TwoBits>(&message)) {
        const auto *bell = std::get_if<BellIndex>(&prep);
        if (bell == nullptr || *bell != two->index) {
            throw ProtocolError("two-bit message names bell" + std::to_string(two->index.value()) +
                                " but the preparation is " + to_string(prep));
        }
    }

    const PreparationTensor u = tensor_of(prep);
    const ComplexMatrix raw = alice_prepare(u, c);
    ComplexMatrix state = renormalize(raw);
    const ComplexMatrix t = transformation_matrix(u).t;
    ComplexMatrix effective = t;

    if (bob_acts) {
        if (const auto *bell = std::get_if<BellIndex>(&prep)) {
            state = bob_correct(*bell, state);
            effective = conjugation_map(correction_unitary(*bell)) * t;
        } else {
            ComplexMatrix t_inv;
            try {
                t_inv = inverse(t);
            } catch (const DimensionError &) {
                throw ProtocolError("Bob cannot undo this preparation: its transformation matrix is singular");
            }
            state = renormalize(from_coordinates(TransformationMatrix{t_inv}.apply(to_coordinates(state))));
            effective = t_inv * t;
        }
    }

    SessionRecord rec;
    rec.bob_state = state;
    rec.raw_trace = trace(raw).real();
    rec.fidelity = compare_forms(fidelity_trace(c, state), fidelity_vector(c, TransformationMatrix{effective}));
    rec.bits_sent = bits_sent(message);
    return rec;
}

}  // namespace enstele
