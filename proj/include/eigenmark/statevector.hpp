// Copyright 2026 The eigenmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Dense statevector and the small gate set the search circuits are built
 * from.
 *
 * Basis index bit q holds the value of qubit q. Reported labels are written
 * most-significant-left in the order given by a QubitLayout (tags, then the
 * input register); the ancilla sits at qubit 0 and is never reported.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eigenmark {

using Complex = std::complex<double>;
using Qubit = std::size_t;

inline constexpr std::size_t kMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kIdentityTolerance = 1e-12;

/// Row-major 2x2 complex matrix.
struct Gate2x2 {
    std::array<Complex, 4> m{};

    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return m[2 * row + col];
    }
    [[nodiscard]] bool is_unitary(double tol = kIdentityTolerance) const;
    [[nodiscard]] bool is_diagonal() const {
        return m[1] == Complex{} && m[2] == Complex{};
    }

    static Gate2x2 identity();
    static Gate2x2 pauli_x();
    static Gate2x2 hadamard();
    /// diag(1, e^{iθ}): the phase rotation used by the search oracles.
    static Gate2x2 phase(double theta);
    /// diag(e^{-iθ/2}, e^{iθ/2}): the standard Z rotation.
    static Gate2x2 rz(double theta);
};

class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(std::size_t num_qubits);

    /// Wraps explicit amplitudes. Length must be a power of two and the
    /// vector normalized within kNormTolerance.
    static StateVector from_amplitudes(std::vector<Complex> amps);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] double norm_squared() const;

  private:
    StateVector(std::size_t num_qubits, std::vector<Complex> amps)
        : num_qubits_(num_qubits), amps_(std::move(amps)) {}

    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

/// A control condition: `qubit` must read `value`.
struct Control {
    Qubit qubit;
    bool value = true;
};

/**
 * Assignment of register roles to qubit indices.
 *
 * `tag_qubits` and `input_qubits` are listed most-significant first; the
 * reported label is their concatenation. The ancilla is summed out.
 */
struct QubitLayout {
    std::vector<Qubit> tag_qubits;
    std::vector<Qubit> input_qubits;
    Qubit ancilla = 0;

    /// Ancilla at qubit 0, input above it (MSB highest), tags on top.
    static QubitLayout standard(std::size_t tags, std::size_t inputs);

    [[nodiscard]] std::size_t num_qubits() const noexcept {
        return tag_qubits.size() + input_qubits.size() + 1;
    }
    [[nodiscard]] std::size_t reported_width() const noexcept {
        return tag_qubits.size() + input_qubits.size();
    }
    /// Throws QubitIndexError unless the roles partition 0..m-1.
    void validate() const;
    /// Reported label index of a full-register basis index.
    [[nodiscard]] std::size_t reported_index(std::size_t basis) const;
    /// Value of the input register within a basis index.
    [[nodiscard]] std::uint32_t input_value(std::size_t basis) const;
};

/// Bit string of `index` with `width` characters, most significant first.
std::string format_label(std::size_t index, std::size_t width);
/// Inverse of format_label; throws SizeError on width or character mismatch.
std::size_t parse_label(const std::string &label, std::size_t width);

StateVector ground_state(std::size_t num_qubits);

StateVector apply_gate(StateVector state, const Gate2x2 &gate, Qubit q);

StateVector apply_hadamard_all(StateVector state, std::span<const Qubit> qs);

/// Applies `gate` to `target` on the subspace where every control holds.
StateVector apply_controlled_gate(StateVector state,
                                  std::span<const Control> controls,
                                  const Gate2x2 &gate, Qubit target);

/// Multiplies by e^{iθ} the amplitudes whose controls hold and whose target
/// qubit is 1.
StateVector apply_controlled_phase(StateVector state,
                                   std::span<const Control> controls,
                                   Qubit target, double theta);

/// Reflection 2A - I on the listed qubits, where A averages amplitudes
/// over the 2^|qs| configurations of those qubits (identity on the rest).
StateVector inversion_about_mean(StateVector state, std::span<const Qubit> qs);

std::vector<double> probabilities(const StateVector &state);

/// Sums the ancilla out of a full-register distribution.
std::vector<double> marginal_over_reported(std::span<const double> probs,
                                           const QubitLayout &layout);

} // namespace eigenmark
