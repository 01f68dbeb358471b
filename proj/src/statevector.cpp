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

#include "eigenmark/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "eigenmark/error.hpp"

namespace eigenmark {

namespace {

void check_qubit(const StateVector &state, Qubit q) {
    if (q >= state.num_qubits()) {
        throw QubitIndexError("qubit " + std::to_string(q) +
                              " out of range for " +
                              std::to_string(state.num_qubits()) +
                              "-qubit register");
    }
}

void check_distinct(const StateVector &state, std::span<const Qubit> qs) {
    std::uint64_t seen = 0;
    for (Qubit q : qs) {
        check_qubit(state, q);
        const std::uint64_t bit = std::uint64_t{1} << q;
        if ((seen & bit) != 0) {
            throw QubitIndexError("qubit " + std::to_string(q) +
                                  " listed twice");
        }
        seen |= bit;
    }
}

} // namespace

bool Gate2x2::is_unitary(double tol) const {
    // G^dagger G == I
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            Complex acc{};
            for (std::size_t k = 0; k < 2; ++k) {
                acc += std::conj((*this)(k, r)) * (*this)(k, c);
            }
            const Complex expected = (r == c) ? Complex{1.0} : Complex{};
            if (std::abs(acc - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

Gate2x2 Gate2x2::identity() { return {{Complex{1}, {}, {}, Complex{1}}}; }

Gate2x2 Gate2x2::pauli_x() {
    return {{Complex{0}, Complex{1}, Complex{1}, Complex{0}}};
}

Gate2x2 Gate2x2::hadamard() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {{Complex{h}, Complex{h}, Complex{h}, Complex{-h}}};
}

Gate2x2 Gate2x2::phase(double theta) {
    return {{Complex{1}, {}, {}, std::polar(1.0, theta)}};
}

Gate2x2 Gate2x2::rz(double theta) {
    return {{std::polar(1.0, -theta / 2), {}, {}, std::polar(1.0, theta / 2)}};
}

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw SizeError("qubit count " + std::to_string(num_qubits) +
                        " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{});
    amps_[0] = Complex{1.0};
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps) {
    const std::size_t len = amps.size();
    if (len < 2 || (len & (len - 1)) != 0) {
        throw SizeError("amplitude count " + std::to_string(len) +
                        " is not a power of two >= 2");
    }
    const auto m = static_cast<std::size_t>(std::countr_zero(len));
    if (m > kMaxQubits) {
        throw SizeError("too many qubits: " + std::to_string(m));
    }
    StateVector sv(m, std::move(amps));
    if (std::abs(sv.norm_squared() - 1.0) > kNormTolerance) {
        throw SizeError("amplitudes are not normalized");
    }
    return sv;
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const Complex &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

QubitLayout QubitLayout::standard(std::size_t tags, std::size_t inputs) {
    QubitLayout layout;
    layout.ancilla = 0;
    for (std::size_t i = 0; i < inputs; ++i) {
        layout.input_qubits.push_back(inputs - i);
    }
    for (std::size_t i = 0; i < tags; ++i) {
        layout.tag_qubits.push_back(inputs + tags - i);
    }
    return layout;
}

void QubitLayout::validate() const {
    const std::size_t m = num_qubits();
    std::vector<bool> used(m, false);
    auto claim = [&](Qubit q) {
        if (q >= m) {
            throw QubitIndexError("layout qubit " + std::to_string(q) +
                                  " outside 0.." + std::to_string(m - 1));
        }
        if (used[q]) {
            throw QubitIndexError("layout assigns qubit " + std::to_string(q) +
                                  " twice");
        }
        used[q] = true;
    };
    for (Qubit q : tag_qubits) {
        claim(q);
    }
    for (Qubit q : input_qubits) {
        claim(q);
    }
    claim(ancilla);
}

std::size_t QubitLayout::reported_index(std::size_t basis) const {
    std::size_t out = 0;
    for (Qubit q : tag_qubits) {
        out = (out << 1) | ((basis >> q) & 1U);
    }
    for (Qubit q : input_qubits) {
        out = (out << 1) | ((basis >> q) & 1U);
    }
    return out;
}

std::uint32_t QubitLayout::input_value(std::size_t basis) const {
    std::uint32_t out = 0;
    for (Qubit q : input_qubits) {
        out = (out << 1) | static_cast<std::uint32_t>((basis >> q) & 1U);
    }
    return out;
}

std::string format_label(std::size_t index, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if (((index >> (width - 1 - i)) & 1U) != 0) {
            s[i] = '1';
        }
    }
    return s;
}

std::size_t parse_label(const std::string &label, std::size_t width) {
    if (label.size() != width) {
        throw SizeError("label '" + label + "' has width " +
                        std::to_string(label.size()) + ", expected " +
                        std::to_string(width));
    }
    std::size_t out = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw SizeError("label '" + label + "' is not a bit string");
        }
        out = (out << 1) | static_cast<std::size_t>(c == '1');
    }
    return out;
}

StateVector ground_state(std::size_t num_qubits) {
    return StateVector(num_qubits);
}

StateVector apply_gate(StateVector state, const Gate2x2 &gate, Qubit q) {
    return apply_controlled_gate(std::move(state), {}, gate, q);
}

StateVector apply_hadamard_all(StateVector state, std::span<const Qubit> qs) {
    check_distinct(state, qs);
    const Gate2x2 h = Gate2x2::hadamard();
    for (Qubit q : qs) {
        state = apply_gate(std::move(state), h, q);
    }
    return state;
}

StateVector apply_controlled_gate(StateVector state,
                                  std::span<const Control> controls,
                                  const Gate2x2 &gate, Qubit target) {
    check_qubit(state, target);
    if (!gate.is_unitary()) {
        throw Error("gate is not unitary");
    }
    std::size_t mask = 0;
    std::size_t want = 0;
    for (const Control &c : controls) {
        check_qubit(state, c.qubit);
        if (c.qubit == target) {
            throw QubitIndexError("control qubit " + std::to_string(c.qubit) +
                                  " is also the target");
        }
        const std::size_t bit = std::size_t{1} << c.qubit;
        if ((mask & bit) != 0) {
            throw QubitIndexError("qubit " + std::to_string(c.qubit) +
                                  " controls twice");
        }
        mask |= bit;
        if (c.value) {
            want |= bit;
        }
    }

    const std::size_t tbit = std::size_t{1} << target;
    auto amps = state.amplitudes();
    const bool diagonal = gate.is_diagonal();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & tbit) != 0 || (i & mask) != want) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | tbit];
        if (diagonal) {
            amps[i] = gate(0, 0) * a0;
            amps[i | tbit] = gate(1, 1) * a1;
        } else {
            amps[i] = gate(0, 0) * a0 + gate(0, 1) * a1;
            amps[i | tbit] = gate(1, 0) * a0 + gate(1, 1) * a1;
        }
    }
    return state;
}

StateVector apply_controlled_phase(StateVector state,
                                   std::span<const Control> controls,
                                   Qubit target, double theta) {
    return apply_controlled_gate(std::move(state), controls,
                                 Gate2x2::phase(theta), target);
}

StateVector inversion_about_mean(StateVector state, std::span<const Qubit> qs) {
    if (qs.empty()) {
        throw QubitIndexError("inversion about the mean needs at least one qubit");
    }
    check_distinct(state, qs);

    std::size_t mask = 0;
    for (Qubit q : qs) {
        mask |= std::size_t{1} << q;
    }
    std::vector<Qubit> rest;
    for (Qubit q = 0; q < state.num_qubits(); ++q) {
        if (((mask >> q) & 1U) == 0) {
            rest.push_back(q);
        }
    }
    auto key_of = [&rest](std::size_t i) {
        std::size_t key = 0;
        for (std::size_t b = 0; b < rest.size(); ++b) {
            key |= ((i >> rest[b]) & 1U) << b;
        }
        return key;
    };

    auto amps = state.amplitudes();
    std::vector<Complex> means(std::size_t{1} << rest.size(), Complex{});
    for (std::size_t i = 0; i < amps.size(); ++i) {
        means[key_of(i)] += amps[i];
    }
    const double block = std::ldexp(1.0, static_cast<int>(qs.size()));
    for (Complex &m : means) {
        m /= block;
    }
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = 2.0 * means[key_of(i)] - amps[i];
    }
    return state;
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> p;
    p.reserve(state.size());
    for (const Complex &a : state.amplitudes()) {
        p.push_back(std::norm(a));
    }
    return p;
}

std::vector<double> marginal_over_reported(std::span<const double> probs,
                                           const QubitLayout &layout) {
    layout.validate();
    const std::size_t expected = std::size_t{1} << layout.num_qubits();
    if (probs.size() != expected) {
        throw SizeError("distribution has " + std::to_string(probs.size()) +
                        " entries, layout expects " + std::to_string(expected));
    }
    std::vector<double> out(std::size_t{1} << layout.reported_width(), 0.0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        out[layout.reported_index(i)] += probs[i];
    }
    return out;
}

} // namespace eigenmark
