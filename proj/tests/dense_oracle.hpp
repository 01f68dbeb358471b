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

// Reference pipeline for tests: every circuit step is an explicit
// 2^m x 2^m matrix assembled from Kronecker products and multiplied out.
// Shares nothing with the library beyond std::complex.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace dense {

using C = std::complex<double>;

struct Matrix {
    std::size_t dim = 0;
    std::vector<C> a; // row-major

    static Matrix zero(std::size_t d) { return {d, std::vector<C>(d * d)}; }
    static Matrix identity(std::size_t d) {
        Matrix m = zero(d);
        for (std::size_t i = 0; i < d; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }
    C &operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    C operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Matrix operator*(const Matrix &x, const Matrix &y) {
    Matrix out = Matrix::zero(x.dim);
    for (std::size_t r = 0; r < x.dim; ++r) {
        for (std::size_t k = 0; k < x.dim; ++k) {
            const C v = x(r, k);
            if (v == C{}) {
                continue;
            }
            for (std::size_t c = 0; c < x.dim; ++c) {
                out(r, c) += v * y(k, c);
            }
        }
    }
    return out;
}

inline Matrix operator+(Matrix x, const Matrix &y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) {
        x.a[i] += y.a[i];
    }
    return x;
}

inline Matrix operator-(Matrix x, const Matrix &y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) {
        x.a[i] -= y.a[i];
    }
    return x;
}

inline Matrix scale(Matrix x, C s) {
    for (C &v : x.a) {
        v *= s;
    }
    return x;
}

inline std::vector<C> operator*(const Matrix &m, const std::vector<C> &v) {
    std::vector<C> out(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

inline Matrix kron(const Matrix &x, const Matrix &y) {
    Matrix out = Matrix::zero(x.dim * y.dim);
    for (std::size_t r1 = 0; r1 < x.dim; ++r1) {
        for (std::size_t c1 = 0; c1 < x.dim; ++c1) {
            for (std::size_t r2 = 0; r2 < y.dim; ++r2) {
                for (std::size_t c2 = 0; c2 < y.dim; ++c2) {
                    out(r1 * y.dim + r2, c1 * y.dim + c2) = x(r1, c1) * y(r2, c2);
                }
            }
        }
    }
    return out;
}

inline Matrix one_qubit(C m00, C m01, C m10, C m11) {
    Matrix m = Matrix::zero(2);
    m(0, 0) = m00;
    m(0, 1) = m01;
    m(1, 0) = m10;
    m(1, 1) = m11;
    return m;
}

inline Matrix H() {
    const double s = 1.0 / std::sqrt(2.0);
    return one_qubit(s, s, s, -s);
}
inline Matrix X() { return one_qubit(0, 1, 1, 0); }
inline Matrix Rz(double t) {
    return one_qubit(std::polar(1.0, -t / 2), 0, 0, std::polar(1.0, t / 2));
}
inline Matrix Phase(double t) { return one_qubit(1, 0, 0, std::polar(1.0, t)); }
inline Matrix Proj(bool v) { return v ? one_qubit(0, 0, 0, 1) : one_qubit(1, 0, 0, 0); }

/// Tensor product over qubits m-1 ... 0 of the per-qubit factors
/// (identity where absent). Qubit q is bit q of the basis index.
inline Matrix embed(std::size_t m, const std::vector<std::pair<std::size_t, Matrix>> &ops) {
    Matrix out = Matrix::identity(1);
    for (std::size_t q = m; q-- > 0;) {
        Matrix f = Matrix::identity(2);
        for (const auto &[idx, op] : ops) {
            if (idx == q) {
                f = op;
            }
        }
        out = kron(out, f);
    }
    return out;
}

/// I + P (U - I) with P the projector on the control pattern.
inline Matrix controlled(std::size_t m,
                         const std::vector<std::pair<std::size_t, bool>> &controls,
                         std::size_t target, const Matrix &u) {
    std::vector<std::pair<std::size_t, Matrix>> proj;
    for (const auto &[q, v] : controls) {
        proj.emplace_back(q, Proj(v));
    }
    const Matrix I = Matrix::identity(std::size_t{1} << m);
    const Matrix U = embed(m, {{target, u}});
    return I + embed(m, proj) * (U - I);
}

inline Matrix hadamard_all(std::size_t m) {
    Matrix out = Matrix::identity(1);
    for (std::size_t q = 0; q < m; ++q) {
        out = kron(out, H());
    }
    return out;
}

/// H^m (2|0><0| - I) H^m over the whole register.
inline Matrix inversion(std::size_t m) {
    const std::size_t d = std::size_t{1} << m;
    Matrix r = scale(Matrix::identity(d), -1.0);
    r(0, 0) = 1.0;
    const Matrix h = hadamard_all(m);
    return h * r * h;
}

/// e^{iθ} on |x, y=1> for each winner x; inputs are qubits 1..n.
inline Matrix oracle(std::size_t m, std::size_t n, const std::vector<std::uint32_t> &winners,
                     double theta) {
    const std::size_t d = std::size_t{1} << m;
    Matrix out = Matrix::identity(d);
    for (std::uint32_t x : winners) {
        std::vector<std::pair<std::size_t, bool>> pattern;
        for (std::size_t b = 0; b < n; ++b) {
            pattern.emplace_back(b + 1, ((x >> b) & 1U) != 0);
        }
        out = out * controlled(m, pattern, 0, Phase(theta));
    }
    return out;
}

inline std::vector<C> basis0(std::size_t m) {
    std::vector<C> v(std::size_t{1} << m);
    v[0] = 1.0;
    return v;
}

/// Two tags: t0 = qubit n+1, t1 = qubit n+2. `null_angle` absent gives
/// plain eigenmarking.
inline std::vector<C> two_tag(std::size_t n, const std::vector<std::uint32_t> &winners,
                              const double *null_angle) {
    const std::size_t m = n + 3;
    const std::size_t t0 = n + 1;
    const std::size_t t1 = n + 2;
    const double q = std::numbers::pi / 2;
    std::vector<C> psi = hadamard_all(m) * basis0(m);
    psi = oracle(m, n, winners, q) * psi;
    psi = controlled(m, {{t0, true}}, 0, Rz(q)) * psi;
    psi = controlled(m, {{t1, true}}, 0, Rz(-q)) * psi;
    if (null_angle != nullptr) {
        std::vector<std::pair<std::size_t, bool>> c = {{t1, true}, {t0, false}};
        for (std::size_t b = 1; b <= n; ++b) {
            c.emplace_back(b, true);
        }
        psi = controlled(m, c, 0, Phase(*null_angle)) * psi;
    }
    return inversion(m) * psi;
}

inline std::vector<C> subtle(std::size_t n, const std::vector<std::uint32_t> &winners) {
    const std::size_t m = n + 2;
    const std::size_t t0 = n + 1;
    std::vector<C> psi = hadamard_all(m) * basis0(m);
    psi = oracle(m, n, winners, std::numbers::pi) * psi;
    std::vector<std::pair<std::size_t, bool>> c = {{t0, true}};
    for (std::size_t b = 1; b <= n; ++b) {
        c.emplace_back(b, true);
    }
    psi = controlled(m, c, 0, Phase(std::numbers::pi)) * psi;
    return inversion(m) * psi;
}

/// Original search: X on y, H on the inputs, `iterations` rounds of
/// oracle(pi) then inversion over the input qubits only.
inline std::vector<C> grover(std::size_t n, std::uint32_t winner, std::size_t iterations) {
    const std::size_t m = n + 1;
    std::vector<std::pair<std::size_t, Matrix>> hs;
    for (std::size_t b = 1; b <= n; ++b) {
        hs.emplace_back(b, H());
    }
    const Matrix h_in = embed(m, hs);
    std::vector<C> psi = h_in * (embed(m, {{0, X()}}) * basis0(m));
    Matrix r = Matrix::identity(std::size_t{1} << m);
    {
        // 2|0..0><0..0| - I on inputs, identity on y
        std::vector<std::pair<std::size_t, bool>> zeros;
        for (std::size_t b = 1; b <= n; ++b) {
            zeros.emplace_back(b, false);
        }
        std::vector<std::pair<std::size_t, Matrix>> proj;
        for (const auto &[q, v] : zeros) {
            proj.emplace_back(q, Proj(v));
        }
        r = scale(embed(m, proj), 2.0) - r;
    }
    const Matrix step = h_in * r * h_in * oracle(m, n, {winner}, std::numbers::pi);
    for (std::size_t j = 0; j < iterations; ++j) {
        psi = step * psi;
    }
    return psi;
}

/// Probability of each reported label (qubits m-1..1), y summed out.
inline std::vector<double> reported(const std::vector<C> &psi) {
    std::vector<double> out(psi.size() / 2);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        out[i >> 1] += std::norm(psi[i]);
    }
    return out;
}

} // namespace dense
