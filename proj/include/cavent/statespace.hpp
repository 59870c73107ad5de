// Copyright 2026 The cavity-entangler Authors
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

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cavent/errors.hpp"

namespace cavent {

using Complex = std::complex<double>;

/// Dense state vectors are capped at this many qubits (2^24 x cutoff amplitudes).
inline constexpr int kMaxDenseQubits = 24;

/// One computational basis ket |b_1 ... b_N>|n>_c. qubit_bits[0] is qubit 1.
struct BasisLabel {
    std::vector<int> qubit_bits;
    int photon_number = 0;

    bool operator==(const BasisLabel &) const = default;
};

/// Complex amplitudes over N two-level qubits tensored with one truncated cavity mode.
///
/// Basis ordering is qubit-1-major: the basis index is (b_1 b_2 ... b_N read as a binary
/// number, qubit 1 most significant) * fock_cutoff + n. A cutoff of 1 denotes a bare qubit
/// register with no cavity factor. Qubit indices in the public API are 1-based.
///
/// Values are immutable: every operation returns a new state. Nothing normalizes implicitly,
/// so the norm of a state produced by non-Hermitian evolution carries the no-jump probability.
class StateVector {
   public:
    StateVector(int qubit_count, int fock_cutoff, std::vector<Complex> amplitudes)
        : qubit_count_(qubit_count), fock_cutoff_(fock_cutoff), amplitudes_(std::move(amplitudes)) {
        if (qubit_count_ < 0 || qubit_count_ > kMaxDenseQubits) {
            throw CapacityError(
                "qubit count " + std::to_string(qubit_count_) + " outside [0, " +
                std::to_string(kMaxDenseQubits) + "] for dense state vectors");
        }
        if (fock_cutoff_ < 1) {
            throw ArgumentError("fock cutoff must be at least 1");
        }
        if (amplitudes_.size() != expected_dimension(qubit_count_, fock_cutoff_)) {
            throw ArgumentError(
                "amplitude count " + std::to_string(amplitudes_.size()) + " does not match 2^N x cutoff = " +
                std::to_string(expected_dimension(qubit_count_, fock_cutoff_)));
        }
    }

    static StateVector zero(int qubit_count, int fock_cutoff) {
        if (qubit_count < 0 || qubit_count > kMaxDenseQubits) {
            throw CapacityError("qubit count " + std::to_string(qubit_count) + " outside dense range");
        }
        if (fock_cutoff < 1) {
            throw ArgumentError("fock cutoff must be at least 1");
        }
        return StateVector(
            qubit_count, fock_cutoff, std::vector<Complex>(expected_dimension(qubit_count, fock_cutoff)));
    }

    static std::size_t expected_dimension(int qubit_count, int fock_cutoff) {
        return (std::size_t{1} << qubit_count) * static_cast<std::size_t>(fock_cutoff);
    }

    int qubit_count() const noexcept {
        return qubit_count_;
    }
    int fock_cutoff() const noexcept {
        return fock_cutoff_;
    }
    bool has_cavity() const noexcept {
        return fock_cutoff_ > 1;
    }
    std::size_t dimension() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    Complex operator[](std::size_t index) const {
        return amplitudes_.at(index);
    }

    /// Bit value of qubit `j` (1-based) in basis state `index`.
    int bit(std::size_t index, int j) const noexcept {
        return static_cast<int>(((index / fock_cutoff_) >> (qubit_count_ - j)) & 1U);
    }
    int photon(std::size_t index) const noexcept {
        return static_cast<int>(index % fock_cutoff_);
    }
    /// Index of the basis state with qubit `j` flipped.
    std::size_t flip(std::size_t index, int j) const noexcept {
        return index ^ ((std::size_t{1} << (qubit_count_ - j)) * fock_cutoff_);
    }

    std::size_t index_of(const BasisLabel &label) const {
        if (static_cast<int>(label.qubit_bits.size()) != qubit_count_) {
            throw ArgumentError("basis label has wrong number of qubit bits");
        }
        if (label.photon_number < 0 || label.photon_number >= fock_cutoff_) {
            throw TruncationError(
                "photon number " + std::to_string(label.photon_number) + " not below cutoff " +
                std::to_string(fock_cutoff_));
        }
        std::size_t reg = 0;
        for (int b : label.qubit_bits) {
            if (b != 0 && b != 1) {
                throw ArgumentError("qubit bits must be 0 or 1");
            }
            reg = (reg << 1) | static_cast<std::size_t>(b);
        }
        return reg * fock_cutoff_ + static_cast<std::size_t>(label.photon_number);
    }

    BasisLabel label_of(std::size_t index) const {
        if (index >= amplitudes_.size()) {
            throw ArgumentError("basis index out of range");
        }
        BasisLabel label;
        label.qubit_bits.reserve(qubit_count_);
        for (int j = 1; j <= qubit_count_; ++j) {
            label.qubit_bits.push_back(bit(index, j));
        }
        label.photon_number = photon(index);
        return label;
    }

    Complex amplitude(const BasisLabel &label) const {
        return amplitudes_[index_of(label)];
    }

    double norm_squared() const noexcept {
        double total = 0.0;
        for (const Complex &a : amplitudes_) {
            total += std::norm(a);
        }
        return total;
    }
    double norm() const noexcept {
        return std::sqrt(norm_squared());
    }

    StateVector scaled(Complex factor) const {
        std::vector<Complex> out(amplitudes_);
        for (Complex &a : out) {
            a *= factor;
        }
        return StateVector(qubit_count_, fock_cutoff_, std::move(out));
    }

    StateVector normalized() const {
        double n = norm();
        if (n == 0.0) {
            throw ArgumentError("cannot normalize a zero state");
        }
        return scaled(1.0 / n);
    }

    bool same_space(const StateVector &other) const noexcept {
        return qubit_count_ == other.qubit_count_ && fock_cutoff_ == other.fock_cutoff_;
    }

   private:
    int qubit_count_;
    int fock_cutoff_;
    std::vector<Complex> amplitudes_;
};

inline void require_same_space(const StateVector &a, const StateVector &b, const char *what) {
    if (!a.same_space(b)) {
        throw ArgumentError(
            std::string(what) + ": dimension mismatch (" + std::to_string(a.qubit_count()) + " qubits x " +
            std::to_string(a.fock_cutoff()) + " vs " + std::to_string(b.qubit_count()) + " qubits x " +
            std::to_string(b.fock_cutoff()) + ")");
    }
}

inline void require_qubit_index(const StateVector &s, int j) {
    if (j < 1 || j > s.qubit_count()) {
        throw ArgumentError(
            "qubit index " + std::to_string(j) + " outside [1, " + std::to_string(s.qubit_count()) + "]");
    }
}

/// Unit-norm basis state |bits>|photon>_c.
inline StateVector make_basis_state(std::span<const int> bits, int photon, int cutoff) {
    if (bits.empty()) {
        throw ArgumentError("basis state needs at least one qubit");
    }
    if (photon < 0 || photon >= cutoff) {
        throw TruncationError(
            "photon number " + std::to_string(photon) + " not below cutoff " + std::to_string(cutoff));
    }
    StateVector zero = StateVector::zero(static_cast<int>(bits.size()), cutoff);
    std::vector<Complex> amps(zero.dimension());
    amps[zero.index_of(BasisLabel{std::vector<int>(bits.begin(), bits.end()), photon})] = 1.0;
    return StateVector(zero.qubit_count(), cutoff, std::move(amps));
}

inline StateVector make_basis_state(std::initializer_list<int> bits, int photon, int cutoff) {
    return make_basis_state(std::span<const int>(bits.begin(), bits.size()), photon, cutoff);
}

/// Bare register ket |bits> (no cavity factor).
inline StateVector make_register_state(std::span<const int> bits) {
    return make_basis_state(bits, 0, 1);
}

inline StateVector make_register_state(std::initializer_list<int> bits) {
    return make_basis_state(bits, 0, 1);
}

struct Term {
    Complex coefficient;
    StateVector state;
};

/// Coefficient-weighted sum of states on a common space. No normalization.
inline StateVector superpose(std::span<const Term> terms) {
    if (terms.empty()) {
        throw ArgumentError("superpose needs at least one term");
    }
    const StateVector &first = terms.front().state;
    std::vector<Complex> out(first.dimension());
    for (const Term &t : terms) {
        require_same_space(first, t.state, "superpose");
        auto amps = t.state.amplitudes();
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += t.coefficient * amps[i];
        }
    }
    return StateVector(first.qubit_count(), first.fock_cutoff(), std::move(out));
}

inline StateVector superpose(std::initializer_list<Term> terms) {
    return superpose(std::span<const Term>(terms.begin(), terms.size()));
}

/// <a|b>, conjugate-linear in `a`.
inline Complex inner(const StateVector &a, const StateVector &b) {
    require_same_space(a, b, "inner");
    Complex total = 0.0;
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += std::conj(x[i]) * y[i];
    }
    return total;
}

/// Euclidean distance ||a - b||.
inline double distance(const StateVector &a, const StateVector &b) {
    require_same_space(a, b, "distance");
    double total = 0.0;
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += std::norm(x[i] - y[i]);
    }
    return std::sqrt(total);
}

/// sigma_z on qubit `j` with the convention sigma_z = |1><1| - |0><0|.
inline StateVector apply_sigma_z(const StateVector &s, int j) {
    require_qubit_index(s, j);
    std::vector<Complex> out(s.amplitudes().begin(), s.amplitudes().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (s.bit(i, j) == 0) {
            out[i] = -out[i];
        }
    }
    return StateVector(s.qubit_count(), s.fock_cutoff(), std::move(out));
}

/// Removes the cavity factor |photon>_c, returning the (unnormalized) register state.
/// Throws FactorizationError when the weight outside that photon sector exceeds tol * ||s||.
inline StateVector factor_out_cavity(const StateVector &s, int photon, double tol = 1e-9) {
    if (photon < 0 || photon >= s.fock_cutoff()) {
        throw TruncationError(
            "photon number " + std::to_string(photon) + " not below cutoff " + std::to_string(s.fock_cutoff()));
    }
    const std::size_t registers = std::size_t{1} << s.qubit_count();
    std::vector<Complex> out(registers);
    double outside = 0.0;
    auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (s.photon(i) == photon) {
            out[i / s.fock_cutoff()] = amps[i];
        } else {
            outside += std::norm(amps[i]);
        }
    }
    double total = s.norm();
    double residual = total > 0.0 ? std::sqrt(outside) / total : std::sqrt(outside);
    if (residual > tol) {
        std::ostringstream msg;
        msg << "cavity not in |" << photon << ">: relative residual " << std::scientific << residual;
        throw FactorizationError(msg.str(), residual);
    }
    return StateVector(s.qubit_count(), 1, std::move(out));
}

/// register (x) sum_n cavity[n] |n>_c.
inline StateVector with_cavity(const StateVector &reg, std::span<const Complex> cavity) {
    if (reg.has_cavity()) {
        throw ArgumentError("with_cavity expects a bare register state");
    }
    if (cavity.empty()) {
        throw ArgumentError("cavity amplitudes must be non-empty");
    }
    const int cutoff = static_cast<int>(cavity.size());
    std::vector<Complex> out(reg.dimension() * cavity.size());
    auto amps = reg.amplitudes();
    for (std::size_t r = 0; r < amps.size(); ++r) {
        for (int n = 0; n < cutoff; ++n) {
            out[r * cutoff + n] = amps[r] * cavity[n];
        }
    }
    return StateVector(reg.qubit_count(), cutoff, std::move(out));
}

/// Photon-number ket |photon>_c attached to a register.
inline StateVector with_photon(const StateVector &reg, int photon, int cutoff) {
    if (photon < 0 || photon >= cutoff) {
        throw TruncationError(
            "photon number " + std::to_string(photon) + " not below cutoff " + std::to_string(cutoff));
    }
    std::vector<Complex> cavity(cutoff);
    cavity[photon] = 1.0;
    return with_cavity(reg, cavity);
}

/// a (x) b for bare registers; qubits of `a` come first.
inline StateVector tensor(const StateVector &a, const StateVector &b) {
    if (a.has_cavity() || b.has_cavity()) {
        throw ArgumentError("tensor expects bare register states");
    }
    const int n = a.qubit_count() + b.qubit_count();
    if (n > kMaxDenseQubits) {
        throw CapacityError("tensor product exceeds dense qubit capacity");
    }
    std::vector<Complex> out(a.dimension() * b.dimension());
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t k = 0; k < y.size(); ++k) {
            out[i * y.size() + k] = x[i] * y[k];
        }
    }
    return StateVector(n, 1, std::move(out));
}

/// Removes qubit `j`, assumed to sit in |bit>. Throws FactorizationError when the weight on the
/// other value exceeds tol * ||s||. The remaining qubits keep their relative order.
inline StateVector project_out_qubit(const StateVector &s, int j, int bit, double tol = 1e-9) {
    require_qubit_index(s, j);
    if (bit != 0 && bit != 1) {
        throw ArgumentError("qubit value must be 0 or 1");
    }
    const int n = s.qubit_count();
    const int cutoff = s.fock_cutoff();
    std::vector<Complex> out((std::size_t{1} << (n - 1)) * cutoff);
    double outside = 0.0;
    auto amps = s.amplitudes();
    const int shift = n - j;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (s.bit(i, j) != bit) {
            outside += std::norm(amps[i]);
            continue;
        }
        std::size_t reg = i / cutoff;
        std::size_t high = reg >> (shift + 1);
        std::size_t low = reg & ((std::size_t{1} << shift) - 1);
        std::size_t reduced = (high << shift) | low;
        out[reduced * cutoff + s.photon(i)] = amps[i];
    }
    double total = s.norm();
    double residual = total > 0.0 ? std::sqrt(outside) / total : std::sqrt(outside);
    if (residual > tol) {
        std::ostringstream msg;
        msg << "qubit " << j << " not in |" << bit << ">: relative residual " << std::scientific << residual;
        throw FactorizationError(msg.str(), residual);
    }
    return StateVector(n - 1, cutoff, std::move(out));
}

/// Text dump: one line `<bitstring> <photon> <re> <im>` per nonzero amplitude, in basis order,
/// with 17 significant digits.
inline void write_state_dump(std::ostream &out, const StateVector &s) {
    std::ostringstream line;
    line << std::scientific << std::setprecision(16);
    auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (amps[i] == Complex(0.0, 0.0)) {
            continue;
        }
        line.str("");
        for (int j = 1; j <= s.qubit_count(); ++j) {
            line << s.bit(i, j);
        }
        line << ' ' << s.photon(i) << ' ' << amps[i].real() << ' ' << amps[i].imag() << '\n';
        out << line.str();
    }
}

/// Parses the text dump back into a state on a cavity of the given cutoff.
inline StateVector read_state_dump(std::istream &in, int fock_cutoff) {
    std::string bits;
    int photon = 0;
    double re = 0.0;
    double im = 0.0;
    std::vector<std::pair<BasisLabel, Complex>> entries;
    int qubits = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        if (!(fields >> bits >> photon >> re >> im)) {
            throw ArgumentError("malformed state dump line: " + line);
        }
        if (qubits < 0) {
            qubits = static_cast<int>(bits.size());
        } else if (qubits != static_cast<int>(bits.size())) {
            throw ArgumentError("inconsistent bitstring lengths in state dump");
        }
        BasisLabel label;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw ArgumentError("bitstring must contain only 0 and 1: " + bits);
            }
            label.qubit_bits.push_back(c - '0');
        }
        label.photon_number = photon;
        entries.emplace_back(std::move(label), Complex(re, im));
    }
    if (qubits < 0) {
        throw ArgumentError("empty state dump");
    }
    StateVector blank = StateVector::zero(qubits, fock_cutoff);
    std::vector<Complex> amps(blank.dimension());
    for (const auto &[label, value] : entries) {
        amps[blank.index_of(label)] = value;
    }
    return StateVector(qubits, fock_cutoff, std::move(amps));
}

}  // namespace cavent
