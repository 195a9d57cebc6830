#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qseclab/rng.hpp"

namespace qseclab::qsim {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 20;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kRoundTripTolerance = 1e-10;

struct MeasurementOutcome {
    std::size_t basis_index = 0;
    double probability = 0.0;  // |amplitude|^2 before collapse
};

/// Dense state vector over n qubits. Qubit 0 is the least-significant bit of
/// the basis index; the convention is fixed here and used everywhere.
class StateVector {
public:
    /// Starts in |0...0>.
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amps_.size(); }
    Complex amplitude(std::size_t index) const { return amps_.at(index); }
    std::span<const Complex> amplitudes() const { return amps_; }

    double norm_squared() const;
    double probability_of(std::size_t index) const;

    void apply_hadamard(int target);
    void apply_controlled_phase(int control, int target, double angle);

    /// Relabels basis states: amplitude at perm[i] becomes the old amplitude
    /// at i. perm must be a bijection over [0, 2^n); verified before use.
    void apply_permutation(std::span<const std::size_t> perm);

    /// Flips the sign of one basis amplitude (Grover oracle primitive).
    void apply_phase_flip(std::size_t index);

    /// Inversion about the mean amplitude (Grover diffusion).
    void invert_about_mean();

    /// Fourier transform over qubits [first, first+count): the sub-register
    /// value j maps to (1/sqrt(M)) * sum_k e^{2 pi i jk/M} |k>, M = 2^count,
    /// with qubit `first` the LSB of j. Other qubits are untouched.
    void qft(int first, int count);
    void inverse_qft(int first, int count);

    /// Samples a basis index with probability |amplitude|^2 and collapses the
    /// state onto it. Throws if the state is degenerate (norm far from 1).
    MeasurementOutcome measure_all(Rng& rng);

private:
    void check_qubit(int q, const char* what) const;
    void apply_swap(int a, int b);

    int num_qubits_;
    std::vector<Complex> amps_;
};

/// |0...0> over num_qubits qubits; num_qubits must be in [1, 20].
StateVector init_state(int num_qubits);

}  // namespace qseclab::qsim
