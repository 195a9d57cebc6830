#include "qseclab/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace qseclab::qsim {

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
}

void StateVector::check_qubit(int q, const char* what) const {
    if (q < 0 || q >= num_qubits_) {
        throw std::out_of_range(std::string(what) + " qubit " + std::to_string(q) +
                                " out of range for n=" + std::to_string(num_qubits_));
    }
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const Complex& a : amps_) total += std::norm(a);
    return total;
}

double StateVector::probability_of(std::size_t index) const {
    return std::norm(amps_.at(index));
}

void StateVector::apply_hadamard(int target) {
    check_qubit(target, "hadamard target");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::size_t half = std::size_t{1} << target;
    const std::size_t stride = half << 1;
    for (std::size_t base = 0; base < amps_.size(); base += stride) {
        for (std::size_t i = 0; i < half; ++i) {
            const std::size_t i0 = base + i;
            const std::size_t i1 = i0 + half;
            const Complex a = amps_[i0];
            const Complex b = amps_[i1];
            amps_[i0] = (a + b) * inv_sqrt2;
            amps_[i1] = (a - b) * inv_sqrt2;
        }
    }
}

void StateVector::apply_controlled_phase(int control, int target, double angle) {
    check_qubit(control, "controlled-phase control");
    check_qubit(target, "controlled-phase target");
    if (control == target) {
        throw std::invalid_argument("controlled-phase control and target coincide");
    }
    const Complex phase = std::polar(1.0, angle);
    const std::size_t mask =
        (std::size_t{1} << control) | (std::size_t{1} << target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) amps_[i] *= phase;
    }
}

void StateVector::apply_permutation(std::span<const std::size_t> perm) {
    if (perm.size() != amps_.size()) {
        throw std::invalid_argument("permutation has " + std::to_string(perm.size()) +
                                    " entries, state has " + std::to_string(amps_.size()));
    }
    std::vector<bool> seen(amps_.size(), false);
    for (std::size_t v : perm) {
        if (v >= amps_.size() || seen[v]) {
            throw std::invalid_argument("permutation is not a bijection on basis indices");
        }
        seen[v] = true;
    }
    std::vector<Complex> out(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) out[perm[i]] = amps_[i];
    amps_ = std::move(out);
}

void StateVector::apply_phase_flip(std::size_t index) {
    amps_.at(index) = -amps_.at(index);
}

void StateVector::invert_about_mean() {
    Complex mean{0.0, 0.0};
    for (const Complex& a : amps_) mean += a;
    mean /= static_cast<double>(amps_.size());
    for (Complex& a : amps_) a = 2.0 * mean - a;
}

void StateVector::apply_swap(int a, int b) {
    const std::size_t ma = std::size_t{1} << a;
    const std::size_t mb = std::size_t{1} << b;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const bool ba = (i & ma) != 0;
        const bool bb = (i & mb) != 0;
        if (ba && !bb) std::swap(amps_[i], amps_[(i ^ ma) | mb]);
    }
}

void StateVector::qft(int first, int count) {
    if (count < 1) throw std::invalid_argument("qft range is empty");
    check_qubit(first, "qft range start");
    check_qubit(first + count - 1, "qft range end");
    // Hadamard/controlled-phase ladder, MSB of the range first, then the
    // bit-reversal swaps that put the transform in natural index order.
    for (int i = count - 1; i >= 0; --i) {
        apply_hadamard(first + i);
        for (int k = i - 1; k >= 0; --k) {
            apply_controlled_phase(first + k, first + i,
                                   std::numbers::pi / double(std::size_t{1} << (i - k)));
        }
    }
    for (int i = 0; i < count / 2; ++i) apply_swap(first + i, first + count - 1 - i);
}

void StateVector::inverse_qft(int first, int count) {
    if (count < 1) throw std::invalid_argument("inverse qft range is empty");
    check_qubit(first, "inverse qft range start");
    check_qubit(first + count - 1, "inverse qft range end");
    for (int i = 0; i < count / 2; ++i) apply_swap(first + i, first + count - 1 - i);
    for (int i = 0; i < count; ++i) {
        for (int k = 0; k < i; ++k) {
            apply_controlled_phase(first + k, first + i,
                                   -std::numbers::pi / double(std::size_t{1} << (i - k)));
        }
        apply_hadamard(first + i);
    }
}

MeasurementOutcome StateVector::measure_all(Rng& rng) {
    const double total = norm_squared();
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::runtime_error("state norm " + std::to_string(total) +
                                 " is degenerate; internal normalization failure");
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t picked = amps_.size() - 1;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::norm(amps_[i]);
        if (u < acc) {
            picked = i;
            break;
        }
    }
    MeasurementOutcome out{picked, std::norm(amps_[picked])};
    std::fill(amps_.begin(), amps_.end(), Complex{0.0, 0.0});
    amps_[picked] = Complex{1.0, 0.0};
    return out;
}

StateVector init_state(int num_qubits) { return StateVector(num_qubits); }

}  // namespace qseclab::qsim
