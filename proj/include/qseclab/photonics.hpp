#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qseclab/rng.hpp"

namespace qseclab::photonics {

/// Conjugate polarization bases: rectilinear "+" and diagonal "x".
enum class Basis : std::uint8_t { Rectilinear, Diagonal };

inline char basis_symbol(Basis b) { return b == Basis::Rectilinear ? '+' : 'x'; }

struct PhotonReused : std::runtime_error {
    PhotonReused() : std::runtime_error("photon already consumed by a channel") {}
};

/// One bit encoded in one polarization basis. Move-only: a quantum state
/// cannot be copied, and a photon that went through a channel cannot be sent
/// again (the channel marks it consumed).
class PolarizedPhoton {
public:
    PolarizedPhoton(int bit, Basis basis) : bit_(bit & 1), basis_(basis) {}

    PolarizedPhoton(const PolarizedPhoton&) = delete;
    PolarizedPhoton& operator=(const PolarizedPhoton&) = delete;
    PolarizedPhoton(PolarizedPhoton&&) = default;
    PolarizedPhoton& operator=(PolarizedPhoton&&) = default;

    int bit() const { return bit_; }
    Basis basis() const { return basis_; }
    bool consumed() const { return consumed_; }

private:
    friend int measure_photon(PolarizedPhoton&, Basis, Rng&);
    friend class QuantumChannel;

    int bit_;
    Basis basis_;
    bool consumed_ = false;
};

PolarizedPhoton prepare_photon(int bit, Basis basis);

/// Matched basis returns the encoded bit; a mismatched basis returns a fair
/// coin and collapses the photon onto (result, measuring basis). The prior
/// state is gone either way.
int measure_photon(PolarizedPhoton& photon, Basis basis, Rng& rng);

struct InterceptLogEntry {
    std::size_t photon_index;
    int measured_bit;
    Basis basis_used;
};

/// Intercept-resend adversary: measures in a uniformly random basis and
/// re-sends a photon prepared from the measurement.
class Eavesdropper {
public:
    Eavesdropper(double interception_probability, std::uint64_t rng_stream_seed);

    double interception_probability() const { return probability_; }
    void set_interception_probability(double p);
    const std::vector<InterceptLogEntry>& log() const { return log_; }
    Rng& rng() { return rng_; }

private:
    friend class QuantumChannel;

    double probability_;
    Rng rng_;
    std::vector<InterceptLogEntry> log_;
};

class QuantumChannel {
public:
    explicit QuantumChannel(double noise_flip_probability = 0.0);

    double noise_flip_probability() const { return noise_; }
    void attach_eavesdropper(Eavesdropper eve);
    void detach_eavesdropper();
    Eavesdropper* eavesdropper() { return eve_ ? &*eve_ : nullptr; }
    const Eavesdropper* eavesdropper() const { return eve_ ? &*eve_ : nullptr; }
    std::size_t transmit_count() const { return transmit_count_; }

    /// Sends one photon; the input is consumed and a fresh photon comes out
    /// the far end. With an attached eavesdropper the in-flight state may be
    /// measured and re-prepared; channel noise then flips the bit with the
    /// configured probability. `noise_rng` drives only the channel noise.
    PolarizedPhoton transmit(PolarizedPhoton& photon, Rng& noise_rng);

private:
    double noise_;
    std::optional<Eavesdropper> eve_;
    std::size_t transmit_count_ = 0;
};

inline PolarizedPhoton transmit(QuantumChannel& channel, PolarizedPhoton& photon,
                                Rng& noise_rng) {
    return channel.transmit(photon, noise_rng);
}

}  // namespace qseclab::photonics
