#include "qseclab/photonics.hpp"

namespace qseclab::photonics {

PolarizedPhoton prepare_photon(int bit, Basis basis) {
    return PolarizedPhoton(bit, basis);
}

int measure_photon(PolarizedPhoton& photon, Basis basis, Rng& rng) {
    if (photon.basis_ == basis) return photon.bit_;
    const int result = rng.bit();
    photon.bit_ = result;
    photon.basis_ = basis;
    return result;
}

Eavesdropper::Eavesdropper(double interception_probability, std::uint64_t rng_stream_seed)
    : probability_(interception_probability), rng_(rng_stream_seed) {
    if (probability_ < 0.0 || probability_ > 1.0) {
        throw std::invalid_argument("interception probability outside [0, 1]");
    }
}

void Eavesdropper::set_interception_probability(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("interception probability outside [0, 1]");
    }
    probability_ = p;
}

QuantumChannel::QuantumChannel(double noise_flip_probability)
    : noise_(noise_flip_probability) {
    if (noise_ < 0.0 || noise_ > 1.0) {
        throw std::invalid_argument("noise flip probability outside [0, 1]");
    }
}

void QuantumChannel::attach_eavesdropper(Eavesdropper eve) { eve_ = std::move(eve); }

void QuantumChannel::detach_eavesdropper() { eve_.reset(); }

PolarizedPhoton QuantumChannel::transmit(PolarizedPhoton& photon, Rng& noise_rng) {
    if (photon.consumed_) throw PhotonReused();
    photon.consumed_ = true;
    const std::size_t index = transmit_count_++;

    int bit = photon.bit_;
    Basis basis = photon.basis_;
    if (eve_ && eve_->rng_.bernoulli(eve_->probability_)) {
        const Basis eve_basis =
            eve_->rng_.bit() ? Basis::Diagonal : Basis::Rectilinear;
        // The no-cloning rule: Eve's measurement rewrites the in-flight state;
        // the original (bit, basis) survives nowhere but the sender's record.
        const int eve_bit = measure_photon(photon, eve_basis, eve_->rng_);
        eve_->log_.push_back({index, eve_bit, eve_basis});
        bit = eve_bit;
        basis = eve_basis;
    }
    if (noise_ > 0.0 && noise_rng.bernoulli(noise_)) bit ^= 1;
    return PolarizedPhoton(bit, basis);
}

}  // namespace qseclab::photonics
