#include "qseclab/bb84.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qseclab::bb84 {

using photonics::Basis;

void Bb84Config::validate() const {
    if (num_photons < 16) {
        throw std::invalid_argument("bb84.num_photons must be >= 16");
    }
    if (!(sample_fraction > 0.0 && sample_fraction < 1.0)) {
        throw std::invalid_argument("bb84.sample_fraction must be in (0, 1)");
    }
    if (!(qber_threshold >= 0.0 && qber_threshold < 1.0)) {
        throw std::invalid_argument("bb84.qber_threshold must be in [0, 1)");
    }
    if (min_key_bits < 0) {
        throw std::invalid_argument("bb84.min_key_bits must be >= 0");
    }
    if (sample_size_override && *sample_size_override < 1) {
        throw std::invalid_argument("bb84.sample_size_override must be >= 1");
    }
    // Expected sifted count is n/2; the sample must leave room for the key.
    const double expected_residual =
        num_photons / 2.0 *
        (sample_size_override ? 1.0 : (1.0 - sample_fraction));
    const double reserved = sample_size_override ? *sample_size_override : 0.0;
    if (expected_residual - reserved < min_key_bits) {
        throw std::invalid_argument(
            "bb84.num_photons too small: expected residual after sampling is "
            "below min_key_bits");
    }
}

std::vector<std::size_t> Bb84Transcript::key_indices() const {
    std::vector<std::size_t> keys;
    keys.reserve(sifted_indices.size());
    std::set_difference(sifted_indices.begin(), sifted_indices.end(),
                        sample_indices.begin(), sample_indices.end(),
                        std::back_inserter(keys));
    return keys;
}

std::vector<std::uint8_t> Bb84Transcript::bob_key_bits() const {
    std::vector<std::uint8_t> bits;
    for (std::size_t i : key_indices()) bits.push_back(bob_bits[i]);
    return bits;
}

std::vector<std::size_t> sift(const std::vector<Basis>& alice_bases,
                              const std::vector<Basis>& bob_bases) {
    if (alice_bases.size() != bob_bases.size()) {
        throw std::invalid_argument("basis sequences differ in length");
    }
    std::vector<std::size_t> matched;
    for (std::size_t i = 0; i < alice_bases.size(); ++i) {
        if (alice_bases[i] == bob_bases[i]) matched.push_back(i);
    }
    return matched;
}

double estimate_qber(const std::vector<std::uint8_t>& alice_bits,
                     const std::vector<std::uint8_t>& bob_bits,
                     const std::vector<std::size_t>& sample_indices) {
    if (sample_indices.empty()) {
        throw std::invalid_argument("QBER sample is empty");
    }
    std::size_t mismatches = 0;
    for (std::size_t i : sample_indices) {
        if (i >= alice_bits.size() || i >= bob_bits.size()) {
            throw std::out_of_range("sample index outside the bit sequences");
        }
        if (alice_bits[i] != bob_bits[i]) ++mismatches;
    }
    return static_cast<double>(mismatches) / static_cast<double>(sample_indices.size());
}

double detection_probability(int sample_size) {
    if (sample_size < 0) throw std::invalid_argument("sample size is negative");
    return 1.0 - std::pow(0.75, sample_size);
}

Bb84Transcript run_bb84_with_sender_stream(
    const Bb84Config& config, photonics::QuantumChannel& channel,
    const std::vector<std::uint8_t>& sender_bits,
    const std::vector<Basis>& sender_bases, Rng& rng_sender, Rng& rng_receiver,
    Rng& rng_channel) {
    config.validate();
    if (sender_bits.size() != static_cast<std::size_t>(config.num_photons) ||
        sender_bases.size() != sender_bits.size()) {
        throw std::invalid_argument("sender stream length does not match num_photons");
    }

    Bb84Transcript t;
    t.alice_bits = sender_bits;
    t.alice_bases = sender_bases;
    t.bob_bases.reserve(sender_bits.size());
    t.bob_bits.reserve(sender_bits.size());

    for (std::size_t i = 0; i < sender_bits.size(); ++i) {
        auto photon = photonics::prepare_photon(sender_bits[i], sender_bases[i]);
        auto received = channel.transmit(photon, rng_channel);
        const Basis bob_basis = rng_receiver.bit() ? Basis::Diagonal : Basis::Rectilinear;
        t.bob_bases.push_back(bob_basis);
        t.bob_bits.push_back(
            static_cast<std::uint8_t>(photonics::measure_photon(received, bob_basis, rng_receiver)));
    }

    t.sifted_indices = sift(t.alice_bases, t.bob_bases);

    // Disclosed sample: a random subset of the sifted positions, chosen by the
    // sender (partial Fisher-Yates, then sorted for a canonical transcript).
    std::size_t sample_count =
        config.sample_size_override
            ? static_cast<std::size_t>(*config.sample_size_override)
            : static_cast<std::size_t>(config.sample_fraction *
                                       static_cast<double>(t.sifted_indices.size()));
    sample_count = std::min(sample_count, t.sifted_indices.size());

    std::vector<std::size_t> pool = t.sifted_indices;
    for (std::size_t i = 0; i < sample_count; ++i) {
        const std::size_t j = i + rng_sender.uniform_below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    t.sample_indices.assign(pool.begin(), pool.begin() + sample_count);
    std::sort(t.sample_indices.begin(), t.sample_indices.end());

    const std::size_t key_count = t.sifted_indices.size() - sample_count;
    if (sample_count == 0 || key_count < static_cast<std::size_t>(config.min_key_bits)) {
        t.verdict.accepted = false;
        t.verdict.abort_reason = AbortReason::InsufficientKey;
        t.qber = 0.0;
        return t;
    }

    t.qber = estimate_qber(t.alice_bits, t.bob_bits, t.sample_indices);
    if (t.qber > config.qber_threshold) {
        t.verdict.accepted = false;
        t.verdict.abort_reason = AbortReason::QberExceeded;
        return t;
    }

    t.verdict.accepted = true;
    for (std::size_t i : t.key_indices()) t.verdict.key_bits.push_back(t.alice_bits[i]);
    return t;
}

Bb84Transcript run_bb84(const Bb84Config& config, photonics::QuantumChannel& channel,
                        Rng& rng_alice, Rng& rng_bob, Rng& rng_channel) {
    config.validate();
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(config.num_photons));
    std::vector<Basis> bases(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        bits[i] = static_cast<std::uint8_t>(rng_alice.bit());
        bases[i] = rng_alice.bit() ? Basis::Diagonal : Basis::Rectilinear;
    }
    return run_bb84_with_sender_stream(config, channel, bits, bases, rng_alice,
                                       rng_bob, rng_channel);
}

const char* abort_reason_name(AbortReason reason) {
    switch (reason) {
        case AbortReason::QberExceeded: return "QberExceeded";
        case AbortReason::InsufficientKey: return "InsufficientKey";
    }
    return "Unknown";
}

}  // namespace qseclab::bb84
