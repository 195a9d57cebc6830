#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseclab/photonics.hpp"
#include "qseclab/rng.hpp"

namespace qseclab::bb84 {

inline constexpr double kDefaultQberThreshold = 0.11;
inline constexpr double kDefaultSampleFraction = 0.5;

struct Bb84Config {
    int num_photons = 1024;
    double sample_fraction = kDefaultSampleFraction;
    double qber_threshold = kDefaultQberThreshold;
    int min_key_bits = 128;
    /// When set, exactly this many sifted positions are disclosed instead of
    /// floor(sample_fraction * sifted); used by detection-law sweeps.
    std::optional<int> sample_size_override;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

enum class AbortReason { QberExceeded, InsufficientKey };

struct Verdict {
    bool accepted = false;
    AbortReason abort_reason = AbortReason::QberExceeded;
    std::vector<std::uint8_t> key_bits;  // Alice's values, empty on abort
};

struct Bb84Transcript {
    std::vector<std::uint8_t> alice_bits;
    std::vector<photonics::Basis> alice_bases;
    std::vector<photonics::Basis> bob_bases;
    std::vector<std::uint8_t> bob_bits;
    std::vector<std::size_t> sifted_indices;
    std::vector<std::size_t> sample_indices;  // subset of sifted, disclosed
    double qber = 0.0;
    Verdict verdict;

    /// Positions that feed the key: sifted minus sample, ascending.
    std::vector<std::size_t> key_indices() const;
    /// Bob's bits at the key positions (equals the key on clean channels;
    /// residual mismatch on noisy accepted runs is surfaced, not hidden).
    std::vector<std::uint8_t> bob_key_bits() const;
};

/// Positions where both parties used the same basis. Throws on length
/// mismatch.
std::vector<std::size_t> sift(const std::vector<photonics::Basis>& alice_bases,
                              const std::vector<photonics::Basis>& bob_bases);

/// Fraction of sampled positions where the bits differ. Throws on an empty
/// sample or out-of-range index.
double estimate_qber(const std::vector<std::uint8_t>& alice_bits,
                     const std::vector<std::uint8_t>& bob_bits,
                     const std::vector<std::size_t>& sample_indices);

/// 1 - (3/4)^k: chance at least one of k sampled bits exposes a full
/// intercept-resend attack.
double detection_probability(int sample_size);

/// Full protocol run: random bits and bases from rng_alice, measurement bases
/// from rng_bob, photons through `channel` (whose noise draws come from the
/// channel-owned stream passed by the caller via rng_channel).
Bb84Transcript run_bb84(const Bb84Config& config, photonics::QuantumChannel& channel,
                        Rng& rng_alice, Rng& rng_bob, Rng& rng_channel);

/// Same exchange with the sender's bits/bases fixed by the caller. The QKD
/// center uses this to stream one batch down several legs.
Bb84Transcript run_bb84_with_sender_stream(
    const Bb84Config& config, photonics::QuantumChannel& channel,
    const std::vector<std::uint8_t>& sender_bits,
    const std::vector<photonics::Basis>& sender_bases, Rng& rng_sender,
    Rng& rng_receiver, Rng& rng_channel);

const char* abort_reason_name(AbortReason reason);

}  // namespace qseclab::bb84
