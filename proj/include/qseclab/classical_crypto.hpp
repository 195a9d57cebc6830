#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qseclab/bytes.hpp"
#include "qseclab/rng.hpp"

namespace qseclab::crypto {

struct CryptoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Envelope and key disagree on scheme or key id.
struct WrongKeyError : CryptoError {
    using CryptoError::CryptoError;
};
/// Integrity or signature check failed (tampering or forged key material).
struct TagMismatchError : CryptoError {
    using CryptoError::CryptoError;
};
/// Bytes do not parse as an envelope.
struct MalformedEnvelopeError : CryptoError {
    using CryptoError::CryptoError;
};

// ---------------------------------------------------------------------------
// Textbook RSA (toy scale: primes up to 32 bits, 128-bit intermediates).

struct RsaKeyPair {
    std::uint64_t modulus = 0;           // N = p*q
    std::uint64_t public_exponent = 0;   // e
    std::uint64_t private_exponent = 0;  // d
    std::uint64_t p = 0;                 // retained for testing only
    std::uint64_t q = 0;
};

/// Builds a keypair from two distinct primes (trial-division checked, each
/// <= 2^32) and a public exponent coprime to (p-1)(q-1).
RsaKeyPair rsa_keygen(std::uint64_t p, std::uint64_t q, std::uint64_t e);

/// c = m^e mod N; requires m < N.
std::uint64_t rsa_encrypt(std::uint64_t m, const RsaKeyPair& key);
std::uint64_t rsa_decrypt(std::uint64_t c, const RsaKeyPair& key);

// ---------------------------------------------------------------------------
// Symmetric keys and the toy stream cipher standing in for AES/DES.

enum class KeyOrigin { FromQkd, Static };

struct SymmetricKey {
    std::array<std::uint8_t, 16> bytes{};
    KeyOrigin origin = KeyOrigin::Static;

    bool operator==(const SymmetricKey& other) const { return bytes == other.bytes; }
};

/// Packs the first 128 bits (big-endian within each byte) into a 16-byte key.
/// Throws when fewer than 128 bits are supplied.
SymmetricKey derive_symmetric_key(std::span<const std::uint8_t> bits,
                                  KeyOrigin origin = KeyOrigin::FromQkd);

/// Kerberos-style password-to-key: password bytes cycled to 16 bytes, then
/// run through the same bit-packing derivation.
SymmetricKey password_key(std::string_view password);

using Nonce = std::array<std::uint8_t, 8>;

Nonce nonce_from(Rng& rng);

struct SymCiphertext {
    Bytes bytes;                      // same length as the plaintext
    std::array<std::uint8_t, 8> tag;  // keyed checksum over nonce || bytes
};

SymCiphertext sym_encrypt(const SymmetricKey& key, std::span<const std::uint8_t> plaintext,
                          const Nonce& nonce);
/// Throws TagMismatchError when the tag does not verify.
Bytes sym_decrypt(const SymmetricKey& key, const SymCiphertext& ciphertext,
                  const Nonce& nonce);

// ---------------------------------------------------------------------------
// Envelopes: the E_PU / E_PR / E_SK / E_PASSWORD notation as a wire object.

enum class EnvelopeScheme : std::uint8_t {
    PublicKey = 1,   // sealed to a public key, opened by the private key
    PrivateKey = 2,  // signing direction: sealed by d, opened by anyone with (N, e)
    Symmetric = 3,
    Password = 4,
};

struct PublicKeyHandle {
    std::string key_id;
    std::uint64_t modulus = 0;
    std::uint64_t exponent = 0;  // e
};

struct PrivateKeyHandle {
    std::string key_id;
    std::uint64_t modulus = 0;
    std::uint64_t exponent = 0;         // d
    std::uint64_t public_exponent = 0;  // e, carried like a real private key
};

struct SymmetricKeyHandle {
    std::string key_id;
    SymmetricKey key;
};

struct PasswordKeyHandle {
    std::string principal_id;
    SymmetricKey key;
};

using KeyHandle = std::variant<PublicKeyHandle, PrivateKeyHandle, SymmetricKeyHandle,
                               PasswordKeyHandle>;

PublicKeyHandle public_handle(std::string key_id, const RsaKeyPair& pair);
PrivateKeyHandle private_handle(std::string key_id, const RsaKeyPair& pair);

struct Envelope {
    EnvelopeScheme scheme = EnvelopeScheme::Symmetric;
    std::string key_id;
    Nonce nonce{};
    Bytes ciphertext;
    std::array<std::uint8_t, 8> tag{};

    /// Wire layout (bit-exact, see README): scheme byte, u32-BE key id
    /// length + bytes, 8-byte nonce, u32-BE ciphertext length + bytes,
    /// 8-byte tag.
    Bytes serialize() const;
    static Envelope deserialize(std::span<const std::uint8_t> wire);
};

/// Seals payload under the key. PublicKey and PrivateKey handles produce the
/// E_PU / E_PR directions; the asymmetric seed block travels inside the
/// ciphertext field and is transformed with real modular exponentiation, so
/// only the matching half of the pair can open (or verify) it.
Envelope seal(const KeyHandle& key, std::span<const std::uint8_t> payload,
              const Nonce& nonce);

/// Opens an envelope. Throws WrongKeyError on scheme or id mismatch,
/// TagMismatchError when integrity fails, MalformedEnvelopeError on parse
/// problems.
Bytes open(const Envelope& envelope, const KeyHandle& key);

const char* scheme_name(EnvelopeScheme scheme);

}  // namespace qseclab::crypto
