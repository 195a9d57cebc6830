#include "qseclab/classical_crypto.hpp"

#include <algorithm>

#include "qseclab/numeric.hpp"

namespace qseclab::crypto {

namespace {

std::uint64_t fnv_accum(std::uint64_t h, std::span<const std::uint8_t> bytes) {
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

/// Deterministic byte stream: successive splitmix64 outputs of the secret,
/// little-endian within each 8-byte block.
Bytes keystream(std::uint64_t secret, std::size_t length) {
    Bytes out;
    out.reserve(length);
    std::uint64_t state = secret;
    while (out.size() < length) {
        state = splitmix64(state);
        for (int i = 0; i < 8 && out.size() < length; ++i) {
            out.push_back(static_cast<std::uint8_t>(state >> (8 * i)));
        }
    }
    return out;
}

std::uint64_t mac64(std::uint64_t secret, const Nonce& nonce,
                    std::span<const std::uint8_t> data) {
    std::uint64_t h = fnv_accum(kFnvOffset, nonce);
    h = fnv_accum(h, data);
    return splitmix64(h ^ secret);
}

std::uint64_t key_secret(const SymmetricKey& key) {
    return fnv1a64(std::span<const std::uint8_t>(key.bytes));
}

/// Hashes bytes into a residue in [2, N): avoids the RSA fixed points 0, 1.
std::uint64_t residue_from(std::uint64_t h, std::uint64_t modulus) {
    return 2 + h % (modulus - 2);
}

Bytes xor_with_stream(std::span<const std::uint8_t> data, std::uint64_t secret) {
    Bytes stream = keystream(secret, data.size());
    Bytes out(data.begin(), data.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= stream[i];
    return out;
}

}  // namespace

RsaKeyPair rsa_keygen(std::uint64_t p, std::uint64_t q, std::uint64_t e) {
    constexpr std::uint64_t kPrimeCap = std::uint64_t{1} << 32;
    if (p > kPrimeCap || q > kPrimeCap) {
        throw std::invalid_argument("rsa primes are capped at 32 bits");
    }
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (!is_prime(q)) throw std::invalid_argument("q is not prime");
    if (p == q) throw std::invalid_argument("p and q must differ");
    const std::uint64_t phi = (p - 1) * (q - 1);
    if (e < 2 || gcd_u64(e, phi) != 1) {
        throw std::invalid_argument("e must be coprime to (p-1)(q-1)");
    }
    const auto d = mod_inverse(e, phi);
    RsaKeyPair pair;
    pair.modulus = p * q;
    pair.public_exponent = e;
    pair.private_exponent = *d;
    pair.p = p;
    pair.q = q;
    return pair;
}

std::uint64_t rsa_encrypt(std::uint64_t m, const RsaKeyPair& key) {
    if (m >= key.modulus) {
        throw std::invalid_argument("message must be a positive integer below N");
    }
    return mod_pow(m, key.public_exponent, key.modulus);
}

std::uint64_t rsa_decrypt(std::uint64_t c, const RsaKeyPair& key) {
    if (c >= key.modulus) {
        throw std::invalid_argument("ciphertext must be below N");
    }
    return mod_pow(c, key.private_exponent, key.modulus);
}

SymmetricKey derive_symmetric_key(std::span<const std::uint8_t> bits, KeyOrigin origin) {
    if (bits.size() < 128) {
        throw std::invalid_argument("key derivation needs at least 128 bits, got " +
                                    std::to_string(bits.size()));
    }
    SymmetricKey key;
    key.origin = origin;
    for (std::size_t i = 0; i < 128; ++i) {
        if (bits[i] & 1) key.bytes[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
    }
    return key;
}

SymmetricKey password_key(std::string_view password) {
    if (password.empty()) throw std::invalid_argument("password is empty");
    Bytes filled(16);
    for (std::size_t i = 0; i < filled.size(); ++i) {
        filled[i] = static_cast<std::uint8_t>(password[i % password.size()]);
    }
    return derive_symmetric_key(bytes_to_bits(filled), KeyOrigin::Static);
}

Nonce nonce_from(Rng& rng) {
    return u64_to_be(rng.next_u64());
}

SymCiphertext sym_encrypt(const SymmetricKey& key, std::span<const std::uint8_t> plaintext,
                          const Nonce& nonce) {
    const std::uint64_t secret = key_secret(key) ^ fnv1a64(std::span<const std::uint8_t>(nonce));
    SymCiphertext out;
    out.bytes = xor_with_stream(plaintext, secret);
    out.tag = u64_to_be(mac64(secret, nonce, out.bytes));
    return out;
}

Bytes sym_decrypt(const SymmetricKey& key, const SymCiphertext& ciphertext,
                  const Nonce& nonce) {
    const std::uint64_t secret = key_secret(key) ^ fnv1a64(std::span<const std::uint8_t>(nonce));
    if (u64_to_be(mac64(secret, nonce, ciphertext.bytes)) != ciphertext.tag) {
        throw TagMismatchError("symmetric ciphertext tag does not verify");
    }
    return xor_with_stream(ciphertext.bytes, secret);
}

PublicKeyHandle public_handle(std::string key_id, const RsaKeyPair& pair) {
    return {std::move(key_id), pair.modulus, pair.public_exponent};
}

PrivateKeyHandle private_handle(std::string key_id, const RsaKeyPair& pair) {
    return {std::move(key_id), pair.modulus, pair.private_exponent, pair.public_exponent};
}

Bytes Envelope::serialize() const {
    Bytes wire;
    wire.push_back(static_cast<std::uint8_t>(scheme));
    append_u32_be(wire, static_cast<std::uint32_t>(key_id.size()));
    wire.insert(wire.end(), key_id.begin(), key_id.end());
    wire.insert(wire.end(), nonce.begin(), nonce.end());
    append_u32_be(wire, static_cast<std::uint32_t>(ciphertext.size()));
    wire.insert(wire.end(), ciphertext.begin(), ciphertext.end());
    wire.insert(wire.end(), tag.begin(), tag.end());
    return wire;
}

Envelope Envelope::deserialize(std::span<const std::uint8_t> wire) {
    std::size_t pos = 0;
    auto take = [&](std::size_t count) -> std::span<const std::uint8_t> {
        if (pos + count > wire.size()) {
            throw MalformedEnvelopeError("truncated envelope");
        }
        auto part = wire.subspan(pos, count);
        pos += count;
        return part;
    };

    Envelope env;
    const std::uint8_t scheme_tag = take(1)[0];
    if (scheme_tag < 1 || scheme_tag > 4) {
        throw MalformedEnvelopeError("unknown envelope scheme tag " +
                                     std::to_string(scheme_tag));
    }
    env.scheme = static_cast<EnvelopeScheme>(scheme_tag);
    const auto id_len = static_cast<std::size_t>(be_to_u64(take(4)));
    const auto id_bytes = take(id_len);
    env.key_id.assign(id_bytes.begin(), id_bytes.end());
    const auto nonce_bytes = take(8);
    std::copy(nonce_bytes.begin(), nonce_bytes.end(), env.nonce.begin());
    const auto ct_len = static_cast<std::size_t>(be_to_u64(take(4)));
    const auto ct = take(ct_len);
    env.ciphertext.assign(ct.begin(), ct.end());
    const auto tag_bytes = take(8);
    std::copy(tag_bytes.begin(), tag_bytes.end(), env.tag.begin());
    if (pos != wire.size()) {
        throw MalformedEnvelopeError("trailing bytes after envelope");
    }
    return env;
}

namespace {

/// Asymmetric envelopes carry an 8-byte seed block (big-endian residue mod N)
/// at the front of the ciphertext field; the body follows XOR-streamed.
constexpr std::size_t kSeedBlock = 8;

Envelope seal_asymmetric(EnvelopeScheme scheme, std::string key_id,
                         std::uint64_t modulus, std::uint64_t seal_exponent,
                         std::uint64_t public_exponent,
                         std::span<const std::uint8_t> payload, const Nonce& nonce) {
    if (modulus < 4) throw CryptoError("asymmetric modulus too small");
    Envelope env;
    env.scheme = scheme;
    env.key_id = std::move(key_id);
    env.nonce = nonce;

    std::uint64_t secret = 0;
    std::uint64_t wire_block = 0;
    if (scheme == EnvelopeScheme::PublicKey) {
        // Fresh residue m from the nonce; m^e travels, m stays the secret
        // only the private exponent recovers.
        const std::uint64_t m =
            residue_from(fnv1a64(std::span<const std::uint8_t>(nonce)), modulus);
        wire_block = mod_pow(m, seal_exponent, modulus);
        secret = splitmix64(m);
    } else {
        // Signing direction: s = h^d where h binds nonce and payload. Anyone
        // holding (N, e) recovers h and checks it; the stream secret mixes in
        // (N, e) so a tap without the public key cannot strip the body.
        std::uint64_t h = fnv_accum(kFnvOffset, nonce);
        h = fnv_accum(h, payload);
        const std::uint64_t bound = residue_from(h, modulus);
        wire_block = mod_pow(bound, seal_exponent, modulus);
        secret = splitmix64(wire_block ^ splitmix64(modulus) ^ splitmix64(public_exponent));
    }

    env.ciphertext.reserve(kSeedBlock + payload.size());
    append_u64_be(env.ciphertext, wire_block);
    const Bytes body = xor_with_stream(payload, secret);
    env.ciphertext.insert(env.ciphertext.end(), body.begin(), body.end());
    env.tag = u64_to_be(mac64(secret, nonce, env.ciphertext));
    return env;
}

Bytes open_asymmetric(const Envelope& env, std::uint64_t modulus,
                      std::uint64_t open_exponent) {
    if (env.ciphertext.size() < kSeedBlock) {
        throw MalformedEnvelopeError("asymmetric envelope lacks its seed block");
    }
    const std::uint64_t wire_block =
        be_to_u64(std::span<const std::uint8_t>(env.ciphertext).first(kSeedBlock));

    std::uint64_t secret = 0;
    if (env.scheme == EnvelopeScheme::PublicKey) {
        const std::uint64_t m = mod_pow(wire_block % modulus, open_exponent, modulus);
        secret = splitmix64(m);
    } else {
        secret = splitmix64(wire_block ^ splitmix64(modulus) ^ splitmix64(open_exponent));
    }

    if (u64_to_be(mac64(secret, env.nonce, env.ciphertext)) != env.tag) {
        throw TagMismatchError("envelope tag does not verify under this key");
    }
    const Bytes payload = xor_with_stream(
        std::span<const std::uint8_t>(env.ciphertext).subspan(kSeedBlock), secret);

    if (env.scheme == EnvelopeScheme::PrivateKey) {
        std::uint64_t h = fnv_accum(kFnvOffset, env.nonce);
        h = fnv_accum(h, payload);
        if (mod_pow(wire_block % modulus, open_exponent, modulus) !=
            residue_from(h, modulus)) {
            throw TagMismatchError("signature block does not verify");
        }
    }
    return payload;
}

Envelope seal_keyed(EnvelopeScheme scheme, std::string key_id, const SymmetricKey& key,
                    std::span<const std::uint8_t> payload, const Nonce& nonce) {
    Envelope env;
    env.scheme = scheme;
    env.key_id = std::move(key_id);
    env.nonce = nonce;
    SymCiphertext ct = sym_encrypt(key, payload, nonce);
    env.ciphertext = std::move(ct.bytes);
    env.tag = ct.tag;
    return env;
}

}  // namespace

Envelope seal(const KeyHandle& key, std::span<const std::uint8_t> payload,
              const Nonce& nonce) {
    return std::visit(
        [&](const auto& handle) -> Envelope {
            using T = std::decay_t<decltype(handle)>;
            if constexpr (std::is_same_v<T, PublicKeyHandle>) {
                return seal_asymmetric(EnvelopeScheme::PublicKey, handle.key_id,
                                       handle.modulus, handle.exponent, handle.exponent,
                                       payload, nonce);
            } else if constexpr (std::is_same_v<T, PrivateKeyHandle>) {
                return seal_asymmetric(EnvelopeScheme::PrivateKey, handle.key_id,
                                       handle.modulus, handle.exponent,
                                       handle.public_exponent, payload, nonce);
            } else if constexpr (std::is_same_v<T, SymmetricKeyHandle>) {
                return seal_keyed(EnvelopeScheme::Symmetric, handle.key_id, handle.key,
                                  payload, nonce);
            } else {
                return seal_keyed(EnvelopeScheme::Password, handle.principal_id,
                                  handle.key, payload, nonce);
            }
        },
        key);
}

Bytes open(const Envelope& envelope, const KeyHandle& key) {
    return std::visit(
        [&](const auto& handle) -> Bytes {
            using T = std::decay_t<decltype(handle)>;
            if constexpr (std::is_same_v<T, PrivateKeyHandle>) {
                if (envelope.scheme != EnvelopeScheme::PublicKey) {
                    throw WrongKeyError("private key opens only public-key envelopes");
                }
                if (envelope.key_id != handle.key_id) {
                    throw WrongKeyError("envelope is for key id '" + envelope.key_id + "'");
                }
                return open_asymmetric(envelope, handle.modulus, handle.exponent);
            } else if constexpr (std::is_same_v<T, PublicKeyHandle>) {
                if (envelope.scheme != EnvelopeScheme::PrivateKey) {
                    throw WrongKeyError("public key opens only private-key envelopes");
                }
                if (envelope.key_id != handle.key_id) {
                    throw WrongKeyError("envelope is for key id '" + envelope.key_id + "'");
                }
                return open_asymmetric(envelope, handle.modulus, handle.exponent);
            } else if constexpr (std::is_same_v<T, SymmetricKeyHandle>) {
                if (envelope.scheme != EnvelopeScheme::Symmetric) {
                    throw WrongKeyError("symmetric key does not match envelope scheme");
                }
                if (envelope.key_id != handle.key_id) {
                    throw WrongKeyError("envelope is for key id '" + envelope.key_id + "'");
                }
                return sym_decrypt(handle.key, {envelope.ciphertext, envelope.tag},
                                   envelope.nonce);
            } else {
                if (envelope.scheme != EnvelopeScheme::Password) {
                    throw WrongKeyError("password key does not match envelope scheme");
                }
                if (envelope.key_id != handle.principal_id) {
                    throw WrongKeyError("envelope is for principal '" + envelope.key_id + "'");
                }
                return sym_decrypt(handle.key, {envelope.ciphertext, envelope.tag},
                                   envelope.nonce);
            }
        },
        key);
}

const char* scheme_name(EnvelopeScheme scheme) {
    switch (scheme) {
        case EnvelopeScheme::PublicKey: return "E_PU";
        case EnvelopeScheme::PrivateKey: return "E_PR";
        case EnvelopeScheme::Symmetric: return "E_SK";
        case EnvelopeScheme::Password: return "E_PASSWORD";
    }
    return "?";
}

}  // namespace qseclab::crypto
