#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qseclab/numeric.hpp"
#include "qseclab/rng.hpp"

namespace qseclab::qalg {

inline constexpr int kRetryBudget = 32;

struct ShorResult {
    std::uint64_t n = 0;
    std::uint64_t chosen_a = 0;
    /// Multiplicative order of a mod n; 0 when the factor came from the lucky
    /// gcd(a, n) > 1 shortcut and no order finding ran.
    std::uint64_t order_r = 0;
    std::pair<std::uint64_t, std::uint64_t> factors{0, 0};  // ascending
    int attempts = 0;
};

struct GroverResult {
    std::uint64_t search_space_size = 0;
    std::uint64_t marked_index = 0;
    int iterations = 0;
    double success_probability = 0.0;  // pre-measurement |amplitude|^2
    std::uint64_t measured_index = 0;
};

/// Returns p when n = p^k for prime p and k >= 1, otherwise nullopt.
std::optional<std::uint64_t> prime_power_root(std::uint64_t n);

/// Denominator of the best rational approximation p/q to measured/M with
/// q < n (ties go to the smaller q); nullopt when measured = 0. Convergents
/// plus maximal semiconvergents, compared in exact integer arithmetic.
std::optional<std::uint64_t> continued_fraction_period(std::uint64_t measured,
                                                       std::uint64_t register_size,
                                                       std::uint64_t n);

/// Multiplicative order of a mod n via quantum phase estimation on the
/// modular-multiplication operator plus continued-fraction post-processing.
/// The returned value is verified (a^r = 1 mod n, minimal) before return.
/// Throws when the 20-qubit budget or the retry budget is exceeded.
std::uint64_t find_order(std::uint64_t a, std::uint64_t n, Rng& rng);

/// Factors odd composite n (not a prime power). Throws std::invalid_argument
/// for even/prime/prime-power n, std::runtime_error on retry exhaustion.
ShorResult shor_factor(std::uint64_t n, Rng& rng);

/// floor((pi/4) * sqrt(N)) for a single marked item; N must be a power of 2.
int grover_optimal_iterations(std::uint64_t search_space_size);

/// Closed-form success probability sin^2((2k+1) * asin(sqrt(1/N))).
double grover_success_probability(std::uint64_t search_space_size, int iterations);

GroverResult grover_search(std::uint64_t marked_index, int num_qubits,
                           int iterations, Rng& rng);

struct BrokenSystem {
    std::string system;
    std::string hard_problem;
    std::vector<std::string> aliases;
};

/// Static table of public-key systems whose hard problem falls to quantum
/// period finding (factorization or discrete log).
const std::vector<BrokenSystem>& broken_systems_report();

/// Lookup by display name or alias (case-insensitive); absent when the system
/// is not in the table (AES is Grover-weakened, not broken).
std::optional<std::string> broken_system_lookup(std::string_view name);

}  // namespace qseclab::qalg
