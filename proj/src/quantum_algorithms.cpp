#include "qseclab/quantum_algorithms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qseclab/qsim.hpp"

namespace qseclab::qalg {

namespace {

using u128 = unsigned __int128;

struct RetryExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t ceil_log2(std::uint64_t n) {
    std::uint64_t bits = 0;
    while ((std::uint64_t{1} << bits) < n) ++bits;
    return bits;
}

bool equals_ignore_case(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i]))) {
            return false;
        }
    }
    return true;
}

/// Shrinks a verified exponent (a^q = 1 mod n) to the minimal order: the
/// order divides q, so strip prime factors while the congruence survives.
std::uint64_t reduce_to_order(std::uint64_t a, std::uint64_t n, std::uint64_t q) {
    std::vector<std::uint64_t> primes;
    std::uint64_t m = q;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) primes.push_back(m);
    for (std::uint64_t p : primes) {
        while (q % p == 0 && mod_pow(a, q / p, n) == 1) q /= p;
    }
    return q;
}

}  // namespace

std::optional<std::uint64_t> prime_power_root(std::uint64_t n) {
    if (n < 2) return std::nullopt;
    if (is_prime(n)) return n;
    for (std::uint64_t k = 2; (std::uint64_t{1} << k) <= n; ++k) {
        auto root = static_cast<std::uint64_t>(std::llround(std::pow(double(n), 1.0 / double(k))));
        for (std::uint64_t r = root > 1 ? root - 1 : 2; r <= root + 1; ++r) {
            u128 pow = 1;
            for (std::uint64_t i = 0; i < k && pow <= n; ++i) pow *= r;
            if (pow == n && is_prime(r)) return r;
        }
    }
    return std::nullopt;
}

std::optional<std::uint64_t> continued_fraction_period(std::uint64_t measured,
                                                       std::uint64_t register_size,
                                                       std::uint64_t n) {
    if (register_size == 0 || measured >= register_size) {
        throw std::invalid_argument("measured value outside [0, register size)");
    }
    if (measured == 0 || n < 2) return std::nullopt;
    const std::uint64_t bound = n - 1;

    // Convergent recurrences h_k = a_k h_{k-1} + h_{k-2} on measured/M.
    std::uint64_t h_pp = 0, k_pp = 1;  // h_{-2}/k_{-2}
    std::uint64_t h_p = 1, k_p = 0;    // h_{-1}/k_{-1}
    std::uint64_t u = measured, v = register_size;

    auto error_less = [&](std::uint64_t p1, std::uint64_t q1, std::uint64_t p2,
                          std::uint64_t q2) {
        // |x - p1/q1| < |x - p2/q2| via cross-multiplied integer compare.
        const u128 e1 = p1 * u128{v} > u128{measured} * q1
                            ? p1 * u128{v} - u128{measured} * q1
                            : u128{measured} * q1 - p1 * u128{v};
        const u128 e2 = p2 * u128{v} > u128{measured} * q2
                            ? p2 * u128{v} - u128{measured} * q2
                            : u128{measured} * q2 - p2 * u128{v};
        return e1 * q2 < e2 * q1;
    };

    while (v != 0) {
        const std::uint64_t a = u / v;
        const std::uint64_t h_new = a * h_p + h_pp;
        const std::uint64_t k_new = a * k_p + k_pp;
        if (k_new > bound) {
            // Best approximation with denominator <= bound is either the last
            // convergent or the largest in-bound semiconvergent of this step.
            const std::uint64_t j = (bound - k_pp) / k_p;
            if (j >= 1) {
                const std::uint64_t h_semi = h_pp + j * h_p;
                const std::uint64_t k_semi = k_pp + j * k_p;
                if (error_less(h_semi, k_semi, h_p, k_p)) return k_semi;
            }
            return k_p == 0 ? std::nullopt : std::optional<std::uint64_t>{k_p};
        }
        h_pp = h_p;
        k_pp = k_p;
        h_p = h_new;
        k_p = k_new;
        const std::uint64_t r = u % v;
        u = v;
        v = r;
    }
    return k_p;  // exact fraction reached within the bound
}

std::uint64_t find_order(std::uint64_t a, std::uint64_t n, Rng& rng) {
    if (n < 3) throw std::invalid_argument("modulus must be at least 3");
    if (a <= 1 || a >= n) throw std::invalid_argument("need 1 < a < n");
    if (gcd_u64(a, n) != 1) throw std::invalid_argument("a must be coprime to n");

    const int work_bits = static_cast<int>(ceil_log2(n));
    const int count_bits = 2 * work_bits;
    if (work_bits + count_bits > qsim::kMaxQubits) {
        throw std::invalid_argument("order finding for n=" + std::to_string(n) +
                                    " exceeds the " + std::to_string(qsim::kMaxQubits) +
                                    "-qubit budget");
    }
    const std::size_t total_dim = std::size_t{1} << (work_bits + count_bits);
    const std::size_t work_dim = std::size_t{1} << work_bits;
    const std::uint64_t register_size = std::uint64_t{1} << count_bits;

    // Controlled multiply-by-(a^{2^k} mod n) permutations, one per counting
    // qubit. Work register sits in qubits [0, work_bits).
    std::vector<std::vector<std::size_t>> perms(count_bits);
    std::uint64_t mult = a % n;
    for (int k = 0; k < count_bits; ++k) {
        auto& perm = perms[k];
        perm.resize(total_dim);
        const std::size_t control_mask = std::size_t{1} << (work_bits + k);
        for (std::size_t i = 0; i < total_dim; ++i) {
            const std::size_t work = i & (work_dim - 1);
            if ((i & control_mask) != 0 && work < n) {
                const std::size_t mapped =
                    static_cast<std::size_t>(u128{mult} * work % n);
                perm[i] = (i & ~(work_dim - 1)) | mapped;
            } else {
                perm[i] = i;
            }
        }
        mult = static_cast<std::uint64_t>(u128{mult} * mult % n);
    }

    // Flip work qubit 0 so the work register starts in |1>.
    std::vector<std::size_t> set_one(total_dim);
    for (std::size_t i = 0; i < total_dim; ++i) set_one[i] = i ^ 1;

    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        qsim::StateVector state(work_bits + count_bits);
        state.apply_permutation(set_one);
        for (int k = 0; k < count_bits; ++k) state.apply_hadamard(work_bits + k);
        for (int k = 0; k < count_bits; ++k) state.apply_permutation(perms[k]);
        state.inverse_qft(work_bits, count_bits);

        const std::uint64_t measured = state.measure_all(rng).basis_index >> work_bits;
        const auto candidate = continued_fraction_period(measured, register_size, n);
        if (!candidate) continue;
        if (mod_pow(a, *candidate, n) != 1) continue;
        return reduce_to_order(a, n, *candidate);
    }
    throw RetryExhausted("order finding for a=" + std::to_string(a) + " mod " +
                         std::to_string(n) + " exhausted its retry budget");
}

ShorResult shor_factor(std::uint64_t n, Rng& rng) {
    if (n % 2 == 0) throw std::invalid_argument("n must be odd (got even n)");
    if (n < 9 || is_prime(n)) throw std::invalid_argument("n must be composite");
    if (prime_power_root(n)) {
        throw std::invalid_argument("n is a prime power; Shor's reduction needs "
                                    "two distinct prime factors");
    }

    ShorResult result;
    result.n = n;
    for (int outer = 0; outer < kRetryBudget; ++outer) {
        ++result.attempts;
        const std::uint64_t a = 2 + rng.uniform_below(n - 3);
        const std::uint64_t g = gcd_u64(a, n);
        if (g > 1) {
            result.chosen_a = a;
            result.order_r = 0;
            result.factors = std::minmax(g, n / g);
            return result;
        }
        std::uint64_t r;
        try {
            r = find_order(a, n, rng);
        } catch (const RetryExhausted&) {
            continue;  // pick a new a
        }
        if (r % 2 != 0) continue;
        const std::uint64_t x = mod_pow(a, r / 2, n);
        if (x == n - 1) continue;  // a^{r/2} = -1 mod n
        const std::uint64_t f = gcd_u64(x - 1, n);
        if (f <= 1 || f >= n) continue;
        result.chosen_a = a;
        result.order_r = r;
        result.factors = std::minmax(f, n / f);
        return result;
    }
    throw std::runtime_error("shor_factor retry budget exhausted for n=" +
                             std::to_string(n));
}

int grover_optimal_iterations(std::uint64_t search_space_size) {
    if (search_space_size == 0 || (search_space_size & (search_space_size - 1)) != 0) {
        throw std::invalid_argument("search space size must be a power of 2");
    }
    if (search_space_size == 1) return 0;
    return static_cast<int>(std::floor(
        std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(search_space_size))));
}

double grover_success_probability(std::uint64_t search_space_size, int iterations) {
    const double theta =
        std::asin(std::sqrt(1.0 / static_cast<double>(search_space_size)));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

GroverResult grover_search(std::uint64_t marked_index, int num_qubits,
                           int iterations, Rng& rng) {
    if (iterations < 0) throw std::invalid_argument("iteration count is negative");
    qsim::StateVector state(num_qubits);
    if (marked_index >= state.size()) {
        throw std::out_of_range("marked index " + std::to_string(marked_index) +
                                " outside the 2^" + std::to_string(num_qubits) +
                                " search space");
    }
    for (int q = 0; q < num_qubits; ++q) state.apply_hadamard(q);
    for (int i = 0; i < iterations; ++i) {
        state.apply_phase_flip(marked_index);
        state.invert_about_mean();
    }
    GroverResult result;
    result.search_space_size = state.size();
    result.marked_index = marked_index;
    result.iterations = iterations;
    result.success_probability = state.probability_of(marked_index);
    result.measured_index = state.measure_all(rng).basis_index;
    return result;
}

const std::vector<BrokenSystem>& broken_systems_report() {
    static const std::vector<BrokenSystem> table = {
        {"RSA", "Factorization", {}},
        {"Rabin's Cryptosystem", "Factorization", {"Rabin"}},
        {"KMOV", "Factorization", {}},
        {"Diffie-Hellman Key Exchange", "Discrete Logarithm Problem", {"Diffie-Hellman", "DH"}},
        {"El Gamal", "Discrete Logarithm Problem", {"ElGamal"}},
        {"Elliptic Curve Cryptography (ECC)", "Discrete Logarithm Problem", {"ECC"}},
        {"Digital Signature Algorithm (DSA)", "Discrete Logarithm Problem", {"DSA"}},
    };
    return table;
}

std::optional<std::string> broken_system_lookup(std::string_view name) {
    for (const auto& entry : broken_systems_report()) {
        if (equals_ignore_case(entry.system, name)) return entry.hard_problem;
        for (const auto& alias : entry.aliases) {
            if (equals_ignore_case(alias, name)) return entry.hard_problem;
        }
    }
    return std::nullopt;
}

}  // namespace qseclab::qalg
