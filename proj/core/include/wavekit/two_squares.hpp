#pragma once

#include "wavekit/dispersion.hpp"
#include "wavekit/trivial_flow.hpp"

#include <cstdint>
#include <vector>

namespace wavekit {

// One representation H = (2n)^2 + (2m-1)^2 of an odd integer H as the sum of
// an even and an odd square.
struct TwoSquareRepresentation {
    std::int64_t even_part; // 2n
    std::int64_t odd_part;  // 2m-1
    std::int64_t H;
};

// Exhaustive enumeration by brute force, sorted by even_part.
// Throws std::domain_error for even or nonpositive H.
std::vector<TwoSquareRepresentation> two_square_representations(std::int64_t H);

// Number of such representations computed from the prime factorization of H:
// zero if some prime q = 3 (mod 4) divides H to an odd power; otherwise with
// B = prod (a_i + 1) over primes p_i = 1 (mod 4) dividing H to power a_i, the
// count is B/2 (B even) or (B+1)/2 (B odd; H is then a perfect square and the
// extra representation is 0^2 + sqrt(H)^2).
std::int64_t representation_count_by_factorization(std::int64_t H);

// Parameters with r(Lambda) = 0 whose kernel set is the prescribed mode list.
// With kappa = pi r/s (r odd, gcd(r, s) = 1) and alpha = -pi^2 r^2 H / 4, each
// representation H = (2n~)^2 + (2m-1)^2 contributes the kernel mode n = s n~.
struct ConstructedKernel {
    TrivialParameters params;
    double kappa;
    std::vector<int> target_modes;
    std::int64_t H;
    std::int64_t kappa_num; // r in kappa = pi r/s
    std::int64_t kappa_den; // s
    std::vector<TwoSquareRepresentation> representations;
    bool divisor_free; // no target mode divides another
    KernelSet verification; // kernel_set at the constructed parameters
};

// H = p^{2N-1} for a prime p = 1 (mod 4). Throws std::domain_error on invalid
// p/r/s and std::runtime_error if kernel_set disagrees with the target modes.
ConstructedKernel construct_kernel(int N, std::int64_t p, std::int64_t r = 1,
                                   std::int64_t s = 1, double lambda = 3.0 * M_PI / 4.0);

// Same construction from an explicit odd H (covers H that are not odd prime powers).
ConstructedKernel construct_kernel_from_H(std::int64_t H, std::int64_t r = 1,
                                          std::int64_t s = 1,
                                          double lambda = 3.0 * M_PI / 4.0);

bool is_prime(std::int64_t p);

} // namespace wavekit
