#include "wavekit/two_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wavekit {

namespace {

std::int64_t isqrt64(std::int64_t v)
{
    auto r = static_cast<std::int64_t>(std::sqrt(double(v)));
    while (r > 0 && r * r > v)
        --r;
    while ((r + 1) * (r + 1) <= v)
        ++r;
    return r;
}

void require_odd_positive(std::int64_t H)
{
    if (H <= 0)
        throw std::domain_error("H must be positive");
    if (H % 2 == 0)
        throw std::domain_error("H must be odd");
}

} // namespace

std::vector<TwoSquareRepresentation> two_square_representations(std::int64_t H)
{
    require_odd_positive(H);
    std::vector<TwoSquareRepresentation> reps;
    const std::int64_t top = isqrt64(H);
    for (std::int64_t e = 0; e <= top; e += 2) {
        const std::int64_t rest = H - e * e;
        const std::int64_t o = isqrt64(rest);
        if (o * o == rest)
            reps.push_back({e, o, H});
    }
    return reps;
}

std::int64_t representation_count_by_factorization(std::int64_t H)
{
    require_odd_positive(H);
    std::int64_t B = 1;
    std::int64_t rest = H;
    for (std::int64_t p = 3; p * p <= rest; p += 2) {
        if (rest % p != 0)
            continue;
        int exponent = 0;
        while (rest % p == 0) {
            rest /= p;
            ++exponent;
        }
        if (p % 4 == 3) {
            if (exponent % 2 == 1)
                return 0;
        } else {
            B *= exponent + 1;
        }
    }
    if (rest > 1) {
        if (rest % 4 == 3)
            return 0;
        B *= 2;
    }
    return B % 2 == 0 ? B / 2 : (B + 1) / 2;
}

bool is_prime(std::int64_t p)
{
    if (p < 2)
        return false;
    if (p % 2 == 0)
        return p == 2;
    for (std::int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0)
            return false;
    return true;
}

ConstructedKernel construct_kernel_from_H(std::int64_t H, std::int64_t r, std::int64_t s,
                                          double lambda)
{
    require_odd_positive(H);
    if (r <= 0 || r % 2 == 0)
        throw std::domain_error("kappa numerator r must be a positive odd integer");
    if (s <= 0 || std::gcd(r, s) != 1)
        throw std::domain_error("kappa denominator s must be positive and coprime to r");
    if (!(lambda > 0.5 * M_PI && lambda < M_PI))
        throw std::domain_error("construction requires lambda in (pi/2, pi)");

    ConstructedKernel out;
    out.H = H;
    out.kappa_num = r;
    out.kappa_den = s;
    out.kappa = M_PI * double(r) / double(s);
    out.representations = two_square_representations(H);

    for (const auto& rep : out.representations) {
        if (rep.even_part == 0)
            throw std::domain_error(
                "H is a perfect square; the representation 0^2 + sqrt(H)^2 would "
                "place mode 0 in the kernel");
        out.target_modes.push_back(static_cast<int>(s * (rep.even_part / 2)));
    }
    std::sort(out.target_modes.begin(), out.target_modes.end());

    const double alpha = -0.25 * M_PI * M_PI * double(r) * double(r) * double(H);
    const double sa = std::sqrt(-alpha);
    // mu^2 = -2/(|alpha|^{3/2} sin(2 lambda)) forces r(Lambda) = 0
    const double mu = std::sqrt(-2.0 / (sa * sa * sa * std::sin(2.0 * lambda)));
    out.params = {mu, alpha, lambda, out.kappa};

    // theta_n^2 = alpha + n^2 kappa^2 carries an absolute rounding error of
    // order eps |alpha|, which bounds how sharply membership can be tested for
    // large H; non-members stay ~1 away in l, so the widened band is safe
    const double tol = kernel_membership_tol +
                       64.0 * std::numeric_limits<double>::epsilon() * std::abs(alpha);
    out.verification = kernel_set(out.params, tol);
    if (out.verification.modes != out.target_modes)
        throw std::runtime_error("constructed kernel failed verification against kernel_set");

    out.divisor_free = true;
    for (size_t i = 0; i < out.target_modes.size() && out.divisor_free; ++i)
        for (size_t j = 0; j < out.target_modes.size(); ++j)
            if (i != j && out.target_modes[j] % out.target_modes[i] == 0) {
                out.divisor_free = false;
                break;
            }
    return out;
}

ConstructedKernel construct_kernel(int N, std::int64_t p, std::int64_t r, std::int64_t s,
                                   double lambda)
{
    if (N <= 0)
        throw std::domain_error("kernel dimension N must be positive");
    if (!is_prime(p) || p % 4 != 1)
        throw std::domain_error("p must be a prime congruent to 1 mod 4");
    std::int64_t H = 1;
    for (int i = 0; i < 2 * N - 1; ++i) {
        if (H > std::int64_t(1) << 40)
            throw std::domain_error("p^(2N-1) too large");
        H *= p;
    }
    ConstructedKernel out = construct_kernel_from_H(H, r, s, lambda);
    if (static_cast<int>(out.target_modes.size()) != N)
        throw std::runtime_error("representation count does not match requested dimension");
    return out;
}

} // namespace wavekit
