#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace smf {

/// A ranking of items 0..n-1, most preferred first.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);

/// Dispersion and reference rankings for both sides of a market. The
/// men's reference ranks women, the women's reference ranks men.
struct MallowsParams {
    double phi_m = 1.0;
    double phi_w = 1.0;
    Permutation reference_m;
    Permutation reference_w;

    static MallowsParams with_identity(int n, double phi_m, double phi_w);
};

/// Number of item pairs ordered differently by the two rankings, O(n log n).
std::int64_t kendall_tau(std::span<const int> pi, std::span<const int> ref);

/// log Z for the Mallows normaliser Z = prod_{i=1..n} (1 + phi + ... + phi^(i-1)).
double mallows_log_normalizer(int n, double phi);

/// Exact probability of `pi` under Mallows(ref, phi). phi must lie in (0, 1].
double mallows_probability(std::span<const int> pi, std::span<const int> ref, double phi);

/// Repeated-insertion sampler: the i-th reference item is inserted k slots
/// above the bottom of the partial ranking with probability proportional to
/// phi^k. phi = 0 reproduces `ref`; phi = 1 is uniform.
Permutation sample_permutation(std::span<const int> ref, double phi, Rng& rng);

/// n men's lists i.i.d. from Mallows(reference_m, phi_m), then n women's
/// lists i.i.d. from Mallows(reference_w, phi_w), all from one generator.
PreferenceProfile generate_profile(int n, const MallowsParams& params, Rng& rng);

/// E[tau] under Mallows with n items:
/// sum_{i=2..n} (sum_{j<i} j phi^j) / (sum_{k<i} phi^k).
double expected_kendall_tau(int n, double phi);

inline constexpr double kMinEstimatedPhi = 1e-3;

/// Dispersion whose expected Kendall distance matches the sample mean,
/// by bisection to 1e-6, clamped to [1e-3, 1]. Throws Estimation when
/// rankings have fewer than two items (every phi fits).
double estimate_phi(std::span<const Permutation> lists, std::span<const int> ref);

}  // namespace smf
