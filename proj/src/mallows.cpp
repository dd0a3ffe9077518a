#include "mallows.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace smf {

namespace {

void check_phi(double phi, const char* name) {
    if (!(phi >= 0.0 && phi <= 1.0)) {
        fail(ErrorCode::InvalidInput, std::string(name) + " must lie in [0, 1], got " + std::to_string(phi));
    }
}

void check_is_permutation(std::span<const int> p, const char* what) {
    const auto n = p.size();
    std::vector<char> seen(n, 0);
    for (int x : p) {
        if (x < 0 || static_cast<std::size_t>(x) >= n || seen[x]) {
            fail(ErrorCode::InvalidInput, std::string(what) + " is not a permutation");
        }
        seen[x] = 1;
    }
}

std::int64_t count_inversions(std::vector<int>& a, std::vector<int>& buf, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = count_inversions(a, buf, lo, mid) + count_inversions(a, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[i] <= a[j]) {
            buf[k++] = a[i++];
        } else {
            inv += static_cast<std::int64_t>(mid - i);
            buf[k++] = a[j++];
        }
    }
    while (i < mid) buf[k++] = a[i++];
    while (j < hi) buf[k++] = a[j++];
    std::copy(buf.begin() + lo, buf.begin() + hi, a.begin() + lo);
    return inv;
}

// Distance above the bottom of a partial ranking holding `len` items, drawn
// with P(k) proportional to phi^k for k in [0, len].
int insertion_offset(int len, double phi, Rng& rng) {
    if (phi <= 0.0) return 0;
    const double u = rng.uniform();
    if (phi >= 1.0) return static_cast<int>(u * (len + 1));
    // Inverse CDF of the truncated geometric law.
    const double tail = 1.0 - u * (1.0 - std::pow(phi, len + 1));
    int k = static_cast<int>(std::ceil(std::log(tail) / std::log(phi))) - 1;
    return std::clamp(k, 0, len);
}

}  // namespace

Permutation identity_permutation(int n) {
    Permutation p(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

MallowsParams MallowsParams::with_identity(int n, double phi_m, double phi_w) {
    return {phi_m, phi_w, identity_permutation(n), identity_permutation(n)};
}

std::int64_t kendall_tau(std::span<const int> pi, std::span<const int> ref) {
    if (pi.size() != ref.size()) {
        fail(ErrorCode::InvalidInput, "kendall_tau: length mismatch (" + std::to_string(pi.size()) + " vs " +
                                          std::to_string(ref.size()) + ")");
    }
    check_is_permutation(pi, "kendall_tau: first ranking");
    check_is_permutation(ref, "kendall_tau: reference ranking");
    std::vector<int> pos(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) pos[ref[i]] = static_cast<int>(i);
    std::vector<int> seq(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) seq[i] = pos[pi[i]];
    std::vector<int> buf(seq.size());
    return count_inversions(seq, buf, 0, seq.size());
}

double mallows_log_normalizer(int n, double phi) {
    double log_z = 0.0;
    if (phi == 1.0) {
        for (int i = 2; i <= n; ++i) log_z += std::log(static_cast<double>(i));
        return log_z;
    }
    for (int i = 2; i <= n; ++i) log_z += std::log((1.0 - std::pow(phi, i)) / (1.0 - phi));
    return log_z;
}

double mallows_probability(std::span<const int> pi, std::span<const int> ref, double phi) {
    if (phi == 0.0) {
        fail(ErrorCode::Degenerate, "mallows_probability: phi = 0 puts all mass on the reference ranking");
    }
    if (!(phi > 0.0 && phi <= 1.0)) {
        fail(ErrorCode::InvalidInput, "mallows_probability: phi must lie in (0, 1]");
    }
    const auto tau = kendall_tau(pi, ref);
    const int n = static_cast<int>(pi.size());
    return std::exp(static_cast<double>(tau) * std::log(phi) - mallows_log_normalizer(n, phi));
}

Permutation sample_permutation(std::span<const int> ref, double phi, Rng& rng) {
    check_phi(phi, "phi");
    Permutation out;
    out.reserve(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const int len = static_cast<int>(out.size());
        const int k = insertion_offset(len, phi, rng);
        out.insert(out.end() - k, ref[i]);
    }
    return out;
}

PreferenceProfile generate_profile(int n, const MallowsParams& params, Rng& rng) {
    if (n < 1) fail(ErrorCode::InvalidInput, "generate_profile: n must be positive");
    check_phi(params.phi_m, "phi_m");
    check_phi(params.phi_w, "phi_w");
    if (static_cast<int>(params.reference_m.size()) != n || static_cast<int>(params.reference_w.size()) != n) {
        fail(ErrorCode::InvalidInput, "generate_profile: reference rankings must have n entries");
    }
    check_is_permutation(params.reference_m, "reference_m");
    check_is_permutation(params.reference_w, "reference_w");

    std::vector<std::vector<int>> men(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> women(static_cast<std::size_t>(n));
    for (auto& l : men) l = sample_permutation(params.reference_m, params.phi_m, rng);
    for (auto& l : women) l = sample_permutation(params.reference_w, params.phi_w, rng);
    return PreferenceProfile(men, women);
}

double expected_kendall_tau(int n, double phi) {
    double total = 0.0;
    for (int i = 2; i <= n; ++i) {
        double num = 0.0, den = 0.0, pw = 1.0;
        for (int j = 0; j < i; ++j) {
            num += j * pw;
            den += pw;
            pw *= phi;
        }
        total += num / den;
    }
    return total;
}

double estimate_phi(std::span<const Permutation> lists, std::span<const int> ref) {
    if (lists.empty()) fail(ErrorCode::InvalidInput, "estimate_phi: no rankings given");
    double sum = 0.0;
    for (const auto& l : lists) sum += static_cast<double>(kendall_tau(l, ref));
    const double mean = sum / static_cast<double>(lists.size());
    const int n = static_cast<int>(ref.size());
    if (n < 2) fail(ErrorCode::Estimation, "estimate_phi: dispersion is not identifiable with fewer than two items");

    double lo = kMinEstimatedPhi, hi = 1.0;
    if (mean <= expected_kendall_tau(n, lo)) return lo;
    if (mean >= expected_kendall_tau(n, hi)) return hi;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (expected_kendall_tau(n, mid) < mean) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double phi = 0.5 * (lo + hi);
    if (!std::isfinite(phi)) fail(ErrorCode::Estimation, "estimate_phi: bisection diverged");
    return phi;
}

}  // namespace smf
