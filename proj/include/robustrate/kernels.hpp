#pragma once

// Inner loops of the voting iteration. Each kernel exists twice: a plain
// serial reference and an OpenMP version. Every output element is produced by
// exactly one thread with the same summation order as the serial loop, so
// the two variants agree bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "robustrate/core.hpp"

namespace robustrate::kernels {

enum class Backend { serial, parallel };

/// t[r] = sum of rho over the items voter r chose.
void trust_serial(const VoteGraph& graph, std::span<const double> rho, std::span<double> t);
void trust_parallel(const VoteGraph& graph, std::span<const double> rho, std::span<double> t);

/// out[r] = t[r]^alpha.
void power_serial(std::span<const double> t, double alpha, std::span<double> out);
void power_parallel(std::span<const double> t, double alpha, std::span<double> out);

/// out[k] = sum over voters r of item k of weight[r], voters ascending.
void support_serial(const VoteGraph& graph, std::span<const double> weight, std::span<double> out);
void support_parallel(const VoteGraph& graph, std::span<const double> weight, std::span<double> out);

/// 2-norm with the squares summed in ascending order, so the result does not
/// depend on how the entries are labelled. `scratch` is reused between calls.
inline double list_norm(std::span<const double> values, std::vector<double>& scratch) {
    scratch.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) scratch[i] = values[i] * values[i];
    std::sort(scratch.begin(), scratch.end());
    double sq = 0.0;
    for (double x : scratch) sq += x;
    return std::sqrt(sq);
}

/// In-place per-list 2-norm normalisation of `values` over lists with votes.
/// Lists without votes are zeroed. A voted list whose norm is zero is left at
/// zero and flagged in `degenerate`.
void normalize_serial(const VoteGraph& graph, std::span<double> values, std::span<std::uint8_t> degenerate);
void normalize_parallel(const VoteGraph& graph, std::span<double> values, std::span<std::uint8_t> degenerate);

inline void trust(Backend b, const VoteGraph& g, std::span<const double> rho, std::span<double> t) {
    b == Backend::serial ? trust_serial(g, rho, t) : trust_parallel(g, rho, t);
}
inline void power(Backend b, std::span<const double> t, double alpha, std::span<double> out) {
    b == Backend::serial ? power_serial(t, alpha, out) : power_parallel(t, alpha, out);
}
inline void support(Backend b, const VoteGraph& g, std::span<const double> w, std::span<double> out) {
    b == Backend::serial ? support_serial(g, w, out) : support_parallel(g, w, out);
}
inline void normalize(Backend b, const VoteGraph& g, std::span<double> v, std::span<std::uint8_t> degenerate) {
    b == Backend::serial ? normalize_serial(g, v, degenerate) : normalize_parallel(g, v, degenerate);
}

}  // namespace robustrate::kernels
