#include <cmath>
#include <cstdint>

#include "robustrate/kernels.hpp"

namespace robustrate::kernels {

void trust_parallel(const VoteGraph& graph, std::span<const double> rho, std::span<double> t) {
    const auto n = static_cast<std::int64_t>(graph.num_voters());
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) {
        double sum = 0.0;
        for (std::size_t k : graph.items_of(static_cast<Index>(r))) sum += rho[k];
        t[static_cast<std::size_t>(r)] = sum;
    }
}

void power_parallel(std::span<const double> t, double alpha, std::span<double> out) {
    const auto n = static_cast<std::int64_t>(t.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r)
        out[static_cast<std::size_t>(r)] = std::pow(t[static_cast<std::size_t>(r)], alpha);
}

void support_parallel(const VoteGraph& graph, std::span<const double> weight, std::span<double> out) {
    const auto n = static_cast<std::int64_t>(graph.num_items());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < n; ++k) {
        double sum = 0.0;
        for (Index r : graph.voters_of(static_cast<std::size_t>(k))) sum += weight[r];
        out[static_cast<std::size_t>(k)] = sum;
    }
}

void normalize_parallel(const VoteGraph& graph, std::span<double> values, std::span<std::uint8_t> degenerate) {
    const auto n = static_cast<std::int64_t>(graph.num_lists());
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (std::int64_t li = 0; li < n; ++li) {
            const auto l = static_cast<Index>(li);
            const std::size_t begin = graph.item_offset(l);
            const std::size_t end = begin + graph.items_on(l);
            degenerate[l] = 0;
            if (!graph.has_votes(l)) {
                for (std::size_t k = begin; k < end; ++k) values[k] = 0.0;
                continue;
            }
            const double norm = list_norm(values.subspan(begin, end - begin), scratch);
            if (!(norm > 0.0)) {
                degenerate[l] = 1;
                for (std::size_t k = begin; k < end; ++k) values[k] = 0.0;
                continue;
            }
            for (std::size_t k = begin; k < end; ++k) values[k] /= norm;
        }
    }
}

}  // namespace robustrate::kernels
