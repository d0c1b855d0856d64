#include <cmath>

#include "robustrate/kernels.hpp"

namespace robustrate::kernels {

void trust_serial(const VoteGraph& graph, std::span<const double> rho, std::span<double> t) {
    for (Index r = 0; r < graph.num_voters(); ++r) {
        double sum = 0.0;
        for (std::size_t k : graph.items_of(r)) sum += rho[k];
        t[r] = sum;
    }
}

void power_serial(std::span<const double> t, double alpha, std::span<double> out) {
    for (std::size_t r = 0; r < t.size(); ++r) out[r] = std::pow(t[r], alpha);
}

void support_serial(const VoteGraph& graph, std::span<const double> weight, std::span<double> out) {
    for (std::size_t k = 0; k < graph.num_items(); ++k) {
        double sum = 0.0;
        for (Index r : graph.voters_of(k)) sum += weight[r];
        out[k] = sum;
    }
}

void normalize_serial(const VoteGraph& graph, std::span<double> values, std::span<std::uint8_t> degenerate) {
    std::vector<double> scratch;
    for (Index l = 0; l < graph.num_lists(); ++l) {
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

}  // namespace robustrate::kernels
