#include "oqw/transport.hpp"

#include <cmath>
#include <stdexcept>

#include "oqw/analytics.hpp"

namespace oqw {

namespace {

void check_normalized(const ProbabilityDistribution& dist) {
    double sum = 0.0;
    for (double p : dist.probs) sum += p;
    if (std::abs(sum - 1.0) > kNormTol)
        throw std::invalid_argument("distribution sums to " + std::to_string(sum));
}

}  // namespace

TransportStats moments_1d(const ProbabilityDistribution& dist,
                          const std::vector<double>& coords) {
    if (coords.size() != dist.probs.size())
        throw std::invalid_argument("coordinate map size mismatch");
    check_normalized(dist);

    TransportStats st;
    st.two_d = false;
    for (size_t v = 0; v < dist.probs.size(); ++v) {
        st.mean_x += coords[v] * dist.probs[v];
        st.mean_x2 += coords[v] * coords[v] * dist.probs[v];
    }
    st.sigma = std::sqrt(std::max(0.0, st.mean_x2 - st.mean_x * st.mean_x));
    return st;
}

TransportStats moments_2d(const ProbabilityDistribution& dist, const LatticeSpec& spec,
                          std::pair<int, int> origin) {
    if (static_cast<int>(dist.probs.size()) != spec.vertex_count())
        throw std::invalid_argument("distribution size does not match lattice");
    check_normalized(dist);

    const int side = spec.side();
    const int n = spec.n;
    auto unwrap = [side, n](int d) {  // displacement into (-n, n]
        d = ((d % side) + side) % side;
        return d > n ? d - side : d;
    };

    double my = 0.0, mx2 = 0.0, my2 = 0.0;
    TransportStats st;
    st.two_d = true;
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            double p = dist.probs[side * y + x];
            double dx = unwrap(x - origin.first);
            double dy = unwrap(y - origin.second);
            st.mean_x += dx * p;
            my += dy * p;
            mx2 += dx * dx * p;
            my2 += dy * dy * p;
        }
    }
    st.mean_y = my;
    st.mean_x2 = mx2 + my2;
    st.mu = std::hypot(st.mean_x, st.mean_y);
    st.sigma_x = std::sqrt(std::max(0.0, mx2 - st.mean_x * st.mean_x));
    st.sigma_y = std::sqrt(std::max(0.0, my2 - st.mean_y * st.mean_y));
    st.sigma = std::hypot(st.sigma_x, st.sigma_y);
    return st;
}

std::vector<ConvergenceRow> convergence_report(const WalkParams& params, Cx a, Cx b,
                                               const std::vector<int>& t_list) {
    if (t_list.empty()) throw std::invalid_argument("empty t list");
    for (size_t i = 1; i < t_list.size(); ++i)
        if (t_list[i] <= t_list[i - 1])
            throw std::invalid_argument("t list must be strictly increasing");
    if (t_list.front() < 0) throw std::invalid_argument("negative t");

    const int t_max = t_list.back();
    const int m = 2 * t_max + 4;  // one window serves every row, no wraparound
    WalkFamily fam = build_oriented_line(LineVariant::uniform, m);
    std::vector<LocalUnitary> plan = evolution_step_plan(fam.cover, params);

    std::vector<double> coords(fam.cover.host.vertex_count);
    for (int v = 0; v < fam.cover.host.vertex_count; ++v)
        coords[v] = line_position(v, fam.half_window);

    const double mean_asym = asymptotic_mean_line1(a, b, params);
    const double x2_asym = asymptotic_second_moment(params);

    StateVector psi = amplitude_pair_state(fam.cover.host.vertex_count, a, b);
    std::vector<ConvergenceRow> rows;
    rows.reserve(t_list.size());
    size_t next = 0;
    for (int t = 0; t <= t_max && next < t_list.size(); ++t) {
        if (t == t_list[next]) {
            TransportStats st = moments_1d(distribution(psi), coords);
            ConvergenceRow row;
            row.t = t;
            row.mean_rate = t > 0 ? st.mean_x / t : 0.0;
            row.x2_rate = t > 0 ? st.mean_x2 / (static_cast<double>(t) * t) : 0.0;
            row.mean_asym = mean_asym;
            row.x2_asym = x2_asym;
            row.mean_gap = std::abs(row.mean_rate - mean_asym);
            row.x2_gap = std::abs(row.x2_rate - x2_asym);
            rows.push_back(row);
            ++next;
        }
        if (t < t_max) psi = step(plan, psi);
    }
    return rows;
}

TransportStats stats_for_family(const WalkFamily& family, const ProbabilityDistribution& dist) {
    switch (family.kind) {
        case FamilyKind::line_uniform:
        case FamilyKind::line_alternating: {
            std::vector<double> coords(dist.probs.size());
            for (size_t v = 0; v < coords.size(); ++v)
                coords[v] = line_position(static_cast<int>(v), family.half_window);
            return moments_1d(dist, coords);
        }
        case FamilyKind::lattice: {
            LatticeSpec spec;
            spec.n = family.n;
            return moments_2d(dist, spec, {0, 0});
        }
        case FamilyKind::custom:
            break;
    }
    throw std::invalid_argument("no coordinate map for custom families; "
                                "transport stats need a built-in family");
}

}  // namespace oqw
