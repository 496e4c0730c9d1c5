#include "oqw/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace oqw {

double StateVector::norm() const {
    double s = 0.0;
    for (const Cx& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

StateVector make_state(std::vector<Cx> amplitudes) {
    StateVector psi;
    psi.amp = std::move(amplitudes);
    double n = psi.norm();
    if (std::abs(n - 1.0) > kNormTol)
        throw std::invalid_argument("state not normalized: ||psi|| = " + std::to_string(n));
    return psi;
}

StateVector basis_state(int vertex_count, int v) {
    if (v < 0 || v >= vertex_count)
        throw std::invalid_argument("basis vertex " + std::to_string(v) + " out of range");
    StateVector psi;
    psi.amp.assign(vertex_count, Cx(0, 0));
    psi.amp[v] = Cx(1, 0);
    return psi;
}

StateVector amplitude_pair_state(int vertex_count, Cx a, Cx b) {
    if (vertex_count < 2) throw std::invalid_argument("need at least 2 vertices");
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n == 0.0) throw std::invalid_argument("zero initial amplitudes");
    StateVector psi;
    psi.amp.assign(vertex_count, Cx(0, 0));
    psi.amp[0] = a / n;
    psi.amp[1] = b / n;
    return psi;
}

StateVector corner4_state(const LatticeSpec& spec) {
    StateVector psi;
    psi.amp.assign(spec.vertex_count(), Cx(0, 0));
    for (int y : {0, 1})
        for (int x : {0, 1}) psi.amp[spec.index(x, y)] = Cx(0.5, 0);
    return psi;
}

namespace {

// One local unitary in place: gather each tile's amplitudes, multiply by the
// tile block, scatter back. Tiles index disjoint vertices, so the parallel
// loop has no write conflicts and the result is bit-identical to the serial
// loop whatever the thread count.
void apply_local_inplace(const LocalUnitary& u, std::vector<Cx>& amp, ExecPolicy exec) {
    const auto& tiles = u.tess.tiles;
    const int nt = static_cast<int>(tiles.size());
    const bool par = exec == ExecPolicy::parallel;
    (void)par;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par && nt >= 256)
#endif
    for (int ti = 0; ti < nt; ++ti) {
        const auto& vs = tiles[ti].vertices;
        const int d = static_cast<int>(vs.size());
        if (d == 1) continue;  // singleton block is the identity
        const Eigen::MatrixXcd& b = u.blocks[ti];
        if (d == 2) {  // the common case for the built-in families
            Cx a0 = amp[vs[0]], a1 = amp[vs[1]];
            amp[vs[0]] = b(0, 0) * a0 + b(0, 1) * a1;
            amp[vs[1]] = b(1, 0) * a0 + b(1, 1) * a1;
            continue;
        }
        Eigen::VectorXcd in(d);
        for (int i = 0; i < d; ++i) in(i) = amp[vs[i]];
        Eigen::VectorXcd out = b * in;
        for (int i = 0; i < d; ++i) amp[vs[i]] = out(i);
    }
}

void check_dims(const LocalUnitary& u, const StateVector& psi) {
    int maxv = -1;
    for (const auto& tile : u.tess.tiles)
        for (int v : tile.vertices) maxv = std::max(maxv, v);
    if (maxv >= psi.size())
        throw std::invalid_argument("state dimension " + std::to_string(psi.size()) +
                                    " too small for tessellation touching vertex " +
                                    std::to_string(maxv));
}

}  // namespace

StateVector apply_local(const LocalUnitary& u, const StateVector& psi, ExecPolicy exec) {
    check_dims(u, psi);
    StateVector out = psi;
    apply_local_inplace(u, out.amp, exec);
    return out;
}

StateVector step(const std::vector<LocalUnitary>& plan, const StateVector& psi,
                 ExecPolicy exec) {
    for (const auto& u : plan) check_dims(u, psi);
    StateVector out = psi;
    for (const auto& u : plan) apply_local_inplace(u, out.amp, exec);
    return out;
}

void check_evolve_preconditions(const WalkFamily& family, const StateVector& psi0, int t) {
    if (t < 0) throw std::invalid_argument("step count must be >= 0");
    if (psi0.size() != family.cover.host.vertex_count)
        throw std::invalid_argument("state dimension " + std::to_string(psi0.size()) +
                                    " does not match vertex count " +
                                    std::to_string(family.cover.host.vertex_count));
    const bool is_line =
        family.kind == FamilyKind::line_uniform || family.kind == FamilyKind::line_alternating;
    if (is_line && t > (family.half_window - 2) / 2)
        throw std::invalid_argument(
            "line run of " + std::to_string(t) + " steps can wrap the cycle: need half-window "
            "M >= " + std::to_string(2 * t + 2) + ", got " + std::to_string(family.half_window));
}

RunResult evolve(const WalkFamily& family, const WalkParams& params, const StateVector& psi0,
                 int t, const EvolveOptions& opts) {
    check_evolve_preconditions(family, psi0, t);

    std::vector<LocalUnitary> plan = evolution_step_plan(family.cover, params);

    RunResult res;
    res.steps = t;
    res.params = params;
    res.recorded = opts.record_distributions;
    res.aliasing_possible = family.kind == FamilyKind::lattice && t >= family.n / 2;

    StateVector psi = psi0;
    if (res.recorded) res.per_step.push_back(distribution(psi));
    for (int s = 0; s < t; ++s) {
        for (const auto& u : plan) apply_local_inplace(u, psi.amp, opts.exec);
        double n = psi.norm();
        if (std::abs(n - 1.0) > kNormTol)
            throw std::runtime_error("norm drifted to " + std::to_string(n) + " after step " +
                                     std::to_string(s + 1));
        if (res.recorded) res.per_step.push_back(distribution(psi));
    }
    res.final_state = std::move(psi);
    return res;
}

ProbabilityDistribution distribution(const StateVector& psi) {
    ProbabilityDistribution d;
    d.probs.resize(psi.amp.size());
    double sum = 0.0;
    for (size_t i = 0; i < psi.amp.size(); ++i) {
        d.probs[i] = std::norm(psi.amp[i]);
        sum += d.probs[i];
    }
    if (std::abs(sum - 1.0) > kNormTol)
        throw std::invalid_argument("distribution sums to " + std::to_string(sum));
    return d;
}

}  // namespace oqw
