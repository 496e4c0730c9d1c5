// Timing harness for the step kernel: serial reference vs the OpenMP path on
// a large ring and a large torus. Build and run:
//   cmake --build build --target bench_step && ./build/bench_step [steps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "oqw/graph.hpp"
#include "oqw/operators.hpp"
#include "oqw/simulator.hpp"
#include "oqw/threads.hpp"

using namespace oqw;

namespace {

double time_steps(const std::vector<LocalUnitary>& plan, StateVector psi, int steps,
                  ExecPolicy exec) {
    // one warmup step so page faults and thread spin-up stay out of the timing
    psi = step(plan, psi, exec);
    const auto start = std::chrono::steady_clock::now();
    for (int s = 0; s < steps; ++s) psi = step(plan, psi, exec);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // keep the result alive so the loop cannot be optimized out
    volatile double sink = psi.norm();
    (void)sink;
    return elapsed;
}

void bench_case(const char* label, const WalkFamily& fam, const StateVector& psi0,
                int steps) {
    const WalkParams p{std::numbers::pi / 2, 0.9045568943023814};
    auto plan = evolution_step_plan(fam.cover, p);
    const double serial = time_steps(plan, psi0, steps, ExecPolicy::serial);
    const double parallel = time_steps(plan, psi0, steps, ExecPolicy::parallel);
    std::printf("%-28s %9d vertices  %4d steps  serial %8.3f ms/step  parallel %8.3f "
                "ms/step  speedup %.2fx\n",
                label, fam.cover.host.vertex_count, steps, 1e3 * serial / steps,
                1e3 * parallel / steps, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();
    const int steps = argc > 1 ? std::atoi(argv[1]) : 50;
    if (steps < 1) {
        std::fprintf(stderr, "usage: bench_step [steps >= 1]\n");
        return 2;
    }
    std::printf("threads: %d (set OQW_THREADS to change)\n", effective_threads());

    WalkFamily line = build_oriented_line(LineVariant::uniform, 1 << 19);
    bench_case("line-uniform M=2^19", line,
               amplitude_pair_state(line.cover.host.vertex_count, Cx(1, 0), Cx(1, 0)),
               steps);

    LatticeSpec spec;
    spec.n = 512;  // 1024 x 1024 torus
    WalkFamily lattice = build_oriented_lattice(spec);
    bench_case("lattice 1024x1024", lattice, corner4_state(spec), steps);
    return 0;
}
