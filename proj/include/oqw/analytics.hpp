#pragma once

// Momentum-space layer: reduced 2x2 operators on the (psi0, psi1) Fourier
// pair, dispersion relations, closed-form eigenvectors, full-cycle
// eigenvectors, and the asymptotic transport formulas with their optimizer.
//
// Quantization conventions (these pin every phase downstream):
//   line:    k = pi j / M on the 2M-cycle; psi0/psi1 carry e^{-i x k}/sqrt(M)
//            on even/odd signed positions x.
//   lattice: kt = pi k / n, lt = pi l / n, integers 0 <= k,l < 2n; psi0/psi1
//            carry e^{+i(x kt + y lt)}/(sqrt(2) n) on even/odd parity (x+y).
//
// The per-axis lattice blocks below are the ones consistent with that basis
// and with conjugating the assembled torus step operator (verified against a
// dense oracle to ~1e-15, global phase included -- so u(theta = 0) = I):
//   a_x^± = [[0, e^{±i kt}], [0, 0]],   a_y^± = [[0, 0], [e^{±i lt}, 0]],
//   u = u_y^- u_x^- u_y^+ u_x^+,        u_m = exp(i theta (e^{ia} a + e^{-ia} a^H)).

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "oqw/operators.hpp"
#include "oqw/simulator.hpp"

namespace oqw {

enum class LineModel { line1, line2 };  // line1 = uniform arcs, line2 = alternating

// a+ has e^{-ik} at (0,1); a- has e^{-ik} at (1,0).
Eigen::Matrix2cd reduced_adjacency_line1(double k, int sign);
// a± both have e^{∓ik} at (0,1).
Eigen::Matrix2cd reduced_adjacency_line2(double k, int sign);

// Closed forms; each equals the product u^- u^+ of exponentiated reduced
// blocks to ~1e-15 (tested).
Eigen::Matrix2cd reduced_u_line1(double k, const WalkParams& p);
Eigen::Matrix2cd reduced_u_line2(double k, const WalkParams& p);

Eigen::Matrix2cd reduced_u_line(LineModel model, double k, const WalkParams& p);

// Integer momenta (k,l) in [0, 2n); see header comment for the blocks.
Eigen::Matrix2cd reduced_u_lattice(int k, int l, int n, const WalkParams& p);

// Principal value in [0, pi] of
//   line1: cos(lambda) = cos^2(theta) - sin^2(theta) cos 2(k - alpha)
//   line2: cos(lambda) = cos^2(theta) - sin^2(theta) cos 2k
// The rhs lies in [-1, 1] analytically; checked defensively.
double dispersion(LineModel model, double k, const WalkParams& p);

struct Eigenpair {
    double lambda = 0.0;
    Eigen::Vector2cd plus_vector;   // u v = e^{+i lambda} v
    Eigen::Vector2cd minus_vector;  // u v = e^{-i lambda} v
    double c_plus = 0.0;            // normalizers C± = 2 sin(lambda)(sin(lambda) ± sin^2(theta) sin 2(k-alpha))
    double c_minus = 0.0;
    bool degenerate = false;  // sin(lambda) ~ 0: vectors come from a numeric
                              // eigensolve (any orthonormal basis works there)
};

Eigenpair eigenpair(LineModel model, double k, const WalkParams& p);

// psi0 on even signed positions, psi1 on odd; k = pi j / M.
void fourier_pair_line(int half_window, int j, Eigen::VectorXcd& psi0, Eigen::VectorXcd& psi1);

// psi0 on x+y even, psi1 on x+y odd; kt = pi k / n, lt = pi l / n.
void fourier_pair_lattice(int n, int k, int l, Eigen::VectorXcd& psi0, Eigen::VectorXcd& psi1);

struct FullEigenvector {
    bool degenerate = false;
    double lambda = 0.0;
    StateVector vector;  // empty when degenerate
};

// V_k^± = (sin2theta cos(k-a) psi0 + (sin^2 theta sin2(k-a) ± sin lambda) psi1)/sqrt(C±)
// on the 2M-cycle (line1 only). k must be quantized (k = pi j / M within
// 1e-9, else std::invalid_argument). Degenerate points are refused via the
// flag: any basis vector is then an eigenvector.
FullEigenvector full_eigenvector(int half_window, double k, int sign, const WalkParams& p);

// <x>/t limit for psi0 = a|0> + b|1> on the uniform line:
//   2(|a|^2-|b|^2)(1-cos theta) + i sin(2 theta)(conj(a) b e^{ia} - a conj(b) e^{-ia})/(1+|cos theta|)
// Signed; transport benchmarks compare the magnitude. Throws
// std::invalid_argument unless |a|^2+|b|^2 = 1 within 1e-10.
double asymptotic_mean_line1(Cx a, Cx b, const WalkParams& p);

// <x^2>/t^2 limit: 4(1 - |cos theta|), independent of alpha.
double asymptotic_second_moment(const WalkParams& p);

struct TransportOptimum {
    double alpha = 0.0;
    double theta = 0.0;
    double rate = 0.0;  // signed value of asymptotic_mean_line1 at (alpha, theta)
};

// Maximizes |asymptotic_mean_line1| over a 720x720 grid on [0,2pi) x [0,pi]
// followed by alternating golden-section refinement; resolves the optimum to
// well under 1e-6 in cos(theta*) and |sin(alpha*)|.
TransportOptimum optimize_line_transport(Cx a, Cx b);

}  // namespace oqw
