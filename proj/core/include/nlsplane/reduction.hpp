#pragma once

#include "nlsplane/fourier_field.hpp"

namespace nlsplane {

// Carrier mode, L2 norm and the time entering the gauge of the frame shift.
struct PlaneWaveFrame {
  Mode m = kZeroMode;
  double rho = 1.0;
  double lambda = 1.0;
  double t = 0.0;
};

// v_j = u_{j+m} e^{i t (|m|^2 + 2 j.m)} on the lattice of the same cutoff
// centered at 0. Throws FrameOutOfGrid if a nonzero u_k has k - m off that
// lattice. Preserves the L2 norm.
FourierField shift_frame(const FourierField& u, const PlaneWaveFrame& frame);

// Inverse of shift_frame; the result lives on the lattice centered at frame.m.
FourierField unshift_frame(const FourierField& v, const PlaneWaveFrame& frame);

// v_0 = a e^{-i theta}, v_j = w_j e^{-i theta}. `w` shares the lattice of v
// (centered at 0) with w_0 held at 0.
struct ReducedState {
  double a = 0.0;
  double theta = 0.0;
  FourierField w;
};

// Throws ZeroModeVanishes when |v_0| < 1e-12 rho, rho = ||v||_{L2}.
ReducedState eliminate_zero_mode(const FourierField& v);
FourierField restore_zero_mode(const ReducedState& state);

// a = sqrt(rho^2 - sum_{j != 0} |w_j|^2); PerturbationTooLarge if the radicand
// is not positive.
double reconstruct_a(const FourierField& w, double rho);

// The reduced vector field: returns dw/dt with
//   i dw_j/dt = |j|^2 w_j + dP/d conj(w_j) - (w_j / 2a) dP/da,
// P = (lambda/2) sum_{j1+j2=j3+j4} w w conj(w) conj(w) with w_0 := a.
FourierField rhs_reduced(const FourierField& w, double rho, double lambda);

// Reduced Hamiltonian H~(z, conj z) evaluated group by group, with the square
// root sqrt(rho^2 - sum |z|^2) taken directly. The complex form exposes the
// roundoff imaginary residue; hamiltonian_reduced returns its real part.
Complex hamiltonian_reduced_complex(const FourierField& w, double rho,
                                    double lambda);
double hamiltonian_reduced(const FourierField& w, double rho, double lambda);

}  // namespace nlsplane
