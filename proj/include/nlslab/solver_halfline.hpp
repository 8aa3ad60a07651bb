#pragma once

#include "nlslab/functionals.hpp"
#include "nlslab/oscillator.hpp"
#include "nlslab/record.hpp"
#include "nlslab/sampled.hpp"
#include "nlslab/solver_line.hpp"
#include "nlslab/weights.hpp"

namespace nlslab {

// Crank-Nicolson evolution of i u_t = -u_xx on [0, L] with the nonlinear
// Robin flux u_x(t,0+) = -A(t)|u(t,0)|^r u(t,0) imposed through a
// second-order ghost point and resolved by damped fixed-point iteration
// within each step; homogeneous Dirichlet at the far end.  Monitors follow
// the half-line energy/virial identities against the (x^2+x)e^{-x} weight.
SimulationRecord run_halfline(const SampledField& u0, const OscillatingCoefficient& coeff,
                              double t0, double T, const SolverControls& controls,
                              const WeightFunction& weight, const BlowupParameters& params);

}  // namespace nlslab
