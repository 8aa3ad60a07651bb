#pragma once

#include "nlslab/functionals.hpp"
#include "nlslab/oscillator.hpp"
#include "nlslab/record.hpp"
#include "nlslab/sampled.hpp"
#include "nlslab/weights.hpp"

namespace nlslab {

struct SolverControls {
    double dt0 = 1e-4;
    double dt_floor = 1e-12;
    double step_tol = 1e-9;          // one-step vs two-half-step L2 discrepancy
    double detect_grad_ratio = 1e6;  // blow-up signature threshold on ||u_x||^2
    int output_stride = 16;          // record monitors every this many steps
    double boundary_guard = 1e-8;    // abort when tail mass near the edge exceeds this
    double r = 2.0;                  // halfline boundary exponent
    int fixed_point_max = 50;        // halfline nonlinear boundary solve
    double fixed_point_tol = 1e-12;
};

// Strang-split spectral evolution of i u_t = -u_xx - A(t)|u|^4 u on the
// periodic truncation [-L, L), with the Lemma-style virial/energy monitors
// evaluated against the supplied whole-line weight and the p(tau) bound from
// `params`.  One run owns its state (FFT workspace included) and is
// single-threaded; independent runs may execute concurrently.
SimulationRecord run_line(const SampledField& u0, const OscillatingCoefficient& coeff, double t0,
                          double T, const SolverControls& controls, const WeightFunction& weight,
                          const BlowupParameters& params);

}  // namespace nlslab
