#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlslab {

enum class RunOutcome { Completed, BlowupDetected, StepFailure };

std::string to_string(RunOutcome o);

// Time series of the monitored quantities plus the detection state.
struct SimulationRecord {
    std::vector<double> times;
    std::vector<double> mass, energy, grad_l2_sq, l6_6;
    std::vector<double> virial_lhs, virial_rhs;     // Lemma-style first identity, both sides
    std::vector<double> psi_mass, psi_mass_rhs;     // second identity, both sides
    std::vector<double> p_bound;                    // alpha + lambda*tau + beta*tau^2
    std::vector<double> tail_l2_4;                  // ||u||_{L2(|x|>=1)}^4
    std::vector<double> a_of_t;
    std::vector<double> energy_rate_residual;       // E(t)-E(t0)+int a' (...)
    std::vector<double> trace_abs;                  // halfline only
    std::vector<double> bc_residual;                // halfline only

    RunOutcome outcome = RunOutcome::Completed;
    double detection_time = 0.0;
    std::string detection_trigger;

    double max_mass_drift = 0.0;       // relative to the initial mass
    double max_energy_residual = 0.0;  // energy-rate identity, relative
    double max_virial_residual = 0.0;  // first identity, relative
    double max_bc_residual = 0.0;      // halfline ghost-point defect
    double bc_compat_mismatch = 0.0;   // |u0'(0) + A(t0)|u0(0)|^r u0(0)|, logged not enforced
    double final_dt = 0.0;
    long steps = 0;

    void write_csv(std::ostream& os, bool halfline) const;
};

}  // namespace nlslab
