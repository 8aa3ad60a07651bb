#pragma once

#include <array>
#include <vector>

namespace nlslab {

enum class WeightKind { LineCompact, HalflineExp };

// Interpretation of the bump argument in the compactly supported weight's
// mollified pieces.  The published formula reads 0.4*(x-1.6) inside the
// fourth power, which leaves the bump at ~0.99934 at the support edge and
// makes the weight discontinuous at |x|=2.  `Rescaled` reads (x-1.6)/0.4,
// which vanishes with all derivatives at the edge.  Rescaled is the default;
// Literal is retained for fidelity experiments.
enum class Mollifier { Literal, Rescaled };

struct SupNorm {
    double value = 0.0;
    double abscissa = 0.0;
    long samples = 0;   // sampling density behind the estimate
};

struct KnotJump {
    double x = 0.0;
    std::array<double, 4> jump{};   // one-sided mismatch for phi, phi', phi'', phi'''
};

// Virial weight: either the compactly supported whole-line weight (linear
// core, cubic flanks, reflected cubics, mollified tails) or the half-line
// weight (x^2+x)e^{-x}.  Immutable after construction, including the cached
// antiderivative on the mollified pieces; safe for concurrent evaluation.
class WeightFunction {
  public:
    static WeightFunction line_compact(Mollifier m = Mollifier::Rescaled);
    static WeightFunction halfline_exp();

    // order-th derivative, order in 0..3; domain error for halfline with x<0
    double phi(double x, int order = 0) const;

    // antiderivative Psi(x) = int_0^x phi;  constant for |x| >= 2 (line)
    double psi(double x) const;

    const SupNorm& sup_phi2() const { return sup2_; }
    const SupNorm& sup_phi3() const { return sup3_; }

    // branch-joint mismatches (the published construction does not join
    // exactly at x = 1.6; magnitudes are reported, not repaired)
    std::vector<KnotJump> continuity_report() const;

    // sorted branch boundaries for quadrature panelization (signed, incl. 0)
    std::vector<double> knots() const;

    WeightKind kind() const { return kind_; }
    Mollifier mollifier() const { return mollifier_; }
    double psi_plateau() const { return plateau_; }   // Psi(2) (line), 3 (halfline)
    double support_radius() const;                    // 2 (line), +inf (halfline)

  private:
    WeightFunction(WeightKind k, Mollifier m);

    double phi_pos(double x, int order) const;         // line branch eval, x >= 0
    std::array<double, 4> bump(double x) const;        // right mollifier r and derivatives
    double psi_pos(double x) const;
    void build_psi_cache();
    void measure_sup_norms();

    WeightKind kind_;
    Mollifier mollifier_;
    SupNorm sup2_, sup3_;
    double plateau_ = 0.0;

    // Psi on the mollified piece [1.6, 2], dense grid + cubic interpolation
    std::vector<double> psi_cache_;
    double cache_a_ = 0.0, cache_h_ = 0.0;
};

}  // namespace nlslab
