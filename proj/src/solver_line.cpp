#include "nlslab/solver_line.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "nlslab/detail/fft.hpp"
#include "nlslab/quadrature.hpp"

namespace nlslab {

std::string to_string(RunOutcome o) {
    switch (o) {
        case RunOutcome::Completed: return "completed";
        case RunOutcome::BlowupDetected: return "blowup_detected";
        case RunOutcome::StepFailure: return "step_failure";
    }
    return "?";
}

namespace {

using cplx = std::complex<double>;

// knot-split composite trapezoid against the weight: within each smooth
// weight branch the rule uses the grid nodes plus the branch endpoints, with
// field values at the endpoints obtained by 4-point Lagrange interpolation
struct WeightRule {
    struct Node {
        double x;
        double w;          // trapezoid weight
        int base = -1;     // grid index for direct nodes, or interpolation base
        double lag[4];     // Lagrange coefficients when interpolated
        bool interp = false;
        double phi, phi1, phi3, psi;
    };
    std::vector<Node> nodes;         // weighted nodes covering [-2,2]
    std::vector<Node> inner_nodes;   // same construction restricted to [-1,1]

    static std::vector<Node> build(const GridSpec& g, const WeightFunction& wf, double lo,
                                   double hi) {
        std::vector<double> cuts;
        for (double k : wf.knots())
            if (k > lo && k < hi) cuts.push_back(k);
        cuts.insert(cuts.begin(), lo);
        cuts.push_back(hi);

        std::vector<Node> out;
        for (size_t s = 0; s + 1 < cuts.size(); ++s) {
            const double a = cuts[s], b = cuts[s + 1];
            const double nudge = 1e-12 * (b - a);
            std::vector<Node> seg;
            auto add = [&](double x, bool interp_flag, double eval_at) {
                Node nd;
                nd.x = x;
                nd.interp = interp_flag;
                nd.phi = wf.phi(eval_at, 0);
                nd.phi1 = wf.phi(eval_at, 1);
                nd.phi3 = wf.phi(eval_at, 3);
                nd.psi = wf.psi(eval_at);
                if (interp_flag) {
                    // centered 4-point Lagrange stencil around x
                    int j0 = static_cast<int>(std::floor((x - g.x_min) / g.h)) - 1;
                    j0 = std::max(0, std::min(j0, g.n - 4));
                    nd.base = j0;
                    for (int m = 0; m < 4; ++m) {
                        double num = 1.0, den = 1.0;
                        const double xm = g.x(j0 + m);
                        for (int l = 0; l < 4; ++l) {
                            if (l == m) continue;
                            num *= x - g.x(j0 + l);
                            den *= xm - g.x(j0 + l);
                        }
                        nd.lag[m] = num / den;
                    }
                } else {
                    nd.base = static_cast<int>(std::llround((x - g.x_min) / g.h));
                }
                seg.push_back(nd);
            };
            add(a, true, a + nudge);
            const int j_first = static_cast<int>(std::ceil((a - g.x_min) / g.h + 1e-12));
            const int j_last = static_cast<int>(std::floor((b - g.x_min) / g.h - 1e-12));
            for (int j = j_first; j <= j_last; ++j) add(g.x(j), false, g.x(j));
            add(b, true, b - nudge);
            // trapezoid weights within the segment
            for (size_t i = 0; i < seg.size(); ++i) {
                double w = 0.0;
                if (i > 0) w += 0.5 * (seg[i].x - seg[i - 1].x);
                if (i + 1 < seg.size()) w += 0.5 * (seg[i + 1].x - seg[i].x);
                seg[i].w = w;
            }
            out.insert(out.end(), seg.begin(), seg.end());
        }
        return out;
    }
};

struct MonitorSums {
    double im_phi = 0.0;       // int phi Im(u conj(u_x))
    double phi1_grad = 0.0;    // int phi' |u_x|^2
    double phi1_l6 = 0.0;      // int phi' |u|^6
    double phi3_mass = 0.0;    // int phi''' |u|^2
    double psi_mass = 0.0;     // int Psi |u|^2 over [-2,2]
    double mass_in2 = 0.0;     // int_{[-2,2]} |u|^2
    double mass_in1 = 0.0;     // int_{[-1,1]} |u|^2
};

class LineRun {
  public:
    LineRun(const SampledField& u0, const OscillatingCoefficient& coeff, double t0, double T,
            const SolverControls& c, const WeightFunction& w, const BlowupParameters& params)
        : coeff_(coeff), controls_(c), weight_(w), params_(params), t0_(t0), T_(T),
          grid_(u0.grid), n_(u0.grid.n), L_(u0.grid.x_max), fft_(n_), u_(u0.values) {
        if (u0.domain != Domain::Line) throw std::invalid_argument("run_line: line fields only");
        if (L_ <= 2.0)
            throw std::invalid_argument("run_line: domain half-width must exceed the weight support (L > 2)");
        for (int j = 0; j < n_; ++j) {
            const int m = j < n_ / 2 ? j : (j == n_ / 2 ? n_ / 2 : j - n_);
            k_.push_back(M_PI * m / L_);
        }
        nodes_ = WeightRule::build(grid_, weight_, -2.0, 2.0);
        inner_nodes_ = WeightRule::build(grid_, weight_, -1.0, 1.0);
        // dt cap resolves the coefficient's oscillation
        dt_max_ = controls_.dt0;
        if (coeff_.profile() != CoeffProfile::Constant && coeff_.omega() > 0.0)
            dt_max_ = std::min(dt_max_, 1.0 / (20.0 * coeff_.omega()));
    }

    SimulationRecord run() {
        SimulationRecord rec;
        double t = t0_;
        double dt = dt_max_;
        const double t_end = t0_ + T_;

        compute_derivative();
        MonitorSums ms = monitor_sums();
        const double mass0 = mass();
        const double grad0 = grad_l2_sq();
        const double e0 = grad0 - coeff_.eval(t) / 3.0 * l6_6();
        im_phi0_ = ms.im_phi;
        psi_mass0_ = ms.psi_mass + weight_.psi_plateau() * (mass0 - ms.mass_in2);

        record_sample(rec, t, ms, mass0, grad0, mass0, e0);

        quad::KahanSum virial_rhs_acc, psi_rhs_acc, energy_int_acc;
        double prev_bracket = bracket(ms, t);
        double prev_im_phi = ms.im_phi;
        double prev_erate = coeff_.eval_prime(t) / 3.0 * l6_6();

        long steps = 0;
        long since_output = 0;
        const bool adaptive = controls_.step_tol > 0.0 &&
                              controls_.step_tol < std::numeric_limits<double>::infinity();

        while (t < t_end - 1e-15 * std::max(1.0, std::abs(t_end))) {
            const double dt_step = std::min(dt, t_end - t);
            std::vector<cplx> save = u_;

            bool accepted = true;
            if (adaptive) {
                strang_step(t, dt_step);
                std::vector<cplx> coarse = u_;
                u_ = save;
                strang_step(t, 0.5 * dt_step);
                strang_step(t + 0.5 * dt_step, 0.5 * dt_step);
                double diff2 = 0.0, norm2 = 0.0;
                for (int j = 0; j < n_; ++j) {
                    diff2 += std::norm(coarse[j] - u_[j]);
                    norm2 += std::norm(u_[j]);
                }
                const double err = std::sqrt(diff2 / std::max(norm2, 1e-300));
                if (err > controls_.step_tol) {
                    accepted = false;
                    u_ = save;
                    if (dt_step <= controls_.dt_floor) {
                        rec.outcome = RunOutcome::StepFailure;
                        rec.detection_time = t;
                        rec.detection_trigger = "dt floor reached without meeting step tolerance";
                        break;
                    }
                    dt = 0.5 * dt_step;
                    continue;
                }
                if (err < 0.05 * controls_.step_tol) dt = std::min(2.0 * dt_step, dt_max_);
                else dt = dt_step;
            } else {
                strang_step(t, dt_step);
            }
            (void)accepted;

            t += dt_step;
            ++steps;
            ++since_output;

            compute_derivative();
            ms = monitor_sums();
            const double m_now = mass();
            const double g_now = grad_l2_sq();
            const double l6_now = l6_6();
            const double e_now = g_now - coeff_.eval(t) / 3.0 * l6_now;

            // trapezoid-in-time accumulations of the identity right-hand sides
            const double br = bracket(ms, t);
            virial_rhs_acc.add(0.5 * dt_step * (prev_bracket + br));
            prev_bracket = br;
            psi_rhs_acc.add(0.5 * dt_step * (prev_im_phi + ms.im_phi));
            prev_im_phi = ms.im_phi;
            const double er = coeff_.eval_prime(t) / 3.0 * l6_now;
            energy_int_acc.add(0.5 * dt_step * (prev_erate + er));
            prev_erate = er;

            rec.max_mass_drift = std::max(rec.max_mass_drift, std::abs(m_now - mass0) / mass0);

            const bool final_step = t >= t_end - 1e-15 * std::max(1.0, std::abs(t_end));
            const bool detected = g_now > controls_.detect_grad_ratio * grad0;
            const double band = boundary_band_mass();
            const bool radiating = band / mass0 > controls_.boundary_guard;

            if (since_output >= controls_.output_stride || final_step || detected || radiating) {
                since_output = 0;
                record_sample(rec, t, ms, m_now, g_now, mass0, e_now,
                              virial_rhs_acc.value(), psi_rhs_acc.value(), energy_int_acc.value(),
                              e0);
            }
            if (detected) {
                rec.outcome = RunOutcome::BlowupDetected;
                rec.detection_time = t;
                rec.detection_trigger = "grad_l2_sq exceeded detect.grad_ratio x initial";
                break;
            }
            if (radiating) {
                rec.outcome = RunOutcome::StepFailure;
                rec.detection_time = t;
                rec.detection_trigger = "boundary mass density exceeded the radiation guard";
                break;
            }
        }
        rec.final_dt = dt;
        rec.steps = steps;
        return rec;
    }

  private:
    void linear_half(std::vector<cplx>& v, double dt) {
        fft_.forward(v);
        if (dt != cached_dt_) {
            phase_.resize(n_);
            for (int j = 0; j < n_; ++j)
                phase_[j] = std::polar(1.0, -k_[j] * k_[j] * dt * 0.5);
            cached_dt_ = dt;
        }
        for (int j = 0; j < n_; ++j) v[j] *= phase_[j];
        fft_.backward(v);
        const double inv = 1.0 / n_;
        for (auto& z : v) z *= inv;
    }

    void strang_step(double t, double dt) {
        linear_half(u_, dt);
        const double a_mid = coeff_.eval(t + 0.5 * dt);
        for (auto& z : u_) {
            const double p = std::norm(z);
            z *= std::polar(1.0, a_mid * dt * p * p);
        }
        linear_half(u_, dt);
    }

    void compute_derivative() {
        hat_ = u_;
        fft_.forward(hat_);
        ux_ = hat_;
        for (int j = 0; j < n_; ++j) {
            const double k = (j == n_ / 2) ? 0.0 : k_[j];   // drop the Nyquist derivative mode
            ux_[j] *= cplx(0.0, k);
        }
        fft_.backward(ux_);
        const double inv = 1.0 / n_;
        for (auto& z : ux_) z *= inv;
    }

    double mass() const {
        quad::KahanSum s;
        for (const auto& z : u_) s.add(std::norm(z));
        return s.value() * grid_.h;
    }
    double l6_6() const {
        quad::KahanSum s;
        for (const auto& z : u_) {
            const double p = std::norm(z);
            s.add(p * p * p);
        }
        return s.value() * grid_.h;
    }
    double grad_l2_sq() const {
        quad::KahanSum s;
        for (int j = 0; j < n_; ++j) s.add(k_[j] * k_[j] * std::norm(hat_[j]));
        return s.value() * 2.0 * L_ / (static_cast<double>(n_) * n_);
    }
    double boundary_band_mass() const {
        quad::KahanSum s;
        const double edge = 0.9 * L_;
        for (int j = 0; j < n_; ++j)
            if (std::abs(grid_.x(j)) >= edge) s.add(std::norm(u_[j]));
        return s.value() * grid_.h;
    }

    cplx interp(const std::vector<cplx>& v, const WeightRule::Node& nd) const {
        if (!nd.interp) return v[nd.base];
        cplx acc = 0.0;
        for (int m = 0; m < 4; ++m) acc += nd.lag[m] * v[nd.base + m];
        return acc;
    }

    MonitorSums monitor_sums() const {
        MonitorSums ms;
        quad::KahanSum im_phi, p1g, p1l6, p3m, psim, m2;
        for (const auto& nd : nodes_) {
            const cplx uu = interp(u_, nd);
            const cplx dd = interp(ux_, nd);
            const double p = std::norm(uu);
            const double imv = std::imag(uu * std::conj(dd));
            im_phi.add(nd.w * nd.phi * imv);
            p1g.add(nd.w * nd.phi1 * std::norm(dd));
            p1l6.add(nd.w * nd.phi1 * p * p * p);
            p3m.add(nd.w * nd.phi3 * p);
            psim.add(nd.w * nd.psi * p);
            m2.add(nd.w * p);
        }
        quad::KahanSum m1;
        for (const auto& nd : inner_nodes_) m1.add(nd.w * std::norm(interp(u_, nd)));
        ms.im_phi = im_phi.value();
        ms.phi1_grad = p1g.value();
        ms.phi1_l6 = p1l6.value();
        ms.phi3_mass = p3m.value();
        ms.psi_mass = psim.value();
        ms.mass_in2 = m2.value();
        ms.mass_in1 = m1.value();
        return ms;
    }

    double bracket(const MonitorSums& ms, double t) const {
        return 2.0 * ms.phi1_grad - 2.0 * coeff_.eval(t) / 3.0 * ms.phi1_l6 - 0.5 * ms.phi3_mass;
    }

    void record_sample(SimulationRecord& rec, double t, const MonitorSums& ms, double m_now,
                       double g_now, double mass0, double e_now, double virial_rhs = 0.0,
                       double psi_rhs_int = 0.0, double energy_int = 0.0, double e0 = 0.0) {
        const double tau = t - t0_;
        rec.times.push_back(t);
        rec.mass.push_back(m_now);
        rec.energy.push_back(e_now);
        rec.grad_l2_sq.push_back(g_now);
        rec.l6_6.push_back(l6_6());
        const double lhs = -ms.im_phi + im_phi0_;
        rec.virial_lhs.push_back(lhs);
        rec.virial_rhs.push_back(virial_rhs);
        const double psim = ms.psi_mass + weight_.psi_plateau() * (m_now - ms.mass_in2);
        rec.psi_mass.push_back(psim);
        rec.psi_mass_rhs.push_back(psi_mass0_ - 2.0 * psi_rhs_int);
        rec.p_bound.push_back(params_.p_of(tau));
        const double tail = std::max(m_now - ms.mass_in1, 0.0);
        rec.tail_l2_4.push_back(tail * tail);
        rec.a_of_t.push_back(coeff_.eval(t));
        const double eres = e_now - (tau == 0.0 ? e_now : e0) + energy_int;
        rec.energy_rate_residual.push_back(tau == 0.0 ? 0.0 : eres);

        const double vscale = std::max({1.0, std::abs(lhs), std::abs(virial_rhs)});
        if (tau > 0.0)
            rec.max_virial_residual =
                std::max(rec.max_virial_residual, std::abs(lhs - virial_rhs) / vscale);
        const double escale = std::max({1.0, std::abs(e_now), std::abs(e0)});
        if (tau > 0.0)
            rec.max_energy_residual = std::max(rec.max_energy_residual, std::abs(eres) / escale);
        (void)mass0;
    }

    const OscillatingCoefficient& coeff_;
    SolverControls controls_;
    const WeightFunction& weight_;
    BlowupParameters params_;
    double t0_, T_;
    GridSpec grid_;
    int n_;
    double L_;
    detail::Fft fft_;
    std::vector<cplx> u_, hat_, ux_;
    std::vector<double> k_;
    std::vector<cplx> phase_;
    double cached_dt_ = -1.0;
    std::vector<WeightRule::Node> nodes_, inner_nodes_;
    double dt_max_ = 0.0;
    double im_phi0_ = 0.0, psi_mass0_ = 0.0;
};

}  // namespace

SimulationRecord run_line(const SampledField& u0, const OscillatingCoefficient& coeff, double t0,
                          double T, const SolverControls& controls, const WeightFunction& weight,
                          const BlowupParameters& params) {
    if (!(T > 0.0)) throw std::invalid_argument("run_line: T must be positive");
    LineRun run(u0, coeff, t0, T, controls, weight, params);
    return run.run();
}

}  // namespace nlslab
