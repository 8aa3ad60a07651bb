#include "nlslab/solver_halfline.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>

#include "nlslab/quadrature.hpp"

namespace nlslab {

namespace {

using cplx = std::complex<double>;

// Tridiagonal Crank-Nicolson system for i u_t = -u_xx with the ghost-point
// boundary row.  The nonlinear flux enters only the first rhs entry, so each
// step needs one factorized solve for the base rhs and one for the unit
// boundary load; the fixed point then iterates scalar algebra.
class CnSystem {
  public:
    CnSystem(int n_unknowns, double h) : n_(n_unknowns), h_(h) {}

    void factor(double dt) {
        dt_ = dt;
        const cplx off(0.0, dt / (2.0 * h_ * h_));
        const cplx diag = cplx(1.0, 0.0) + cplx(0.0, dt / (h_ * h_));
        cp_.assign(n_, cplx(0.0));
        dp_.assign(n_, cplx(0.0));
        // row 0: diag*u0 - 2*off*u1 ; interior rows: -off*(u_{j-1}+u_{j+1}) + diag*u_j
        cp_[0] = -2.0 * off / diag;
        dp_[0] = diag;
        for (int j = 1; j < n_; ++j) {
            const cplx denom = diag - (-off) * cp_[j - 1];
            dp_[j] = denom;
            cp_[j] = -off / denom;
        }
        off_ = off;
    }

    // solve M w = rhs (rhs not modified)
    void solve(const std::vector<cplx>& rhs, std::vector<cplx>& w) const {
        scratch_.assign(n_, cplx(0.0));
        scratch_[0] = rhs[0] / dp_[0];
        for (int j = 1; j < n_; ++j)
            scratch_[j] = (rhs[j] + off_ * scratch_[j - 1]) / dp_[j];
        w.assign(n_, cplx(0.0));
        w[n_ - 1] = scratch_[n_ - 1];
        for (int j = n_ - 2; j >= 0; --j) w[j] = scratch_[j] - cp_[j] * w[j + 1];
    }

    double dt() const { return dt_; }

  private:
    int n_;
    double h_;
    double dt_ = -1.0;
    cplx off_;
    std::vector<cplx> cp_, dp_;
    mutable std::vector<cplx> scratch_;
};

class HalflineRun {
  public:
    HalflineRun(const SampledField& u0, const OscillatingCoefficient& coeff, double t0, double T,
                const SolverControls& c, const WeightFunction& w, const BlowupParameters& params)
        : coeff_(coeff), controls_(c), weight_(w), params_(params), t0_(t0), T_(T),
          grid_(u0.grid), n_(u0.grid.n), h_(u0.grid.h), sys_(u0.grid.n - 1, u0.grid.h),
          u_(u0.values) {
        if (u0.domain != Domain::Halfline)
            throw std::invalid_argument("run_halfline: halfline fields only");
        u_.back() = 0.0;   // far-end Dirichlet
        wphi_.resize(n_);
        wphi1_.resize(n_);
        wphi3_.resize(n_);
        wpsi_.resize(n_);
        for (int j = 0; j < n_; ++j) {
            const double x = grid_.x(j);
            wphi_[j] = weight_.phi(x, 0);
            wphi1_[j] = weight_.phi(x, 1);
            wphi3_[j] = weight_.phi(x, 3);
            wpsi_[j] = weight_.psi(x);
        }
        dt_max_ = controls_.dt0;
        if (coeff_.profile() != CoeffProfile::Constant && coeff_.omega() > 0.0)
            dt_max_ = std::min(dt_max_, 1.0 / (20.0 * coeff_.omega()));
    }

    SimulationRecord run() {
        SimulationRecord rec;
        double t = t0_;
        double dt = dt_max_;
        const double t_end = t0_ + T_;
        const double r = controls_.r;

        derivative();
        const double mass0 = mass();
        const double grad0 = grad_l2_sq();
        // compatibility of the datum with the boundary condition, logged only
        rec.bc_compat_mismatch = std::abs(
            ux_[0] + coeff_.eval(t0_) * std::pow(std::abs(u_[0]), r) * u_[0]);
        im_phi0_ = im_phi();
        psi_mass0_ = psi_mass();
        const double e0 = energy_now(t);

        record_sample(rec, t, mass0, grad0, e0, mass0, 0.0, 0.0, 0.0, e0, 0.0);

        quad::KahanSum virial_rhs_acc, psi_rhs_acc, energy_int_acc;
        double prev_bracket = bracket(t, r);
        double prev_im_phi = im_phi0_;
        double prev_erate = erate(t, r);

        long steps = 0, since_output = 0;
        const bool adaptive = controls_.step_tol > 0.0 &&
                              controls_.step_tol < std::numeric_limits<double>::infinity();

        while (t < t_end - 1e-15 * std::max(1.0, std::abs(t_end))) {
            const double dt_step = std::min(dt, t_end - t);
            std::vector<cplx> save = u_;
            double bc_defect = 0.0;

            bool ok = take_step(t, dt_step, r, bc_defect);
            if (ok && adaptive) {
                std::vector<cplx> coarse = u_;
                u_ = save;
                double d1 = 0.0, d2 = 0.0;
                ok = take_step(t, 0.5 * dt_step, r, d1) &&
                     take_step(t + 0.5 * dt_step, 0.5 * dt_step, r, d2);
                bc_defect = std::max(d1, d2);
                if (ok) {
                    double diff2 = 0.0, norm2 = 0.0;
                    for (int j = 0; j < n_; ++j) {
                        diff2 += std::norm(coarse[j] - u_[j]);
                        norm2 += std::norm(u_[j]);
                    }
                    const double err = std::sqrt(diff2 / std::max(norm2, 1e-300));
                    ok = err <= controls_.step_tol;
                    if (ok && err < 0.05 * controls_.step_tol)
                        dt = std::min(2.0 * dt_step, dt_max_);
                    else if (ok)
                        dt = dt_step;
                }
            }
            if (!ok) {
                u_ = save;
                if (dt_step <= controls_.dt_floor) {
                    rec.outcome = RunOutcome::StepFailure;
                    rec.detection_time = t;
                    rec.detection_trigger =
                        "dt floor reached (step tolerance or boundary fixed point unmet)";
                    break;
                }
                dt = 0.5 * dt_step;
                continue;
            }

            t += dt_step;
            ++steps;
            ++since_output;
            derivative();

            const double m_now = mass();
            const double g_now = grad_l2_sq();
            const double e_now = energy_now(t);
            rec.max_mass_drift = std::max(rec.max_mass_drift, std::abs(m_now - mass0) / mass0);
            rec.max_bc_residual = std::max(rec.max_bc_residual, bc_defect);

            const double br = bracket(t, r);
            virial_rhs_acc.add(0.5 * dt_step * (prev_bracket + br));
            prev_bracket = br;
            const double ip = im_phi();
            psi_rhs_acc.add(0.5 * dt_step * (prev_im_phi + ip));
            prev_im_phi = ip;
            const double er = erate(t, r);
            energy_int_acc.add(0.5 * dt_step * (prev_erate + er));
            prev_erate = er;

            const bool final_step = t >= t_end - 1e-15 * std::max(1.0, std::abs(t_end));
            const bool detected = g_now > controls_.detect_grad_ratio * grad0;
            const bool radiating = boundary_band_mass() / mass0 > controls_.boundary_guard;

            if (since_output >= controls_.output_stride || final_step || detected || radiating) {
                since_output = 0;
                record_sample(rec, t, m_now, g_now, e_now, mass0, virial_rhs_acc.value(),
                              psi_rhs_acc.value(), energy_int_acc.value(), e0, bc_defect);
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
    // one CN step; returns false when the boundary fixed point diverges
    bool take_step(double t, double dt, double r, double& bc_defect) {
        if (dt != sys_.dt()) sys_.factor(dt);
        const int m = n_ - 1;   // unknowns (far end pinned at 0)

        // explicit half: rhs = u + (i dt/2)(D u + b(u0, t))
        const double A_n = coeff_.eval(t);
        const double A_n1 = coeff_.eval(t + dt);
        const cplx idt2(0.0, dt / 2.0);
        std::vector<cplx> rhs(m);
        {
            const double ih2 = 1.0 / (h_ * h_);
            rhs[0] = u_[0] + idt2 * ((2.0 * u_[1] - 2.0 * u_[0]) * ih2 +
                                     (2.0 / h_) * A_n * std::pow(std::abs(u_[0]), r) * u_[0]);
            for (int j = 1; j < m; ++j) {
                const cplx up = (j + 1 < n_) ? u_[j + 1] : cplx(0.0);
                rhs[j] = u_[j] + idt2 * ((up - 2.0 * u_[j] + u_[j - 1]) * ih2);
            }
        }

        std::vector<cplx> w_base, w_unit;
        sys_.solve(rhs, w_base);
        std::vector<cplx> e0v(m, cplx(0.0));
        e0v[0] = 1.0;
        sys_.solve(e0v, w_unit);

        // scalar fixed point for z = u0^{n+1}:
        //   z = w_base0 + kappa |z|^r z * w_unit0,  kappa = (i dt / h) A(t+dt)
        const cplx kappa = idt2 * (2.0 / h_) * A_n1;
        const cplx a0 = w_base[0], b0 = w_unit[0] * kappa;
        auto F = [&](cplx z) { return a0 + b0 * std::pow(std::abs(z), r) * z; };

        cplx z = u_[0];
        double theta = 0.5, prev_def = std::numeric_limits<double>::infinity();
        bool converged = false;
        const double tol = controls_.fixed_point_tol;
        for (int it = 0; it < controls_.fixed_point_max; ++it) {
            const cplx fz = F(z);
            const double def = std::abs(fz - z);
            if (def <= tol * std::max(1.0, std::abs(z))) { converged = true; break; }
            if (def > prev_def) theta = std::max(0.5 * theta, 1.0 / 64.0);
            prev_def = def;
            z += theta * (fz - z);
        }
        if (!converged) return false;

        // Newton polish of G(z) = z - F(z) toward roundoff (Wirtinger 2x2)
        if (std::abs(z) > 1e-12 || r >= 2.0) {
            for (int it = 0; it < 6; ++it) {
                const double za = std::abs(z);
                const cplx G = z - F(z);
                if (std::abs(G) <= 1e-15 * std::max(1.0, za)) break;
                const double zr = za > 0.0 ? std::pow(za, r) : 0.0;
                const cplx Gz = 1.0 - b0 * (0.5 * r + 1.0) * zr;
                const cplx Gzb = (za > 0.0) ? -b0 * (0.5 * r) * zr / (za * za) * z * z : cplx(0.0);
                const double det = std::norm(Gz) - std::norm(Gzb);
                if (det == 0.0) break;
                const cplx dz = (std::conj(Gz) * G - Gzb * std::conj(G)) / det;
                z -= dz;
            }
        }

        // the achieved u-space defect mapped back to flux units
        const double def = std::abs(F(z) - z);
        const double flux_gain = dt / h_ * std::abs(w_unit[0]);
        bc_defect = flux_gain > 0.0 ? def / flux_gain : def;

        const cplx zeta = kappa * std::pow(std::abs(z), r) * z;
        for (int j = 0; j < m; ++j) u_[j] = w_base[j] + zeta * w_unit[j];
        u_[n_ - 1] = 0.0;
        return true;
    }

    void derivative() {
        ux_.assign(n_, cplx(0.0));
        ux_[0] = (-3.0 * u_[0] + 4.0 * u_[1] - u_[2]) / (2.0 * h_);
        ux_[n_ - 1] = (3.0 * u_[n_ - 1] - 4.0 * u_[n_ - 2] + u_[n_ - 3]) / (2.0 * h_);
        for (int j = 1; j + 1 < n_; ++j) ux_[j] = (u_[j + 1] - u_[j - 1]) / (2.0 * h_);
    }

    double trap(const std::function<double(int)>& f) const {
        quad::KahanSum s;
        for (int j = 0; j < n_; ++j) {
            const double w = (j == 0 || j == n_ - 1) ? 0.5 : 1.0;
            s.add(w * f(j));
        }
        return s.value() * h_;
    }

    double mass() const { return trap([this](int j) { return std::norm(u_[j]); }); }
    double grad_l2_sq() const { return trap([this](int j) { return std::norm(ux_[j]); }); }
    double im_phi() const {
        return trap([this](int j) { return wphi_[j] * std::imag(u_[j] * std::conj(ux_[j])); });
    }
    double psi_mass() const {
        return trap([this](int j) { return wpsi_[j] * std::norm(u_[j]); });
    }
    double energy_now(double t) const {
        const double r = controls_.r;
        return grad_l2_sq() -
               coeff_.eval(t) * 2.0 / (r + 2.0) * std::pow(std::abs(u_[0]), r + 2.0);
    }
    double bracket(double t, double r) const {
        const double p1g = trap([this](int j) { return wphi1_[j] * std::norm(ux_[j]); });
        const double p3m = trap([this](int j) { return wphi3_[j] * std::norm(u_[j]); });
        return -coeff_.eval(t) * std::pow(std::abs(u_[0]), r + 2.0) - 0.5 * p3m + 2.0 * p1g;
    }
    double erate(double t, double r) const {
        return coeff_.eval_prime(t) * 2.0 / (r + 2.0) * std::pow(std::abs(u_[0]), r + 2.0);
    }
    double boundary_band_mass() const {
        quad::KahanSum s;
        const double edge = 0.9 * grid_.x_max;
        for (int j = 0; j < n_; ++j)
            if (grid_.x(j) >= edge) s.add(std::norm(u_[j]));
        return s.value() * h_;
    }
    double tail_mass_ge1() const {
        // trapezoid with a linear split of the cell containing x = 1
        if (grid_.x_max <= 1.0) return 0.0;
        quad::KahanSum s;
        for (int j = 0; j + 1 < n_; ++j) {
            const double xa = grid_.x(j), xb = grid_.x(j + 1);
            if (xb <= 1.0) continue;
            const double pa = std::norm(u_[j]), pb = std::norm(u_[j + 1]);
            if (xa >= 1.0) {
                s.add(0.5 * (pa + pb) * h_);
            } else {
                const double f = (1.0 - xa) / h_;
                const double p1 = pa + f * (pb - pa);
                s.add(0.5 * (p1 + pb) * (xb - 1.0));
            }
        }
        return s.value();
    }

    void record_sample(SimulationRecord& rec, double t, double m_now, double g_now, double e_now,
                       double mass0, double virial_rhs, double psi_rhs_int, double energy_int,
                       double e0, double bc_defect) {
        const double tau = t - t0_;
        rec.times.push_back(t);
        rec.mass.push_back(m_now);
        rec.energy.push_back(e_now);
        rec.grad_l2_sq.push_back(g_now);
        rec.l6_6.push_back(trap([this](int j) {
            const double p = std::norm(u_[j]);
            return p * p * p;
        }));
        const double lhs = -im_phi() + im_phi0_;
        rec.virial_lhs.push_back(lhs);
        rec.virial_rhs.push_back(virial_rhs);
        rec.psi_mass.push_back(psi_mass());
        rec.psi_mass_rhs.push_back(psi_mass0_ - 2.0 * psi_rhs_int);
        rec.p_bound.push_back(params_.p_of(tau));
        const double tail = tail_mass_ge1();
        rec.tail_l2_4.push_back(tail * tail);
        rec.a_of_t.push_back(coeff_.eval(t));
        const double eres = tau == 0.0 ? 0.0 : e_now - e0 + energy_int;
        rec.energy_rate_residual.push_back(eres);
        rec.trace_abs.push_back(std::abs(u_[0]));
        rec.bc_residual.push_back(bc_defect);

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
    double h_;
    CnSystem sys_;
    std::vector<cplx> u_, ux_;
    std::vector<double> wphi_, wphi1_, wphi3_, wpsi_;
    double dt_max_ = 0.0;
    double im_phi0_ = 0.0, psi_mass0_ = 0.0;
};

}  // namespace

SimulationRecord run_halfline(const SampledField& u0, const OscillatingCoefficient& coeff,
                              double t0, double T, const SolverControls& controls,
                              const WeightFunction& weight, const BlowupParameters& params) {
    if (!(T > 0.0)) throw std::invalid_argument("run_halfline: T must be positive");
    if (weight.kind() != WeightKind::HalflineExp)
        throw std::invalid_argument("run_halfline: halfline weight required");
    HalflineRun run(u0, coeff, t0, T, controls, weight, params);
    return run.run();
}

}  // namespace nlslab
