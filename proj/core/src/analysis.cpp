#include "bcslab/analysis.hpp"

#include "bcslab/rng.hpp"
#include "bcslab/simulate.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <map>

namespace bcslab {

Real spectral_abscissa(const RestrictedGenerator& gen) {
    if (gen.mat_a.rows() == 0) return -std::numeric_limits<Real>::infinity();
    const ComplexVector vals = eigenvalues_only(gen.mat_a);
    return vals(0).real();  // sorted by real part descending
}

std::vector<SweepEntry> resolvent_sweep(const RestrictedGenerator& gen,
                                        const std::vector<Real>& s_grid) {
    const Index n = gen.mat_a.rows();
    const bool real_gen = gen.mat_a.imag().isZero(0.0);
    std::map<Real, Real> symmetric_cache;

    std::vector<SweepEntry> sweep;
    sweep.reserve(s_grid.size());
    for (Real s : s_grid) {
        SweepEntry e;
        e.s = s;
        Real sigma = -1;
        if (real_gen) {
            auto it = symmetric_cache.find(std::abs(s));
            if (it != symmetric_cache.end()) sigma = it->second;
        }
        if (sigma < 0) {
            ComplexMatrix shifted = -gen.mat_a;
            shifted.diagonal().array() += Complex(0, s);
            sigma = weighted_min_singular(shifted, gen.gram);
            if (real_gen) symmetric_cache[std::abs(s)] = sigma;
        }
        if (sigma <= 0 || !std::isfinite(sigma)) {
            e.singular = true;
            e.resnorm = std::numeric_limits<Real>::infinity();
        } else {
            e.resnorm = 1.0 / sigma;
        }
        sweep.push_back(e);
        (void)n;
    }
    return sweep;
}

SlopeFit polynomial_exponent_estimate(const std::vector<SweepEntry>& sweep,
                                      Real band_lo, Real band_hi) {
    std::vector<std::pair<Real, Real>> pts;
    for (const SweepEntry& e : sweep) {
        if (e.singular || e.s < band_lo || e.s > band_hi || e.s <= 0 || e.resnorm <= 0) continue;
        pts.emplace_back(std::log(e.s), std::log(e.resnorm));
    }
    if (pts.size() < 8) {
        throw IllConditionedFit("polynomial_exponent_estimate: fewer than 8 band points");
    }
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const Real np = static_cast<Real>(pts.size());
    const Real denom = np * sxx - sx * sx;
    if (std::abs(denom) < 1e-12 * np * std::max(sxx, Real(1))) {
        throw IllConditionedFit("polynomial_exponent_estimate: band too narrow");
    }
    SlopeFit fit;
    fit.band_lo = band_lo;
    fit.band_hi = band_hi;
    fit.slope = (np * sxy - sx * sy) / denom;
    const Real intercept = (sy - fit.slope * sx) / np;
    Real rss = 0;
    for (auto [x, y] : pts) {
        const Real e = y - (intercept + fit.slope * x);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / np);
    fit.exponent = fit.slope != 0 ? 1.0 / fit.slope : std::numeric_limits<Real>::infinity();
    return fit;
}

Real passivity_check(const DiscreteBoundaryNode& node, int samples, uint64_t seed) {
    DeterministicRng rng(seed);
    Real worst = -std::numeric_limits<Real>::infinity();
    for (int i = 0; i < samples; ++i) {
        ComplexVector z = rng.complex_gaussian_vector(node.state_dim());
        ComplexVector x = node.gram.factor_solve(z);
        const Real nrm = node.gram.norm(x);
        if (nrm > 0) x /= nrm;
        worst = std::max(worst, passivity_deviation(node, x));
    }
    return worst;
}

Real hinf_bound(const DiscreteBoundaryNode& node, const ComplexMatrix& k,
                const std::vector<Complex>& grid, HinfForm form) {
    const Index m = node.input_dim();
    if (k.rows() != m || k.cols() != node.output_dim()) {
        throw NumericError("hinf_bound: gain must map Y -> U");
    }
    ComplexMatrix kinv;
    if (form == HinfForm::KinvPlusP) {
        kinv = solve_linear(k, ComplexMatrix::Identity(m, m));
    }
    Real sup = 0;
    for (Complex lambda : grid) {
        const TransferSample ts = transfer(node, lambda);
        ComplexMatrix mat;
        switch (form) {
            case HinfForm::MinusKP:
                mat = ComplexMatrix::Identity(m, m) - k * ts.p;
                break;
            case HinfForm::PlusKP:
                mat = ComplexMatrix::Identity(m, m) + k * ts.p;
                break;
            case HinfForm::KinvPlusP:
                mat = kinv + ts.p;
                break;
        }
        Eigen::JacobiSVD<ComplexMatrix> svd(mat);
        const Real smin = svd.singularValues()(mat.rows() - 1);
        if (smin <= 0) {
            throw SingularAtLambda("hinf_bound: sensitivity matrix singular on the grid");
        }
        sup = std::max(sup, 1.0 / smin);
    }
    return sup;
}

WellPosednessEstimate wellposedness_constant(const DiscreteBoundaryNode& node, Real tau,
                                             const WellPosednessOptions& opts) {
    if (tau <= 0 || opts.dt <= 0) throw NumericError("wellposedness_constant: tau, dt > 0 required");
    const Index m = node.input_dim();

    DiscreteBoundaryNode probe_node = node;
    if (opts.output_override.size() > 0) {
        if (opts.output_override.cols() != node.state_dim()) {
            throw NumericError("wellposedness_constant: output override has wrong width");
        }
        probe_node.op_c = opts.output_override;
    }
    const Index p = probe_node.output_dim();

    const CompressedRealization r = build_realization(probe_node);
    const Index kdim = r.kernel.cols();
    const auto steps = static_cast<Index>(std::llround(tau / opts.dt));
    const Real dt = opts.dt;
    const MidpointStepper stepper(r.gen, dt);

    const int n_state = opts.state_probes;
    const int n_input = m > 0 ? opts.input_probes : 0;
    const Index total = n_state + n_input;
    if (total == 0) throw NumericError("wellposedness_constant: no probes requested");

    // State probes start from random kernel states with zero input; input
    // probes start at rest and are driven by band-limited random signals.
    ComplexMatrix z(kdim, total);
    std::vector<InputSignal> inputs(static_cast<size_t>(total));
    RealVector denom = RealVector::Zero(total);
    for (int i = 0; i < n_state; ++i) {
        DeterministicRng rng(mix_seed(opts.seed, 0x1000 + static_cast<uint64_t>(i)));
        ComplexVector zi = rng.complex_gaussian_vector(kdim);
        zi /= zi.norm();
        z.col(i) = zi;
        denom(i) = 1.0;  // |x0|_M^2 = |z|^2 for kernel states
        inputs[static_cast<size_t>(i)] = InputSignal::zero();
    }
    const Real cutoff = opts.input_cutoff_fraction * 3.14159265358979323846 / dt;
    for (int i = 0; i < n_input; ++i) {
        z.col(n_state + i).setZero();
        inputs[static_cast<size_t>(n_state + i)] =
            InputSignal::band_limited(mix_seed(opts.seed, 0x2000 + static_cast<uint64_t>(i)), cutoff);
    }

    auto input_matrix = [&](Real t, Index hint) {
        ComplexMatrix u = ComplexMatrix::Zero(m, total);
        for (Index j = 0; j < total; ++j) {
            if (inputs[static_cast<size_t>(j)].kind == InputSignal::Kind::Zero) continue;
            u.col(j) = inputs[static_cast<size_t>(j)].at(t, m, dt, hint);
        }
        return u;
    };

    RealVector y_l2 = RealVector::Zero(total);
    RealVector u_l2 = RealVector::Zero(total);

    ComplexMatrix u_prev = input_matrix(0.0, 0);
    {
        ComplexMatrix y0 = r.c_z * z + r.c_u * u_prev;
        y_l2 += 0.5 * dt * y0.colwise().squaredNorm().real().transpose();
        u_l2 += 0.5 * dt * u_prev.colwise().squaredNorm().real().transpose();
    }
    for (Index kstep = 1; kstep <= steps; ++kstep) {
        const Real t_prev = dt * static_cast<Real>(kstep - 1);
        ComplexMatrix u_mid = input_matrix(t_prev + dt / 2, kstep - 1);
        ComplexMatrix u_next = input_matrix(t_prev + dt, kstep);
        ComplexMatrix extra;
        if (m > 0) extra = dt * (r.e_u * u_mid) + r.e_du * (u_next - u_prev);
        z = stepper.step(z, extra);
        ComplexMatrix y = r.c_z * z + r.c_u * u_next;
        const Real w = (kstep == steps) ? 0.5 * dt : dt;
        y_l2 += w * y.colwise().squaredNorm().real().transpose();
        u_l2 += w * u_next.colwise().squaredNorm().real().transpose();
        u_prev = std::move(u_next);
    }

    Real worst = 0;
    for (Index j = 0; j < total; ++j) {
        ComplexVector uT = u_prev.col(j);
        ComplexVector zj = z.col(j);
        Real term = zj.squaredNorm();
        if (m > 0) {
            term += 2.0 * (zj.adjoint() * (r.cross * uT))(0, 0).real();
            term += ((uT.adjoint() * (r.quad * uT))(0, 0)).real();
        }
        const Real num = std::max(term, 0.0) + y_l2(j);
        const Real den = denom(j) + u_l2(j);
        if (den > 0) worst = std::max(worst, num / den);
    }

    WellPosednessEstimate est;
    est.tau = tau;
    est.const_m = worst;
    est.probes = static_cast<int>(total);
    return est;
}

std::vector<Real> log_grid(Real lo, Real hi, int count) {
    if (lo <= 0 || hi <= lo || count < 2) throw NumericError("log_grid: bad parameters");
    std::vector<Real> g(static_cast<size_t>(count));
    const Real llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
        g[static_cast<size_t>(i)] = std::exp(llo + (lhi - llo) * static_cast<Real>(i) / (count - 1));
    }
    return g;
}

}  // namespace bcslab
