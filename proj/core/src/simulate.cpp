#include "bcslab/simulate.hpp"

#include "bcslab/rng.hpp"

#include <cmath>

namespace bcslab {

InputSignal InputSignal::sampled(ComplexMatrix values) {
    InputSignal s;
    s.kind = Kind::Sampled;
    s.samples = std::move(values);
    return s;
}

InputSignal InputSignal::band_limited(uint64_t seed, Real cutoff, int harmonics) {
    InputSignal s;
    s.kind = Kind::BandLimitedRandom;
    s.seed = seed;
    s.cutoff = cutoff;
    s.harmonics = harmonics;
    return s;
}

ComplexVector InputSignal::at(Real t, Index channels, Real dt, Index step_hint) const {
    switch (kind) {
        case Kind::Zero:
            return ComplexVector::Zero(channels);
        case Kind::Sampled: {
            if (samples.rows() != channels) {
                throw NumericError("InputSignal: sampled channel count mismatch");
            }
            // Linear interpolation on the sample grid (sample k at time k dt).
            const Real pos = t / dt;
            Index k = step_hint >= 0 ? step_hint : static_cast<Index>(std::floor(pos));
            k = std::min<Index>(std::max<Index>(k, 0), samples.cols() - 1);
            const Real frac = std::min(std::max(pos - static_cast<Real>(k), 0.0), 1.0);
            if (frac == 0 || k + 1 >= samples.cols()) return samples.col(k);
            return (1 - frac) * samples.col(k) + frac * samples.col(k + 1);
        }
        case Kind::BandLimitedRandom: {
            ComplexVector u = ComplexVector::Zero(channels);
            const int nh = std::max(1, harmonics);
            const Real scale = 1.0 / std::sqrt(static_cast<Real>(nh));
            for (Index c = 0; c < channels; ++c) {
                DeterministicRng rng(mix_seed(seed, static_cast<uint64_t>(c) + 1));
                Real acc = 0;
                for (int f = 1; f <= nh; ++f) {
                    const Real a = rng.gaussian();
                    const Real b = rng.gaussian();
                    const Real w = cutoff * static_cast<Real>(f) / static_cast<Real>(nh);
                    acc += a * std::cos(w * t) + b * std::sin(w * t);
                }
                u(c) = scale * acc;
            }
            return u;
        }
    }
    return ComplexVector::Zero(channels);
}

CompressedRealization build_realization(const DiscreteBoundaryNode& node) {
    CompressedRealization r;
    const Index n = node.state_dim();
    const Index nb = node.boundary_dim();
    const Index m = node.input_dim();

    r.kernel = orthonormal_kernel(node.op_b, node.gram);
    const Index k = r.kernel.cols();
    if (k != node.test.rows()) {
        throw RankDeficientBoundary("build_realization: boundary trace is rank deficient");
    }
    ComplexMatrix wk = node.test * r.kernel;
    ComplexMatrix wk_inv = solve_linear(wk, ComplexMatrix::Identity(k, k));
    r.wk_inv_w = wk_inv * node.test;

    if (nb > 0 && m > 0) {
        r.lift = right_inverse(node) * node.op_q;
    } else {
        r.lift = ComplexMatrix::Zero(n, m);
    }
    r.gen = r.wk_inv_w * (node.op_a * r.kernel);
    r.e_u = r.wk_inv_w * (node.op_a * r.lift + node.op_bi);
    r.e_du = -(r.wk_inv_w * r.lift);
    r.c_z = node.op_c * r.kernel;
    r.c_u = node.op_c * r.lift;
    r.cross = r.kernel.adjoint() * node.gram.apply(r.lift);
    r.quad = r.lift.adjoint() * node.gram.apply(r.lift);
    return r;
}

namespace {

Real state_energy(const CompressedRealization& r, const ComplexVector& z, const ComplexVector& u) {
    Real e = z.squaredNorm();
    if (u.size() > 0 && r.lift.cols() > 0) {
        e += 2.0 * (z.adjoint() * (r.cross * u))(0, 0).real();
        e += ((u.adjoint() * (r.quad * u))(0, 0)).real();
    }
    return std::max(e, 0.0);
}

}  // namespace

SimulationResult simulate(const DiscreteBoundaryNode& node, const ComplexVector& x0,
                          const InputSignal& input, Real tau, Real dt,
                          const SimulationOptions& opts) {
    if (dt <= 0 || tau <= 0) throw NumericError("simulate: tau and dt must be positive");
    const Index n = node.state_dim();
    const Index m = node.input_dim();
    if (x0.size() != n) throw NumericError("simulate: initial state dimension mismatch");

    const auto steps = static_cast<Index>(std::llround(tau / dt));
    const CompressedRealization r = build_realization(node);
    const MidpointStepper stepper(r.gen, dt);

    SimulationResult out;
    out.times = RealVector::LinSpaced(steps + 1, 0.0, dt * static_cast<Real>(steps));
    out.energy = RealVector::Zero(steps + 1);
    out.outputs = ComplexMatrix::Zero(node.output_dim(), steps + 1);
    out.inputs = ComplexMatrix::Zero(m, steps + 1);

    ComplexVector u0 = input.at(0.0, m, dt, 0);
    out.compatible = true;
    if (node.boundary_dim() > 0) {
        const Real mismatch = (node.op_b * x0 - node.op_q * u0).norm();
        const Real scale = node.op_b.norm() * x0.norm() + node.op_q.norm() * u0.norm() + 1e-300;
        out.compatible = mismatch <= 1e-8 * scale;
    }

    ComplexVector z = r.wk_inv_w * (x0 - r.lift * u0);

    const Index stride = std::max<Index>(1, opts.state_stride);
    std::vector<ComplexVector> stored;
    auto record = [&](Index step, const ComplexVector& zc, const ComplexVector& uc) {
        out.energy(step) = state_energy(r, zc, uc);
        out.outputs.col(step) = r.c_z * zc + r.c_u * uc;
        out.inputs.col(step) = uc;
        if (opts.store_states && (step % stride == 0 || step == steps)) {
            stored.push_back(r.kernel * zc + r.lift * uc);
            out.state_steps.push_back(step);
        }
    };
    record(0, z, u0);

    ComplexVector u_prev = u0;
    for (Index kstep = 1; kstep <= steps; ++kstep) {
        const Real t_prev = dt * static_cast<Real>(kstep - 1);
        ComplexVector u_mid = input.at(t_prev + dt / 2, m, dt, kstep - 1);
        ComplexVector u_next = input.at(t_prev + dt, m, dt, kstep);
        ComplexMatrix extra;
        if (m > 0) {
            extra = dt * (r.e_u * u_mid) + r.e_du * (u_next - u_prev);
        }
        z = stepper.step(z, extra);
        record(kstep, z, u_next);
        u_prev = std::move(u_next);
    }

    if (opts.store_states) {
        out.states.resize(n, static_cast<Index>(stored.size()));
        for (Index j = 0; j < out.states.cols(); ++j) out.states.col(j) = stored[static_cast<size_t>(j)];
    }
    return out;
}

SimulationResult simulate(const ClosedLoopSystem& closed, const ComplexVector& x0_extended,
                          const InputSignal& input, Real tau, Real dt,
                          const SimulationOptions& opts) {
    return simulate(closed.extended, x0_extended, input, tau, dt, opts);
}

ObserverErrorTrace observer_error_trace(const ClosedLoopSystem& closed, const ComplexVector& x0,
                                        const ComplexVector& xhat0, Real tau, Real dt) {
    const Index n2 = closed.extended.state_dim();
    const Index n = n2 / 2;
    if (x0.size() != n || xhat0.size() != n) {
        throw NumericError("observer_error_trace: plant state dimension mismatch");
    }
    ComplexVector xe(n2);
    xe.head(n) = x0;
    xe.tail(n) = xhat0;

    const CompressedRealization r = build_realization(closed.extended);
    const MidpointStepper stepper(r.gen, dt);
    const auto steps = static_cast<Index>(std::llround(tau / dt));

    // |xhat - x|_M in the plant norm: factor of the top-left Gram block.
    GramMatrix plant_gram(closed.extended.gram.matrix().topLeftCorner(n, n));
    ComplexMatrix diff = r.kernel.bottomRows(n) - r.kernel.topRows(n);
    ComplexMatrix err_map = plant_gram.factor_apply(diff);

    ObserverErrorTrace out;
    out.times = RealVector::LinSpaced(steps + 1, 0.0, dt * static_cast<Real>(steps));
    out.error = RealVector::Zero(steps + 1);

    ComplexVector z = r.wk_inv_w * xe;
    out.error(0) = (err_map * z).norm();
    for (Index k = 1; k <= steps; ++k) {
        z = stepper.step(z);
        out.error(k) = (err_map * z).norm();
    }
    return out;
}

DecayFit decay_fit(const RealVector& times, const RealVector& values, DecayModel model,
                   Real window_lo, Real window_hi) {
    if (times.size() != values.size() || times.size() < 2) {
        throw IllConditionedFit("decay_fit: trace too short");
    }
    const Real t_end = times(times.size() - 1);
    Real lo = window_lo >= 0 ? window_lo : 0.1 * t_end;
    Real hi = window_hi >= 0 ? window_hi : 0.6 * t_end;

    std::vector<std::pair<Real, Real>> pts;
    for (Index i = 0; i < times.size(); ++i) {
        const Real t = times(i);
        if (t < lo || t > hi) continue;
        if (values(i) <= 0) continue;
        if (model == DecayModel::Power && t <= 0) continue;
        const Real xv = model == DecayModel::Power ? std::log(t) : t;
        pts.emplace_back(xv, std::log(values(i)));
    }
    if (pts.size() < 8) throw IllConditionedFit("decay_fit: fewer than 8 usable points in window");

    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const Real np = static_cast<Real>(pts.size());
    const Real denom = np * sxx - sx * sx;
    if (std::abs(denom) < 1e-14 * np * std::max(sxx, Real(1))) {
        throw IllConditionedFit("decay_fit: degenerate abscissa spread");
    }
    const Real slope = (np * sxy - sx * sy) / denom;
    const Real intercept = (sy - slope * sx) / np;

    Real rss = 0;
    for (auto [x, y] : pts) {
        const Real e = y - (intercept + slope * x);
        rss += e * e;
    }
    DecayFit fit;
    fit.window_lo = lo;
    fit.window_hi = hi;
    fit.residual = std::sqrt(rss / np);
    // values are an energy-like trace; the power model reports the state-norm
    // exponent, i.e. half the energy slope.
    fit.value = model == DecayModel::Power ? -slope / 2 : -slope;
    return fit;
}

}  // namespace bcslab
