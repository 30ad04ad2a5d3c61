//! Shared scaffolding for the Hardy-type maximizers: parameter-to-measurement
//! maps, exact handling of the zero clauses, and a penalty-escalation driver
//! for restricted state families.
//!
//! Two complementary strategies are used:
//!
//! - **Free state**: for fixed measurements the zero clauses say the state
//!   lies in the joint kernel of a few positive operators, and the best state
//!   is the top eigenvector of the objective restricted to that kernel
//!   ([`crate::numerics::max_expectation_on_kernel`]). The outer search then
//!   runs only over measurement parameters and the clauses hold exactly.
//! - **Restricted state family**: the state is pinned (any local unitary can
//!   be absorbed into that party's observables), and the zero clauses enter
//!   as an escalating penalty `q1 − κ·Σ zeros` with κ stepped from 1e3 up to
//!   1e12, followed by a feasibility polish.

use crate::numerics::{c64, Complex64, ComplexMatrix, Ket};
use crate::optim::{restarted_minimize, NelderMeadOptions};
use crate::quantum::Observable;

/// Build a qubit observable from two Bloch angles.
pub fn bloch_observable(theta: f64, phi: f64) -> Observable {
    Observable::from_bloch(theta, phi)
}

/// Number of real parameters of a rank-`r` projector frame in dimension `d`.
pub fn frame_param_count(d: usize, r: usize) -> usize {
    2 * d * r
}

/// Orthonormal frame of `r` kets in dimension `d` read from raw parameters
/// (2·d·r reals as interleaved re/im pairs), Gram-Schmidt orthonormalized.
/// Returns `None` when the raw vectors are numerically dependent.
pub fn frame_from_params(params: &[f64], d: usize, r: usize) -> Option<Vec<Ket>> {
    assert_eq!(params.len(), frame_param_count(d, r));
    let mut frame: Vec<Ket> = Vec::with_capacity(r);
    for k in 0..r {
        let raw: Vec<Complex64> = (0..d)
            .map(|i| c64(params[2 * (k * d + i)], params[2 * (k * d + i) + 1]))
            .collect();
        let mut v = Ket::new(raw).ok()?;
        for b in &frame {
            let coeff = b.inner(&v);
            v = v.sub(&b.scale(coeff));
        }
        if v.norm() < 1e-6 {
            return None;
        }
        frame.push(v.normalized().ok()?);
    }
    Some(frame)
}

/// Observable whose +1 eigenspace is the span of a rank-`r` frame read from
/// raw parameters.
pub fn observable_from_frame_params(params: &[f64], d: usize, r: usize) -> Option<Observable> {
    let frame = frame_from_params(params, d, r)?;
    let p = crate::numerics::projector_onto_span(&frame).ok()?;
    Observable::new(p).ok()
}

/// A 2x2 unitary from three angles (global phase dropped):
/// `U = Rz(phi) · Ry(theta) · Rz(chi)`.
pub fn su2_from_params(theta: f64, phi: f64, chi: f64) -> ComplexMatrix {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = |a: f64| Complex64::from_polar(1.0, a);
    let mut u = ComplexMatrix::zeros(2, 2);
    u.set(0, 0, e(-(phi + chi) / 2.0) * ct);
    u.set(0, 1, -e(-(phi - chi) / 2.0) * st);
    u.set(1, 0, e((phi - chi) / 2.0) * st);
    u.set(1, 1, e((phi + chi) / 2.0) * ct);
    u
}

/// Outcome of a penalty-escalation search over a restricted family.
#[derive(Debug, Clone)]
pub struct PenaltyOutcome {
    pub params: Vec<f64>,
    /// Value of the nonzero clause at the final parameters.
    pub objective: f64,
    /// Sum of the zero clauses at the final parameters.
    pub zero_sum: f64,
}

/// Maximize `q1` subject to the zero clauses via the escalating exact-penalty
/// objective `q1 − κ·Σ zeros`, κ ∈ {1e3, 1e6, 1e9, 1e12}, with seeded random
/// restarts, then polish feasibility by minimizing the zero-clause sum alone
/// from the best point found.
///
/// `eval` returns `(q1, zero_sum)` for a parameter vector.
pub fn penalty_maximize<E: Fn(&[f64]) -> (f64, f64)>(
    eval: E,
    dim: usize,
    restarts: usize,
    seed: u64,
    evals_per_stage: usize,
) -> PenaltyOutcome {
    let kappas = [1e3, 1e6, 1e9, 1e12];
    let opts = NelderMeadOptions {
        max_evals: evals_per_stage,
        ..NelderMeadOptions::default()
    };
    let mut best: Option<PenaltyOutcome> = None;
    for k in 0..restarts.max(1) {
        // First stage explores from a random start; later stages tighten the
        // penalty from the previous stage's winner.
        let stage_seed = seed ^ (0xd134_2543_de82_ef95u64.wrapping_mul(k as u64 + 1));
        let mut current: Option<Vec<f64>> = None;
        for (si, kappa) in kappas.iter().enumerate() {
            let objective = |x: &[f64]| {
                let (q, z) = eval(x);
                -(q - kappa * z)
            };
            let m = match &current {
                None => restarted_minimize(objective, dim, std::f64::consts::PI, 1, stage_seed, &opts),
                Some(x0) => {
                    let stage_opts = NelderMeadOptions {
                        initial_step: if si <= 1 { 0.05 } else { 0.005 },
                        ..opts
                    };
                    crate::optim::nelder_mead(objective, x0, &stage_opts)
                }
            };
            current = Some(m.x);
        }
        let mut params = current.expect("stages ran");
        // Feasibility polish: drive the zero clauses down from the winner.
        let polish = crate::optim::nelder_mead(
            |x: &[f64]| eval(x).1,
            &params,
            &NelderMeadOptions {
                initial_step: 1e-4,
                max_evals: evals_per_stage / 2,
                ..NelderMeadOptions::default()
            },
        );
        params = polish.x;
        let (q, z) = eval(&params);
        let candidate = PenaltyOutcome {
            params,
            objective: q,
            zero_sum: z,
        };
        let better = match &best {
            None => true,
            Some(b) => {
                let cand_feasible = candidate.zero_sum < 1e-8;
                let best_feasible = b.zero_sum < 1e-8;
                match (cand_feasible, best_feasible) {
                    (true, true) => candidate.objective > b.objective,
                    (true, false) => true,
                    (false, true) => false,
                    (false, false) => candidate.zero_sum < b.zero_sum,
                }
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    best.expect("at least one restart")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frames_are_orthonormal() {
        let params: Vec<f64> = (0..12).map(|i| (i as f64 * 0.7).sin()).collect();
        let frame = frame_from_params(&params, 3, 2).unwrap();
        assert_eq!(frame.len(), 2);
        for i in 0..2 {
            for j in 0..2 {
                let ip = frame[i].inner(&frame[j]).norm();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn su2_is_unitary() {
        let u = su2_from_params(1.1, 0.4, -2.0);
        let i = u.adjoint().mul(&u);
        assert!(i.sub(&ComplexMatrix::identity(2)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn penalty_driver_respects_constraints() {
        // max x0 subject to x1^2 = 0 within the square; analytic optimum 1 at
        // x = (1, 0) after clamping through sin().
        let eval = |x: &[f64]| {
            let q = x[0].sin();
            let z = (x[1].sin()).powi(2);
            (q, z)
        };
        let out = penalty_maximize(eval, 2, 4, 7, 4000);
        assert!(out.zero_sum < 1e-8);
        assert!(out.objective > 1.0 - 1e-5);
    }
}
