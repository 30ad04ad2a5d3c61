//! Numerical maximization of the bipartite success probability.
//!
//! For a free state the three zero clauses pin the state to the joint kernel
//! of three positive product operators, so for fixed measurements the best
//! state is computed exactly (projection / top eigenvector on that kernel)
//! and the derivative-free search runs only over measurement parameters. The
//! zero clauses of every reported point therefore sit at machine precision.
//!
//! Restricted families (maximally entangled, product) pin the state instead —
//! local unitaries are absorbed into the observables — and enforce the zero
//! clauses by penalty escalation.

use crate::error::{Error, Result};
use crate::hardy::{hardy_witness, HardyCertificate, HardyRoles};
use crate::numerics::{kron, max_expectation_orthogonal_to, max_overlap_orthogonal_to, null_space, Ket};
use crate::optim::NelderMeadOptions;
use crate::quantum::{born_behavior, Behavior, GeneralMeasurement, Observable, PureState};
use crate::search::{frame_from_params, frame_param_count, penalty_maximize};
use crate::tol::Tolerances;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

/// Restricted two-qubit state families for the no-go checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BipartiteFamily {
    /// Local unitaries on (|00> + |11>)/√2.
    MaximallyEntangled,
    /// Fully product states.
    Product,
}

/// Best point found by a bipartite search.
#[derive(Debug, Clone)]
pub struct HardySearchResult {
    pub certificate: HardyCertificate,
    pub state: PureState,
    /// (A, A') for Alice.
    pub alice: (Observable, Observable),
    /// (B, B') for Bob.
    pub bob: (Observable, Observable),
}

impl HardySearchResult {
    /// Born-rule behavior of the found state and observables, with A and B on
    /// setting 0 and the primed observables on setting 1.
    pub fn behavior(&self) -> Result<Behavior> {
        born_behavior(
            &self.state,
            &[
                vec![self.alice.0.to_measurement(), self.alice.1.to_measurement()],
                vec![self.bob.0.to_measurement(), self.bob.1.to_measurement()],
            ],
        )
    }
}

/// Split a two-outcome observable into a full projective measurement: the +1
/// projector stays whole as outcome 0 and the complement splits into rank-one
/// effects, giving a d-outcome measurement with the designated outcome first.
pub fn refine_to_projective(obs: &Observable) -> Result<GeneralMeasurement> {
    let mut effects = vec![obs.plus_projector().clone()];
    let minus = obs.minus_projector();
    for v in crate::numerics::psd_range(&minus)? {
        effects.push(crate::numerics::projector(&v)?);
    }
    GeneralMeasurement::new(effects)
}

fn certificate_of(
    state: &PureState,
    alice: &(Observable, Observable),
    bob: &(Observable, Observable),
    tol: &Tolerances,
) -> Result<HardyCertificate> {
    let behavior = born_behavior(
        state,
        &[
            vec![alice.0.to_measurement(), alice.1.to_measurement()],
            vec![bob.0.to_measurement(), bob.1.to_measurement()],
        ],
    )?;
    hardy_witness(&behavior, &HardyRoles::default(), tol)
}

/// Bloch ket (cos(θ/2), e^{iφ} sin(θ/2)) and its orthogonal complement.
fn bloch_pair(theta: f64, phi: f64) -> (Ket, Ket) {
    let v = Ket::new(vec![
        crate::numerics::c64((theta / 2.0).cos(), 0.0),
        num_complex::Complex::from_polar((theta / 2.0).sin(), phi),
    ])
    .expect("finite");
    let perp = Ket::new(vec![-v.get(1).conj(), v.get(0).conj()]).expect("finite");
    (v, perp)
}

/// Success probability of the best free state for fixed qubit observables,
/// handled exactly through the kernel of the zero clauses.
fn qubit_config_value(params: &[f64]) -> Option<(f64, Ket, [Ket; 4])> {
    let (a1, _) = bloch_pair(params[0], params[1]);
    let (a1p, a1p_perp) = bloch_pair(params[2], params[3]);
    let (b1, _) = bloch_pair(params[4], params[5]);
    let (b1p, b1p_perp) = bloch_pair(params[6], params[7]);
    let forbidden = vec![
        a1p_perp.tensor(&b1),
        a1.tensor(&b1p_perp),
        a1p.tensor(&b1p),
    ];
    let target = a1.tensor(&b1);
    let (value, state) = max_overlap_orthogonal_to(&target, &forbidden).ok()??;
    Some((value, state, [a1, a1p, b1, b1p]))
}

/// Search over states of any local dimensions and two-outcome projective
/// observables for the maximum of the nonzero clause with the zero clauses
/// held at zero. Deterministic per seed; restarts merge by best value in
/// restart order.
///
/// The search runs over all +1-projector ranks `1..d−1` on each side. The
/// returned certificate reports the clauses in the standard orientation.
pub fn maximize_hardy(
    local_dims: (usize, usize),
    restarts: usize,
    seed: u64,
) -> Result<HardySearchResult> {
    let (da, db) = local_dims;
    if da < 2 || db < 2 {
        return Err(Error::InvalidInput("local dimensions must be at least 2".into()));
    }
    let tol = Tolerances::default();
    if (da, db) == (2, 2) {
        return maximize_qubit_pair(restarts, seed, &tol);
    }
    maximize_with_frames(da, db, restarts, seed, &tol)
}

fn maximize_qubit_pair(restarts: usize, seed: u64, tol: &Tolerances) -> Result<HardySearchResult> {
    let objective = |x: &[f64]| match qubit_config_value(x) {
        Some((value, _, _)) => -value,
        None => f64::INFINITY,
    };
    let opts = NelderMeadOptions {
        max_evals: 6000,
        ..NelderMeadOptions::default()
    };
    let best = crate::optim::restarted_minimize(objective, 8, std::f64::consts::PI, restarts, seed, &opts);
    let (_, state, [a1, a1p, b1, b1p]) =
        qubit_config_value(&best.x).ok_or_else(|| Error::InvalidInput("search degenerated".into()))?;
    let alice = (
        Observable::from_plus_eigvec(&a1)?,
        Observable::from_plus_eigvec(&a1p)?,
    );
    let bob = (
        Observable::from_plus_eigvec(&b1)?,
        Observable::from_plus_eigvec(&b1p)?,
    );
    let state = PureState::new(state, vec![2, 2])?;
    let certificate = certificate_of(&state, &alice, &bob, tol)?;
    Ok(HardySearchResult {
        certificate,
        state,
        alice,
        bob,
    })
}

/// Product basis of two frames (all pairwise tensors).
fn product_frame(left: &[Ket], right: &[Ket]) -> Vec<Ket> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            out.push(l.tensor(r));
        }
    }
    out
}

struct FrameConfig {
    alice_frames: [Vec<Ket>; 2],
    bob_frames: [Vec<Ket>; 2],
}

fn frames_from_params(params: &[f64], da: usize, db: usize, ranks: [usize; 4]) -> Option<FrameConfig> {
    let mut offset = 0;
    let mut take = |d: usize, r: usize| {
        let n = frame_param_count(d, r);
        let slice = &params[offset..offset + n];
        offset += n;
        frame_from_params(slice, d, r)
    };
    let a = take(da, ranks[0])?;
    let ap = take(da, ranks[1])?;
    let b = take(db, ranks[2])?;
    let bp = take(db, ranks[3])?;
    Some(FrameConfig {
        alice_frames: [a, ap],
        bob_frames: [b, bp],
    })
}

fn frame_config_value(cfg: &FrameConfig, da: usize, db: usize) -> Option<(f64, Ket)> {
    let a_frame = &cfg.alice_frames[0];
    let ap_frame = &cfg.alice_frames[1];
    let b_frame = &cfg.bob_frames[0];
    let bp_frame = &cfg.bob_frames[1];
    let ap_comp = null_space(ap_frame).ok()?;
    let bp_comp = null_space(bp_frame).ok()?;

    // Zero clauses: (I−A')⊗B, A⊗(I−B'), A'⊗B'.
    let mut forbidden = product_frame(&ap_comp, b_frame);
    forbidden.extend(product_frame(a_frame, &bp_comp));
    forbidden.extend(product_frame(ap_frame, bp_frame));

    if a_frame.len() * b_frame.len() == 1 {
        let target = a_frame[0].tensor(&b_frame[0]);
        max_overlap_orthogonal_to(&target, &forbidden).ok()?
    } else {
        let pa = crate::numerics::projector_onto_span(a_frame).ok()?;
        let pb = crate::numerics::projector_onto_span(b_frame).ok()?;
        let objective = kron(&pa, &pb);
        let _ = (da, db);
        max_expectation_orthogonal_to(&objective, &forbidden).ok()?
    }
}

fn maximize_with_frames(
    da: usize,
    db: usize,
    restarts: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<HardySearchResult> {
    let mut best: Option<(f64, FrameConfig, Ket)> = None;
    // Rank search covers every +1-projector rank on both sides.
    for ra in 1..da {
        for rap in 1..da {
            for rb in 1..db {
                for rbp in 1..db {
                    let ranks = [ra, rap, rb, rbp];
                    let dim: usize = frame_param_count(da, ra)
                        + frame_param_count(da, rap)
                        + frame_param_count(db, rb)
                        + frame_param_count(db, rbp);
                    let objective = |x: &[f64]| match frames_from_params(x, da, db, ranks) {
                        Some(cfg) => match frame_config_value(&cfg, da, db) {
                            Some((v, _)) => -v,
                            None => f64::INFINITY,
                        },
                        None => f64::INFINITY,
                    };
                    let combo_seed = seed
                        ^ (ranks[0] as u64)
                        ^ ((ranks[1] as u64) << 8)
                        ^ ((ranks[2] as u64) << 16)
                        ^ ((ranks[3] as u64) << 24);
                    let opts = NelderMeadOptions {
                        max_evals: 2500,
                        ..NelderMeadOptions::default()
                    };
                    let m = crate::optim::restarted_minimize(
                        objective,
                        dim,
                        1.5,
                        restarts,
                        combo_seed,
                        &opts,
                    );
                    if let Some(cfg) = frames_from_params(&m.x, da, db, ranks) {
                        if let Some((v, state)) = frame_config_value(&cfg, da, db) {
                            if best.as_ref().map_or(true, |(bv, _, _)| v > *bv) {
                                best = Some((v, cfg, state));
                            }
                        }
                    }
                }
            }
        }
    }
    let (_, cfg, state) = best.ok_or_else(|| Error::InvalidInput("no feasible configuration".into()))?;
    let alice = (
        Observable::new(crate::numerics::projector_onto_span(&cfg.alice_frames[0])?)?,
        Observable::new(crate::numerics::projector_onto_span(&cfg.alice_frames[1])?)?,
    );
    let bob = (
        Observable::new(crate::numerics::projector_onto_span(&cfg.bob_frames[0])?)?,
        Observable::new(crate::numerics::projector_onto_span(&cfg.bob_frames[1])?)?,
    );
    let state = PureState::new(state, vec![da, db])?;
    let certificate = certificate_of(&state, &alice, &bob, tol)?;
    Ok(HardySearchResult {
        certificate,
        state,
        alice,
        bob,
    })
}

/// Search restricted to a pinned state family on two qubits. Local unitaries
/// of the family are absorbed into the observables, so the state is fixed to
/// (|00>+|11>)/√2 or |00> and only the four observables move, with the zero
/// clauses enforced by penalty escalation.
pub fn maximize_hardy_restricted(
    family: BipartiteFamily,
    restarts: usize,
    seed: u64,
) -> Result<HardySearchResult> {
    let tol = Tolerances::default();
    let half = 1.0 / 2f64.sqrt();
    let ket = match family {
        BipartiteFamily::MaximallyEntangled => {
            Ket::from_real(&[half, 0.0, 0.0, half])?
        }
        BipartiteFamily::Product => Ket::basis_state(4, 0),
    };
    let state = PureState::new(ket, vec![2, 2])?;
    let psi = state.ket().clone();

    let eval = move |x: &[f64]| {
        let (a1, _) = bloch_pair(x[0], x[1]);
        let (a1p, a1p_perp) = bloch_pair(x[2], x[3]);
        let (b1, _) = bloch_pair(x[4], x[5]);
        let (b1p, b1p_perp) = bloch_pair(x[6], x[7]);
        let q1 = psi.overlap_sqr(&a1.tensor(&b1));
        let z2 = psi.overlap_sqr(&a1p_perp.tensor(&b1));
        let z3 = psi.overlap_sqr(&a1.tensor(&b1p_perp));
        let z4 = psi.overlap_sqr(&a1p.tensor(&b1p));
        (q1, z2 + z3 + z4)
    };
    let out = penalty_maximize(eval, 8, restarts, seed, 5000);
    let x = &out.params;
    let (a1, _) = bloch_pair(x[0], x[1]);
    let (a1p, _) = bloch_pair(x[2], x[3]);
    let (b1, _) = bloch_pair(x[4], x[5]);
    let (b1p, _) = bloch_pair(x[6], x[7]);
    let alice = (
        Observable::from_plus_eigvec(&a1)?,
        Observable::from_plus_eigvec(&a1p)?,
    );
    let bob = (
        Observable::from_plus_eigvec(&b1)?,
        Observable::from_plus_eigvec(&b1p)?,
    );
    let certificate = certificate_of(&state, &alice, &bob, &tol)?;
    Ok(HardySearchResult {
        certificate,
        state,
        alice,
        bob,
    })
}

/// Draw a Haar-like random rank-one qubit observable quadruple with both
/// pairs noncommuting; used by the uniqueness checks and tests.
pub fn random_noncommuting_quadruple(
    rng: &mut ChaCha12Rng,
) -> (Observable, Observable, Observable, Observable) {
    loop {
        let mut angles = [0.0; 8];
        for a in angles.iter_mut() {
            *a = rng.gen_range(0.0..std::f64::consts::PI * 2.0);
        }
        let (a1, _) = bloch_pair(angles[0], angles[1]);
        let (a1p, _) = bloch_pair(angles[2], angles[3]);
        let (b1, _) = bloch_pair(angles[4], angles[5]);
        let (b1p, _) = bloch_pair(angles[6], angles[7]);
        let a = Observable::from_plus_eigvec(&a1).expect("unit");
        let ap = Observable::from_plus_eigvec(&a1p).expect("unit");
        let b = Observable::from_plus_eigvec(&b1).expect("unit");
        let bp = Observable::from_plus_eigvec(&b1p).expect("unit");
        if a.commutator_norm(&ap) > 0.1 && b.commutator_norm(&bp) > 0.1 {
            return (a, ap, b, bp);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::hardy_maximum;

    #[test]
    fn qubit_search_recovers_the_maximum() {
        let result = maximize_hardy((2, 2), 6, 11).unwrap();
        let c = &result.certificate;
        assert!(c.satisfied, "certificate {c:?}");
        assert!((c.q1 - hardy_maximum()).abs() < 1e-6, "q1 = {}", c.q1);
        assert!(c.zero_clause_sum() < 1e-10);
    }

    #[test]
    fn maximally_entangled_family_cannot_succeed() {
        let result = maximize_hardy_restricted(BipartiteFamily::MaximallyEntangled, 4, 5).unwrap();
        let c = &result.certificate;
        assert!(c.zero_clause_sum() < 3e-8, "zeros {:?}", c);
        assert!(c.q1 < 1e-6, "q1 = {}", c.q1);
        assert!(!c.satisfied);
    }

    #[test]
    fn product_family_cannot_succeed() {
        let result = maximize_hardy_restricted(BipartiteFamily::Product, 4, 5).unwrap();
        let c = &result.certificate;
        assert!(c.zero_clause_sum() < 3e-8);
        assert!(c.q1 < 1e-6, "q1 = {}", c.q1);
    }

    #[test]
    fn refine_splits_complement_into_rank_ones() {
        let frame_params: Vec<f64> = (0..12).map(|i| (i as f64).cos()).collect();
        let obs =
            crate::search::observable_from_frame_params(&frame_params[0..6], 3, 1).unwrap();
        let m = refine_to_projective(&obs).unwrap();
        assert_eq!(m.outcomes(), 3);
    }
}
