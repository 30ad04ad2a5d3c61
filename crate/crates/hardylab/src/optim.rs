//! Derivative-free minimization: a Nelder-Mead simplex with deterministic
//! seeded restarts.
//!
//! The maximizers in this crate have smooth, low-dimensional objectives whose
//! gradients are unavailable in closed form, so reflection / expansion /
//! contraction steps with a few random restarts are the whole story.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Termination and step-size parameters of one Nelder-Mead run.
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Hard cap on function evaluations.
    pub max_evals: usize,
    /// Stop when the simplex function values span less than this.
    pub f_tol: f64,
    /// Stop when the simplex diameter falls below this.
    pub x_tol: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_evals: 20_000,
            f_tol: 1e-12,
            x_tol: 1e-9,
            initial_step: 0.4,
        }
    }
}

/// Result of a minimization run.
#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Minimize `f` starting from `x0` with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    opts: &NelderMeadOptions,
) -> Minimum {
    let n = x0.len();
    assert!(n > 0, "cannot optimize over zero parameters");
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    // Initial simplex: x0 plus one step along each coordinate.
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += opts.initial_step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| eval(p, &mut evals)).collect();

    while evals < opts.max_evals {
        // Order best..worst.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        let spread = values[worst] - values[best];
        let diameter = simplex
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread < opts.f_tol && diameter < opts.x_tol {
            break;
        }

        // Centroid of all but the worst point.
        let mut centroid = vec![0.0; n];
        for (idx, p) in simplex.iter().enumerate() {
            if idx != worst {
                for (c, v) in centroid.iter_mut().zip(p) {
                    *c += v / n as f64;
                }
            }
        }

        let blend = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = blend(1.0);
        let f_reflected = eval(&reflected, &mut evals);

        if f_reflected < values[best] {
            let expanded = blend(2.0);
            let f_expanded = eval(&expanded, &mut evals);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if f_reflected < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            let contracted = if f_reflected < values[worst] {
                blend(0.5)
            } else {
                blend(-0.5)
            };
            let f_contracted = eval(&contracted, &mut evals);
            if f_contracted < values[worst].min(f_reflected) {
                simplex[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                let anchor = simplex[best].clone();
                for idx in 0..=n {
                    if idx != best {
                        for (p, a) in simplex[idx].iter_mut().zip(&anchor) {
                            *p = a + 0.5 * (*p - a);
                        }
                        values[idx] = eval(&simplex[idx].clone(), &mut evals);
                    }
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    Minimum {
        x: simplex[best].clone(),
        value: values[best],
        evals,
    }
}

/// Run `restarts` independent Nelder-Mead searches from seeded random start
/// points in `[-range, range]^dim`, then polish the winner with a smaller
/// simplex. Restart k uses a generator derived from `(seed, k)`, and winners
/// are merged in restart order, so the outcome is deterministic per seed.
pub fn restarted_minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    dim: usize,
    range: f64,
    restarts: usize,
    seed: u64,
    opts: &NelderMeadOptions,
) -> Minimum {
    let mut best: Option<Minimum> = None;
    for k in 0..restarts.max(1) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(k as u64 + 1)));
        let x0: Vec<f64> = (0..dim).map(|_| rng.gen_range(-range..range)).collect();
        let m = nelder_mead(&mut f, &x0, opts);
        if best.as_ref().map_or(true, |b| m.value < b.value) {
            best = Some(m);
        }
    }
    let best = best.expect("at least one restart");
    // Polish from the winner with a tight simplex.
    let polish_opts = NelderMeadOptions {
        initial_step: 1e-3,
        max_evals: opts.max_evals / 2 + 1000,
        ..*opts
    };
    let polished = nelder_mead(&mut f, &best.x, &polish_opts);
    if polished.value < best.value {
        polished
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let m = nelder_mead(
            |x| x.iter().map(|v| (v - 1.5) * (v - 1.5)).sum(),
            &[0.0, 0.0, 0.0],
            &NelderMeadOptions::default(),
        );
        assert!(m.value < 1e-18);
        for v in &m.x {
            assert!((v - 1.5).abs() < 1e-8);
        }
    }

    #[test]
    fn rosenbrock_two_dim() {
        let rosen = |x: &[f64]| {
            let (a, b) = (x[0], x[1]);
            (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
        };
        let m = restarted_minimize(rosen, 2, 2.0, 6, 42, &NelderMeadOptions::default());
        assert!(m.value < 1e-12, "rosenbrock value {}", m.value);
    }

    #[test]
    fn deterministic_per_seed() {
        let f = |x: &[f64]| (x[0].sin() + x[1] * x[1]).abs();
        let a = restarted_minimize(f, 2, 3.0, 4, 9, &NelderMeadOptions::default());
        let b = restarted_minimize(f, 2, 3.0, 4, 9, &NelderMeadOptions::default());
        assert_eq!(a.x, b.x);
        assert_eq!(a.value, b.value);
    }
}
