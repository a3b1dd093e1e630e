//! Least-squares fits of the unit-circle growth series.
//!
//! Both models are fitted with Levenberg–Marquardt from a fixed grid of
//! starting points; the lowest residual wins.

use serde::Serialize;

use crate::error::{Error, Result};

/// Logistic parameters `(L, k, x0)` reported for the unit-circle percentage.
pub const REFERENCE_LOGISTIC: [f64; 3] = [94.4725, 0.0271419, 111.11];

const MAX_ITER: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogisticFit {
    #[serde(rename = "L")]
    pub l: f64,
    pub k: f64,
    pub x0: f64,
    pub sse: f64,
}

impl LogisticFit {
    pub fn eval(&self, x: f64) -> f64 {
        logistic(&[self.l, self.k, self.x0], x).0
    }
}

/// `f(x) = (100 - c) e^{-b (x - 10)} + c`, anchored so that `f(10) = 100`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpDecayFit {
    pub b: f64,
    pub c: f64,
    pub anchor_x: f64,
    pub anchor_f: f64,
    pub sse: f64,
}

impl ExpDecayFit {
    pub fn eval(&self, x: f64) -> f64 {
        exp_decay(&[self.b, self.c], x).0
    }
}

fn sigmoid(u: f64) -> f64 {
    if u >= 0.0 {
        1.0 / (1.0 + (-u).exp())
    } else {
        let e = u.exp();
        e / (1.0 + e)
    }
}

fn logistic(p: &[f64], x: f64) -> (f64, Vec<f64>) {
    let (l, k, x0) = (p[0], p[1], p[2]);
    let s = sigmoid(k * (x - x0));
    let ds = s * (1.0 - s);
    (l * s, vec![s, l * ds * (x - x0), -l * ds * k])
}

const ANCHOR_X: f64 = 10.0;
const ANCHOR_F: f64 = 100.0;

fn exp_decay(p: &[f64], x: f64) -> (f64, Vec<f64>) {
    let (b, c) = (p[0], p[1]);
    let e = (-b * (x - ANCHOR_X)).exp();
    (
        (ANCHOR_F - c) * e + c,
        vec![-(ANCHOR_F - c) * (x - ANCHOR_X) * e, 1.0 - e],
    )
}

fn sse_of<F>(model: &F, p: &[f64], xs: &[f64], ys: &[f64]) -> f64
where
    F: Fn(&[f64], f64) -> (f64, Vec<f64>),
{
    xs.iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - model(p, x).0;
            r * r
        })
        .sum()
}

pub fn logistic_sse(params: [f64; 3], xs: &[f64], ys: &[f64]) -> f64 {
    sse_of(&logistic, &params, xs, ys)
}

pub fn exp_decay_sse(b: f64, c: f64, xs: &[f64], ys: &[f64]) -> f64 {
    sse_of(&exp_decay, &[b, c], xs, ys)
}

/// Gaussian elimination with partial pivoting; `None` if singular.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (top, rest) = a.split_at_mut(row);
            for (x, p) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * p;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

struct Outcome {
    params: Vec<f64>,
    sse: f64,
    converged: bool,
}

fn levenberg_marquardt<F>(model: &F, xs: &[f64], ys: &[f64], start: &[f64]) -> Outcome
where
    F: Fn(&[f64], f64) -> (f64, Vec<f64>),
{
    let np = start.len();
    let mut p = start.to_vec();
    let mut sse = sse_of(model, &p, xs, ys);
    let mut damping = 1e-3;

    for _ in 0..MAX_ITER {
        let mut jtj = vec![vec![0.0; np]; np];
        let mut jtr = vec![0.0; np];
        for (&x, &y) in xs.iter().zip(ys) {
            let (f, grad) = model(&p, x);
            let r = y - f;
            for i in 0..np {
                jtr[i] += grad[i] * r;
                for j in 0..np {
                    jtj[i][j] += grad[i] * grad[j];
                }
            }
        }
        if jtr.iter().all(|g| g.abs() == 0.0) {
            return Outcome {
                params: p,
                sse,
                converged: true,
            };
        }
        loop {
            let mut a = jtj.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += damping * jtj[i][i].max(1e-12);
            }
            let step = solve_dense(a, jtr.clone());
            let accepted = step.and_then(|d| {
                let cand: Vec<f64> = p.iter().zip(&d).map(|(a, b)| a + b).collect();
                let s = sse_of(model, &cand, xs, ys);
                (s.is_finite() && s <= sse).then_some((cand, d, s))
            });
            match accepted {
                Some((cand, d, s)) => {
                    let small_step = d
                        .iter()
                        .zip(&cand)
                        .all(|(di, pi)| di.abs() <= 1e-13 * pi.abs().max(1e-8));
                    let stalled = sse - s <= 1e-16 * sse;
                    p = cand;
                    sse = s;
                    damping = (damping * 0.1).max(1e-15);
                    if small_step || (stalled && damping <= 1e-12) || sse == 0.0 {
                        return Outcome {
                            params: p,
                            sse,
                            converged: true,
                        };
                    }
                    break;
                }
                None => {
                    damping *= 10.0;
                    if damping > 1e16 {
                        // No descent direction left: a (local) minimum.
                        return Outcome {
                            params: p,
                            sse,
                            converged: true,
                        };
                    }
                }
            }
        }
    }
    Outcome {
        params: p,
        sse,
        converged: false,
    }
}

fn multistart<F>(model: &F, xs: &[f64], ys: &[f64], starts: &[Vec<f64>]) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&[f64], f64) -> (f64, Vec<f64>),
{
    let mut best: Option<Outcome> = None;
    let mut best_any: Option<Outcome> = None;
    for s in starts {
        let out = levenberg_marquardt(model, xs, ys, s);
        if !out.sse.is_finite() {
            continue;
        }
        let slot = if out.converged {
            &mut best
        } else {
            &mut best_any
        };
        if slot.as_ref().is_none_or(|b| out.sse < b.sse) {
            *slot = Some(out);
        }
    }
    match (best, best_any) {
        (Some(b), _) => Ok((b.params, b.sse)),
        (None, Some(b)) => Err(Error::FitNoConvergence {
            params: b.params,
            sse: b.sse,
        }),
        (None, None) => Err(Error::FitNoConvergence {
            params: starts.first().cloned().unwrap_or_default(),
            sse: f64::INFINITY,
        }),
    }
}

fn check_data(xs: &[f64], ys: &[f64], min_points: usize) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidInput(format!(
            "{} x values but {} y values",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < min_points {
        return Err(Error::InvalidInput(format!(
            "need at least {min_points} points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite data".into()));
    }
    let (lo, hi) = ys
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &y| {
            (a.min(y), b.max(y))
        });
    if hi - lo <= 1e-12 * hi.abs().max(1.0) {
        return Err(Error::IllConditionedFit("data have zero variance".into()));
    }
    Ok(())
}

/// Least-squares fit of `L / (1 + e^{-k (x - x0)})`.
pub fn fit_logistic(xs: &[f64], ys: &[f64]) -> Result<LogisticFit> {
    check_data(xs, ys, 4)?;
    let mut starts = Vec::new();
    for l in [50.0, 80.0, 100.0] {
        for k in [0.01, 0.03, 0.1] {
            for x0 in [50.0, 100.0, 200.0] {
                starts.push(vec![l, k, x0]);
            }
        }
    }
    let (p, sse) = multistart(&logistic, xs, ys, &starts)?;
    Ok(LogisticFit {
        l: p[0],
        k: p[1],
        x0: p[2],
        sse,
    })
}

/// Least-squares `(b, c)` for the anchored decay `(100 - c) e^{-b (x - 10)} + c`.
pub fn fit_exp_decay_constrained(xs: &[f64], ys: &[f64]) -> Result<ExpDecayFit> {
    check_data(xs, ys, 3)?;
    if !xs.iter().any(|&x| x >= ANCHOR_X) {
        return Err(Error::InvalidInput(
            "exponential fit needs abscissae at or beyond the anchor x = 10".into(),
        ));
    }
    let mut starts = Vec::new();
    for b in [0.001, 0.01, 0.1] {
        for c in [-10.0, 0.0, 10.0, 50.0] {
            starts.push(vec![b, c]);
        }
    }
    let (p, sse) = multistart(&exp_decay, xs, ys, &starts)?;
    Ok(ExpDecayFit {
        b: p[0],
        c: p[1],
        anchor_x: ANCHOR_X,
        anchor_f: ANCHOR_F,
        sse,
    })
}
