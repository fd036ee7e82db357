//! Floating point probe of the `L^p`/`L^q` duality for `p ∈ (1, ∞)`.
//!
//! For `φ = T(f ·)` on `L^p(T)` the dual norm on a block `Ω_i` is
//! `sup{Σ f g v : Σ |g|^p v ≤ 1}` with `v_ω = w_ω / m_i`. The probe
//! maximizes that quotient by gradient ascent on the unit sphere from many
//! random starts and compares the best value with `‖f‖_{T,q}`. This is
//! evidence, not proof.

use rand::Rng;

use crate::condexp::CondExp;
use crate::error::{Error, Result};
use crate::rational;
use crate::space::Vector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub p: f64,
    pub restarts: usize,
    /// Iteration cap per restart.
    pub iterations: usize,
}

impl ProbeConfig {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::InvalidExponent(format!(
                "the probe needs a finite p > 1, got {p}"
            )));
        }
        Ok(Self {
            p,
            restarts: 64,
            iterations: 4000,
        })
    }

    pub fn q(&self) -> f64 {
        self.p / (self.p - 1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockProbe {
    pub block: usize,
    /// `‖f‖_{T,q}` on the block.
    pub q_norm: f64,
    /// Best quotient found.
    pub numeric: f64,
    /// Maximizer found, on the block's points.
    pub best_g: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeOutcome {
    pub f: Vec<f64>,
    pub blocks: Vec<BlockProbe>,
    /// Largest relative gap over the blocks.
    pub relative_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub p: f64,
    pub tol: f64,
    pub outcomes: Vec<ProbeOutcome>,
}

impl ConjectureReport {
    pub fn max_gap(&self) -> f64 {
        self.outcomes.iter().fold(0.0, |m, o| m.max(o.relative_gap))
    }

    pub fn within_tol(&self) -> usize {
        self.outcomes.iter().filter(|o| o.relative_gap < self.tol).count()
    }

    pub fn fraction_within_tol(&self) -> f64 {
        if self.outcomes.is_empty() {
            1.0
        } else {
            self.within_tol() as f64 / self.outcomes.len() as f64
        }
    }
}

/// `|a - b| / |b|`, or `|a|` when `b = 0`.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Per-block densities `v_ω = w_ω / m_i` and block values of `f`.
fn block_data(t: &CondExp, f: &Vector, block: usize) -> (Vec<f64>, Vec<f64>) {
    let m = &t.block_masses()[block];
    t.block_points(block)
        .iter()
        .map(|&w| {
            (
                rational::to_f64(f.get(w)),
                rational::to_f64(&(t.space().weight(w) / m)),
            )
        })
        .unzip()
}

/// `‖f‖_{T,q}` per block, in floats.
pub fn q_norm_blocks(t: &CondExp, f: &Vector, q: f64) -> Vec<f64> {
    (0..t.num_blocks())
        .map(|b| {
            let (fs, vs) = block_data(t, f, b);
            let s: f64 = fs.iter().zip(&vs).map(|(x, v)| x.abs().powf(q) * v).sum();
            s.powf(1.0 / q)
        })
        .collect()
}

fn p_norm(g: &[f64], v: &[f64], p: f64) -> f64 {
    g.iter()
        .zip(v)
        .map(|(x, w)| x.abs().powf(p) * w)
        .sum::<f64>()
        .powf(1.0 / p)
}

fn pairing(f: &[f64], g: &[f64], v: &[f64]) -> f64 {
    f.iter().zip(g).zip(v).map(|((a, b), w)| a * b * w).sum()
}

fn normalize(g: &mut [f64], v: &[f64], p: f64) -> bool {
    let n = p_norm(g, v, p);
    if n == 0.0 || !n.is_finite() {
        return false;
    }
    g.iter_mut().for_each(|x| *x /= n);
    true
}

/// Maximizes `Σ f g v / (Σ |g|^p v)^{1/p}` from one start.
fn ascend(f: &[f64], v: &[f64], p: f64, mut g: Vec<f64>, iterations: usize) -> (f64, Vec<f64>) {
    if !normalize(&mut g, v, p) {
        return (0.0, vec![0.0; f.len()]);
    }
    let mut value = pairing(f, &g, v);
    let mut eta = 1.0;
    for _ in 0..iterations {
        let grad: Vec<f64> = g
            .iter()
            .zip(f)
            .zip(v)
            .map(|((x, a), w)| a * w - value * x.abs().powf(p - 1.0) * x.signum() * w)
            .collect();
        if grad.iter().all(|d| d.abs() < 1e-300) {
            break;
        }
        let mut trial: Vec<f64> = g.iter().zip(&grad).map(|(x, d)| x + eta * d).collect();
        if normalize(&mut trial, v, p) {
            let candidate = pairing(f, &trial, v);
            if candidate > value {
                value = candidate;
                g = trial;
                eta *= 1.5;
                continue;
            }
        }
        eta *= 0.5;
        if eta < 1e-14 {
            break;
        }
    }
    (value, g)
}

/// Probes one `f`: per block, the best quotient over `restarts` random
/// starts against `‖f‖_{T,q}`.
pub fn probe_instance<R: Rng + ?Sized>(
    t: &CondExp,
    f: &Vector,
    config: &ProbeConfig,
    rng: &mut R,
) -> Result<ProbeOutcome> {
    if f.space().as_ref() != t.space().as_ref() {
        return Err(Error::SpaceMismatch);
    }
    let q_norms = q_norm_blocks(t, f, config.q());
    let mut blocks = Vec::with_capacity(t.num_blocks());
    let mut worst: f64 = 0.0;
    for (b, q_norm) in q_norms.into_iter().enumerate() {
        let (fs, vs) = block_data(t, f, b);
        let mut best = (f64::NEG_INFINITY, vec![0.0; fs.len()]);
        for _ in 0..config.restarts.max(1) {
            let start: Vec<f64> = (0..fs.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let found = ascend(&fs, &vs, config.p, start, config.iterations);
            if found.0 > best.0 {
                best = found;
            }
        }
        let numeric = best.0.max(0.0);
        worst = worst.max(relative_gap(numeric, q_norm));
        blocks.push(BlockProbe {
            block: b,
            q_norm,
            numeric,
            best_g: best.1,
        });
    }
    Ok(ProbeOutcome {
        f: f.to_f64(),
        blocks,
        relative_gap: worst,
    })
}

/// Runs [`probe_instance`] on every vector in `instances`.
pub fn conjecture_probe<R: Rng + ?Sized>(
    t: &CondExp,
    instances: &[Vector],
    config: &ProbeConfig,
    tol: f64,
    rng: &mut R,
) -> Result<ConjectureReport> {
    let outcomes = instances
        .iter()
        .map(|f| probe_instance(t, f, config, rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureReport {
        p: config.p,
        tol,
        outcomes,
    })
}

/// `sqrt(T(f²))` per block, from the exact rational value.
pub fn exact_l2_blocks(t: &CondExp, f: &Vector) -> Vec<f64> {
    let sq = t.apply(&(f * f));
    t.block_values(&sq)
        .iter()
        .map(|v| rational::to_f64(v).sqrt())
        .collect()
}
