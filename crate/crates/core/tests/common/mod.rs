//! Independent oracles for the integration tests.
//!
//! Everything here works on plain `Vec<Rational>` data read from the
//! partition, the weights and the stored atom or column tables. Nothing calls
//! the library's own lattice, norm or integral routines.

#![allow(dead_code)]

use num::{BigRational, Signed, Zero};
use riesz_lab::charge::Charge;
use riesz_lab::condexp::CondExp;
use riesz_lab::duality::DualFunctional;
use riesz_lab::space::Vector;

pub type Q = BigRational;
pub type Vals = Vec<Q>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn zeros(n: usize) -> Vals {
    vec![Q::zero(); n]
}

pub fn add(a: &[Q], b: &[Q]) -> Vals {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vals {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mul(a: &[Q], b: &[Q]) -> Vals {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

pub fn scale(a: &[Q], c: &Q) -> Vals {
    a.iter().map(|x| x * c).collect()
}

pub fn abs(a: &[Q]) -> Vals {
    a.iter().map(|x| x.abs()).collect()
}

pub fn max(a: &[Q], b: &[Q]) -> Vals {
    a.iter()
        .zip(b)
        .map(|(x, y)| if x >= y { x.clone() } else { y.clone() })
        .collect()
}

pub fn min(a: &[Q], b: &[Q]) -> Vals {
    a.iter()
        .zip(b)
        .map(|(x, y)| if x <= y { x.clone() } else { y.clone() })
        .collect()
}

pub fn le(a: &[Q], b: &[Q]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn vals(v: &Vector) -> Vals {
    v.values().to_vec()
}

/// Block index of every point, read from the partition.
pub fn block_labels(t: &CondExp) -> Vec<usize> {
    let mut labels = vec![usize::MAX; t.size()];
    for (b, block) in t.partition().blocks().iter().enumerate() {
        for &p in block {
            labels[p] = b;
        }
    }
    labels
}

/// `(Tf)(ω) = Σ_{ω'~ω} f(ω') w(ω') / Σ_{ω'~ω} w(ω')`, straight from the weights.
pub fn t_apply(t: &CondExp, f: &[Q]) -> Vals {
    let labels = block_labels(t);
    let w = t.space().weights();
    (0..f.len())
        .map(|i| {
            let mut num = Q::zero();
            let mut den = Q::zero();
            for j in 0..f.len() {
                if labels[j] == labels[i] {
                    num += &f[j] * &w[j];
                    den += &w[j];
                }
            }
            num / den
        })
        .collect()
}

/// Blockwise maximum of `|f|`.
pub fn block_max_abs(t: &CondExp, f: &[Q]) -> Vals {
    let labels = block_labels(t);
    (0..f.len())
        .map(|i| {
            (0..f.len())
                .filter(|&j| labels[j] == labels[i])
                .map(|j| f[j].abs())
                .fold(Q::zero(), |m, x| if x > m { x } else { m })
        })
        .collect()
}

pub fn indicator(n: usize, mask: u64) -> Vals {
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { q(1, 1) } else { Q::zero() })
        .collect()
}

/// Values of `μ` on all `2^n` components, summing atoms per mask.
pub fn charge_table(mu: &Charge) -> Vec<Vals> {
    let n = mu.atoms().len();
    (0..1u64 << n)
        .map(|mask| {
            let mut s = zeros(n);
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    s = add(&s, mu.atom(i).values());
                }
            }
            s
        })
        .collect()
}

/// Submasks of `mask`, by scanning all masks.
pub fn submasks(mask: u64, n: usize) -> Vec<u64> {
    (0..1u64 << n).filter(|q| q & !mask == 0).collect()
}

fn fold<F: Fn(u64) -> Vals>(p: u64, n: usize, value: F, take_max: bool) -> Vals {
    let subs = submasks(p, n);
    let mut acc = value(subs[0]);
    for &q in &subs[1..] {
        let v = value(q);
        acc = if take_max { max(&acc, &v) } else { min(&acc, &v) };
    }
    acc
}

/// `sup_{q≤p} μ(q) + ν(p-q)`.
pub fn brute_sup(mu: &[Vals], nu: &[Vals], p: u64, n: usize) -> Vals {
    fold(p, n, |q| add(&mu[q as usize], &nu[(p & !q) as usize]), true)
}

/// `inf_{q≤p} μ(q) + ν(p-q)`.
pub fn brute_inf(mu: &[Vals], nu: &[Vals], p: u64, n: usize) -> Vals {
    fold(p, n, |q| add(&mu[q as usize], &nu[(p & !q) as usize]), false)
}

/// `sup_{q≤p} μ(q) - μ(p-q)`.
pub fn brute_abs(mu: &[Vals], p: u64, n: usize) -> Vals {
    fold(p, n, |q| sub(&mu[q as usize], &mu[(p & !q) as usize]), true)
}

pub fn brute_pos(mu: &[Vals], p: u64, n: usize) -> Vals {
    fold(p, n, |q| mu[q as usize].clone(), true)
}

pub fn brute_neg(mu: &[Vals], p: u64, n: usize) -> Vals {
    fold(p, n, |q| scale(&mu[q as usize], &q_neg_one()), true)
}

fn q_neg_one() -> Q {
    q(-1, 1)
}

/// All set partitions by inserting each point into an existing block or a
/// new one.
pub fn set_partitions(n: usize) -> Vec<Vec<u64>> {
    let mut parts: Vec<Vec<u64>> = vec![vec![]];
    for i in 0..n {
        let mut next = Vec::new();
        for p in &parts {
            for b in 0..p.len() {
                let mut c = p.clone();
                c[b] |= 1 << i;
                next.push(c);
            }
            let mut c = p.clone();
            c.push(1 << i);
            next.push(c);
        }
        parts = next;
    }
    parts
}

/// `sup_Z Σ_{p∈Z} |μ(p)|`.
pub fn variation_norm(mu: &Charge) -> Vals {
    let n = mu.atoms().len();
    let table = charge_table(mu);
    set_partitions(n)
        .iter()
        .map(|z| {
            z.iter()
                .fold(zeros(n), |s, &m| add(&s, &abs(&table[m as usize])))
        })
        .reduce(|a, b| max(&a, &b))
        .unwrap()
}

/// `∫ f dμ = Σ_ω f(ω) μ(1_ω)`.
pub fn integral(mu: &Charge, f: &[Q]) -> Vals {
    let n = f.len();
    (0..n).fold(zeros(n), |s, i| add(&s, &scale(mu.atom(i).values(), &f[i])))
}

/// Columns of a linear map as plain data.
pub fn columns(phi: &DualFunctional) -> Vec<Vals> {
    phi.columns().iter().map(|c| c.values().to_vec()).collect()
}

pub fn apply_columns(cols: &[Vals], f: &[Q]) -> Vals {
    let n = f.len();
    (0..n).fold(zeros(n), |s, i| add(&s, &scale(&cols[i], &f[i])))
}

/// `sup{|A(g)| : |g| ≤ f}` for `f ≥ 0`, over all `g ∈ {-f, 0, f}` pointwise.
pub fn operator_modulus(cols: &[Vals], f: &[Q]) -> Vals {
    let n = f.len();
    let mut best = zeros(n);
    for code in 0..3usize.pow(n as u32) {
        let mut rest = code;
        let g: Vals = f
            .iter()
            .map(|x| {
                let d = rest % 3;
                rest /= 3;
                x * q(d as i64 - 1, 1)
            })
            .collect();
        best = max(&best, &abs(&apply_columns(cols, &g)));
    }
    best
}

/// `sup{A(g) + B(f - g) : 0 ≤ g ≤ f}` for `f ≥ 0`, over `g = f·1_S`.
pub fn operator_sup(a: &[Vals], b: &[Vals], f: &[Q]) -> Vals {
    let n = f.len();
    (0..1u64 << n)
        .map(|s| {
            let g = mul(f, &indicator(n, s));
            add(&apply_columns(a, &g), &apply_columns(b, &sub(f, &g)))
        })
        .reduce(|x, y| max(&x, &y))
        .unwrap()
}

/// `sup |φ(g)|` over `g ∈ {-1, 1}^n`.
pub fn sup_over_signs(cols: &[Vals]) -> Vals {
    let n = cols.len();
    (0..1u64 << n)
        .map(|s| {
            let g: Vals = (0..n)
                .map(|i| if s >> i & 1 == 1 { q(-1, 1) } else { q(1, 1) })
                .collect();
            abs(&apply_columns(cols, &g))
        })
        .reduce(|x, y| max(&x, &y))
        .unwrap()
}
