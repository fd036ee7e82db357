//! Seeded random instances.
//!
//! Rationals have numerators in `[-9, 9]` and denominators in `{1, 2, 3, 4}`;
//! weights use numerators in `[1, 9]`. Small values keep the enumerating
//! oracles fast.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::charge::Charge;
use crate::condexp::{make_cond_exp, CondExp, RtVector};
use crate::integration::StepFunction;
use crate::rational::{rat, Rational};
use crate::space::{Component, FiniteSpace, Vector};

pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

pub fn nonnegative_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(0..=9), rng.gen_range(1..=4))
}

pub fn space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Arc<FiniteSpace> {
    FiniteSpace::new((0..n).map(|_| positive_rational(rng)).collect()).expect("positive weights")
}

/// A uniformly labelled random partition into nonempty blocks.
pub fn blocks<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let k = rng.gen_range(1..=n);
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let mut out: Vec<Vec<usize>> = points[..k].iter().map(|&p| vec![p]).collect();
    for &p in &points[k..] {
        let b = rng.gen_range(0..k);
        out[b].push(p);
    }
    out.sort_by_key(|b| *b.iter().min().expect("nonempty"));
    out
}

/// A conditional expectation on exactly `n` points.
pub fn cond_exp_of_size<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Arc<CondExp> {
    let s = space(rng, n);
    let b = blocks(rng, n);
    make_cond_exp(&s, b).expect("valid partition")
}

/// A conditional expectation on `n ∈ [2, max_omega]` points.
pub fn cond_exp<R: Rng + ?Sized>(rng: &mut R, max_omega: usize) -> Arc<CondExp> {
    let n = rng.gen_range(2..=max_omega.max(2));
    cond_exp_of_size(rng, n)
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, s: &Arc<FiniteSpace>) -> Vector {
    Vector::from_fn(s, |_| rational(rng))
}

pub fn positive_vector<R: Rng + ?Sized>(rng: &mut R, s: &Arc<FiniteSpace>) -> Vector {
    Vector::from_fn(s, |_| nonnegative_rational(rng))
}

pub fn rt_vector<R: Rng + ?Sized>(rng: &mut R, t: &CondExp) -> RtVector {
    let values: Vec<Rational> = (0..t.num_blocks()).map(|_| rational(rng)).collect();
    t.from_block_values(&values)
}

pub fn component<R: Rng + ?Sized>(rng: &mut R, s: &Arc<FiniteSpace>) -> Component {
    let mask = (0..s.size()).filter(|_| rng.gen_bool(0.5)).fold(0u64, |m, i| m | 1 << i);
    Component::from_mask(s, mask).expect("mask fits")
}

/// A charge with arbitrary block-constant atom values.
pub fn charge<R: Rng + ?Sized>(rng: &mut R, t: &Arc<CondExp>) -> Charge {
    let atoms = (0..t.size()).map(|_| rt_vector(rng, t)).collect();
    Charge::from_atoms(t, atoms)
}

/// A `T`-absolutely continuous charge.
pub fn ac_charge<R: Rng + ?Sized>(rng: &mut R, t: &Arc<CondExp>) -> Charge {
    charge(rng, t).lebesgue_decomposition().0
}

pub fn positive_ac_charge<R: Rng + ?Sized>(rng: &mut R, t: &Arc<CondExp>) -> Charge {
    ac_charge(rng, t).abs()
}

/// A step function with up to `n` terms on disjoint random components.
pub fn step_function<R: Rng + ?Sized>(rng: &mut R, t: &Arc<CondExp>) -> StepFunction {
    let n = t.size();
    let labels = rng.gen_range(1..=n);
    let mut masks = vec![0u64; labels];
    for p in 0..n {
        // One extra label leaves the point uncovered.
        let l = rng.gen_range(0..=labels);
        if l < labels {
            masks[l] |= 1 << p;
        }
    }
    let terms = masks
        .into_iter()
        .filter(|&m| m != 0)
        .map(|m| {
            (
                rt_vector(rng, t),
                Component::from_mask(t.space(), m).expect("mask fits"),
            )
        })
        .collect();
    StepFunction::new(t, terms).expect("disjoint components")
}
