mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riesz_lab::freudenthal::{domination_constant, freudenthal_sequence};
use riesz_lab::operator::ColumnOperator;
use riesz_lab::random;
use riesz_lab::rational::two_pow;
use riesz_lab::space::{self, band_projection, partial_inverse, Vector};

fn instance(seed: u64, n: usize) -> (ChaCha8Rng, std::sync::Arc<riesz_lab::FiniteSpace>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = random::space(&mut rng, n);
    (rng, s)
}

/// Sup of `A(g)` over `0 ≤ g ≤ f` with `g` on the grid `k f / steps`.
fn grid_sup(cols: &[Vals], f: &[Q], steps: i64) -> Vals {
    let n = f.len();
    let base = (steps + 1) as usize;
    let mut best: Option<Vals> = None;
    for code in 0..base.pow(n as u32) {
        let mut rest = code;
        let g: Vals = f
            .iter()
            .map(|x| {
                let k = (rest % base) as i64;
                rest /= base;
                x * q(k, steps)
            })
            .collect();
        let v = apply_columns(cols, &g);
        best = Some(match best {
            None => v,
            Some(b) => max(&b, &v),
        });
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_identities(seed in any::<u64>(), n in 1usize..=5) {
        let (mut rng, s) = instance(seed, n);
        let f = random::vector(&mut rng, &s);
        let g = random::vector(&mut rng, &s);
        let h = random::vector(&mut rng, &s);
        prop_assert_eq!(f.sup(&g).sup(&h), f.sup(&g.sup(&h)));
        prop_assert_eq!(f.inf(&g).inf(&h), f.inf(&g.inf(&h)));
        prop_assert_eq!(f.sup(&g), g.sup(&f));
        prop_assert_eq!(f.inf(&g), g.inf(&f));
        prop_assert_eq!(f.sup(&f.inf(&g)), f.clone());
        prop_assert_eq!(f.inf(&f.sup(&g)), f.clone());
        prop_assert_eq!(f.inf(&g.sup(&h)), f.inf(&g).sup(&f.inf(&h)));
        prop_assert_eq!(&f + &g, &f.sup(&g) + &f.inf(&g));
        prop_assert_eq!(&f.pos() - &f.neg_part(), f.clone());
        prop_assert_eq!(&f.pos() + &f.neg_part(), f.abs());
        prop_assert!(f.pos().inf(&f.neg_part()).is_zero());
        prop_assert_eq!(vals(&f.sup(&g)), max(&vals(&f), &vals(&g)));
        prop_assert_eq!(vals(&f.abs()), abs(&vals(&f)));
    }

    #[test]
    fn band_projection_laws(seed in any::<u64>(), n in 1usize..=5) {
        let (mut rng, s) = instance(seed, n);
        let f = random::vector(&mut rng, &s);
        let g = random::vector(&mut rng, &s);
        let h = random::vector(&mut rng, &s);
        let c = random::rational(&mut rng);
        let pg = band_projection(&f, &g).unwrap();
        prop_assert_eq!(band_projection(&f, &pg).unwrap(), pg.clone());
        let lin = band_projection(&f, &(&g + &h.scale(&c))).unwrap();
        prop_assert_eq!(lin, &pg + &band_projection(&f, &h).unwrap().scale(&c));
        let gp = g.abs();
        let p = band_projection(&f, &gp).unwrap();
        prop_assert!(Vector::zero(&s).le(&p) && p.le(&gp));
        let expected: Vals = (0..n)
            .map(|i| if f.get(i) == &q(0, 1) { q(0, 1) } else { g.get(i).clone() })
            .collect();
        prop_assert_eq!(vals(&pg), expected);
    }

    #[test]
    fn partial_inverse_laws(seed in any::<u64>(), n in 1usize..=5) {
        let (mut rng, s) = instance(seed, n);
        let f = random::vector(&mut rng, &s);
        let inv = partial_inverse(&f);
        prop_assert_eq!(partial_inverse(&inv), f.clone());
        prop_assert_eq!(&(&f * &inv) * &f, f.clone());
        prop_assert_eq!(&f * &inv, f.abs().support().to_vector());
    }

    #[test]
    fn freudenthal_monotone_and_halving(seed in any::<u64>(), n in 1usize..=5) {
        let (mut rng, s) = instance(seed, n);
        let f = random::positive_vector(&mut rng, &s);
        let u = &random::positive_vector(&mut rng, &s) + &f.support().to_vector();
        let c = domination_constant(&f, &u).unwrap();
        prop_assert!(f.le(&u.scale(&c)));
        let steps = freudenthal_sequence(&f, &u, 6).unwrap();
        let mut prev = Vector::zero(&s);
        for (j, step) in steps.iter().enumerate() {
            let sj = step.realize();
            prop_assert!(prev.le(&sj) && sj.le(&f));
            let bound = u.scale(&(&c / two_pow(j as u32 + 1)));
            prop_assert!((&f - &sj).le(&bound));
            prev = sj;
        }
    }

    #[test]
    fn riesz_kantorovich_against_grid(seed in any::<u64>(), n in 1usize..=4) {
        let (mut rng, s) = instance(seed, n);
        let cols: Vec<Vector> = (0..n).map(|_| random::vector(&mut rng, &s)).collect();
        let a = ColumnOperator::new(&s, cols.clone()).unwrap();
        let f = random::positive_vector(&mut rng, &s);
        let raw: Vec<Vals> = cols.iter().map(vals).collect();
        let coarse = grid_sup(&raw, &vals(&f), 1);
        let fine = grid_sup(&raw, &vals(&f), 2);
        prop_assert_eq!(&coarse, &fine);
        prop_assert_eq!(vals(&a.positive_part().apply(&f)), fine.clone());
        prop_assert_eq!(vals(&a.positive_part_brute(&f)), fine);
        prop_assert_eq!(vals(&a.modulus().apply(&f)), operator_modulus(&raw, &vals(&f)));
    }

    #[test]
    fn component_algebra_is_boolean(seed in any::<u64>(), n in 1usize..=6) {
        let (mut rng, s) = instance(seed, n);
        let p = random::component(&mut rng, &s);
        let r = random::component(&mut rng, &s);
        let ops = space::component_algebra(&p, &r).unwrap();
        let (pv, rv) = (p.to_vector(), r.to_vector());
        prop_assert_eq!(ops.meet.to_vector(), pv.inf(&rv));
        prop_assert_eq!(ops.join.to_vector(), pv.sup(&rv));
        prop_assert_eq!(ops.complement.to_vector(), &space::unit(&s) - &pv);
        prop_assert_eq!(ops.difference.to_vector(), &pv - &pv.inf(&rv));
        prop_assert!(pv.inf(&ops.complement.to_vector()).is_zero());
    }
}
