//! Invariant suites over seeded random instances plus the spec instance.

use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use riesz_lab::charge::{brute, charge_lattice, Charge};
use riesz_lab::condexp::{holder_product, CondExp, Exponent};
use riesz_lab::duality::{
    charge_to_linfty, dual_ideal_check, l1_recover, l1_representation, l2_recover,
    l2_representation, linfty_to_charge, DualExponent, DualFunctional,
};
use riesz_lab::freudenthal::freudenthal_sequence;
use riesz_lab::integration::{
    elementary_integral, integral, j_hom_check, sombrero_check, well_definedness_witness,
    StepFunction,
};
use riesz_lab::operator::ColumnOperator;
use riesz_lab::product::product_decomposition;
use riesz_lab::rational::{int, rat, two_pow};
use riesz_lab::space::{self, band_projection, partial_inverse, Component, Vector};
use riesz_lab::{random, Error};

use crate::report::{describe_error, RunReport};
use crate::spec::{describe, Instance};

/// Enumeration-heavy operator checks only run up to this many points.
pub const SIGN_PATTERN_MAX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lattice,
    Charges,
    Integration,
    Duality,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 4] = [Suite::Lattice, Suite::Charges, Suite::Integration, Suite::Duality];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Charges => "charges",
            Suite::Integration => "integration",
            Suite::Duality => "duality",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Suite::Lattice, Suite::Charges, Suite::Integration, Suite::Duality, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
    }

    fn stream_id(self) -> u64 {
        match self {
            Suite::Lattice => 1,
            Suite::Charges => 2,
            Suite::Integration => 3,
            Suite::Duality => 4,
            Suite::All => 0,
        }
    }
}

/// Independent stream per (suite, case) so `all` reproduces each suite alone.
fn rng_for(seed: u64, suite: Suite, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite.stream_id() << 32) | case);
    rng
}

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: riesz_lab::Result<T>) -> Result<T, String> {
    r.map_err(|e| describe_error(&e))
}

struct Checks<'a> {
    report: &'a mut RunReport,
    instance: String,
    group: &'static str,
}

impl Checks<'_> {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Outcome) {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let key = format!("{}/{}", self.group, name);
        self.report.record(&key, &self.instance, outcome);
    }
}

pub fn run_suite(inst: &Instance, suite: Suite, seed: u64, cases: usize, max_omega: usize) -> RunReport {
    let mut report = RunReport::new(suite.name(), seed, cases, max_omega, describe(&inst.cond_exp));
    if !inst.null_points.is_empty() {
        let pts: Vec<String> = inst.null_points.iter().map(|p| p.to_string()).collect();
        report
            .notes
            .push(format!("null ideal on points {} removed before running", pts.join(",")));
    }
    let modules: Vec<Suite> = match suite {
        Suite::All => Suite::MODULES.to_vec(),
        s => vec![s],
    };
    for m in modules {
        let mut rng = rng_for(seed, m, 0);
        module_checks(&mut report, m, "reference", &inst.cond_exp, &mut rng);
        named_checks(&mut report, m, inst, &mut rng);
        for case in 0..cases {
            let mut rng = rng_for(seed, m, case as u64 + 1);
            let t = random::cond_exp(&mut rng, max_omega);
            module_checks(&mut report, m, &format!("case {}", case + 1), &t, &mut rng);
        }
    }
    report
}

fn module_checks(report: &mut RunReport, m: Suite, label: &str, t: &Arc<CondExp>, rng: &mut ChaCha8Rng) {
    let mut c = Checks {
        report,
        instance: label.to_string(),
        group: m.name(),
    };
    match m {
        Suite::Lattice => lattice_checks(&mut c, t, rng),
        Suite::Charges => charge_checks(&mut c, t, rng),
        Suite::Integration => integration_checks(&mut c, t, rng),
        Suite::Duality => duality_checks(&mut c, t, rng),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

fn lattice_checks(c: &mut Checks, t: &Arc<CondExp>, rng: &mut ChaCha8Rng) {
    let s = t.space().clone();
    let n = t.size();
    let f = random::vector(rng, &s);
    let g = random::vector(rng, &s);
    let h = random::vector(rng, &s);
    let fp = random::positive_vector(rng, &s);

    c.run("identities", || {
        ensure(f.sup(&g).sup(&h) == f.sup(&g.sup(&h)), || "∨ is not associative".into())?;
        ensure(f.inf(&g) == g.inf(&f), || "∧ is not commutative".into())?;
        ensure(f.sup(&f.inf(&g)) == f, || "absorption fails".into())?;
        ensure(f.inf(&g.sup(&h)) == f.inf(&g).sup(&f.inf(&h)), || "distributivity fails".into())?;
        ensure(&f + &g == &f.sup(&g) + &f.inf(&g), || "f+g ≠ f∨g + f∧g".into())?;
        ensure(&f.pos() - &f.neg_part() == f && f.pos().inf(&f.neg_part()).is_zero(), || {
            format!("Jordan parts of {f} fail")
        })
    });
    c.run("band_projection", || {
        let pg = lib(band_projection(&f, &g))?;
        ensure(lib(band_projection(&f, &pg))? == pg, || "not idempotent".into())?;
        let ga = g.abs();
        let p = lib(band_projection(&f, &ga))?;
        ensure(Vector::zero(&s).le(&p) && p.le(&ga), || format!("0 ≤ P_f g ≤ g fails for g = {ga}"))
    });
    c.run("partial_inverse", || {
        let inv = partial_inverse(&f);
        ensure(&(&f * &inv) * &f == f, || format!("f f⁻¹ f ≠ f for f = {f}"))?;
        ensure(partial_inverse(&inv) == f, || "(f⁻¹)⁻¹ ≠ f".into())
    });
    c.run("freudenthal", || {
        let u = space::unit(&s);
        let cst = fp.max_entry();
        let mut prev = Vector::zero(&s);
        for (j, step) in lib(freudenthal_sequence(&fp, &u, 6))?.iter().enumerate() {
            let sj = step.realize();
            ensure(prev.le(&sj) && sj.le(&fp), || format!("stage {} is not monotone", j + 1))?;
            let bound = u.scale(&(&cst / two_pow(j as u32 + 1)));
            ensure((&fp - &sj).le(&bound), || format!("stage {} exceeds 2^-j c u", j + 1))?;
            prev = sj;
        }
        Ok(())
    });
    let p = random::component(rng, &s);
    let q = random::component(rng, &s);
    c.run("component_algebra", || {
        let ops = lib(space::component_algebra(&p, &q))?;
        ensure(ops.meet.join(&ops.difference) == p, || format!("(p∧q) ∨ (p−q) ≠ p for p = {p}"))?;
        ensure(ops.complement.is_disjoint(&p) && ops.complement.join(&p) == Component::full(&s), || {
            "complement fails".into()
        })
    });
    if n <= SIGN_PATTERN_MAX {
        let cols: Vec<Vector> = (0..n).map(|_| random::vector(rng, &s)).collect();
        c.run("riesz_kantorovich", || {
            let a = lib(ColumnOperator::new(&s, cols))?;
            ensure(a.positive_part().apply(&fp) == a.positive_part_brute(&fp), || {
                format!("T⁺ closed form differs from the brute-force sup at f = {fp}")
            })?;
            ensure(a.modulus().apply(&fp) == a.modulus_brute(&fp), || "|T| differs".into())
        });
    }

    c.run("cond_exp_axioms", || {
        let r = t.verify_axioms();
        ensure(r.all_passed(), || r.to_string())
    });
    let alpha = random::rt_vector(rng, t);
    c.run("averaging", || {
        ensure(t.apply(&(alpha.as_vector() * &f)) == &alpha * &t.apply(&f), || {
            format!("T(gf) ≠ g T(f) for f = {f}")
        })
    });
    c.run("norm_triangle", || {
        let sum = &f + &g;
        let n1 = lib(t.norm_tp(&sum, 1))?;
        ensure(n1.le(&(&lib(t.norm_tp(&f, 1))? + &lib(t.norm_tp(&g, 1))?)), || "p = 1".into())?;
        ensure(t.norm_tinf(&sum).le(&(&t.norm_tinf(&f) + &t.norm_tinf(&g))), || "p = ∞".into())?;
        let cert = lib(holder_product(t, &f, &g, &Exponent::Finite(int(2))))?;
        let rhs = &(&lib(t.norm_tp_pow(&f, 2))? + &lib(t.norm_tp_pow(&g, 2))?) + &cert.lhs.scale(&int(2));
        ensure(cert.holds && lib(t.norm_tp_pow(&sum, 2))?.le(&rhs), || "p = 2 certificate".into())
    });
    c.run("norm_monotone", || {
        let small = f.abs().inf(&g.abs());
        for p in 1..=3 {
            let (a, b) = (lib(t.norm_tp_pow(&small, p))?, lib(t.norm_tp_pow(&f, p))?);
            ensure(a.le(&b), || format!("p = {p}"))?;
        }
        ensure(t.norm_tinf(&small).le(&t.norm_tinf(&f)), || "p = ∞".into())
    });
    c.run("order_continuity", || {
        let mut fk = fp.clone();
        for _ in 0..16 {
            fk = fk.scale(&rat(1, 2));
        }
        let expected = t.norm_tinf(&fp).scale(&rat(1, 1 << 16));
        ensure(t.norm_tinf(&fk) == expected, || "‖f/2^k‖ ≠ ‖f‖/2^k".into())?;
        ensure(lib(t.norm_tp_pow(&fk, 1))? == lib(t.norm_tp_pow(&fp, 1))?.scale(&rat(1, 1 << 16)), || {
            "p = 1".into()
        })
    });
    c.run("proj_ineq", || {
        ensure(lib(t.check_proj_ineq(&fp))?, || format!("P_f ≰ P_Tf for f = {fp}"))
    });
    c.run("component_norm", || {
        ensure(t.norm_tinf(&p.to_vector()) == t.apply(&p.to_vector()).support_unit(), || {
            format!("‖p‖_T,∞ ≠ P_Tp(e) for p = {p}")
        })
    });
    let beta = random::rt_vector(rng, t).abs();
    c.run("band_invariance", || {
        let dominated = (beta.as_vector() * &fp.abs()).inf(&g.abs());
        ensure(beta.support_unit().as_vector() * &dominated == dominated, || {
            format!("P_α(e) f ≠ f for α = {}", beta.as_vector())
        })
    });
    c.run("holder", || {
        for p in [Exponent::Finite(int(1)), Exponent::Finite(int(2)), Exponent::Infinity] {
            let cert = lib(holder_product(t, &f, &g, &p))?;
            ensure(cert.holds, || format!("certificate fails for p = {p:?}"))?;
        }
        Ok(())
    });
}

fn charge_checks(c: &mut Checks, t: &Arc<CondExp>, rng: &mut ChaCha8Rng) {
    let mu = random::charge(rng, t);
    let nu = random::charge(rng, t);
    let ac = random::ac_charge(rng, t);
    let g = random::rt_vector(rng, t);
    lattice_oracle(c, "lattice_oracle", &mu, &nu);
    c.run("variation_norm", || {
        let vn = lib(mu.variation_norm())?;
        ensure(vn.value == mu.norm(), || format!("sup over partitions {} ≠ |μ|(e) {}", vn.value.as_vector(), mu.norm().as_vector()))
    });
    c.run("norm_axioms", || {
        ensure(lib(mu.add(&nu))?.norm().le(&(&mu.norm() + &nu.norm())), || "triangle".into())?;
        ensure(mu.scale(&g).norm() == &g.abs() * &mu.norm(), || "‖gμ‖ ≠ |g| ‖μ‖".into())?;
        ensure(mu.norm().is_zero() == mu.is_zero(), || "definiteness".into())
    });
    c.run("ac_criterion", || {
        for x in [&mu, &ac] {
            ensure(x.is_abs_continuous() == x.abs_continuity_by_enumeration().is_none(), || {
                "atomwise criterion disagrees with enumeration".into()
            })?;
        }
        ensure(ac.is_abs_continuous(), || "generated a.c. charge is not a.c.".into())
    });
    lebesgue_check(c, "lebesgue", &mu);
    c.run("ideal", || {
        let shrunk = ac.scale_scalar(&rat(rng.gen_range(-4..=4), 4));
        ensure(lib(shrunk.abs().le(&ac.abs()))? && shrunk.is_abs_continuous(), || {
            "|ν| ≤ |μ|, μ ≪ T does not give ν ≪ T".into()
        })
    });
    c.run("raw_round_trip", || {
        ensure(lib(mu.table().validate())? == mu, || "table validation changed the charge".into())
    });
}

fn lattice_oracle(c: &mut Checks, name: &str, mu: &Charge, nu: &Charge) {
    c.run(name, || {
        let ops = lib(charge_lattice(mu, nu))?;
        #[allow(clippy::type_complexity)]
        let cases: [(&str, &Charge, Box<dyn Fn(&Component) -> _>); 5] = [
            ("sup", &ops.sup, Box::new(|p: &Component| brute::sup_at(mu, nu, p))),
            ("inf", &ops.inf, Box::new(|p: &Component| brute::inf_at(mu, nu, p))),
            ("abs", &ops.abs, Box::new(|p: &Component| brute::abs_at(mu, p))),
            ("pos", &ops.pos, Box::new(|p: &Component| brute::pos_at(mu, p))),
            ("neg", &ops.neg, Box::new(|p: &Component| brute::neg_at(mu, p))),
        ];
        for (op, closed, oracle) in cases {
            if let Some(p) = brute::first_mismatch(closed, oracle) {
                return Err(format!("{op} differs from brute force on component {p}"));
            }
        }
        Ok(())
    });
}

fn lebesgue_check(c: &mut Checks, name: &str, mu: &Charge) {
    c.run(name, || {
        let (ac, s) = mu.lebesgue_decomposition();
        ensure(lib(ac.add(&s))? == *mu, || "μ_ac + μ_s ≠ μ".into())?;
        ensure(ac.is_abs_continuous() && ac.abs_continuity_by_enumeration().is_none(), || {
            "μ_ac is not a.c.".into()
        })?;
        let (aa, sa) = (ac.abs(), s.abs());
        for p in space::components(mu.cond_exp().space()) {
            let v = brute::inf_at(&aa, &sa, &p);
            ensure(v.is_zero(), || format!("(|μ_ac| ∧ |μ_s|)({p}) = {}", v.as_vector()))?;
        }
        Ok(())
    });
}

fn integration_checks(c: &mut Checks, t: &Arc<CondExp>, rng: &mut ChaCha8Rng) {
    let mu = random::ac_charge(rng, t);
    let nu = random::ac_charge(rng, t);
    let pos = random::positive_ac_charge(rng, t);
    let x = random::step_function(rng, t);
    let y = random::step_function(rng, t);
    let gamma = random::rt_vector(rng, t);
    let f = random::vector(rng, t.space());
    let fp = random::positive_vector(rng, t.space());
    let raw = random::charge(rng, t);
    let mut trial_rng = ChaCha8Rng::seed_from_u64(rng.gen());

    c.run("well_definedness", || {
        let w = lib(well_definedness_witness(&mu, &x, 20, &mut trial_rng))?;
        ensure(w.all_agree(), || {
            format!("representation {} disagrees", w.disagreement.map_or(0, |k| k + 1))
        })
    });
    c.run("linearity", || {
        let ix = lib(elementary_integral(&mu, &x))?;
        let iy = lib(elementary_integral(&mu, &y))?;
        ensure(lib(elementary_integral(&mu, &lib(x.add(&y))?))? == &ix + &iy, || "additivity".into())?;
        ensure(lib(elementary_integral(&mu, &x.scale(&gamma)))? == &gamma * &ix, || "R(T)-homogeneity".into())?;
        ensure(lib(elementary_integral(&pos, &x.abs()))?.is_positive(), || "positivity".into())
    });
    c.run("restriction", || {
        for p in space::components(t.space()) {
            let step = lib(StepFunction::from_vectors(t, vec![(space::unit(t.space()), p.clone())]))?;
            ensure(lib(elementary_integral(&mu, &step))? == lib(mu.eval(&p))?, || format!("I_μ(p) ≠ μ(p) at {p}"))?;
        }
        Ok(())
    });
    c.run("integral_extends_step", || {
        let step = StepFunction::from_vector(t, &f);
        ensure(lib(integral(&mu, &f))? == lib(elementary_integral(&mu, &step))?, || {
            format!("∫f dμ ≠ I_μ(f) for f = {f}")
        })
    });
    c.run("sombrero", || {
        let r = lib(sombrero_check(&pos, &fp, 6))?;
        match r.stages.iter().find(|s| !s.monotone || !s.within_bounds) {
            Some(s) => Err(format!("stage {} fails its bounds", s.n)),
            None => Ok(()),
        }
    });
    c.run("bound", || {
        let lhs = lib(integral(&mu, &f))?.abs();
        ensure(lhs.le(&(&mu.norm() * &t.norm_tinf(&f))), || "|∫f dμ| > |μ|(e) ‖f‖_T,∞".into())
    });
    if t.size() <= SIGN_PATTERN_MAX {
        c.run("j_homomorphism", || {
            let r = lib(j_hom_check(&mu, &nu, std::slice::from_ref(&fp)))?;
            ensure(r.all_passed(), || r.to_string())
        });
    }
    c.run("rejects_non_ac", || {
        let step = StepFunction::from_vector(t, &space::unit(t.space()));
        let outcome = elementary_integral(&raw, &step);
        let rejected = matches!(outcome, Err(Error::NotAbsolutelyContinuous { .. }));
        ensure(rejected != raw.is_abs_continuous(), || "acceptance does not match μ ≪ T".into())
    });
}

fn duality_checks(c: &mut Checks, t: &Arc<CondExp>, rng: &mut ChaCha8Rng) {
    let s = t.space().clone();
    let n = t.size();
    let f = random::vector(rng, &s);
    let g = random::vector(rng, &s);
    let mu = random::ac_charge(rng, t);
    let probes: Vec<Vector> = (0..2).map(|_| random::vector(rng, &s)).collect();
    let raw_cols: Vec<Vector> = (0..n)
        .map(|i| t.partition().block_component(t.block_of(i)).to_vector().scale(&random::rational(rng)))
        .collect();

    c.run("l1_isometry", || {
        let phi = lib(l1_representation(t, &f))?;
        let norm = lib(phi.dual_norm(DualExponent::One))?;
        ensure(*norm.value() == t.norm_tinf(&f), || format!("‖Φ(f)‖ ≠ ‖f‖_T,∞ for f = {f}"))
    });
    c.run("l2_isometry", || {
        let phi = lib(l2_representation(t, &f))?;
        let sq = lib(phi.dual_norm(DualExponent::Two))?;
        ensure(*sq.value() == t.apply(&(&f * &f)), || format!("‖Φ(f)‖² ≠ T(f²) for f = {f}"))
    });
    c.run("linfty_isometry", || {
        let phi = lib(charge_to_linfty(&mu))?;
        let norm = lib(phi.dual_norm(DualExponent::Infinity))?;
        ensure(*norm.value() == mu.norm(), || "‖Φ(μ)‖ ≠ |μ|(e)".into())
    });
    c.run("characterizations", || {
        for phi in [lib(l1_representation(t, &f))?, lib(charge_to_linfty(&mu))?] {
            for p in [DualExponent::One, DualExponent::Infinity] {
                let ch = lib(phi.dual_norm_characterizations(p))?;
                ensure(ch.agree(), || format!("characterizations disagree for p = {p}"))?;
            }
        }
        Ok(())
    });
    c.run("round_trips", || {
        let raw = lib(DualFunctional::raw(t, raw_cols.clone()))?;
        ensure(lib(l1_recover(&lib(l1_representation(t, &f))?))? == f, || "L1 Ψ∘Φ".into())?;
        ensure(lib(l1_representation(t, &lib(l1_recover(&raw))?))?.same_map(&raw), || "L1 Φ∘Ψ".into())?;
        ensure(lib(l2_recover(&lib(l2_representation(t, &f))?))? == f, || "L2 Ψ∘Φ".into())?;
        ensure(lib(l2_representation(t, &lib(l2_recover(&raw))?))?.same_map(&raw), || "L2 Φ∘Ψ".into())?;
        ensure(lib(linfty_to_charge(&lib(charge_to_linfty(&mu))?))? == mu, || "L∞ Ψ∘Φ".into())?;
        ensure(lib(charge_to_linfty(&lib(linfty_to_charge(&raw))?))?.same_map(&raw), || "L∞ Φ∘Ψ".into())
    });
    c.run("product", || {
        let d = lib(product_decomposition(t))?;
        let phi = lib(l1_representation(t, &f))?;
        let parts = lib(d.psi(&phi))?;
        ensure(lib(d.phi(&parts))?.same_map(&phi), || "Φ∘Ψ on duals".into())?;
        let again = lib(d.psi(&lib(d.phi(&parts))?))?;
        ensure(again.iter().zip(&parts).all(|(a, b)| a.same_map(b)), || "Ψ∘Φ on duals".into())?;
        let mparts = lib(d.psi_charge(&mu))?;
        ensure(lib(d.phi_charge(&mparts))? == mu, || "Φ∘Ψ on charges".into())?;
        ensure(lib(d.psi_charge(&lib(d.phi_charge(&mparts))?))? == mparts, || "Ψ∘Φ on charges".into())?;
        let norm = lib(phi.dual_norm(DualExponent::One))?;
        ensure(lib(d.product_norm(&parts, DualExponent::One))? == *norm.value(), || "product norm".into())
    });
    if n <= SIGN_PATTERN_MAX {
        c.run("l1_preserves_sup", || {
            let joined = lib(l1_representation(t, &f.sup(&g)))?;
            let brute = lib(lib(l1_representation(t, &f))?.sup_brute(&lib(l1_representation(t, &g))?))?;
            ensure(joined.same_map(&brute), || format!("Φ(f∨g) ≠ Φ(f)∨Φ(g) for f = {f}, g = {g}"))
        });
        c.run("dual_ideal", || {
            let psi = lib(l1_representation(t, &f))?;
            for phi in [psi.positive_part_brute(), DualFunctional::zero(t), psi.clone()] {
                for p in [DualExponent::One, DualExponent::Infinity] {
                    let r = lib(dual_ideal_check(&phi, &psi, p, &probes))?;
                    ensure(r.all_passed(), || r.to_string())?;
                }
            }
            Ok(())
        });
    }
    if t.num_blocks() > 1 {
        c.run("homogeneity_detector", || {
            let mut cols = raw_cols.clone();
            cols[0] = &cols[0] + &space::unit(&s);
            match DualFunctional::raw(t, cols) {
                Err(Error::NotHomogeneous { atom: 0 }) => Ok(()),
                other => Err(format!("expected witness atom 1, got {:?}", other.map(|_| ()))),
            }
        });
    }
}

/// Checks on the spec's named charges.
fn named_checks(report: &mut RunReport, m: Suite, inst: &Instance, rng: &mut ChaCha8Rng) {
    let t = &inst.cond_exp;
    for (name, mu) in &inst.charges {
        let mut c = Checks {
            report,
            instance: format!("charge {name}"),
            group: m.name(),
        };
        match m {
            Suite::Charges => {
                lattice_oracle(&mut c, &format!("named/{name}/lattice_oracle"), mu, &mu.neg());
                lebesgue_check(&mut c, &format!("named/{name}/lebesgue"), mu);
            }
            Suite::Integration => named_well_definedness(c.report, name, mu, t, rng),
            Suite::Duality if mu.is_abs_continuous() => {
                c.run(&format!("named/{name}/linfty"), || {
                    let phi = lib(charge_to_linfty(mu))?;
                    let norm = lib(phi.dual_norm(DualExponent::Infinity))?;
                    ensure(lib(linfty_to_charge(&phi))? == *mu && *norm.value() == mu.norm(), || {
                        "round trip or isometry fails".into()
                    })
                });
            }
            _ => {}
        }
    }
}

fn named_well_definedness(
    report: &mut RunReport,
    name: &str,
    mu: &Charge,
    t: &Arc<CondExp>,
    rng: &mut ChaCha8Rng,
) {
    let key = format!("integration/named/{name}/well_definedness");
    let instance = format!("charge {name}");
    match mu.abs_continuity_witness() {
        None => {
            let x = random::step_function(rng, t);
            let outcome = lib(well_definedness_witness(mu, &x, 20, rng)).and_then(|w| {
                ensure(w.all_agree(), || "representations disagree for an a.c. charge".into())
            });
            report.record(&key, &instance, outcome);
        }
        Some(p) => {
            let s = t.space();
            let x = StepFunction::from_vectors(t, vec![(space::unit(s), p.clone())]).expect("single term");
            match well_definedness_witness(mu, &x, 20, rng) {
                Ok(w) => match w.disagreement {
                    Some(k) => {
                        let (_, other) = &w.trials[k];
                        report.expected_fail(
                            &key,
                            format!(
                                "μ is not T-a.c. on {p}; x = e·1_{p} has representation sums {} and {}",
                                w.base_value.as_vector(),
                                other.as_vector()
                            ),
                        );
                    }
                    None => report.record(
                        &key,
                        &instance,
                        Err(format!("no representation dependence found on witness {p}")),
                    ),
                },
                Err(e) => report.record(&key, &instance, Err(describe_error(&e))),
            }
        }
    }
}
