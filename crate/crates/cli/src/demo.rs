//! Walkthroughs that print the objects behind each identity with exact values.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riesz_lab::charge::Charge;
use riesz_lab::conjecture::{probe_instance, ProbeConfig};
use riesz_lab::duality::{
    charge_to_linfty, l1_representation, l2_representation, linfty_to_charge, DualExponent,
    DualFunctional,
};
use riesz_lab::integration::{integral, sombrero_check};
use riesz_lab::product::product_decomposition;
use riesz_lab::rational::{fmt_rational, rat, to_f64};
use riesz_lab::space::{self, Vector};
use riesz_lab::{CondExp, Rational};

use crate::report::describe_error;
use crate::spec::{describe, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topic {
    Dual1,
    Dual2,
    DualInf,
    Lebesgue,
    Sombrero,
    Conjecture,
}

impl Topic {
    pub const ALL: [Topic; 6] = [
        Topic::Dual1,
        Topic::Dual2,
        Topic::DualInf,
        Topic::Lebesgue,
        Topic::Sombrero,
        Topic::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Topic::Dual1 => "dual1",
            Topic::Dual2 => "dual2",
            Topic::DualInf => "dualinf",
            Topic::Lebesgue => "lebesgue",
            Topic::Sombrero => "sombrero",
            Topic::Conjecture => "conjecture",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }
}

#[derive(Debug, Clone)]
pub struct DemoOptions {
    pub seed: u64,
    pub p: f64,
    pub restarts: usize,
}

impl Default for DemoOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            p: 3.0,
            restarts: 64,
        }
    }
}

/// `(1, -2, 3, ...)` unless the spec names a vector `h`.
fn kernel(inst: &Instance) -> Vector {
    inst.vector("h").cloned().unwrap_or_else(|| {
        Vector::from_fn(inst.cond_exp.space(), |i| {
            let v = Rational::from_integer((i as i64 + 1).into());
            if i % 2 == 1 {
                -v
            } else {
                v
            }
        })
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

fn header(out: &mut String, topic: Topic, t: &CondExp) {
    let _ = writeln!(out, "== demo {} ==", topic.name());
    let _ = writeln!(out, "T: {}", describe(t));
}

pub fn demo(inst: &Instance, topic: Topic, opts: &DemoOptions) -> Result<String, String> {
    let mut out = String::new();
    header(&mut out, topic, &inst.cond_exp);
    let lib = |e: riesz_lab::Error| describe_error(&e);
    match topic {
        Topic::Dual1 => dual1(&mut out, inst).map_err(lib)?,
        Topic::Dual2 => dual2(&mut out, inst).map_err(lib)?,
        Topic::DualInf => dualinf(&mut out, inst).map_err(lib)?,
        Topic::Lebesgue => lebesgue(&mut out, inst).map_err(lib)?,
        Topic::Sombrero => sombrero(&mut out, inst).map_err(lib)?,
        Topic::Conjecture => conjecture(&mut out, inst, opts).map_err(lib)?,
    }
    Ok(out)
}

fn columns(out: &mut String, phi: &DualFunctional) {
    for (i, c) in phi.columns().iter().enumerate() {
        let _ = writeln!(out, "  φ(1_{}) = {}", i + 1, c);
    }
}

fn dual1(out: &mut String, inst: &Instance) -> riesz_lab::Result<()> {
    let t = &inst.cond_exp;
    let h = kernel(inst);
    let phi = l1_representation(t, &h)?;
    let _ = writeln!(out, "kernel h = {h}");
    let _ = writeln!(out, "Φ(h) = (g ↦ T(hg)), columns:");
    columns(out, &phi);
    let vertices = phi.l1_unit_ball_vertices()?;
    let norm = phi.dual_norm(DualExponent::One)?;
    let tinf = t.norm_tinf(&h);
    let _ = writeln!(out, "vertices of the ‖·‖_T,1 unit ball: {}", vertices.len());
    let _ = writeln!(out, "‖Φ(h)‖ by vertex enumeration = {}", norm.value());
    let _ = writeln!(out, "‖h‖_T,∞ = {tinf}");
    let _ = writeln!(out, "isometry ‖Φ(h)‖ = ‖h‖_T,∞: {}", yes(*norm.value() == tinf));
    let ch = phi.dual_norm_characterizations(DualExponent::One)?;
    let _ = writeln!(
        out,
        "inf of bounds = {}, sup over unit ball = {}, sup of normalized = {}: {}",
        ch.inf_of_bounds,
        ch.sup_unit_ball,
        ch.sup_normalized,
        if ch.agree() { "agree" } else { "DISAGREE" }
    );
    let d = product_decomposition(t)?;
    let parts = d.psi(&phi)?;
    for (b, part) in d.blocks().iter().zip(&parts) {
        let n = part.dual_norm(DualExponent::One)?;
        let pts: Vec<String> = b.points.iter().map(|p| (p + 1).to_string()).collect();
        let _ = writeln!(out, "block {{{}}}: norm {}", pts.join(","), fmt_rational(&n.value().values()[0]));
    }
    let assembled = d.product_norm(&parts, DualExponent::One)?;
    let _ = writeln!(out, "assembled product norm = {}: {}", assembled, yes(assembled == *norm.value()));
    Ok(())
}

fn dual2(out: &mut String, inst: &Instance) -> riesz_lab::Result<()> {
    let t = &inst.cond_exp;
    let h = kernel(inst);
    let phi = l2_representation(t, &h)?;
    let _ = writeln!(out, "kernel h = {h}");
    let _ = writeln!(out, "Φ(h) = (g ↦ T(hg)), columns:");
    columns(out, &phi);
    let sq = phi.dual_norm(DualExponent::Two)?;
    let th2 = t.apply(&(&h * &h));
    let _ = writeln!(out, "‖Φ(h)‖² from the columns = {}", sq.value());
    let _ = writeln!(out, "T(h²) = {th2}");
    let _ = writeln!(out, "isometry ‖Φ(h)‖² = T(h²): {}", yes(*sq.value() == th2));
    let g = phi.l2_attainer();
    let lhs = phi.apply(&g).pow(2);
    let rhs = sq.value() * &t.apply(&(&g * &g));
    let _ = writeln!(out, "attainer g = {g}");
    let _ = writeln!(out, "φ(g)² = {lhs}, ‖Φ(h)‖² T(g²) = {rhs}: {}", yes(lhs == rhs));
    let roots: Vec<String> = sq.value().values().iter().map(|v| format!("{:.12}", to_f64(v).sqrt())).collect();
    let _ = writeln!(out, "‖Φ(h)‖ (float, tol 1e-12) = ({})", roots.join(", "));
    Ok(())
}

fn dualinf(out: &mut String, inst: &Instance) -> riesz_lab::Result<()> {
    let t = &inst.cond_exp;
    let s = t.space();
    let phi = DualFunctional::kernel(t, &space::unit(s))?;
    let mu = linfty_to_charge(&phi)?;
    let _ = writeln!(out, "φ = T; μ = Ψ(T) has atoms:");
    atom_table(out, &mu);
    let _ = writeln!(out, "μ ≪ T: {}", yes(mu.is_abs_continuous()));
    let mut all = true;
    for p in space::components(s) {
        let lhs = integral(&mu, &p.to_vector())?;
        let rhs = t.apply(&p.to_vector());
        all &= lhs == rhs;
        let _ = writeln!(out, "  p = {p}: ∫p dμ = {lhs}, T(p) = {rhs}");
    }
    let _ = writeln!(out, "∫p dμ = T(p) on every component: {}", yes(all));
    let back = charge_to_linfty(&mu)?;
    let norm = back.dual_norm(DualExponent::Infinity)?;
    let _ = writeln!(out, "‖Φ(μ)‖ by sign vectors = {}, |μ|(e) = {}: {}", norm.value(), mu.norm(), yes(*norm.value() == mu.norm()));
    let _ = writeln!(out, "Φ(Ψ(T)) = T: {}", yes(back.same_map(&phi)));
    Ok(())
}

fn atom_table(out: &mut String, mu: &Charge) {
    for (i, a) in mu.atoms().iter().enumerate() {
        let _ = writeln!(out, "  μ(1_{}) = {}", i + 1, a);
    }
}

/// The spec's `mixed` charge, else its first named charge, else a charge
/// with mass both on and off each atom's block.
fn mixed_charge(inst: &Instance) -> (String, Charge) {
    if let Some(mu) = inst.charge("mixed") {
        return ("mixed".into(), mu.clone());
    }
    if let Some((name, mu)) = inst.charges.first() {
        return (name.clone(), mu.clone());
    }
    let t = &inst.cond_exp;
    let atoms = (0..t.size())
        .map(|i| {
            let block = t.partition().block_component(t.block_of(i));
            let on = block.to_vector().scale(&Rational::from_integer((i as i64 + 1).into()));
            &on + &block.complement().to_vector()
        })
        .collect();
    ("default".into(), Charge::new(t, atoms).expect("block-constant by construction"))
}

fn lebesgue(out: &mut String, inst: &Instance) -> riesz_lab::Result<()> {
    let (name, mu) = mixed_charge(inst);
    let _ = writeln!(out, "charge `{name}`:");
    atom_table(out, &mu);
    let (ac, s) = mu.lebesgue_decomposition();
    let _ = writeln!(out, "absolutely continuous part μ_ac:");
    atom_table(out, &ac);
    let _ = writeln!(out, "singular part μ_s:");
    atom_table(out, &s);
    let _ = writeln!(out, "μ = μ_ac + μ_s: {}", yes(ac.add(&s)? == mu));
    let _ = writeln!(out, "μ_ac ≪ T: {}", yes(ac.is_abs_continuous()));
    let meet = ac.abs().inf(&s.abs())?;
    let _ = writeln!(out, "|μ_ac| ∧ |μ_s| = 0: {}", yes(meet.is_zero()));
    match mu.abs_continuity_witness() {
        Some(p) => {
            let _ = writeln!(out, "μ itself is not T-a.c.: μ({p}) = {} leaves the band of T{p} = {}", mu.eval(&p)?, inst.cond_exp.apply(&p.to_vector()));
        }
        None => {
            let _ = writeln!(out, "μ itself is T-a.c.");
        }
    }
    Ok(())
}

fn sombrero(out: &mut String, inst: &Instance) -> riesz_lab::Result<()> {
    let t = &inst.cond_exp;
    let n = t.size();
    let f = inst
        .vector("f")
        .cloned()
        .unwrap_or_else(|| Vector::from_fn(t.space(), |i| rat(i as i64 + 1, n as i64)));
    let mu = Charge::from_cond_exp(t);
    let _ = writeln!(out, "f = {f}, μ(p) = T(p)");
    let r = sombrero_check(&mu, &f, 4)?;
    let _ = writeln!(out, "α = ‖f‖_T,∞ = {}, ∫f dμ = {}", r.alpha, r.integral);
    for st in &r.stages {
        let _ = writeln!(out, "stage {}: s_{} = {}", st.n, st.n, st.approximation);
        let _ = writeln!(out, "  f - s_{} = {} ≤ 2^-{}α = {}", st.n, st.error, st.n, st.error_bound);
        let _ = writeln!(
            out,
            "  I_μ(s_{}) = {}, |∫f dμ - I_μ(s_{})| = {} ≤ {}: {}",
            st.n,
            st.integral,
            st.n,
            st.integral_error,
            st.integral_bound,
            yes(st.within_bounds && st.monotone)
        );
    }
    Ok(())
}

fn conjecture(out: &mut String, inst: &Instance, opts: &DemoOptions) -> riesz_lab::Result<()> {
    let t = &inst.cond_exp;
    let h = kernel(inst);
    let mut cfg = ProbeConfig::new(opts.p)?;
    cfg.restarts = opts.restarts;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let outcome = probe_instance(t, &h, &cfg, &mut rng)?;
    let _ = writeln!(out, "evidence only (float arithmetic, {} restarts)", cfg.restarts);
    let _ = writeln!(out, "f = {h}, p = {}, q = {}", cfg.p, cfg.q());
    for b in &outcome.blocks {
        let pts: Vec<String> = t.block_points(b.block).iter().map(|p| (p + 1).to_string()).collect();
        let g: Vec<String> = b.best_g.iter().map(|x| format!("{x:.6}")).collect();
        let _ = writeln!(
            out,
            "block {{{}}}: ‖f‖_T,q = {:.12}, numerical dual norm = {:.12}, best g = ({})",
            pts.join(","),
            b.q_norm,
            b.numeric,
            g.join(", ")
        );
    }
    let _ = writeln!(out, "max relative gap = {:.3e}", outcome.relative_gap);
    Ok(())
}
