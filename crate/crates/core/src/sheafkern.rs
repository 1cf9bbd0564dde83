//! Kernels of homogeneous localization and of sheafification.
//!
//! A module lies in a Serre subcategory iff every factor of a prime filtration
//! does, so all module-level decisions are evaluated per factor `S/p(g)` with
//! the factor's actual twist. The per-point predicate below concerns the
//! module `S/p(rep)`; belonging of the atom `p̃(g)` to `ASupp(K_f)` only asks
//! for some representative of `g + G_p` (see [`atom_in_loc_kernel_support`]),
//! which is why the twists and not the atoms are used for modules.

use std::collections::BTreeSet;

use crate::atoms::AtomPoint;
use crate::error::{Error, Result};
use crate::filt::{prime_filtration, PrimeFiltration};
use crate::gring::{GradedRing, Monomial, MonomialIdeal, MonomialPrime, PresentedModule};
use crate::toric::{full_mask, irrelevant_ideal, CoxData};
use crate::zlin::{monoid_coset_membership, GroupElement, Subgroup};

/// Why a filtration factor does or does not sheafify to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reason {
    ContainsIrrelevant,
    NonStandard,
    Fails,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::ContainsIrrelevant => "contains-irrelevant",
            Reason::NonStandard => "non-standard",
            Reason::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub prime: MonomialPrime,
    pub twist: GroupElement,
    pub reason: Reason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDecision {
    pub verdict: bool,
    pub factors: Vec<FactorReport>,
}

fn check_ring(ring: &GradedRing, other: &GradedRing) -> Result<()> {
    if ring != other {
        return Err(Error::Input("objects belong to different rings".into()));
    }
    Ok(())
}

fn complement_degrees(ring: &GradedRing, p: &MonomialPrime) -> Vec<GroupElement> {
    ring.degrees_in(ring.all_vars_mask() & !p.mask())
}

/// `S/p(g) ∈ K_f`: `f ∈ p` or `g ∉ ℕ·{deg x_i : i ∉ I} + ℤ·deg f`.
pub fn factor_in_loc_kernel(ring: &GradedRing, f: &Monomial, p: &MonomialPrime, g: &GroupElement) -> Result<bool> {
    f.check(ring.nvars())?;
    if p.contains_monomial(f) {
        return Ok(true);
    }
    let d = ring.monomial_degree(f)?;
    Ok(!monoid_coset_membership(ring.group(), &complement_degrees(ring, p), &d, g)?)
}

/// The localization predicate at the stored representative of `a`.
pub fn point_in_loc_kernel(ring: &GradedRing, f: &Monomial, a: &AtomPoint) -> Result<bool> {
    check_ring(ring, a.ring())?;
    factor_in_loc_kernel(ring, f, &a.prime(), a.rep())
}

/// `rep ∉ ℕ·D_I + ℤ·d`.
pub fn point_in_ud(ring: &GradedRing, d: &GroupElement, a: &AtomPoint) -> Result<bool> {
    check_ring(ring, a.ring())?;
    Ok(!monoid_coset_membership(ring.group(), &complement_degrees(ring, &a.prime()), d, a.rep())?)
}

/// Whether some representative `h` of `a` has `h ∉ ℕ·D_I + ℤ·d`.
///
/// Modulo `⟨d⟩` the set `S = ℕ·D_I + ℤ·d` becomes the monoid `ℕ·D̄_I`, which
/// contains a full coset of `Ḡ_p` only if it is the group `Ḡ_p` itself. So
/// `g + G_p ⊆ S` iff `g ∈ S` and every `−D_i ∈ S`.
pub fn atom_in_ud_support(ring: &GradedRing, d: &GroupElement, a: &AtomPoint) -> Result<bool> {
    check_ring(ring, a.ring())?;
    let group = ring.group();
    let monoid = complement_degrees(ring, &a.prime());
    if !monoid_coset_membership(group, &monoid, d, a.rep())? {
        return Ok(true);
    }
    for x in &monoid {
        if !monoid_coset_membership(group, &monoid, d, &group.neg(x))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `p̃(g) ∈ ASupp(K_f)`: `f ∈ p` or some representative satisfies the predicate.
pub fn atom_in_loc_kernel_support(ring: &GradedRing, f: &Monomial, a: &AtomPoint) -> Result<bool> {
    check_ring(ring, a.ring())?;
    f.check(ring.nvars())?;
    if a.prime().contains_monomial(f) {
        return Ok(true);
    }
    atom_in_ud_support(ring, &ring.monomial_degree(f)?, a)
}

fn filtration_in_loc_kernel(ring: &GradedRing, f: &Monomial, filt: &PrimeFiltration) -> Result<bool> {
    for factor in filt.factors() {
        if !factor_in_loc_kernel(ring, f, &factor.prime, &factor.twist)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(M_f)_0 = 0`.
pub fn module_in_loc_kernel(ring: &GradedRing, f: &Monomial, m: &PresentedModule) -> Result<bool> {
    check_ring(ring, m.ring())?;
    filtration_in_loc_kernel(ring, f, &prime_filtration(m)?)
}

/// Per-factor decision: the factor sheafifies to zero iff its prime contains
/// `B(Σ)` or its twist is not in `G_p`.
pub fn sheafifies_to_zero(c: &CoxData, m: &PresentedModule) -> Result<ZeroDecision> {
    check_ring(c.ring(), m.ring())?;
    decide_filtration(c, &prime_filtration(m)?)
}

pub(crate) fn decide_filtration(c: &CoxData, filt: &PrimeFiltration) -> Result<ZeroDecision> {
    let b = irrelevant_ideal(c);
    let ring = c.ring();
    let mut factors = Vec::with_capacity(filt.len());
    for factor in filt.factors() {
        let reason = if factor.prime.contains_ideal(&b) {
            Reason::ContainsIrrelevant
        } else if !gp(ring, &factor.prime)?.contains(&factor.twist) {
            Reason::NonStandard
        } else {
            Reason::Fails
        };
        factors.push(FactorReport {
            prime: factor.prime,
            twist: factor.twist.clone(),
            reason,
        });
    }
    Ok(ZeroDecision {
        verdict: factors.iter().all(|f| f.reason != Reason::Fails),
        factors,
    })
}

fn gp(ring: &GradedRing, p: &MonomialPrime) -> Result<Subgroup> {
    crate::atoms::gp_subgroup(ring, p)
}

/// Decision through the localizations: `(M_{x^σ̂})_0 = 0` for every `σ ∈ Σ`.
pub fn sheafifies_to_zero_loc(c: &CoxData, m: &PresentedModule) -> Result<bool> {
    check_ring(c.ring(), m.ring())?;
    decide_filtration_loc(c, &prime_filtration(m)?)
}

pub(crate) fn decide_filtration_loc(c: &CoxData, filt: &PrimeFiltration) -> Result<bool> {
    let s = c.sigma();
    for sigma in s.members() {
        if !filtration_in_loc_kernel(c.ring(), &s.complement_monomial(sigma), filt)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every atom: the localization predicate equals `[f ∈ p] ∨ [a ∈ U_{deg f}]`,
/// both at the representative (the first side computed through the module
/// `S/p(rep)`) and at the level of atoms.
pub fn kernel_decomposition_check(ring: &GradedRing, f: &Monomial, atoms: &[AtomPoint]) -> Result<bool> {
    f.check(ring.nvars())?;
    let d = ring.monomial_degree(f)?;
    for a in atoms {
        check_ring(ring, a.ring())?;
        let m = PresentedModule::cyclic(a.ring().clone(), &a.prime().as_ideal(), a.rep())?;
        let lhs = module_in_loc_kernel(ring, f, &m)?;
        let in_p = a.prime().contains_monomial(f);
        if lhs != (in_p || point_in_ud(ring, &d, a)?) {
            return Ok(false);
        }
        if atom_in_loc_kernel_support(ring, f, a)? != (in_p || atom_in_ud_support(ring, &d, a)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of an exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub window: u64,
    pub checked: usize,
    pub failures: Vec<(MonomialPrime, GroupElement)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const DEFAULT_PRIME_CAP: usize = 20;
const COSET_LIMIT: usize = 100_000;

/// Atoms `(I, g)` for all `I` and all canonical representatives `g` of
/// `G/G_p` with free quotient coordinates in `[−window, window]`.
pub fn enumerate_atoms(ring: &std::sync::Arc<GradedRing>, window: u64, prime_cap: usize) -> Result<Vec<AtomPoint>> {
    let n = ring.nvars();
    if n > prime_cap || n >= 64 {
        return Err(Error::Resource(format!(
            "{n} variables exceed the enumeration cap {prime_cap}"
        )));
    }
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        let p = MonomialPrime::new(n, mask);
        let h = gp(ring, &p)?;
        let mut reps: BTreeSet<GroupElement> = h.coset_representatives(window, COSET_LIMIT)?.into_iter().collect();
        reps.insert(ring.group().zero());
        for g in reps {
            out.push(AtomPoint::new(ring.clone(), p, &g)?);
        }
    }
    Ok(out)
}

/// `⋂_σ ASupp(K_{x^σ̂}) = π⁻¹(Supp(S/B(Σ))) ∪ U_S`, evaluated on enumerated atoms.
pub fn main2_identity_report(c: &CoxData, coset_window: u64) -> Result<IdentityReport> {
    let ring = c.ring();
    let b = irrelevant_ideal(c);
    let s = c.sigma();
    let hats: Vec<Monomial> = s.members().map(|m| s.complement_monomial(m)).collect();
    let atoms = enumerate_atoms(ring, coset_window, DEFAULT_PRIME_CAP)?;
    let mut failures = Vec::new();
    for a in &atoms {
        let mut lhs = true;
        for f in &hats {
            if !point_in_loc_kernel(ring, f, a)? {
                lhs = false;
                break;
            }
        }
        let rhs = a.prime().contains_ideal(&b) || !a.is_standard();
        if lhs != rhs {
            failures.push((a.prime(), a.rep().clone()));
        }
    }
    Ok(IdentityReport {
        window: coset_window,
        checked: atoms.len(),
        failures,
    })
}

pub fn main2_identity_check(c: &CoxData, coset_window: u64) -> Result<bool> {
    Ok(main2_identity_report(c, coset_window)?.holds())
}

/// For every `σ ∈ Σ` and atom: `[∀τ ⊆ σ: predicate(x^τ̂)]` equals
/// `[x^σ̂ ∈ p] ∨ [g ∉ G_p]`.
pub fn technical_lemma_check(c: &CoxData, atoms: &[AtomPoint]) -> Result<bool> {
    let ring = c.ring();
    let s = c.sigma();
    for sigma in s.members() {
        let hat_sigma = s.complement_monomial(sigma);
        let taus: Vec<Monomial> = submasks(sigma).map(|t| s.complement_monomial(t)).collect();
        for a in atoms {
            let mut lhs = true;
            for f in &taus {
                if !point_in_loc_kernel(ring, f, a)? {
                    lhs = false;
                    break;
                }
            }
            let rhs = a.prime().contains_monomial(&hat_sigma) || !a.is_standard();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == 0 { None } else { Some((s - 1) & m) };
        Some(s)
    })
}

/// A nonzero element `m / f^k` of degree zero in the localization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocWitness {
    pub monomial: Monomial,
    pub k: u32,
}

/// Bounded search for a nonzero degree-zero element of `((S/I(t))(g))_f`:
/// a monomial `m ∉ I : f^∞` with `deg m = g + t + k·deg f`, `0 ≤ k ≤ k_max`.
///
/// Finding none is conclusive only up to the bound. `degree_cap` bounds the
/// total degree of `m` and is required for non-pointed gradings.
pub fn brute_force_loc_piece(
    ring: &GradedRing,
    f: &Monomial,
    m: &PresentedModule,
    g: &GroupElement,
    k_max: u32,
    degree_cap: Option<u32>,
) -> Result<Option<LocWitness>> {
    check_ring(ring, m.ring())?;
    f.check(ring.nvars())?;
    let group = ring.group();
    group.check(g)?;
    if m.generator_degrees().len() != 1 {
        return Err(Error::Unsupported("the localization oracle needs a cyclic module".into()));
    }
    let mut gens = Vec::new();
    for col in m.relations() {
        match col.entries() {
            [] => {}
            [(_, term)] => gens.push(term.monomial().clone()),
            _ => return Err(Error::Unsupported("the localization oracle needs single-term relations".into())),
        }
    }
    let ideal = MonomialIdeal::new(ring.nvars(), gens)?;
    let (saturated, _) = ideal.saturate(f);
    if saturated.is_unit() {
        return Ok(None);
    }
    let t = group.neg(&m.generator_degrees()[0]);
    let d = ring.monomial_degree(f)?;
    let base = group.add(g, &t);
    for k in 0..=k_max {
        let target = group.add(&base, &group.scale(&d, &k.into()));
        let candidates = match (ring.is_pointed(), degree_cap) {
            (_, Some(cap)) => ring.monomials_of_degree_capped(&target, cap)?,
            (true, None) => ring.monomials_of_degree(&target)?,
            (false, None) => return Err(Error::NeedsBound),
        };
        if let Some(mono) = candidates.into_iter().find(|x| !saturated.contains(x)) {
            return Ok(Some(LocWitness { monomial: mono, k }));
        }
    }
    Ok(None)
}

/// `∏_{i ∉ σ} x_i` for a family member given as a mask.
pub fn sigma_hat(nvars: usize, sigma: u64) -> Monomial {
    Monomial::product_of(nvars, full_mask(nvars) & !sigma)
}
