//! Class-field-theory computations over a quadratic field K: local quotient
//! groups at tame primes, narrow ray class groups assembled from the unit
//! exact sequence, finiteness detection for the p-tower, and the character
//! target group with its p-character count.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{smith_normal_form, AbstractGroup, FiniteAbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::padic::{is_prime, unit_index};
use crate::quadfield::{
    elt_norm, elt_product, elt_signs, fundamental_unit, ClassGroup, Ideal, QuadField, SplitType,
};

/// A ray-class modulus n₀·Q^r together with all infinite places (narrow
/// convention). Q is the labeled prime above p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Modulus {
    pub n0: u64,
    pub p: u64,
    pub r: u32,
}

impl Modulus {
    pub fn new(n0: u64, p: u64, r: u32) -> Result<Modulus> {
        if n0 == 0 {
            return Err(Error::usage("tame level n0 must be positive".to_string()));
        }
        if p < 3 || !is_prime(p) {
            return Err(Error::usage(format!("p = {p} must be an odd prime")));
        }
        if n0 % p == 0 {
            return Err(Error::usage(format!(
                "tame level {n0} must be coprime to p = {p}"
            )));
        }
        Ok(Modulus { n0, p, r })
    }

    /// Absolute norm of the finite part, n₀² · p^r.
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.n0).pow(2) * BigInt::from(self.p).pow(self.r)
    }
}

/// The quotient (∏_{L | l} (O_K/L)^×) / (Z/l)^× at a tame prime l.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalQuotient {
    pub l: u64,
    pub split_type: SplitType,
    pub group: FiniteAbelianGroup,
}

/// Local quotient at a prime l: cyclic of order l − 1 (split), l + 1
/// (inert), trivial (ramified).
pub fn local_quotient(k: &QuadField, l: u64) -> Result<LocalQuotient> {
    if !is_prime(l) {
        return Err(Error::usage(format!("{l} is not prime")));
    }
    let split_type = k.classify_prime(l);
    let group = match split_type {
        SplitType::Split => FiniteAbelianGroup::cyclic(l - 1),
        SplitType::Inert => FiniteAbelianGroup::cyclic(l + 1),
        SplitType::Ramified => FiniteAbelianGroup::trivial(),
    };
    Ok(LocalQuotient {
        l,
        split_type,
        group,
    })
}

/// Number of characters of G with p-power order: the order of the p-Sylow
/// subgroup.
pub fn count_p_characters(g: &FiniteAbelianGroup, p: u64) -> Result<BigInt> {
    g.p_part_order(p)
        .ok_or_else(|| Error::usage("character counting needs a finite group".to_string()))
}

// ---------------------------------------------------------------------------
// units of O_K modulo n0 * Q^r

/// Unit group of O_K/(n₀·Q^r), with elements represented as
/// (x mod n₀, y mod n₀, image in Z/p^r) for x + yω.
struct UnitsMod {
    n0: u64,
    pr: u64,
    w: u64,
    engine: AbstractGroup<(u64, u64, u64)>,
}

const ENUMERATION_BUDGET: u128 = 4_000_000;

fn units_mod(k: &QuadField, m: &Modulus) -> Result<UnitsMod> {
    let d = k.discriminant();
    let n0 = m.n0;
    let pr = (m.p as u128).pow(m.r);
    if (n0 as u128) * (n0 as u128) * pr > ENUMERATION_BUDGET {
        return Err(Error::Resource(format!(
            "modulus n0={} p^r={} exceeds the enumeration budget",
            n0, pr
        )));
    }
    let pr = pr as u64;
    let (tb, nb) = crate::quadfield::omega_params(d);
    let modn = BigInt::from(n0);
    let t = tb.mod_floor(&modn).to_u64().unwrap();
    let n = nb.mod_floor(&modn).to_u64().unwrap();
    // image of ω in Z/p^r along the labeled prime Q: Newton-lift the root of
    // X² − tX − n congruent to ω mod Q
    let w = if pr > 1 {
        let q = Ideal::from_form(k, &k.prime_form(m.p)?);
        let prb = BigInt::from(pr);
        let tl = tb.mod_floor(&prb);
        let nl = nb.mod_floor(&prb);
        let mut x = (-&q.b).mod_floor(&BigInt::from(m.p));
        let mut prec = 1u32;
        while prec < m.r {
            prec = (2 * prec).min(m.r);
            let mm = BigInt::from(m.p).pow(prec);
            let f = (&x * &x - &tl * &x - &nl).mod_floor(&mm);
            let deriv = (BigInt::from(2) * &x - &tl).mod_floor(&mm);
            let e = deriv.extended_gcd(&mm);
            assert!(e.gcd.is_one(), "simple root since p splits");
            x = (&x - f * e.x.mod_floor(&mm)).mod_floor(&mm);
        }
        x.mod_floor(&prb).to_u64().unwrap()
    } else {
        0
    };
    // enumerate units
    let norm = |x: u64, y: u64| -> u64 {
        if n0 == 1 {
            return 0;
        }
        let x = x as u128;
        let y = y as u128;
        let m128 = n0 as u128;
        ((x * x + (t as u128) * x % m128 * y + (n0 as u128 - n as u128) * (y * y % m128)) % m128)
            as u64
    };
    let mut elements: Vec<(u64, u64, u64)> = Vec::new();
    for x in 0..n0 {
        for y in 0..n0 {
            if n0 > 1 && num_integer::gcd(norm(x, y), n0) != 1 {
                continue;
            }
            for z in 0..pr {
                if pr > 1 && z % m.p == 0 {
                    continue;
                }
                elements.push((x, y, z));
            }
        }
    }
    let id = (1 % n0, 0, 1 % pr);
    let mul = move |a: &(u64, u64, u64), b: &(u64, u64, u64)| -> (u64, u64, u64) {
        let m128 = n0 as u128;
        let (x1, y1) = (a.0 as u128, a.1 as u128);
        let (x2, y2) = (b.0 as u128, b.1 as u128);
        let (x, y) = if n0 == 1 {
            (0, 0)
        } else {
            let yy = y1 * y2 % m128;
            (
                ((x1 * x2 + (n as u128) * yy) % m128) as u64,
                ((x1 * y2 + y1 * x2 + (t as u128) * yy) % m128) as u64,
            )
        };
        let z = ((a.2 as u128) * (b.2 as u128) % pr as u128) as u64;
        (x, y, z)
    };
    let engine = AbstractGroup::analyze(&elements, &id, mul);
    Ok(UnitsMod { n0, pr, w, engine })
}

impl UnitsMod {
    fn embed(&self, x: &BigInt, y: &BigInt) -> (u64, u64, u64) {
        let modn = BigInt::from(self.n0);
        let xm = x.mod_floor(&modn).to_u64().unwrap();
        let ym = y.mod_floor(&modn).to_u64().unwrap();
        let prb = BigInt::from(self.pr);
        let z = (x + y * BigInt::from(self.w)).mod_floor(&prb).to_u64().unwrap();
        (xm, ym, z)
    }

    fn dlog(&self, x: &BigInt, y: &BigInt) -> Option<GroupElement> {
        self.engine.dlog(&self.embed(x, y))
    }

    fn group(&self) -> &FiniteAbelianGroup {
        self.engine.group()
    }
}

/// Generators (in the basis 1, ω) of the group of totally positive global
/// units: all torsion for imaginary K; ε₀ or ε₀² for real K depending on
/// norm(ε₀).
fn totally_positive_unit_gens(k: &QuadField) -> Result<Vec<(BigInt, BigInt)>> {
    if k.is_imaginary() {
        let d = k.disc_i64();
        return Ok(match d {
            // ζ₆ = ω and i = ω generate the torsion of Q(√−3), Q(i)
            -3 | -4 => vec![(BigInt::zero(), BigInt::one())],
            _ => vec![(BigInt::from(-1), BigInt::zero())],
        });
    }
    let eps = fundamental_unit(k)?;
    let (u, v) = eps.omega_coords();
    if eps.norm == 1 {
        Ok(vec![(u, v)])
    } else {
        let sq = elt_product(k.discriminant(), &(u.clone(), v.clone()), &(u, v));
        Ok(vec![sq])
    }
}

/// Order of the subgroup generated by the given elements.
fn subgroup_order(g: &FiniteAbelianGroup, gens: &[GroupElement]) -> BigInt {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(g.identity());
    let mut frontier: Vec<GroupElement> = vec![g.identity()];
    while let Some(e) = frontier.pop() {
        for gen in gens {
            let f = g.add(&e, gen);
            if seen.insert(f.clone()) {
                frontier.push(f);
            }
        }
    }
    BigInt::from(seen.len())
}

const PRIME_SEARCH_BOUND: u64 = 20_000;

/// The narrow ray class group Cl_K(n₀·Q^r·∞), presented by generators of
/// (O_K/m)^× and lifts of narrow-class generators, with relations from the
/// exact sequence
/// 1 → (O_K/m)^×/im(tot. pos. units) → Cl_K(m·∞) → Cl_K^+ → 1.
pub fn ray_class_group(k: &QuadField, m: &Modulus) -> Result<FiniteAbelianGroup> {
    if m.r > 0 && k.classify_prime(m.p) != SplitType::Split {
        return Err(Error::usage(format!(
            "modulus has Q^{} but p = {} does not split in K",
            m.r, m.p
        )));
    }
    let d = k.discriminant();
    let cl = ClassGroup::new(k);
    let um = units_mod(k, m)?;
    let u_factors = um.group().invariant_factors().to_vec();
    let cl_factors = cl.group().invariant_factors().to_vec();
    let s = u_factors.len();
    let tg = cl_factors.len();
    let ngens = s + tg;
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    // cyclic orders of the unit-group generators
    for (i, f) in u_factors.iter().enumerate() {
        let mut rel = vec![BigInt::zero(); ngens];
        rel[i] = f.clone();
        rels.push(rel);
    }
    // global totally positive units die in the ray class group
    for (x, y) in totally_positive_unit_gens(k)? {
        let e = um.dlog(&x, &y).ok_or_else(|| {
            Error::usage("global unit is not invertible mod the modulus".to_string())
        })?;
        let mut rel = vec![BigInt::zero(); ngens];
        rel[..s].clone_from_slice(&e.coords);
        rels.push(rel);
    }
    // each class generator, raised to its order, is a totally positive
    // principal ideal; relate it to the image of a generator
    for (j, f) in cl_factors.iter().enumerate() {
        let target: Vec<BigInt> = (0..tg)
            .map(|i| if i == j { BigInt::one() } else { BigInt::zero() })
            .collect();
        let target = cl.group().reduce(target);
        let ideal = find_prime_in_class(k, &cl, m, &target)?;
        let e = f.to_u64().expect("desk-scale class order");
        let power = ideal.pow(e);
        let (gx, gy) = power.principal_generator().ok_or_else(|| {
            Error::Resource("generator search for a principal ideal failed".to_string())
        })?;
        let (ax, ay) = make_totally_positive(k, (gx, gy))?;
        debug_assert_eq!(elt_norm(d, &ax, &ay).abs(), power.norm());
        let du = um.dlog(&ax, &ay).ok_or_else(|| {
            Error::usage("principal generator not coprime to the modulus".to_string())
        })?;
        let mut rel = vec![BigInt::zero(); ngens];
        for (i, c) in du.coords.iter().enumerate() {
            rel[i] = -c;
        }
        rel[s + j] = f.clone();
        rels.push(rel);
    }
    let pres = smith_normal_form(&rels, ngens);
    let result = pres.group().clone();
    // exact-sequence order identity
    let unit_images: Vec<GroupElement> = totally_positive_unit_gens(k)?
        .iter()
        .map(|(x, y)| um.dlog(x, y).expect("checked above"))
        .collect();
    let im = subgroup_order(um.group(), &unit_images);
    let lhs = result.order().expect("finite") * im;
    let rhs = cl.h_plus() * um.group().order().expect("finite");
    assert_eq!(lhs, rhs, "exact sequence order identity");
    Ok(result)
}

/// A degree-one prime ideal, coprime to the modulus and the discriminant,
/// whose narrow class is the requested group element.
fn find_prime_in_class(
    k: &QuadField,
    cl: &ClassGroup,
    m: &Modulus,
    target: &GroupElement,
) -> Result<Ideal> {
    if target == &cl.group().identity() {
        // any split prime ideal works only if principal; the unit ideal does
        return Ok(Ideal::whole(k));
    }
    let dabs = k.discriminant().magnitude().to_u64().unwrap();
    for l in 2..PRIME_SEARCH_BOUND {
        if !is_prime(l) || m.n0 % l == 0 || l == m.p || dabs % l == 0 {
            continue;
        }
        if k.classify_prime(l) != SplitType::Split {
            continue;
        }
        let form = k.prime_form(l)?;
        if &cl.dlog(&form) == target {
            return Ok(Ideal::from_form(k, &form));
        }
        let conj = k.conjugate_prime_form(l)?;
        if &cl.dlog(&conj) == target {
            return Ok(Ideal::from_form(k, &conj));
        }
    }
    Err(Error::Resource(format!(
        "no prime below {PRIME_SEARCH_BOUND} found in the requested ideal class"
    )))
}

/// Scale a generator by a unit so that it is totally positive (real K);
/// imaginary K needs no adjustment.
fn make_totally_positive(k: &QuadField, g: (BigInt, BigInt)) -> Result<(BigInt, BigInt)> {
    if k.is_imaginary() {
        return Ok(g);
    }
    let d = k.discriminant();
    let eps = fundamental_unit(k)?;
    let e = eps.omega_coords();
    let mut candidates = vec![g.clone(), (-&g.0, -&g.1)];
    let ge = elt_product(d, &g, &e);
    candidates.push((-&ge.0, -&ge.1));
    candidates.push(ge);
    for c in candidates {
        if elt_signs(d, &c.0, &c.1) == (1, 1) {
            return Ok(c);
        }
    }
    Err(Error::usage(
        "ideal power admits no totally positive generator (not narrowly principal)".to_string(),
    ))
}

// ---------------------------------------------------------------------------
// finiteness and the character target group

/// Outcome of the finiteness test for the p-tower over K.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FinitenessResult {
    Finite { v: u32 },
    Infinite { reason: String },
    Undetermined,
}

/// Is the ray class tower Cl_K(n₀Q^∞) finite? Imaginary K: never. Real K
/// with p split: finite exactly when log ε₀^m does not vanish, certified by
/// v = ord_p(log ε₀^m) < N.
pub fn finiteness_test(k: &QuadField, p: u64, precision: u32) -> Result<FinitenessResult> {
    if k.is_imaginary() {
        return Ok(FinitenessResult::Infinite {
            reason: "totally imaginary: the unit rank is smaller than the degree".to_string(),
        });
    }
    let ui = unit_index(k, p, precision)?;
    if ui.precision_ok {
        Ok(FinitenessResult::Finite { v: ui.v })
    } else {
        Ok(FinitenessResult::Undetermined)
    }
}

/// The finite group through which p-power-order ray class characters factor:
/// unit part p^{v−1} times the local quotients at the tame primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTargetGroup {
    /// p^{v−1} from the unit index
    pub unit_part: BigInt,
    /// (l, l − 1) per split tame prime
    pub split_parts: Vec<(u64, u64)>,
    /// (l, l + 1) per inert tame prime
    pub inert_parts: Vec<(u64, u64)>,
    /// p-part of the total order = number of p-power-order characters
    pub p_sylow_order: BigInt,
}

impl CharacterTargetGroup {
    pub fn total_order(&self) -> BigInt {
        let mut o = self.unit_part.clone();
        for (_, q) in self.split_parts.iter().chain(&self.inert_parts) {
            o *= *q;
        }
        o
    }
}

pub fn character_target(
    k: &QuadField,
    p: u64,
    n0: u64,
    precision: u32,
) -> Result<CharacterTargetGroup> {
    let m = Modulus::new(n0, p, 1)?;
    let v = match finiteness_test(k, p, precision)? {
        FinitenessResult::Finite { v } => v,
        FinitenessResult::Infinite { reason } => {
            return Err(Error::usage(format!(
                "character target needs a finite tower, but: {reason}"
            )));
        }
        FinitenessResult::Undetermined => {
            return Err(Error::Precision {
                precision,
                reason: "unit index not separated from zero".to_string(),
            });
        }
    };
    let mut split_parts = Vec::new();
    let mut inert_parts = Vec::new();
    let mut rest = m.n0;
    let mut l = 2u64;
    while rest > 1 {
        if l * l > rest {
            l = rest;
        }
        if rest % l != 0 {
            l += 1;
            continue;
        }
        while rest % l == 0 {
            rest /= l;
        }
        let lq = local_quotient(k, l)?;
        match lq.split_type {
            SplitType::Split => split_parts.push((l, l - 1)),
            SplitType::Inert => inert_parts.push((l, l + 1)),
            SplitType::Ramified => {}
        }
        l += 1;
    }
    let unit_part = BigInt::from(p).pow(v - 1);
    let mut total = unit_part.clone();
    for (_, q) in split_parts.iter().chain(&inert_parts) {
        total *= *q;
    }
    let mut p_sylow = BigInt::one();
    let pb = BigInt::from(p);
    while (&total % &pb).is_zero() {
        total /= &pb;
        p_sylow *= &pb;
    }
    Ok(CharacterTargetGroup {
        unit_part,
        split_parts,
        inert_parts,
        p_sylow_order: p_sylow,
    })
}
