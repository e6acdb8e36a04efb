use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

/// A finitely generated abelian group in invariant-factor form:
/// Z/d_1 x ... x Z/d_k x Z^rank with 2 <= d_1 | d_2 | ... | d_k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
    rank: usize,
}

/// Element of a `FiniteAbelianGroup`, as a coordinate vector modulo the
/// invariant factors. Only defined for finite groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    pub coords: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    /// Build from a list of cyclic orders (not necessarily a divisibility
    /// chain); factors of 1 are dropped, 0 contributes a free factor.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let rank = orders.iter().filter(|d| d.is_zero()).count();
        let mut fs: Vec<BigInt> = orders
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        // normalize to a divisibility chain by repeated gcd/lcm exchange
        let n = fs.len();
        if n > 1 {
            loop {
                let mut changed = false;
                for i in 0..n {
                    for j in i + 1..n {
                        if !(&fs[j] % &fs[i]).is_zero() {
                            let g = fs[i].gcd(&fs[j]);
                            let l = &fs[i] / &g * &fs[j];
                            fs[i] = g;
                            fs[j] = l;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        fs.retain(|d| !d.is_one());
        fs.sort();
        FiniteAbelianGroup {
            invariant_factors: fs,
            rank,
        }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: vec![],
            rank: 0,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[BigInt::from(n)])
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order; `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    /// Order of the p-Sylow subgroup.
    pub fn p_part_order(&self, p: u64) -> Option<BigInt> {
        let order = self.order()?;
        let p = BigInt::from(p);
        let mut out = BigInt::one();
        let mut n = order;
        while (&n % &p).is_zero() {
            n /= &p;
            out *= &p;
        }
        Some(out)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.invariant_factors.len()],
        }
    }

    pub fn reduce(&self, coords: Vec<BigInt>) -> GroupElement {
        assert_eq!(coords.len(), self.invariant_factors.len());
        GroupElement {
            coords: coords
                .into_iter()
                .zip(&self.invariant_factors)
                .map(|(c, d)| c.mod_floor(d))
                .collect(),
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(
            a.coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    pub fn mul_scalar(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        self.reduce(a.coords.iter().map(|x| x * k).collect())
    }

    /// Order of an element.
    pub fn element_order(&self, a: &GroupElement) -> BigInt {
        let mut ord = BigInt::one();
        for (c, d) in a.coords.iter().zip(&self.invariant_factors) {
            // order of c in Z/d is d / gcd(c, d)
            let o = d / c.gcd(d);
            ord = &ord / ord.gcd(&o) * o;
        }
        ord
    }

    /// All elements of the group, in lexicographic coordinate order.
    /// Caller's responsibility to keep the order desk-scale.
    pub fn elements(&self) -> Vec<GroupElement> {
        assert!(self.is_finite());
        let mut out = vec![self.identity()];
        for (i, d) in self.invariant_factors.iter().enumerate() {
            let mut next = Vec::new();
            let mut c = BigInt::zero();
            while &c < d {
                for e in &out {
                    let mut coords = e.coords.clone();
                    coords[i] = c.clone();
                    next.push(GroupElement { coords });
                }
                c += 1;
            }
            out = next;
        }
        out
    }

    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }
}
