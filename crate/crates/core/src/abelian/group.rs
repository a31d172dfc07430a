use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::matrix::IntMatrix;
use super::smith::cokernel;

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` in invariant
/// factor form: every `di >= 2` and `di | d(i+1)`.
///
/// The representation is canonical, so `==` is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("invariant factor {0} is not >= 2")]
    FactorTooSmall(BigInt),
    #[error("invariant factors {0} and {1} do not form a divisor chain")]
    NotAChain(BigInt, BigInt),
    #[error("cannot parse group {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Exponent of a group: the least `e >= 1` with `e * g = 0` for all `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    One,
    Finite(BigInt),
    Infinite,
}

impl Exponent {
    fn from_value(n: BigInt) -> Self {
        if n.is_one() {
            Exponent::One
        } else {
            Exponent::Finite(n)
        }
    }

    pub fn value(&self) -> Option<BigInt> {
        match self {
            Exponent::One => Some(BigInt::one()),
            Exponent::Finite(n) => Some(n.clone()),
            Exponent::Infinite => None,
        }
    }

    pub fn product(&self, other: &Exponent) -> Exponent {
        match (self.value(), other.value()) {
            (Some(a), Some(b)) => Exponent::from_value(a * b),
            _ => Exponent::Infinite,
        }
    }

    /// `self | other`, with the convention that everything divides `Infinite`
    /// and `Infinite` only divides itself.
    pub fn divides(&self, other: &Exponent) -> bool {
        match (self.value(), other.value()) {
            (Some(a), Some(b)) => (b % a).is_zero(),
            (_, None) => true,
            (None, Some(_)) => false,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::One => f.write_str("1"),
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::Infinite => f.write_str("infinite"),
        }
    }
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = ±1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(0, [n.into()])
    }

    /// Validating constructor from an explicit invariant factor chain.
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, GroupError> {
        let two = BigInt::from(2);
        for d in &invariant_factors {
            if d < &two {
                return Err(GroupError::FactorTooSmall(d.clone()));
            }
        }
        for w in invariant_factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(GroupError::NotAChain(w[0].clone(), w[1].clone()));
            }
        }
        Ok(FgAbGroup {
            free_rank,
            invariant_factors,
        })
    }

    /// Trusted constructor for chains produced by Smith normal form.
    pub(crate) fn from_chain(free_rank: usize, invariant_factors: Vec<BigInt>) -> Self {
        debug_assert!(Self::new(free_rank, invariant_factors.clone()).is_ok());
        FgAbGroup {
            free_rank,
            invariant_factors,
        }
    }

    /// `Z^free_rank + Z/o1 + Z/o2 + ...` for arbitrary orders, brought into
    /// canonical form. Order `0` contributes a free summand, `±1` nothing.
    pub fn from_cyclic_orders<I>(free_rank: usize, orders: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut free = free_rank;
        let mut torsion = Vec::new();
        for o in orders {
            let o: BigInt = o.into();
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                torsion.push(o);
            }
        }
        if torsion.len() <= 1 {
            return FgAbGroup {
                free_rank: free,
                invariant_factors: torsion,
            };
        }
        let t = cokernel(&IntMatrix::diagonal(torsion));
        FgAbGroup {
            free_rank: free,
            invariant_factors: t.invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of cyclic summands in the canonical decomposition.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Cyclic pieces as orders, free summands reported as `0`.
    pub fn cyclic_orders(&self) -> impl Iterator<Item = BigInt> + '_ {
        std::iter::repeat_n(BigInt::zero(), self.free_rank)
            .chain(self.invariant_factors.iter().cloned())
    }

    /// Cardinality, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    pub fn exponent(&self) -> Exponent {
        if self.free_rank > 0 {
            Exponent::Infinite
        } else {
            match self.invariant_factors.last() {
                None => Exponent::One,
                Some(d) => Exponent::Finite(d.clone()),
            }
        }
    }

    /// Diagonal relation matrix presenting this group on its canonical
    /// generators, free generators first.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        let mut m = IntMatrix::zeros(n, self.invariant_factors.len());
        for (k, d) in self.invariant_factors.iter().enumerate() {
            m[(self.free_rank + k, k)] = d.clone();
        }
        m
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::with_capacity(self.invariant_factors.len() + 1);
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}

impl FromStr for FgAbGroup {
    type Err = GroupError;

    /// Accepts the canonical rendering grammar: summands `0`, `Z`, `Z^r`,
    /// `Z/d` joined by `+`, whitespace ignored. Non-canonical sums such as
    /// `Z/2 + Z/3` are accepted and normalized.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| GroupError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for term in compact.split('+') {
            if term == "0" {
                continue;
            }
            let rest = term
                .strip_prefix('Z')
                .ok_or_else(|| err(&format!("summand {term:?} does not start with Z")))?;
            if rest.is_empty() {
                free += 1;
            } else if let Some(r) = rest.strip_prefix('^') {
                let r: usize = parse_digits(r).ok_or_else(|| err(&format!("bad rank {r:?}")))?;
                free += r;
            } else if let Some(d) = rest.strip_prefix('/') {
                let d: BigInt = parse_digits(d).ok_or_else(|| err(&format!("bad order {d:?}")))?;
                if d.is_zero() {
                    return Err(err("Z/0 is not allowed; write Z"));
                }
                orders.push(d);
            } else {
                return Err(err(&format!("unrecognized summand {term:?}")));
            }
        }
        Ok(FgAbGroup::from_cyclic_orders(free, orders))
    }
}

fn parse_digits<T: FromStr>(s: &str) -> Option<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `Hom(g, h)`, assembled from cyclic pieces.
pub fn hom(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let free = g.free_rank * h.free_rank;
    let mut orders: Vec<BigInt> = Vec::new();
    // Hom(Z, H) = H
    for _ in 0..g.free_rank {
        orders.extend(h.invariant_factors.iter().cloned());
    }
    // Hom(Z/a, Z) = 0, Hom(Z/a, Z/b) = Z/gcd(a, b)
    for a in &g.invariant_factors {
        for b in &h.invariant_factors {
            orders.push(a.gcd(b));
        }
    }
    FgAbGroup::from_cyclic_orders(free, orders)
}

/// `Ext(g, h)`, assembled from cyclic pieces.
pub fn ext(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let mut orders: Vec<BigInt> = Vec::new();
    // Ext(Z, H) = 0; Ext(Z/a, H) = H/aH, i.e. Z/a per free summand and
    // Z/gcd(a, b) per torsion summand.
    for a in &g.invariant_factors {
        for _ in 0..h.free_rank {
            orders.push(a.clone());
        }
        for b in &h.invariant_factors {
            orders.push(a.gcd(b));
        }
    }
    FgAbGroup::from_cyclic_orders(0, orders)
}

/// Canonical form of a direct sum.
pub fn direct_sum<'a, I>(groups: I) -> FgAbGroup
where
    I: IntoIterator<Item = &'a FgAbGroup>,
{
    let mut free = 0;
    let mut orders = Vec::new();
    for g in groups {
        free += g.free_rank;
        orders.extend(g.invariant_factors.iter().cloned());
    }
    FgAbGroup::from_cyclic_orders(free, orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn rendering() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
        assert_eq!(
            FgAbGroup::from_cyclic_orders(2, [2, 6]).to_string(),
            "Z^2 + Z/2 + Z/6"
        );
    }

    #[test]
    fn parsing_normalizes_and_rejects() {
        assert_eq!(g(" Z/2+Z/3 "), g("Z/6"));
        assert_eq!(g("Z + Z^2 + 0"), FgAbGroup::free(3));
        assert_eq!(g("0"), FgAbGroup::trivial());
        assert_eq!(g("Z/1"), FgAbGroup::trivial());
        for bad in ["", "Q", "Z/0", "Z/-2", "Z^", "Z/2++Z", "Z*2"] {
            assert!(bad.parse::<FgAbGroup>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn validating_constructor() {
        let b = |x: i64| BigInt::from(x);
        assert!(FgAbGroup::new(0, vec![b(2), b(4)]).is_ok());
        assert_eq!(
            FgAbGroup::new(0, vec![b(2), b(3)]),
            Err(GroupError::NotAChain(b(2), b(3)))
        );
        assert_eq!(
            FgAbGroup::new(0, vec![b(1)]),
            Err(GroupError::FactorTooSmall(b(1)))
        );
    }

    #[test]
    fn hom_examples() {
        let h = g("Z^2 + Z/3");
        assert_eq!(hom(&g("Z"), &h), h);
        assert_eq!(hom(&g("Z/4"), &g("Z/6")), g("Z/2"));
        assert_eq!(hom(&g("Z/2"), &g("Z")), g("0"));
    }

    // Hom(Z/a, Z/b) by enumerating the images x of the generator with a*x = 0 mod b.
    #[test]
    fn hom_cyclic_by_enumeration() {
        for a in 1..=12i64 {
            for b in 1..=12i64 {
                let count = (0..b).filter(|x| (a * x) % b == 0).count();
                let computed = hom(&FgAbGroup::cyclic(a), &FgAbGroup::cyclic(b));
                assert_eq!(computed.order(), Some(BigInt::from(count)), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext(&g("Z"), &g("Z/5 + Z")), g("0"));
        assert_eq!(ext(&g("Z/4"), &g("Z/6")), g("Z/2"));
        assert_eq!(ext(&g("Z/2"), &g("Z")), g("Z/2"));
    }

    // Ext(Z/a, Z/b) = (Z/b) / a(Z/b): count cosets of the subgroup {a*x mod b}.
    #[test]
    fn ext_cyclic_by_enumeration() {
        for a in 1..=12i64 {
            for b in 1..=12i64 {
                let mut image: Vec<i64> = (0..b).map(|x| (a * x) % b).collect();
                image.sort();
                image.dedup();
                let index = b as usize / image.len();
                let computed = ext(&FgAbGroup::cyclic(a), &FgAbGroup::cyclic(b));
                assert_eq!(computed.order(), Some(BigInt::from(index)), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum([&g("Z/2"), &g("Z/3")]), g("Z/6"));
        assert_eq!(direct_sum(std::iter::empty()), FgAbGroup::trivial());
        let s = direct_sum([&g("Z"), &g("Z/2"), &g("Z/2")]);
        assert_eq!(s.free_rank(), 1);
        assert_eq!(s.invariant_factors(), &[BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn exponents() {
        assert_eq!(g("Z/2 + Z/4").exponent(), Exponent::Finite(BigInt::from(4)));
        assert_eq!(g("Z").exponent(), Exponent::Infinite);
        assert_eq!(g("0").exponent(), Exponent::One);
        assert!(Exponent::One.divides(&Exponent::Finite(BigInt::from(3))));
        assert!(!Exponent::Finite(BigInt::from(4)).divides(&Exponent::Finite(BigInt::from(6))));
        assert!(Exponent::Finite(BigInt::from(4)).divides(&Exponent::Infinite));
    }

    #[test]
    fn serde_uses_canonical_string() {
        let s = serde_json::to_string(&g("Z + Z/2")).unwrap();
        assert_eq!(s, "\"Z + Z/2\"");
        let back: FgAbGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g("Z + Z/2"));
    }
}
