use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::group::FgAbGroup;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{0} is not a prime")]
pub struct NotPrime(pub BigInt);

/// A finite set of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    primes: BTreeSet<BigInt>,
}

impl PrimeSet {
    pub fn new<I>(primes: I) -> Result<Self, NotPrime>
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut set = BTreeSet::new();
        for p in primes {
            let p: BigInt = p.into();
            if !is_prime(&p) {
                return Err(NotPrime(p));
            }
            set.insert(p);
        }
        Ok(PrimeSet { primes: set })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, p: &BigInt) -> bool {
        self.primes.contains(p)
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.primes.is_subset(&other.primes)
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.primes.iter()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Trial division; inputs here are invariant factors of small complexes.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    let mut d = two;
    while &(&d * &d) <= n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `|n|`, ascending. Empty for `0` and `±1`.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = num_traits::Signed::abs(n);
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += 1;
    }
    if !n.is_one() {
        out.push(n);
    }
    out
}

/// Primes dividing some invariant factor of `g`.
pub fn torsion_primes(g: &FgAbGroup) -> PrimeSet {
    let primes = g
        .invariant_factors()
        .iter()
        .flat_map(prime_divisors)
        .collect();
    PrimeSet { primes }
}

/// Membership in the class of torsion groups whose element orders only
/// involve primes from `p`.
pub fn in_class(g: &FgAbGroup, p: &PrimeSet) -> bool {
    g.free_rank() == 0 && torsion_primes(g).is_subset(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn ps(v: &[i64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn primality() {
        let primes: Vec<i64> = (0..30).filter(|&n| is_prime(&BigInt::from(n))).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(PrimeSet::new([4]), Err(NotPrime(BigInt::from(4))));
        assert!(PrimeSet::new([1]).is_err());
    }

    #[test]
    fn torsion_prime_examples() {
        assert_eq!(torsion_primes(&g("Z/12")), ps(&[2, 3]));
        assert_eq!(torsion_primes(&g("Z")), PrimeSet::empty());
        assert_eq!(torsion_primes(&g("Z/2 + Z/2")), ps(&[2]));
        assert_eq!(
            prime_divisors(&BigInt::from(-360)),
            vec![2.into(), 3.into(), 5.into()]
        );
    }

    #[test]
    fn class_membership() {
        assert!(in_class(&g("Z/4"), &ps(&[2])));
        assert!(!in_class(&g("Z"), &ps(&[2, 3])));
        assert!(in_class(&g("0"), &PrimeSet::empty()));
        assert!(!in_class(&g("Z/6"), &ps(&[2])));
    }
}
