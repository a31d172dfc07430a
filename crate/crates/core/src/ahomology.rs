//! A-homology of a complex X with respect to a finite complex A.
//!
//! `H^A_n(X)` is defined as the A-homotopy of the infinite symmetric product
//! of X. By Dold-Thom that product is a product of Eilenberg-MacLane spaces
//! on the homology of X, which gives
//!
//! ```text
//! H^A_n(X) = ⊕_j H^{j-n}(A; H_j(X))
//! ```
//!
//! and that sum is the only route used here.

use serde_json::{Map, Value};

use crate::abelian::{direct_sum, ext, hom, Exponent, FgAbGroup};
use crate::chains::{wedge, ChainComplex, GradedGroups};
use crate::error::{Error, Result};
use crate::spaces::moore;

/// `H^A_n(X)`.
///
/// Summation runs over `max(1, n) <= j <= min(dim X, n + dim A)`; all other
/// terms vanish for dimensional reasons. X is assumed connected, so a
/// nonzero `H_0(X)` never contributes.
pub fn a_homology(a: &ChainComplex, x: &ChainComplex, n: usize) -> FgAbGroup {
    let lo = n.max(1);
    let hi = x.dim().min(n + a.dim());
    if lo > hi {
        return FgAbGroup::trivial();
    }
    let terms: Vec<FgAbGroup> = (lo..=hi)
        .map(|j| a.cohomology_uct(j - n, &x.homology(j)))
        .collect();
    direct_sum(&terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AHomologyReport {
    pub a_name: String,
    pub x_name: String,
    /// Degrees `0..=dim X`; everything above vanishes.
    pub groups: GradedGroups,
    pub assumptions: Vec<String>,
    /// Internal-consistency failures of the vanishing bounds. Always empty
    /// unless the implementation is wrong.
    pub violations: Vec<String>,
}

/// Degrees outside `[low(X) - dim A, dim X - low(A)]` must vanish, where
/// `low` is the lowest degree of nonzero homology. `None` means everything
/// vanishes.
pub fn vanishing_window(a: &ChainComplex, x: &ChainComplex) -> Option<(i64, i64)> {
    let (low_a, dim_a) = a.connectivity_bounds();
    let (low_x, dim_x) = x.connectivity_bounds();
    let (low_a, low_x) = (low_a? as i64, low_x? as i64);
    let lo = (low_x - dim_a as i64).max(0);
    let hi = dim_x as i64 - low_a;
    (lo <= hi).then_some((lo, hi))
}

pub fn a_homology_range(a: &ChainComplex, x: &ChainComplex) -> AHomologyReport {
    let groups = GradedGroups::from_fn(0, x.dim(), |n| a_homology(a, x, n));

    let mut assumptions = vec![
        format!("A = {} is finite-dimensional (dim {})", a.name(), a.dim()),
        format!("X = {} is connected (caller-asserted)", x.name()),
        "connectivity is homological; simple connectivity is not checked".to_string(),
    ];
    if !x.homology(0).is_trivial() {
        assumptions.push(format!(
            "X has reduced H_0 = {}; the formula assumes X connected and omits j = 0",
            x.homology(0)
        ));
    }
    if !a.homology(0).is_trivial() {
        assumptions.push(
            "A is not path-connected (S^0-type case); the path-connected convention is relaxed"
                .to_string(),
        );
    }

    let window = vanishing_window(a, x);
    let mut violations = Vec::new();
    for (n, g) in groups.nonzero() {
        let inside = window.is_some_and(|(lo, hi)| (lo..=hi).contains(&(n as i64)));
        if !inside {
            violations.push(format!(
                "H^A_{n}(X) = {g} lies outside the vanishing window {window:?}"
            ));
        }
    }

    AHomologyReport {
        a_name: a.name().to_string(),
        x_name: x.name().to_string(),
        groups,
        assumptions,
        violations,
    }
}

impl AHomologyReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for n in self.groups.degrees() {
            out.push_str(&format!("H^A_{n}(X) = {}\n", self.groups.get(n)));
        }
        out.push_str("assumptions:\n");
        for a in &self.assumptions {
            out.push_str(&format!("  - {a}\n"));
        }
        for v in &self.violations {
            out.push_str(&format!("INCONSISTENT: {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for n in self.groups.degrees() {
            m.insert(n.to_string(), Value::String(self.groups.get(n).to_string()));
        }
        m.insert(
            "assumptions".into(),
            Value::Array(
                self.assumptions
                    .iter()
                    .cloned()
                    .map(Value::String)
                    .collect(),
            ),
        );
        if !self.violations.is_empty() {
            m.insert(
                "violations".into(),
                Value::Array(self.violations.iter().cloned().map(Value::String).collect()),
            );
        }
        Value::Object(m)
    }
}

/// Two groups that a theorem says are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub lhs: FgAbGroup,
    pub rhs: FgAbGroup,
}

impl IsoCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `H^A_n(X)` against `H^A_{n+1}(ΣX)`.
pub fn check_suspension_axiom(a: &ChainComplex, x: &ChainComplex, n: usize) -> IsoCheck {
    IsoCheck {
        lhs: a_homology(a, x, n),
        rhs: a_homology(a, &x.suspension(), n + 1),
    }
}

/// `H^A_n(∨ X_i)` against `⊕ H^A_n(X_i)`.
pub fn check_wedge_axiom(a: &ChainComplex, xs: &[ChainComplex], n: usize) -> IsoCheck {
    let parts: Vec<FgAbGroup> = xs.iter().map(|x| a_homology(a, x, n)).collect();
    IsoCheck {
        lhs: a_homology(a, &wedge(xs), n),
        rhs: direct_sum(&parts),
    }
}

/// The two end terms of
/// `0 -> Ext(G, H_{n+m+1} X) -> H^A_n(X) -> Hom(G, H_{n+m} X) -> 0`
/// for `A = M(G, m)`, together with the middle computed independently from
/// the sum formula. The sequence is not assumed to split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreSes {
    pub ext_part: FgAbGroup,
    pub hom_part: FgAbGroup,
    pub middle: FgAbGroup,
}

impl MooreSes {
    /// `|middle| == |ext| * |hom|` when all three are finite.
    pub fn order_identity(&self) -> Option<bool> {
        let m = self.middle.order()?;
        let e = self.ext_part.order()?;
        let h = self.hom_part.order()?;
        Some(m == e * h)
    }

    pub fn exponent_bound(&self) -> Exponent {
        self.ext_part.exponent().product(&self.hom_part.exponent())
    }

    pub fn exponent_within_bound(&self) -> bool {
        self.middle.exponent().divides(&self.exponent_bound())
    }
}

pub fn moore_a_homology_ses(
    g: &FgAbGroup,
    m: usize,
    x: &ChainComplex,
    n: usize,
) -> Result<MooreSes> {
    if m == 0 {
        return Err(Error::refused("Moore space degree must be >= 1"));
    }
    Ok(MooreSes {
        ext_part: ext(g, &x.homology(n + m + 1)),
        hom_part: hom(g, &x.homology(n + m)),
        middle: a_homology(&moore(g, m), x, n),
    })
}
