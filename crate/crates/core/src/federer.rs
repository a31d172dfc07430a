//! E²-pages of the Federer spectral sequence and what can be read off them
//! without knowing any differential.
//!
//! For a finite-dimensional complex A and a space Y (or pair (Y, B)) whose
//! homotopy groups are supplied as a [`HomotopyTable`], the page has
//! `E²_{p,q} = H^{-p}(A; π_q)` for `p <= -1` inside the convergence range, a
//! subgroup of that group on the edge diagonal, and zero elsewhere. Higher
//! differentials are never computed; [`collapse_report`] only checks whether
//! one could be nonzero by position.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::abelian::{direct_sum, ext, hom, in_class, Exponent, FgAbGroup, PrimeSet};
use crate::ahomology::{a_homology, IsoCheck};
use crate::chains::ChainComplex;
use crate::error::{Error, Result};
use crate::spaces::is_suspension_shaped;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Absolute,
    Relative,
}

impl Variant {
    /// First degree a table of this variant holds.
    pub fn q_min(self) -> usize {
        match self {
            Variant::Absolute => 1,
            Variant::Relative => 2,
        }
    }

    /// Total degree of the edge diagonal, where entries are only known up to
    /// a subgroup.
    pub fn edge_degree(self) -> i64 {
        match self {
            Variant::Absolute => 0,
            Variant::Relative => 1,
        }
    }

    /// Smallest total degree where the sequence converges.
    pub fn convergence_start(self) -> i64 {
        self.edge_degree() + 1
    }

    fn hypothesis(self) -> &'static str {
        match self {
            Variant::Absolute => "Y has abelian fundamental group",
            Variant::Relative => "pi_2(Y, B) is an abelian group",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Absolute => "absolute",
            Variant::Relative => "relative",
        })
    }
}

/// Caller-supplied homotopy groups `π_q(Y)` or `π_q(Y, B)` over a contiguous
/// range starting at the variant's `q_min`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyTable {
    variant: Variant,
    entries: BTreeMap<usize, FgAbGroup>,
    abelian_assumption: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomotopyTableFile {
    variant: Variant,
    abelian: bool,
    pi: BTreeMap<String, FgAbGroup>,
}

impl HomotopyTable {
    pub fn new(
        variant: Variant,
        entries: BTreeMap<usize, FgAbGroup>,
        abelian_assumption: bool,
    ) -> Result<Self> {
        let q_min = variant.q_min();
        let Some((&first, _)) = entries.first_key_value() else {
            return Err(Error::Input("homotopy table is empty".into()));
        };
        if first != q_min {
            return Err(Error::Input(format!(
                "{variant} table must start at q = {q_min}, starts at {first}"
            )));
        }
        if let Some(gap) = entries
            .keys()
            .zip(q_min..)
            .find(|(k, expect)| **k != *expect)
        {
            return Err(Error::Input(format!(
                "homotopy table is not contiguous: missing q = {}",
                gap.1
            )));
        }
        Ok(HomotopyTable {
            variant,
            entries,
            abelian_assumption,
        })
    }

    /// Table with `π_q = f(q)` for `q_min <= q <= q_max`.
    pub fn from_fn(
        variant: Variant,
        q_max: usize,
        abelian_assumption: bool,
        f: impl FnMut(usize) -> FgAbGroup,
    ) -> Result<Self> {
        let entries = (variant.q_min()..=q_max).map(f);
        let entries = (variant.q_min()..=q_max).zip(entries).collect();
        Self::new(variant, entries, abelian_assumption)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn abelian_assumption(&self) -> bool {
        self.abelian_assumption
    }

    pub fn q_min(&self) -> usize {
        self.variant.q_min()
    }

    pub fn q_max(&self) -> usize {
        *self
            .entries
            .keys()
            .next_back()
            .expect("tables are nonempty")
    }

    pub fn get(&self, q: usize) -> Option<&FgAbGroup> {
        self.entries.get(&q)
    }

    pub fn entries(&self) -> &BTreeMap<usize, FgAbGroup> {
        &self.entries
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: HomotopyTableFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("homotopy table: {e}")))?;
        let mut entries = BTreeMap::new();
        for (k, g) in file.pi {
            if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Input(format!(
                    "homotopy table key {k:?} is not a degree"
                )));
            }
            let q: usize = k
                .parse()
                .map_err(|_| Error::Input(format!("homotopy table key {k:?} out of range")))?;
            if entries.insert(q, g).is_some() {
                return Err(Error::Input(format!("duplicate homotopy table key {k:?}")));
            }
        }
        Self::new(file.variant, entries, file.abelian)
    }

    pub fn to_json(&self) -> String {
        let file = HomotopyTableFile {
            variant: self.variant,
            abelian: self.abelian_assumption,
            pi: self
                .entries
                .iter()
                .map(|(q, g)| (q.to_string(), g.clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    fn require(&self, q: usize) -> Result<&FgAbGroup> {
        self.get(q).ok_or_else(|| {
            Error::refused(format!(
                "homotopy table covers q in [{}, {}] but pi_{q} is needed",
                self.q_min(),
                self.q_max()
            ))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Exact,
    SubgroupUpperBound,
    Zero,
}

impl EntryStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryStatus::Exact => "exact",
            EntryStatus::SubgroupUpperBound => "subgroup_upper_bound",
            EntryStatus::Zero => "zero",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry {
    pub group: FgAbGroup,
    pub status: EntryStatus,
}

impl PageEntry {
    fn zero() -> Self {
        PageEntry {
            group: FgAbGroup::trivial(),
            status: EntryStatus::Zero,
        }
    }

    pub fn is_nonzero(&self) -> bool {
        !self.group.is_trivial()
    }

    fn cell(&self) -> String {
        match self.status {
            EntryStatus::SubgroupUpperBound => format!("{}*", self.group),
            _ => self.group.to_string(),
        }
    }
}

/// The E²-page over columns `p = -dim A ..= -1` and the table's `q` range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedPage {
    variant: Variant,
    a_dim: usize,
    q_min: usize,
    q_max: usize,
    entries: BTreeMap<(i64, i64), PageEntry>,
}

fn assemble(a: &ChainComplex, t: &HomotopyTable) -> BigradedPage {
    let variant = t.variant();
    let edge = variant.edge_degree();
    let mut entries = BTreeMap::new();
    for p in -(a.dim() as i64)..=-1 {
        for (&q, pi) in t.entries() {
            let total = p + q as i64;
            let entry = if total < edge {
                PageEntry::zero()
            } else {
                PageEntry {
                    group: a.cohomology_uct((-p) as usize, pi),
                    status: if total == edge {
                        EntryStatus::SubgroupUpperBound
                    } else {
                        EntryStatus::Exact
                    },
                }
            };
            entries.insert((p, q as i64), entry);
        }
    }
    BigradedPage {
        variant,
        a_dim: a.dim(),
        q_min: t.q_min(),
        q_max: t.q_max(),
        entries,
    }
}

fn require_variant(t: &HomotopyTable, variant: Variant) -> Result<()> {
    if t.variant() != variant {
        return Err(Error::refused(format!(
            "a {variant} page needs a {variant} homotopy table, got {}",
            t.variant()
        )));
    }
    if !t.abelian_assumption() {
        return Err(Error::refused(format!(
            "the E2-page identification requires the hypothesis that {}; \
             assert it with \"abelian\": true",
            variant.hypothesis()
        )));
    }
    Ok(())
}

/// Absolute page converging to `π^A_{p+q}(Y)` for `p + q >= 1`.
pub fn federer_e2(a: &ChainComplex, t: &HomotopyTable) -> Result<BigradedPage> {
    require_variant(t, Variant::Absolute)?;
    Ok(assemble(a, t))
}

/// Relative page converging to `π^A_{p+q}(Y, B)` for `p + q >= 2`. The
/// degree-1 diagonal converges to the trivial group.
pub fn relative_federer_e2(a: &ChainComplex, t: &HomotopyTable) -> Result<BigradedPage> {
    require_variant(t, Variant::Relative)?;
    Ok(assemble(a, t))
}

impl BigradedPage {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Column range `(-dim A, -1)`; empty when `dim A = 0`.
    pub fn p_range(&self) -> (i64, i64) {
        (-(self.a_dim as i64), -1)
    }

    pub fn q_range(&self) -> (usize, usize) {
        (self.q_min, self.q_max)
    }

    /// The entry at `(p, q)`. Positions forced to vanish give a zero entry;
    /// `None` means the position needs `π_q` beyond the table.
    pub fn entry(&self, p: i64, q: i64) -> Option<PageEntry> {
        if p >= 0 || p < -(self.a_dim as i64) || p + q < self.variant.edge_degree() {
            return Some(PageEntry::zero());
        }
        if q > self.q_max as i64 {
            return None;
        }
        Some(
            self.entries
                .get(&(p, q))
                .cloned()
                .unwrap_or_else(PageEntry::zero),
        )
    }

    /// All stored entries, ordered by `(p, q)`.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), &PageEntry)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Stored entries with `p + q = n`, ascending in `p`.
    pub fn diagonal(&self, n: i64) -> Vec<(i64, i64, PageEntry)> {
        self.entries
            .iter()
            .filter(|((p, q), _)| p + q == n)
            .map(|(&(p, q), e)| (p, q, e.clone()))
            .collect()
    }

    /// Relative pages: entries on the degree-1 diagonal all die by `E^∞`.
    pub fn must_die(&self, p: i64, q: i64) -> bool {
        self.variant == Variant::Relative && p + q == 1
    }

    pub fn render_text(&self) -> String {
        let cols: Vec<i64> = (-(self.a_dim as i64)..=-1).collect();
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["q\\p".to_string()];
        header.extend(cols.iter().map(|p| p.to_string()));
        rows.push(header);
        for q in (self.q_min..=self.q_max).rev() {
            let mut row = vec![q.to_string()];
            for &p in &cols {
                let e = self.entry(p, q as i64).expect("q within table");
                row.push(e.cell());
            }
            rows.push(row);
        }
        let widths: Vec<usize> = (0..=cols.len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = format!("E2 page ({}), columns p, rows q\n", self.variant);
        for r in &rows {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str("* = only a subgroup of the displayed group\n");
        if self.variant == Variant::Relative {
            out.push_str("must-die: every entry with p+q = 1 vanishes at E-infinity\n");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for ((p, q), e) in &self.entries {
            m.insert(
                format!("{p},{q}"),
                json!({"group": e.group.to_string(), "status": e.status.as_str()}),
            );
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `π_n` is the given group.
    Determined(FgAbGroup),
    /// The surviving E²-groups bound the associated graded of `π_n`.
    GradedUpperBounds {
        possible_differentials: bool,
    },
    OutOfConvergenceRange,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalVerdict {
    pub n: i64,
    /// Nonzero entries on the diagonal.
    pub surviving: Vec<(i64, i64, PageEntry)>,
    pub verdict: Verdict,
    /// Positions whose differentials could be nonzero.
    pub notes: Vec<String>,
}

impl DiagonalVerdict {
    pub fn render_text(&self) -> String {
        let mut out = format!("diagonal n = {}\n", self.n);
        for (p, q, e) in &self.surviving {
            out.push_str(&format!(
                "  E2({p},{q}) = {} [{}]\n",
                e.group,
                e.status.as_str()
            ));
        }
        match &self.verdict {
            Verdict::Determined(g) => out.push_str(&format!("verdict: determined {g}\n")),
            Verdict::GradedUpperBounds {
                possible_differentials,
            } => {
                out.push_str("verdict: graded upper bounds");
                if *possible_differentials {
                    out.push_str(" (possible differential)");
                }
                out.push('\n');
            }
            Verdict::OutOfConvergenceRange => out.push_str("verdict: out of convergence range\n"),
        }
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let surviving: Vec<Value> = self
            .surviving
            .iter()
            .map(|(p, q, e)| json!({"p": p, "q": q, "group": e.group.to_string(), "status": e.status.as_str()}))
            .collect();
        let (verdict, group) = match &self.verdict {
            Verdict::Determined(g) => ("determined", Some(g.to_string())),
            Verdict::GradedUpperBounds { .. } => ("graded_upper_bounds", None),
            Verdict::OutOfConvergenceRange => ("out_of_convergence_range", None),
        };
        let possible = matches!(
            self.verdict,
            Verdict::GradedUpperBounds {
                possible_differentials: true
            }
        );
        json!({
            "n": self.n,
            "verdict": verdict,
            "group": group,
            "possible_differential": possible,
            "surviving": surviving,
            "notes": self.notes,
        })
    }
}

/// Position-only analysis of the diagonal `p + q = n`.
///
/// Every `d^a` with `a >= 2` into or out of a nonzero entry is examined; a
/// differential is ruled out only if its other end is a known zero. Unknown
/// positions (beyond the table) count as possibly nonzero.
pub fn collapse_report(page: &BigradedPage, n: i64) -> Result<DiagonalVerdict> {
    if n < page.variant.convergence_start() {
        return Ok(DiagonalVerdict {
            n,
            surviving: Vec::new(),
            verdict: Verdict::OutOfConvergenceRange,
            notes: vec![format!(
                "the {} sequence converges only for n >= {}",
                page.variant,
                page.variant.convergence_start()
            )],
        });
    }
    let (p_lo, p_hi) = page.p_range();
    let needed_q = n - p_lo;
    if p_lo <= p_hi && needed_q > page.q_max as i64 {
        return Err(Error::refused(format!(
            "diagonal {n} needs pi_q up to q = {needed_q}, but the table stops at q = {}",
            page.q_max
        )));
    }

    let surviving: Vec<(i64, i64, PageEntry)> = page
        .diagonal(n)
        .into_iter()
        .filter(|(_, _, e)| e.is_nonzero())
        .collect();

    let mut notes = Vec::new();
    for (p, q, _) in &surviving {
        for a in 2i64.. {
            let src = (p + a, q - a + 1);
            let dst = (p - a, q + a - 1);
            let src_in = src.0 <= p_hi;
            let dst_in = dst.0 >= p_lo;
            if !src_in && !dst_in {
                break;
            }
            for (inside, pos, dir) in [(src_in, src, "into"), (dst_in, dst, "out of")] {
                if !inside {
                    continue;
                }
                match page.entry(pos.0, pos.1) {
                    Some(e) if !e.is_nonzero() => {}
                    Some(e) => notes.push(format!(
                        "d^{a} {dir} ({p},{q}) via ({},{}) = {}",
                        pos.0, pos.1, e.group
                    )),
                    None => notes.push(format!(
                        "d^{a} {dir} ({p},{q}) via ({},{}) is beyond the table",
                        pos.0, pos.1
                    )),
                }
            }
        }
    }

    let verdict = if surviving.is_empty() {
        Verdict::Determined(FgAbGroup::trivial())
    } else if !notes.is_empty() {
        Verdict::GradedUpperBounds {
            possible_differentials: true,
        }
    } else if surviving.len() == 1 && surviving[0].2.status == EntryStatus::Exact {
        Verdict::Determined(surviving[0].2.group.clone())
    } else {
        Verdict::GradedUpperBounds {
            possible_differentials: false,
        }
    };

    Ok(DiagonalVerdict {
        n,
        surviving,
        verdict,
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    /// The bijection is a group isomorphism.
    Group,
    /// Only a bijection of sets is claimed; the cardinality is that of the group.
    SetWithGroupCardinality,
}

impl Structure {
    pub fn as_str(self) -> &'static str {
        match self {
            Structure::Group => "group",
            Structure::SetWithGroupCardinality => "set-with-group-cardinality",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfWhitney {
    pub group: FgAbGroup,
    pub structure: Structure,
    pub notes: Vec<String>,
}

/// `[K, Y] ≅ H^n(K; π_n(Y))` for `n = dim K >= 2` and `Y` (n-1)-connected.
///
/// The structure flag is `Group` when K has suspension shape (a structural
/// assumption) or the caller asserts that Y is a loop space.
pub fn hopf_whitney(
    k: &ChainComplex,
    pi_n: &FgAbGroup,
    y_is_loop_space: bool,
) -> Result<HopfWhitney> {
    let n = k.dim();
    if n < 2 {
        return Err(Error::refused(format!(
            "K must be a path-connected CW-complex of dimension n >= 2; dim K = {n}"
        )));
    }
    if !k.homology(0).is_trivial() {
        return Err(Error::refused(
            "K must be path-connected; reduced H_0(K) is nonzero",
        ));
    }
    let shaped = is_suspension_shaped(k);
    let mut notes = vec![format!(
        "Y is assumed ({})-connected with pi_{n}(Y) = {pi_n}",
        n - 1
    )];
    if shaped {
        notes.push(
            "K has no cells below degree 2 (structural assumption: K is a suspension)".into(),
        );
    }
    if y_is_loop_space {
        notes.push("Y is a loop space (caller-asserted)".into());
    }
    Ok(HopfWhitney {
        group: k.cohomology_uct(n, pi_n),
        structure: if shaped || y_is_loop_space {
            Structure::Group
        } else {
            Structure::SetWithGroupCardinality
        },
        notes,
    })
}

/// `[(CK, K); (Y, B)] ≅ H^n(K; π_{n+1}(Y, B))` for K a suspension of
/// dimension `n >= 2` and `(Y, B)` n-connected.
pub fn relative_hopf_whitney(k: &ChainComplex, pi_rel: &FgAbGroup) -> Result<FgAbGroup> {
    let n = k.dim();
    if !is_suspension_shaped(k) || n < 2 {
        return Err(Error::refused(format!(
            "K must be the suspension of a path-connected CW-complex of dimension n-1 >= 1 \
             (checked structurally: no cells below degree 2 and dim K >= 2; dim K = {n})"
        )));
    }
    Ok(k.cohomology_uct(n, pi_rel))
}

/// End terms of `0 -> Ext(G, π_{n+m+1}) -> π^A_n -> Hom(G, π_{n+m}) -> 0` for
/// `A = M(G, m)`. The middle group is not claimed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreHomotopySes {
    pub ext_part: FgAbGroup,
    pub hom_part: FgAbGroup,
}

impl MooreHomotopySes {
    /// `|π^A_n|` when both ends are finite.
    pub fn order_product(&self) -> Option<BigInt> {
        Some(self.ext_part.order()? * self.hom_part.order()?)
    }

    /// Every element of the middle group is killed by this.
    pub fn exponent_bound(&self) -> Exponent {
        self.ext_part.exponent().product(&self.hom_part.exponent())
    }

    /// The middle group when one end vanishes.
    pub fn determined_middle(&self) -> Option<FgAbGroup> {
        if self.ext_part.is_trivial() {
            Some(self.hom_part.clone())
        } else if self.hom_part.is_trivial() {
            Some(self.ext_part.clone())
        } else {
            None
        }
    }
}

pub fn moore_homotopy_ses(
    g: &FgAbGroup,
    m: usize,
    t: &HomotopyTable,
    n: usize,
) -> Result<MooreHomotopySes> {
    require_variant(t, Variant::Absolute)?;
    if n < 1 {
        return Err(Error::refused("the sequence is stated for n >= 1"));
    }
    if m < 1 {
        return Err(Error::refused("Moore space degree must be >= 1"));
    }
    let upper = t.require(n + m + 1)?;
    let lower = t.require(n + m)?;
    Ok(MooreHomotopySes {
        ext_part: ext(g, upper),
        hom_part: hom(g, lower),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub primes: PrimeSet,
    /// Every `H_j(A)`, `j >= 1`, lies in the class.
    pub hypothesis_holds: bool,
    pub failing_homology: Vec<(usize, FgAbGroup)>,
    pub all_entries_in_class: bool,
    pub failing_entries: Vec<(i64, i64, FgAbGroup)>,
    /// Per diagonal `n >= 1` of the page: the conclusion `π^A_n ∈ T_P`.
    pub conclusions: BTreeMap<i64, bool>,
}

pub fn torsion_class_check(
    a: &ChainComplex,
    t: &HomotopyTable,
    p: &PrimeSet,
) -> Result<TorsionReport> {
    let failing_homology: Vec<(usize, FgAbGroup)> = (1..=a.dim())
        .map(|j| (j, a.homology(j)))
        .filter(|(_, h)| !in_class(h, p))
        .collect();
    let hypothesis_holds = failing_homology.is_empty();

    let page = federer_e2(a, t)?;
    let failing_entries: Vec<(i64, i64, FgAbGroup)> = page
        .entries()
        .filter(|(_, e)| !in_class(&e.group, p))
        .map(|((p, q), e)| (p, q, e.group.clone()))
        .collect();

    let conclusions = (1..t.q_max() as i64)
        .map(|n| {
            let diagonal_ok = !failing_entries.iter().any(|(p, q, _)| p + q == n);
            (n, hypothesis_holds && diagonal_ok)
        })
        .collect();

    Ok(TorsionReport {
        primes: p.clone(),
        hypothesis_holds,
        failing_homology,
        all_entries_in_class: failing_entries.is_empty(),
        failing_entries,
        conclusions,
    })
}

/// Sum of the exact entries on diagonal n of the page built from
/// `π_q := H_q(X)`, against `H^A_n(X)` from the sum formula.
pub fn e2_consistency_with_ahomology(
    a: &ChainComplex,
    x: &ChainComplex,
    n: usize,
) -> Result<IsoCheck> {
    if n < 1 {
        return Err(Error::refused(
            "the comparison is made in the convergence range n >= 1",
        ));
    }
    if !a.homology(0).is_trivial() {
        return Err(Error::refused(
            "A must be path-connected; reduced H_0(A) is nonzero",
        ));
    }
    let table = HomotopyTable::from_fn(Variant::Absolute, n + a.dim().max(1), true, |q| {
        x.homology(q)
    })?;
    let page = federer_e2(a, &table)?;
    let exact: Vec<FgAbGroup> = page
        .diagonal(n as i64)
        .into_iter()
        .filter(|(_, _, e)| e.status == EntryStatus::Exact)
        .map(|(_, _, e)| e.group)
        .collect();
    Ok(IsoCheck {
        lhs: direct_sum(&exact),
        rhs: a_homology(a, x, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::wedge;
    use crate::spaces::{moore, projective, sphere};

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn constant(variant: Variant, q_max: usize, grp: &str) -> HomotopyTable {
        HomotopyTable::from_fn(variant, q_max, true, |_| g(grp)).unwrap()
    }

    #[test]
    fn table_validation() {
        let ok = BTreeMap::from([(1, g("Z")), (2, g("0"))]);
        assert!(HomotopyTable::new(Variant::Absolute, ok.clone(), true).is_ok());
        assert!(HomotopyTable::new(Variant::Relative, ok, true).is_err());
        let gap = BTreeMap::from([(1, g("Z")), (3, g("0"))]);
        assert!(HomotopyTable::new(Variant::Absolute, gap, true).is_err());
        assert!(HomotopyTable::new(Variant::Absolute, BTreeMap::new(), true).is_err());
    }

    #[test]
    fn table_json() {
        let t = HomotopyTable::from_json(
            r#"{"variant": "relative", "abelian": true, "pi": {"2": "Z/4", "3": "Z + Z/2"}}"#,
        )
        .unwrap();
        assert_eq!(t.get(3), Some(&g("Z + Z/2")));
        assert_eq!(HomotopyTable::from_json(&t.to_json()).unwrap(), t);
        assert!(HomotopyTable::from_json(
            r#"{"variant": "absolute", "abelian": true, "pi": {"1": "Q"}}"#
        )
        .is_err());
    }

    #[test]
    fn refuses_without_abelian_assertion() {
        let t = HomotopyTable::from_fn(Variant::Absolute, 4, false, |_| g("Z")).unwrap();
        let err = federer_e2(&sphere(2), &t).unwrap_err();
        assert!(err.is_refusal());
        assert!(err.to_string().contains("abelian fundamental group"));
        let rel = constant(Variant::Relative, 4, "Z");
        assert!(federer_e2(&sphere(2), &rel).unwrap_err().is_refusal());
        assert!(relative_federer_e2(&sphere(2), &constant(Variant::Absolute, 4, "Z")).is_err());
    }

    #[test]
    fn sphere_page_single_column() {
        let t = HomotopyTable::from_fn(Variant::Absolute, 8, true, |q| {
            FgAbGroup::cyclic(q as i64 + 1)
        })
        .unwrap();
        let page = federer_e2(&sphere(3), &t).unwrap();
        for n in 1..=5 {
            let v = collapse_report(&page, n).unwrap();
            assert_eq!(
                v.verdict,
                Verdict::Determined(t.get((n + 3) as usize).unwrap().clone())
            );
        }
    }

    #[test]
    fn rp2_page_columns() {
        let page = federer_e2(&projective(2), &constant(Variant::Absolute, 6, "Z")).unwrap();
        for q in 2..=6 {
            assert_eq!(page.entry(-2, q).unwrap().group, g("Z/2"));
        }
        for q in 1..=6 {
            assert!(page.entry(-1, q).unwrap().group.is_trivial());
        }
        // Edge diagonal p + q = 0 at (-2, 2) is only an upper bound.
        assert_eq!(
            page.entry(-2, 2).unwrap().status,
            EntryStatus::SubgroupUpperBound
        );
        assert_eq!(page.entry(-2, 1).unwrap().status, EntryStatus::Zero);
        let v = collapse_report(&page, 3).unwrap();
        assert_eq!(v.verdict, Verdict::Determined(g("Z/2")));

        let page = federer_e2(&projective(2), &constant(Variant::Absolute, 6, "Z/2")).unwrap();
        assert_eq!(page.entry(-1, 4).unwrap().group, g("Z/2"));
        assert_eq!(page.entry(-2, 4).unwrap().group, g("Z/2"));
        let v = collapse_report(&page, 2).unwrap();
        assert_eq!(
            v.verdict,
            Verdict::GradedUpperBounds {
                possible_differentials: false
            }
        );
        assert_eq!(v.surviving.len(), 2);
    }

    #[test]
    fn relative_page() {
        let page =
            relative_federer_e2(&projective(2), &constant(Variant::Relative, 7, "Z/4")).unwrap();
        assert_eq!(page.entry(-1, 4).unwrap().group, g("Z/2"));
        assert_eq!(page.entry(-2, 4).unwrap().group, g("Z/2"));
        assert_eq!(
            page.entry(-1, 2).unwrap().status,
            EntryStatus::SubgroupUpperBound
        );
        assert_eq!(page.entry(-2, 2).unwrap().status, EntryStatus::Zero);
        assert!(page.must_die(-1, 2) && page.must_die(-2, 3));
        assert!(!page.must_die(-1, 3));
        assert!(page.render_text().contains("must-die"));
        assert_eq!(
            collapse_report(&page, 1).unwrap().verdict,
            Verdict::OutOfConvergenceRange
        );
        let s = relative_federer_e2(&sphere(3), &constant(Variant::Relative, 9, "Z/7")).unwrap();
        assert_eq!(
            collapse_report(&s, 2).unwrap().verdict,
            Verdict::Determined(g("Z/7"))
        );
    }

    #[test]
    fn possible_differentials_flagged() {
        // Three columns: d^2 from (-1, q) to (-3, q+1) can be nonzero.
        let a = sphere(1);
        let a = wedge(&[a, sphere(3)]);
        let page = federer_e2(&a, &constant(Variant::Absolute, 10, "Z")).unwrap();
        let v = collapse_report(&page, 3).unwrap();
        assert_eq!(
            v.verdict,
            Verdict::GradedUpperBounds {
                possible_differentials: true
            }
        );
        assert!(!v.notes.is_empty());
    }

    #[test]
    fn table_range_miss_is_refused() {
        let page = federer_e2(&projective(2), &constant(Variant::Absolute, 4, "Z")).unwrap();
        assert!(collapse_report(&page, 3).unwrap_err().is_refusal());
        assert!(collapse_report(&page, 2).is_ok());
    }

    #[test]
    fn hopf_whitney_examples() {
        let h = hopf_whitney(&sphere(4), &g("Z/5"), false).unwrap();
        assert_eq!((h.group, h.structure), (g("Z/5"), Structure::Group));
        let h = hopf_whitney(&projective(2), &g("Z"), false).unwrap();
        assert_eq!(
            (h.group, h.structure),
            (g("Z/2"), Structure::SetWithGroupCardinality)
        );
        let h = hopf_whitney(&projective(2), &g("Z"), true).unwrap();
        assert_eq!(h.structure, Structure::Group);
        let h = hopf_whitney(&projective(2).suspension(), &g("Z/4"), false).unwrap();
        assert_eq!((h.group, h.structure), (g("Z/2"), Structure::Group));
        assert!(hopf_whitney(&sphere(1), &g("Z"), false)
            .unwrap_err()
            .is_refusal());
    }

    #[test]
    fn relative_hopf_whitney_examples() {
        assert_eq!(
            relative_hopf_whitney(&sphere(3), &g("Z/9")).unwrap(),
            g("Z/9")
        );
        assert_eq!(
            relative_hopf_whitney(&projective(2).suspension(), &g("Z")).unwrap(),
            g("Z/2")
        );
        let k = wedge(&[sphere(1), sphere(1)]).suspension();
        assert_eq!(
            relative_hopf_whitney(&k, &g("Z/3")).unwrap(),
            g("Z/3 + Z/3")
        );
        let err = relative_hopf_whitney(&projective(2), &g("Z")).unwrap_err();
        assert!(err.is_refusal());
        assert!(err.to_string().contains("suspension of a path-connected"));
    }

    #[test]
    fn moore_homotopy_examples() {
        let t = constant(Variant::Absolute, 8, "Z");
        let s = moore_homotopy_ses(&g("Z/2"), 1, &t, 3).unwrap();
        assert_eq!((s.ext_part.clone(), s.hom_part.clone()), (g("Z/2"), g("0")));
        assert_eq!(s.determined_middle(), Some(g("Z/2")));

        let t = HomotopyTable::from_fn(Variant::Absolute, 8, true, |q| FgAbGroup::cyclic(q as i64))
            .unwrap();
        let s = moore_homotopy_ses(&g("Z"), 2, &t, 3).unwrap();
        assert!(s.ext_part.is_trivial());
        assert_eq!(s.hom_part, t.get(5).unwrap().clone());

        let s = moore_homotopy_ses(
            &g("Z/2"),
            1,
            &constant(Variant::Absolute, 8, "Z/2 + Z/8"),
            2,
        )
        .unwrap();
        let bound = s.exponent_bound().value().unwrap();
        assert!(bound <= BigInt::from(4));

        let err = moore_homotopy_ses(&g("Z/2"), 1, &t, 7).unwrap_err();
        assert!(err.to_string().contains("pi_9"));
    }

    #[test]
    fn torsion_examples() {
        let t = constant(Variant::Absolute, 6, "Z + Z/3");
        let p2 = PrimeSet::new([2]).unwrap();
        let r = torsion_class_check(&projective(2), &t, &p2).unwrap();
        assert!(r.hypothesis_holds && r.all_entries_in_class);
        assert!(r.conclusions.values().all(|&c| c));

        let r = torsion_class_check(&sphere(3), &t, &p2).unwrap();
        assert!(!r.hypothesis_holds);
        assert!(r.conclusions.values().all(|&c| !c));

        let m6 = moore(&g("Z/6"), 2);
        assert!(!torsion_class_check(&m6, &t, &p2).unwrap().hypothesis_holds);
        let p23 = PrimeSet::new([2, 3]).unwrap();
        assert!(torsion_class_check(&m6, &t, &p23).unwrap().hypothesis_holds);
    }

    #[test]
    fn consistency_examples() {
        for (a, x, n) in [
            (projective(2), sphere(4), 2),
            (sphere(2), projective(5), 2),
            (moore(&g("Z/4"), 1), moore(&g("Z/2"), 3), 2),
        ] {
            let c = e2_consistency_with_ahomology(&a, &x, n).unwrap();
            assert!(c.holds(), "{} {} {n}: {c:?}", a.name(), x.name());
        }
        let c = e2_consistency_with_ahomology(&projective(2), &sphere(4), 2).unwrap();
        assert_eq!(c.lhs, g("Z/2"));
        assert!(e2_consistency_with_ahomology(&sphere(0), &sphere(2), 1).is_err());
    }

    #[test]
    fn page_json_and_text() {
        let page = federer_e2(&projective(2), &constant(Variant::Absolute, 3, "Z")).unwrap();
        let json = page.to_json();
        assert_eq!(json["-2,3"]["group"], "Z/2");
        assert_eq!(json["-2,3"]["status"], "exact");
        assert_eq!(json["-2,2"]["status"], "subgroup_upper_bound");
        let text = page.render_text();
        assert!(text.contains("Z/2*"));
    }
}
